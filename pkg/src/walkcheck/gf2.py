"""GF(2^m) arithmetic for the independence families.

The modulus for each m is the lexicographically smallest primitive polynomial
of degree m (primitive, not just irreducible, so that x generates the
multiplicative group and log/antilog tables are well defined).  Fields up to
TABLE_MAX use log/antilog tables with a sentinel row for zero, which keeps the
vectorized product free of masking: log[0] points past the wrapped antilog
range, where the table holds zeros.  Larger fields fall back to vectorized
shift-and-add.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

TABLE_MAX = 20


def gf2_mul_scalar(a: int, b: int, modulus: int, m: int) -> int:
    """Carry-less multiply mod the field polynomial (Python ints)."""
    acc = 0
    while b:
        if b & 1:
            acc ^= a
        b >>= 1
        a <<= 1
        if a >> m & 1:
            a ^= modulus
    return acc


def _polymod(a: int, f: int) -> int:
    df = f.bit_length() - 1
    while a.bit_length() - 1 >= df and a:
        a ^= f << (a.bit_length() - 1 - df)
    return a


def _polymulmod(a: int, b: int, f: int) -> int:
    acc = 0
    while b:
        if b & 1:
            acc ^= a
        b >>= 1
        a <<= 1
    return _polymod(acc, f)


def _polygcd(a: int, b: int) -> int:
    while b:
        a, b = b, _polymod(a, b)
    return a


def _x_pow_2_pow(i: int, f: int) -> int:
    """x^(2^i) mod f by repeated squaring."""
    r = 2  # the polynomial x
    for _ in range(i):
        r = _polymulmod(r, r, f)
    return r


def prime_factors(n: int) -> list[int]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def is_irreducible(f: int) -> bool:
    m = f.bit_length() - 1
    if m < 1:
        return False
    if m == 1:
        return f in (2, 3)
    if not f & 1:  # divisible by x
        return False
    if _x_pow_2_pow(m, f) != 2:
        return False
    for p in prime_factors(m):
        if _polygcd(_x_pow_2_pow(m // p, f) ^ 2, f) != 1:
            return False
    return True


def _x_order_divides(e: int, f: int) -> bool:
    """Whether x^e == 1 mod f."""
    r = 1
    base = 2
    while e:
        if e & 1:
            r = _polymulmod(r, base, f)
        base = _polymulmod(base, base, f)
        e >>= 1
    return r == 1


def is_primitive(f: int) -> bool:
    m = f.bit_length() - 1
    if not is_irreducible(f):
        return False
    order = (1 << m) - 1
    for q in prime_factors(order):
        if _x_order_divides(order // q, f):
            return False
    return True


@lru_cache(maxsize=None)
def primitive_modulus(m: int) -> int:
    """Lexicographically smallest primitive polynomial of degree m."""
    if m < 1:
        raise ValueError("field exponent must be >= 1")
    for f in range((1 << m) + 1, 1 << (m + 1), 2):
        if is_primitive(f):
            return f
    raise RuntimeError(f"no primitive polynomial of degree {m} found")  # unreachable


def _mul_vec_shiftadd(a: np.ndarray, b: np.ndarray, modulus: int, m: int) -> np.ndarray:
    a = a.astype(np.uint64, copy=True)
    b = b.astype(np.uint64)
    acc = np.zeros_like(a)
    for i in range(m):
        bit = ((b >> np.uint64(i)) & np.uint64(1)).astype(bool)
        np.bitwise_xor(acc, np.where(bit, a << np.uint64(i), np.uint64(0)), out=acc)
    for bit_pos in range(2 * m - 2, m - 1, -1):
        hit = ((acc >> np.uint64(bit_pos)) & np.uint64(1)).astype(bool)
        red = np.uint64(modulus << (bit_pos - m))
        np.bitwise_xor(acc, np.where(hit, red, np.uint64(0)), out=acc)
    return acc


class GF2Field:
    """One field instance: scalar ops always, table-backed vector ops for small m."""

    def __init__(self, m: int) -> None:
        self.m = m
        self.order = 1 << m
        self.modulus = primitive_modulus(m)
        self._exp = None
        self._log = None
        if m <= TABLE_MAX:
            self._build_tables()

    def _build_tables(self) -> None:
        q1 = self.order - 1
        # layout: [0, 2*q1) holds x^i wrapped twice; everything from 2*q1 on is
        # zero, and log[0] = 2*q1, so exp[log[a] + log[b]] is the product with
        # no special-casing of zero operands
        exp = np.zeros(4 * q1 + 1, dtype=np.uint32)
        exp[0] = 1
        filled = 1
        while filled < q1:
            step = min(filled, q1 - filled)
            gen_pow = gf2_mul_scalar(int(exp[filled - 1]), 2, self.modulus, self.m)
            exp[filled : filled + step] = self._mul_vec_raw(exp[:step], np.uint32(gen_pow))
            filled += step
        exp[q1 : 2 * q1] = exp[:q1]
        log = np.full(self.order, 2 * q1, dtype=np.int32)
        log[exp[:q1]] = np.arange(q1, dtype=np.int32)
        self._exp = exp
        self._log = log

    def _mul_vec_raw(self, a: np.ndarray, b) -> np.ndarray:
        a = np.asarray(a)
        b_arr = np.broadcast_to(np.asarray(b, dtype=np.uint64), a.shape)
        return _mul_vec_shiftadd(a, b_arr, self.modulus, self.m).astype(np.uint32)

    def mul(self, a: int, b: int) -> int:
        return gf2_mul_scalar(a, b, self.modulus, self.m)

    def mul_vec(self, a: np.ndarray, b) -> np.ndarray:
        """Elementwise product; b may be an array or a scalar."""
        a = np.asarray(a, dtype=np.uint32)
        if self._exp is None:
            return self._mul_vec_raw(a, np.broadcast_to(np.asarray(b, dtype=np.uint32), a.shape))
        if np.isscalar(b) or np.ndim(b) == 0:
            lb = int(self._log[int(b)])
            return self._exp[self._log[a] + lb]
        return self._exp[self._log[a] + self._log[np.asarray(b, dtype=np.uint32)]]

    def poly_eval(self, coeffs, x: int) -> int:
        """Horner evaluation; coeffs[t] multiplies x^t."""
        acc = 0
        for c in reversed(coeffs):
            acc = self.mul(acc, x) ^ c
        return acc

    def poly_eval_vec(self, coeffs, points: np.ndarray) -> np.ndarray:
        """Evaluate one polynomial at many points."""
        points = np.asarray(points, dtype=np.uint32)
        if not len(coeffs):
            return np.zeros(points.shape, dtype=np.uint32)
        if self._exp is None:
            acc = np.zeros(points.shape, dtype=np.uint32)
            for c in reversed(coeffs):
                acc = self.mul_vec(acc, points)
                if c:
                    acc ^= np.uint32(c)
            return acc
        exp, log = self._exp, self._log
        lx = log[points]
        acc = np.full(points.shape, coeffs[-1], dtype=np.uint32)
        for c in coeffs[-2::-1]:
            acc = exp[log[acc] + lx]
            if c:
                np.bitwise_xor(acc, np.uint32(c), out=acc)
        return acc

    def poly_eval_many(self, coeff_arrays, x: int) -> np.ndarray:
        """Evaluate many polynomials (vector of coefficient arrays) at one point."""
        if self._exp is None:
            acc = np.zeros(coeff_arrays[0].shape, dtype=np.uint32)
            for c in reversed(coeff_arrays):
                acc = self.mul_vec(acc, np.uint32(x))
                acc ^= c.astype(np.uint32)
            return acc
        exp, log = self._exp, self._log
        lx = int(log[x])
        acc = coeff_arrays[-1].astype(np.uint32, copy=True)
        for c in coeff_arrays[-2::-1]:
            acc = exp[log[acc] + lx]
            np.bitwise_xor(acc, c.astype(np.uint32), out=acc)
        return acc


@lru_cache(maxsize=None)
def field(m: int) -> GF2Field:
    return GF2Field(m)
