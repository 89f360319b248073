"""Seeded k-wise independent bits and bounded-alphabet symbols.

A family over n variables is a random polynomial of degree k-1 over the
smallest GF(2^m) with at least n points; variable j is the low bit of the
evaluation at point j, so any k evaluations (hence any k bits) are jointly
uniform.  The seed is the k coefficients packed into one integer, k*m bits
total.  Symbols over an alphabet that is not a power of two are produced by
rejection sampling with a bounded retry budget and a modulo fallback, giving
per-symbol total-variation distance at most 2^-REJECTION_ROUNDS from uniform.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .gf2 import GF2Field, field

REJECTION_ROUNDS = 40

VERIFY_N_CAP = 12
VERIFY_K_CAP = 4


class SeedLengthError(ValueError):
    """Seed integer outside [0, 2^(k*m))."""


def min_field_exponent(n: int) -> int:
    """Smallest m with 2^m >= n (at least 1)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return max(1, (n - 1).bit_length())


@dataclass(frozen=True)
class KWiseFamily:
    n: int
    k: int
    m: int
    seed: int
    coeffs: tuple

    @property
    def field_order(self) -> int:
        return 1 << self.m

    @property
    def seed_bits(self) -> int:
        return self.k * self.m

    def _field(self) -> GF2Field:
        return field(self.m)


def build_family(n: int, k: int, seed: int) -> KWiseFamily:
    """Deterministic family from a packed-coefficient seed.

    Coefficient of degree t is bits [t*m, (t+1)*m) of the seed.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if k > n:
        raise ValueError(f"k={k} exceeds number of variables n={n}")
    m = min_field_exponent(n)
    if not 0 <= seed < (1 << (k * m)):
        raise SeedLengthError(
            f"seed must be an integer of at most {k * m} bits for n={n}, k={k}"
        )
    mask = (1 << m) - 1
    coeffs = tuple((seed >> (t * m)) & mask for t in range(k))
    return KWiseFamily(n=n, k=k, m=m, seed=seed, coeffs=coeffs)


def family_seed_from_rng(n: int, k: int, rng: np.random.Generator) -> int:
    """Draw the k*m seed bits from rng (bit 0 first)."""
    m = min_field_exponent(n)
    bits = rng.integers(0, 2, size=k * m, dtype=np.uint8)
    return int.from_bytes(np.packbits(bits, bitorder="little").tobytes(), "little")


def eval_point(fam: KWiseFamily, j: int) -> int:
    if not 0 <= j < fam.n:
        raise ValueError(f"variable index {j} out of range [0, {fam.n})")
    return fam._field().poly_eval(fam.coeffs, j)


def eval_bit(fam: KWiseFamily, j: int) -> int:
    """Low bit of the field evaluation at point j; pure in (seed, j)."""
    return eval_point(fam, j) & 1


def eval_bits_vec(fam: KWiseFamily, js: np.ndarray) -> np.ndarray:
    js = np.asarray(js)
    if js.size and (js.min() < 0 or js.max() >= fam.n):
        raise ValueError("variable index out of range")
    vals = fam._field().poly_eval_vec(fam.coeffs, js.astype(np.uint32))
    return (vals & 1).astype(np.uint8)


def _alphabet_width(alphabet: int) -> tuple[int, bool]:
    if alphabet < 2:
        raise ValueError("alphabet must be >= 2")
    w = (alphabet - 1).bit_length()
    return w, alphabet == (1 << w)


def symbol_capacity(n: int, alphabet: int) -> int:
    """How many symbols an n-bit family can produce for this alphabet."""
    w, pow2 = _alphabet_width(alphabet)
    if pow2:
        return n // w
    return n // (w * (REJECTION_ROUNDS + 1))


def _attempt_base(j, attempt: int, w: int, capacity: int):
    # attempt 0 uses the contiguous low block so power-of-two alphabets (and
    # alphabet=2 in particular) reduce to plain bit reads
    return (attempt * capacity + j) * w


def eval_symbol(fam: KWiseFamily, j: int, alphabet: int) -> int:
    """Symbol j, uniform over [0, alphabet) up to 2^-REJECTION_ROUNDS TV distance."""
    w, pow2 = _alphabet_width(alphabet)
    cap = symbol_capacity(fam.n, alphabet)
    if not 0 <= j < cap:
        raise ValueError(f"symbol index {j} out of range [0, {cap})")
    rounds = 1 if pow2 else REJECTION_ROUNDS + 1
    value = 0
    for attempt in range(rounds):
        base = _attempt_base(j, attempt, w, cap)
        value = 0
        for t in range(w):
            value |= eval_bit(fam, base + t) << t
        if value < alphabet:
            return value
    return value % alphabet


def eval_symbols_vec(fam: KWiseFamily, j0: int, count: int, alphabet: int) -> np.ndarray:
    """Symbols j0 .. j0+count-1, evaluating only the attempt blocks consumed.

    Rejection rounds are processed in widening blocks (1, 8, then the rest) so
    a repetition's worth of symbols needs at most three polynomial sweeps.
    """
    w, pow2 = _alphabet_width(alphabet)
    cap = symbol_capacity(fam.n, alphabet)
    if count < 0 or j0 < 0 or j0 + count > cap:
        raise ValueError(f"symbol range [{j0}, {j0 + count}) exceeds capacity {cap}")
    js = np.arange(j0, j0 + count, dtype=np.int64)
    out = np.zeros(count, dtype=np.uint8)

    def words_for(idx: np.ndarray, attempts: np.ndarray) -> np.ndarray:
        """Word matrix (len(idx), len(attempts)) for the given attempt numbers."""
        base = _attempt_base(idx[:, None], attempts[None, :], w, cap)
        pts = (base[:, :, None] + np.arange(w, dtype=np.int64)).ravel()
        bits = eval_bits_vec(fam, pts).reshape(len(idx), len(attempts), w)
        return (bits << np.arange(w, dtype=np.uint8)).sum(axis=2, dtype=np.int64)

    if pow2:
        out[:] = words_for(js, np.zeros(1, dtype=np.int64))[:, 0]
        return out
    pending = np.arange(count, dtype=np.int64)
    start = 0
    for block in (1, 8, REJECTION_ROUNDS + 1 - 9):
        attempts = np.arange(start, start + block, dtype=np.int64)
        words = words_for(js[pending], attempts)
        ok = words < alphabet
        first = np.argmax(ok, axis=1)
        any_ok = ok[np.arange(len(pending)), first]
        out[pending[any_ok]] = words[np.arange(len(pending))[any_ok], first[any_ok]]
        if start + block >= REJECTION_ROUNDS + 1:
            out[pending[~any_ok]] = words[~any_ok, -1] % alphabet
            break
        pending = pending[~any_ok]
        start += block
        if pending.size == 0:
            break
    return out


def verify_kwise_exhaustive(n: int, k: int, subset_size: int | None = None) -> bool:
    """Exact joint-uniformity check over the full seed space.

    True iff for every subset of at most subset_size (default k) variables,
    the joint bit distribution over all 2^(k*m) seeds is exactly uniform.
    """
    from itertools import combinations

    if n > VERIFY_N_CAP or k > VERIFY_K_CAP:
        raise ValueError(f"enumeration capped at n <= {VERIFY_N_CAP}, k <= {VERIFY_K_CAP}")
    s_max = subset_size if subset_size is not None else k
    if s_max < 1 or s_max > n:
        raise ValueError("subset size out of range")
    m = min_field_exponent(n)
    total_seeds = 1 << (k * m)
    gf = field(m)
    seeds = np.arange(total_seeds, dtype=np.uint64)
    mask = np.uint64((1 << m) - 1)
    coeff_arrays = [((seeds >> np.uint64(t * m)) & mask).astype(np.uint32) for t in range(k)]
    bits = np.empty((total_seeds, n), dtype=np.uint8)
    for j in range(n):
        bits[:, j] = (gf.poly_eval_many(coeff_arrays, j) & 1).astype(np.uint8)
    for size in range(1, s_max + 1):
        expected, rem = divmod(total_seeds, 1 << size)
        if rem:
            return False
        weights = 1 << np.arange(size, dtype=np.int64)
        for subset in combinations(range(n), size):
            words = bits[:, subset].astype(np.int64) @ weights
            counts = np.bincount(words, minlength=1 << size)
            if not (counts == expected).all():
                return False
    return True
