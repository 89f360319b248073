"""Exact bivariate polynomials in (M, l) and rationals over factored denominators.

Denominators are never expanded: they are multisets of odd multipliers o with
value prod (M - o*l)^mult, so factor multiplicities are direct reads and
common denominators are per-factor maxima.  Numerator coefficients are exact
(int or Fraction); floats never enter.
"""

from __future__ import annotations

from collections import Counter
from fractions import Fraction


class BivariatePoly:
    """Sparse exact polynomial: {(deg_M, deg_l): coefficient}."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None) -> None:
        self.terms = {}
        if terms:
            for key, c in terms.items():
                if c:
                    self.terms[key] = c

    @classmethod
    def zero(cls) -> "BivariatePoly":
        return cls()

    @classmethod
    def constant(cls, c) -> "BivariatePoly":
        return cls({(0, 0): c})

    @classmethod
    def monomial(cls, deg_m: int, deg_l: int, coeff=1) -> "BivariatePoly":
        return cls({(deg_m, deg_l): coeff})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        return isinstance(other, BivariatePoly) and self.terms == other.terms

    def __add__(self, other: "BivariatePoly") -> "BivariatePoly":
        out = dict(self.terms)
        for key, c in other.terms.items():
            out[key] = out.get(key, 0) + c
        return BivariatePoly(out)

    def __sub__(self, other: "BivariatePoly") -> "BivariatePoly":
        out = dict(self.terms)
        for key, c in other.terms.items():
            out[key] = out.get(key, 0) - c
        return BivariatePoly(out)

    def __neg__(self) -> "BivariatePoly":
        return BivariatePoly({k: -c for k, c in self.terms.items()})

    def __mul__(self, other: "BivariatePoly") -> "BivariatePoly":
        out: dict = {}
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                key = (a1 + a2, b1 + b2)
                out[key] = out.get(key, 0) + c1 * c2
        return BivariatePoly(out)

    def scale(self, c) -> "BivariatePoly":
        if not c:
            return BivariatePoly()
        return BivariatePoly({k: v * c for k, v in self.terms.items()})

    def shift_l(self, e: int) -> "BivariatePoly":
        """Multiply by l^e (e >= 0)."""
        if e < 0:
            raise ValueError("use divide_by_l_power for negative shifts")
        if e == 0:
            return self
        return BivariatePoly({(a, b + e): c for (a, b), c in self.terms.items()})

    def min_l_degree(self) -> int | None:
        if not self.terms:
            return None
        return min(b for (_, b) in self.terms)

    def divide_by_l_power(self, e: int) -> "BivariatePoly":
        """Exact division by l^e; raises when some monomial has l-degree < e."""
        if e == 0 or not self.terms:
            return self
        if self.min_l_degree() < e:
            raise ValueError(f"polynomial not divisible by l^{e}")
        return BivariatePoly({(a, b - e): c for (a, b), c in self.terms.items()})

    def total_degree(self) -> int:
        if not self.terms:
            return 0
        return max(a + b for (a, b) in self.terms)

    def evaluate(self, m_val, l_val) -> Fraction:
        m_val, l_val = Fraction(m_val), Fraction(l_val)
        total = Fraction(0)
        for (a, b), c in self.terms.items():
            total += Fraction(c) * m_val**a * l_val**b
        return total

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for (a, b), c in sorted(self.terms.items()):
            bits.append(f"{c}*M^{a}*l^{b}")
        return " + ".join(bits)


def factors_to_poly(factors: Counter) -> BivariatePoly:
    """Expand prod (M - o*l)^mult into a polynomial."""
    poly = BivariatePoly.constant(1)
    for o, mult in sorted(factors.items()):
        lin = BivariatePoly({(1, 0): 1, (0, 1): -o})
        for _ in range(mult):
            poly = poly * lin
    return poly


def factors_degree(factors: Counter) -> int:
    return sum(factors.values())


def factors_union(a: Counter, b: Counter) -> Counter:
    out = Counter(a)
    for o, mult in b.items():
        out[o] = max(out[o], mult)
    return out


def factors_difference(a: Counter, b: Counter) -> Counter:
    """Multiset difference a - b; raises when b is not contained in a."""
    out = Counter()
    for o in set(a) | set(b):
        diff = a.get(o, 0) - b.get(o, 0)
        if diff < 0:
            raise ValueError(f"factor (M-{o}l) has higher multiplicity in subtrahend")
        if diff:
            out[o] = diff
    return out


def render_factors(factors: Counter) -> str:
    """Denominator rendering like '(M-1l)^2 (M-3l)^1'."""
    if not factors:
        return "1"
    return " ".join(f"(M-{o}l)^{mult}" for o, mult in sorted(factors.items()))


class BivariateRational:
    """numerator / prod (M - o*l)^mult with the denominator kept factored."""

    __slots__ = ("num", "den")

    def __init__(self, num: BivariatePoly, den: Counter | None = None) -> None:
        self.num = num
        self.den = Counter()
        if den:
            for o, mult in den.items():
                if mult < 0:
                    raise ValueError("negative factor multiplicity")
                if mult:
                    if o <= 0 or o % 2 == 0:
                        raise ValueError(f"denominator multiplier {o} must be a positive odd integer")
                    self.den[o] = mult

    @classmethod
    def one(cls) -> "BivariateRational":
        return cls(BivariatePoly.constant(1))

    @classmethod
    def zero(cls) -> "BivariateRational":
        return cls(BivariatePoly.zero())

    @classmethod
    def from_constant(cls, c) -> "BivariateRational":
        return cls(BivariatePoly.constant(c))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __mul__(self, other: "BivariateRational") -> "BivariateRational":
        return BivariateRational(self.num * other.num, self.den + other.den)

    def scale(self, c) -> "BivariateRational":
        return BivariateRational(self.num.scale(c), self.den)

    def __add__(self, other: "BivariateRational") -> "BivariateRational":
        common = factors_union(self.den, other.den)
        left = self.num * factors_to_poly(factors_difference(common, self.den))
        right = other.num * factors_to_poly(factors_difference(common, other.den))
        return BivariateRational(left + right, common)

    def __sub__(self, other: "BivariateRational") -> "BivariateRational":
        return self + other.scale(-1)

    def evaluate(self, m_val, l_val) -> Fraction:
        m_val, l_val = Fraction(m_val), Fraction(l_val)
        den = Fraction(1)
        for o, mult in self.den.items():
            base = m_val - o * l_val
            if base == 0:
                raise ZeroDivisionError(f"denominator factor (M-{o}l) vanishes at ({m_val}, {l_val})")
            den *= base**mult
        return self.num.evaluate(m_val, l_val) / den

    def denominator_degree(self) -> int:
        return factors_degree(self.den)

    def render_denominator(self) -> str:
        return render_factors(self.den)

    def __repr__(self) -> str:
        return f"({self.num!r}) / {self.render_denominator()}"


def r_factor(d: int, primed: bool = False) -> BivariateRational:
    """Probability weight of d nested matching edges: prod_{j'=1..d} l/(M-(2j'-1)l).

    primed drops the l^d numerator (the normalized variant used for the
    divisibility bookkeeping).
    """
    if d < 0:
        raise ValueError("d must be >= 0")
    num = BivariatePoly.constant(1) if primed else BivariatePoly.monomial(0, d, 1)
    den = Counter({2 * j - 1: 1 for j in range(1, d + 1)})
    return BivariateRational(num, den)
