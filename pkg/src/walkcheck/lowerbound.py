"""Exact monomial expectations over the block-sampled matching-union model.

A monomial is a set of edge indicators x_{u,v,j} ("sample vertices u and v are
matched in the j-th matching of their common block").  Its expectation is a
bivariate rational function of the host size M and block count l, assembled by
inclusion-exclusion over partitions of the monomial's term-graph components,
with every step kept in exact arithmetic: numerators are exact polynomials and
denominators stay factored as products of (M - odd*l).  Each algebraic claim
the assembly relies on (interval sums of chain coefficients, numerator
divisibility by powers of l, vanishing of the mixed coefficients) is exposed
as a checkable operation, and a Monte Carlo sampler provides the independent
statistical oracle.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction

import numpy as np

from .brational import (
    BivariatePoly,
    BivariateRational,
    factors_degree,
    factors_to_poly,
    factors_difference,
    factors_union,
    r_factor,
)
from .hardinstances import PmlParams, sample_induced, sample_matching_union
from .partitions import SetPartition, chain_coefficient, enumerate_partitions, refinements_of

PARTITION_CAP = 8


class Monomial:
    """Deduplicated set of terms (u, v, label) with u < v; labels are opaque."""

    __slots__ = ("terms",)

    def __init__(self, terms) -> None:
        norm = set()
        for (u, v, label) in terms:
            u, v = int(u), int(v)
            if u == v:
                raise ValueError(f"term with equal endpoints ({u}, {v})")
            if u < 0 or v < 0:
                raise ValueError("vertex ids must be non-negative")
            norm.add((min(u, v), max(u, v), label))
        self.terms = frozenset(norm)

    @property
    def degree(self) -> int:
        return len(self.terms)

    @property
    def vertices(self) -> tuple:
        return tuple(sorted({x for (u, v, _) in self.terms for x in (u, v)}))

    @property
    def labels(self) -> tuple:
        return tuple(sorted({j for (_, _, j) in self.terms}, key=repr))

    def is_matching_feasible(self) -> bool:
        """False when some vertex needs two distinct partners in one matching
        (the indicator product is then identically zero)."""
        partner: dict = {}
        for (u, v, j) in self.terms:
            for a, b in ((u, v), (v, u)):
                if partner.setdefault((a, j), b) != b:
                    return False
        return True

    def __eq__(self, other) -> bool:
        return isinstance(other, Monomial) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(self.terms)

    def __repr__(self) -> str:
        return f"Monomial({sorted(self.terms, key=repr)})"


@dataclass(frozen=True)
class ComponentProfile:
    """Connected components of the term graph with exact per-label edge tallies."""

    components: tuple            # tuple of vertex tuples
    vertex_counts: tuple         # v_i
    edge_counts: tuple           # per component: dict label -> d_{i,j}
    labels: tuple

    @property
    def k(self) -> int:
        return len(self.components)

    def class_label_count(self, cls_indices, label) -> int:
        return sum(self.edge_counts[i].get(label, 0) for i in cls_indices)


def component_profile(monomial: Monomial) -> ComponentProfile:
    verts = list(monomial.vertices)
    index = {v: i for i, v in enumerate(verts)}
    parent = list(range(len(verts)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for (u, v, _) in monomial.terms:
        ru, rv = find(index[u]), find(index[v])
        if ru != rv:
            parent[ru] = rv
    groups: dict = {}
    for v in verts:
        groups.setdefault(find(index[v]), []).append(v)
    comps = tuple(tuple(sorted(g)) for g in sorted(groups.values(), key=min))
    vcounts = tuple(len(c) for c in comps)
    labels = monomial.labels
    ecounts = []
    for comp in comps:
        cset = set(comp)
        counts: dict = {}
        for (u, v, j) in monomial.terms:
            if u in cset:
                counts[j] = counts.get(j, 0) + 1
        ecounts.append(counts)
    for i, comp in enumerate(comps):
        assert sum(ecounts[i].values()) >= len(comp) - 1, "component misses spanning edges"
    return ComponentProfile(
        components=comps, vertex_counts=vcounts, edge_counts=tuple(ecounts), labels=labels
    )


# -- partition-indexed factors -------------------------------------------------


def f_L(profile: ComponentProfile, part: SetPartition, primed: bool = False) -> BivariateRational:
    """Product over classes and labels of the nested-edge weight R_{sum of d_{i,j}}."""
    out = BivariateRational.one()
    for cls in part.classes:
        for label in profile.labels:
            d = profile.class_label_count(cls, label)
            if d:
                out = out * r_factor(d, primed=primed)
    return out


def f_prime_L(profile: ComponentProfile, part: SetPartition, primed: bool = False) -> BivariateRational:
    """Signed sum of f over all refinements of `part`."""
    total = BivariateRational.zero()
    for sub in refinements_of(part):
        coeff = chain_coefficient(sub, part)
        if coeff:
            total = total + f_L(profile, sub, primed=primed).scale(coeff)
    return total


def denominator_profile(profile: ComponentProfile, part: SetPartition) -> Counter:
    """Factored denominator multiset of f_L: odd multiplier -> multiplicity."""
    out: Counter = Counter()
    for cls in part.classes:
        for label in profile.labels:
            d = profile.class_label_count(cls, label)
            for j in range(1, d + 1):
                out[2 * j - 1] += 1
    return out


def common_denominator(profile: ComponentProfile, part: SetPartition) -> Counter:
    """Union-maximal denominator over all refinements of `part` (the B multiset)."""
    out: Counter = Counter()
    for sub in refinements_of(part):
        out = factors_union(out, denominator_profile(profile, sub))
    return out


def exact_expectation(monomial: Monomial) -> BivariateRational:
    """E[monomial] as an exact rational in (M, l), via inclusion-exclusion
    over partitions of the term-graph components.

    The final step divides the assembled numerator by l^(sum v_i - 1); the
    division raises if the cancellation claim ever failed, so every call
    re-validates it.
    """
    if not monomial.terms:
        return BivariateRational.one()
    if not monomial.is_matching_feasible():
        return BivariateRational.zero()
    profile = component_profile(monomial)
    k = profile.k
    if k > PARTITION_CAP:
        raise ValueError(f"{k} components exceed the partition cap {PARTITION_CAP}")
    v_total = sum(profile.vertex_counts)
    parts = enumerate_partitions(k)
    fprimes = [(part, f_prime_L(profile, part)) for part in parts]
    e_min = 1 - v_total  # coarsest partition exponent; the most negative
    common: Counter = Counter()
    for _, fr in fprimes:
        common = factors_union(common, fr.den)
    num = BivariatePoly.zero()
    for part, fr in fprimes:
        e_shift = (part.size - v_total) - e_min
        scaled = fr.num * factors_to_poly(factors_difference(common, fr.den))
        num = num + scaled.shift_l(e_shift)
    num = num.divide_by_l_power(-e_min)
    return BivariateRational(num, common)


def expectation_value(monomial: Monomial, m_val, l_val) -> Fraction:
    return exact_expectation(monomial).evaluate(m_val, l_val)


# -- Monte Carlo oracle --------------------------------------------------------


def monte_carlo_expectation(
    monomial: Monomial,
    params: PmlParams,
    samples: int,
    rng: np.random.Generator,
    chunk: int = 100_000,
):
    """Empirical frequency that every term of the monomial holds, with its
    standard error.

    Only the block choices and within-block choice ranks of the referenced
    sample vertices matter (matchings are permutation-invariant within a
    block), so the sampler draws blocks/ranks for those indices plus uniform
    matchings per (block, label) and never materializes hosts.
    """
    if not monomial.terms:
        return 1.0, 0.0
    verts = monomial.vertices
    t_max = max(verts) + 1
    if t_max > params.n_sample:
        raise ValueError("monomial references vertices beyond the sample size")
    if t_max > params.block_size:
        raise ValueError("need max vertex index < block size so early failure is impossible")
    labels = monomial.labels
    if len(labels) > params.matchings:
        raise ValueError("monomial uses more matching labels than the model has matchings")
    label_slot = {j: t for t, j in enumerate(labels)}
    l, bs = params.blocks, params.block_size
    terms = sorted(monomial.terms, key=repr)
    hits = 0
    done = 0
    while done < samples:
        take = min(chunk, samples - done)
        blocks = rng.integers(0, l, size=(take, t_max))
        ranks = np.zeros((take, t_max), dtype=np.int64)
        for t in range(t_max):
            for prev in range(t):
                ranks[:, t] += blocks[:, prev] == blocks[:, t]
        # partner[s, b, jj, r] = rank matched with rank r in matching jj of block b
        order = np.argsort(rng.random((take, l, len(labels), bs)), axis=-1)
        partner = np.empty_like(order)
        lefts = order[..., 0::2]
        rights = order[..., 1::2]
        sidx = np.arange(take)[:, None, None, None]
        bidx = np.arange(l)[None, :, None, None]
        jidx = np.arange(len(labels))[None, None, :, None]
        partner[sidx, bidx, jidx, lefts] = rights
        partner[sidx, bidx, jidx, rights] = lefts
        good = np.ones(take, dtype=bool)
        srange = np.arange(take)
        for (u, v, j) in terms:
            same = blocks[:, u] == blocks[:, v]
            jj = label_slot[j]
            matched = partner[srange, blocks[:, u], jj, ranks[:, u]] == ranks[:, v]
            good &= same & matched
        hits += int(good.sum())
        done += take
    p = hits / samples
    se = math.sqrt(max(p * (1 - p), 1e-300) / samples)
    return p, se


def monte_carlo_expectation_sequential(
    monomial: Monomial,
    host_size: int,
    blocks: int,
    samples: int,
    rng: np.random.Generator,
    chunk: int = 200_000,
):
    """Sequential-bookkeeping estimator: block choices plus one uniform
    free-partner draw per queried edge.

    For even block sizes this is the conditional law of uniform perfect
    matchings restricted to the queried edges (cross-validated in tests
    against the matching sampler); it remains defined for odd block sizes,
    where whole perfect matchings do not exist.
    """
    if host_size % blocks:
        raise ValueError("blocks must divide the host size")
    bs = host_size // blocks
    if not monomial.terms:
        return 1.0, 0.0
    verts = monomial.vertices
    t_max = max(verts) + 1
    if t_max > bs:
        raise ValueError("need max vertex index < block size")
    terms = sorted(monomial.terms, key=repr)
    hits = 0
    done = 0
    while done < samples:
        take = min(chunk, samples - done)
        blk = rng.integers(0, blocks, size=(take, t_max))
        alive = np.ones(take, dtype=bool)
        for t, (u, v, j) in enumerate(terms):
            alive &= blk[:, u] == blk[:, v]
            used = set()
            k_prior = np.zeros(take, dtype=np.int64)
            for (u2, v2, j2) in terms[:t]:
                if j2 != j:
                    continue
                used.update((u2, v2))
                k_prior += blk[:, u2] == blk[:, u]
            if u in used or v in used:
                alive[:] = False
                break
            free = bs - 1 - 2 * k_prior
            draw = rng.integers(0, np.maximum(free, 1), size=take)
            alive &= (free >= 1) & (draw == 0)
        hits += int(alive.sum())
        done += take
    p = hits / samples
    se = math.sqrt(max(p * (1 - p), 1e-300) / samples)
    return p, se


def monte_carlo_expectation_literal(
    monomial: Monomial, params: PmlParams, samples: int, rng: np.random.Generator
):
    """Slow cross-check: literally samples hosts and the sequential choices."""
    if not monomial.terms:
        return 1.0, 0.0
    verts = monomial.vertices
    t_max = max(verts) + 1
    labels = monomial.labels
    label_slot = {j: t for t, j in enumerate(labels)}
    l, bs = params.blocks, params.block_size
    if t_max > bs:
        raise ValueError("need max vertex index < block size so early failure is impossible")
    small = PmlParams(
        n_sample=t_max, host_size=params.host_size, blocks=l, matchings=max(1, len(labels))
    )
    hits = 0
    for _ in range(samples):
        host = sample_matching_union(small, rng)
        sample = sample_induced(host, rng)
        assert not sample.failed  # t_max <= block size
        chosen = sample.chosen
        ok = True
        for (u, v, j) in sorted(monomial.terms, key=repr):
            hu, hv = chosen[u], chosen[v]
            if hu // bs != hv // bs or host.partners[label_slot[j], hu] != hv:
                ok = False
                break
        hits += ok
    p = hits / samples
    se = math.sqrt(max(p * (1 - p), 1e-300) / samples)
    return p, se


# -- structural checks on the rational form ------------------------------------


def harmonic(n: int) -> Fraction:
    return sum((Fraction(1, i) for i in range(1, n + 1)), Fraction(0))


def denominator_multiplicity_check(monomial: Monomial, t_queries: int) -> bool:
    """Factor (M-(2k-1)l) appears at most 2T/k times and the total denominator
    degree stays within the harmonic budget 2T * H(2T)."""
    if monomial.degree > 2 * t_queries:
        raise ValueError("monomial degree exceeds the 2T variable budget")
    rational = exact_expectation(monomial)
    for o, mult in rational.den.items():
        k_idx = (o + 1) // 2
        if Fraction(mult) > Fraction(2 * t_queries, k_idx):
            return False
    budget = 2 * t_queries * harmonic(2 * t_queries)
    return Fraction(factors_degree(rational.den)) <= budget


def divisibility_check(profile: ComponentProfile, part: SetPartition) -> bool:
    """Numerator of the normalized signed sum is divisible by l^(k - |L|)."""
    target = profile.k - part.size
    fr = f_prime_L(profile, part, primed=True)
    if fr.num.is_zero():
        return True
    return fr.num.min_l_degree() >= target


def elementary_symmetric(values, i: int) -> int:
    """e_i of an integer multiset by incremental products."""
    coeffs = [1] + [0] * i
    for x in values:
        for t in range(min(i, len(coeffs) - 1), 0, -1):
            coeffs[t] += x * coeffs[t - 1]
    return coeffs[i]


def _factors_as_list(counter: Counter) -> list:
    out = []
    for o, mult in sorted(counter.items()):
        out.extend([o] * mult)
    return out


def theta_value(profile: ComponentProfile, part: SetPartition, i: int) -> int:
    """Coefficient of M^(m'-i) (-l)^i in the common-denominator numerator sum."""
    big_b = common_denominator(profile, part)
    total = 0
    for sub in refinements_of(part):
        coeff = chain_coefficient(sub, part)
        if not coeff:
            continue
        diff = _factors_as_list(factors_difference(big_b, denominator_profile(profile, sub)))
        total += coeff * elementary_symmetric(diff, i)
    return total


def theta_vanishing_check(profile: ComponentProfile, part: SetPartition, i: int) -> bool:
    """theta_{L,i} == 0 for 0 <= i <= k - |L| - 1 (claimed range only)."""
    bound = profile.k - part.size - 1
    if part.size >= profile.k:
        raise ValueError("the vanishing claim needs L strictly coarser than the finest partition")
    if not 0 <= i <= bound:
        raise ValueError(f"i={i} outside the claimed range [0, {bound}]")
    return theta_value(profile, part, i) == 0


# -- the power-sum identity ------------------------------------------------------


def power_sum_stat(dmat, part: SetPartition, alpha: int) -> int:
    """S_alpha(L') = sum over classes S, labels j of (sum_{i in S} d_{i,j})^alpha."""
    total = 0
    n_labels = len(dmat[0]) if dmat else 0
    for cls in part.classes:
        for j in range(n_labels):
            s = sum(dmat[i][j] for i in cls)
            total += s**alpha
    return total


def prop_final_sum(dmat, part: SetPartition, alphas) -> int:
    """Signed refinement sum of the product of power-sum statistics."""
    total = 0
    for sub in refinements_of(part):
        coeff = chain_coefficient(sub, part)
        if not coeff:
            continue
        prod = 1
        for a in alphas:
            prod *= power_sum_stat(dmat, sub, a)
        total += coeff * prod
    return total


def verify_prop_final(dmat, part: SetPartition, alphas) -> bool:
    """True iff the signed sum vanishes.  Guaranteed when
    sum(alpha_j - 1) <= k - |L| - 1; callers probing outside that range should
    inspect prop_final_sum directly."""
    if any(a < 1 for a in alphas):
        raise ValueError("alpha exponents must be >= 1")
    return prop_final_sum(dmat, part, alphas) == 0


# -- power sums of odd numbers ---------------------------------------------------


def power_sum_odd(a: int, s: int) -> int:
    """Direct sum of the first s odd numbers to the a-th power (oracle)."""
    return sum((2 * i - 1) ** a for i in range(1, s + 1))


def faulhaber_odd(a: int) -> list[Fraction]:
    """Coefficients (ascending) of the degree-(a+1) polynomial Q_a with
    Q_a(s) = sum_{i=1..s} (2i-1)^a; no constant term."""
    if a < 0:
        raise ValueError("exponent must be >= 0")
    pts = list(range(a + 2))
    vals = [power_sum_odd(a, s) for s in pts]
    # Lagrange interpolation on s = 0..a+1 with exact arithmetic
    coeffs = [Fraction(0)] * (a + 2)
    for i, s_i in enumerate(pts):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, s_j in enumerate(pts):
            if j == i:
                continue
            new = [Fraction(0)] * (len(basis) + 1)
            for t, c in enumerate(basis):
                new[t] -= c * s_j
                new[t + 1] += c
            basis = new
            denom *= s_i - s_j
        scale = Fraction(vals[i]) / denom
        for t, c in enumerate(basis):
            coeffs[t] += c * scale
    assert coeffs[0] == 0, "odd power sums have no constant term"
    assert coeffs[a + 1] != 0, "degree must be exactly a+1"
    return coeffs


def faulhaber_eval(coeffs, s) -> Fraction:
    total = Fraction(0)
    for t, c in enumerate(coeffs):
        total += c * Fraction(s) ** t
    return total


def canonical_dmatrices(k: int, dmax: int, labels: int = 2):
    """All k-row tally matrices with entries <= dmax, deduplicated by row
    multiset (component relabeling leaves every partition-indexed claim
    invariant)."""
    from itertools import combinations_with_replacement, product

    rows = list(product(range(dmax + 1), repeat=labels))
    for combo in combinations_with_replacement(rows, k):
        yield [list(r) for r in combo]


def theta_grid_check(k: int, dmax: int = 3, labels: int = 2) -> bool:
    """Vanishing of every claimed theta coefficient over the full canonical
    d-matrix grid.

    Uses the power-sum shortcut for e_1/e_2 (the claimed range has i <= 2 for
    k <= 4); equivalent to looping theta_vanishing_check, which tests pin."""
    parts = enumerate_partitions(k)
    structure = []
    for part in parts:
        if part.size >= k:
            continue
        refs = refinements_of(part)
        coeffs = [chain_coefficient(r, part) for r in refs]
        classes = [part.classes] + [r.classes for r in refs]
        structure.append((part, refs, coeffs))
    max_d = k * dmax
    odd = np.arange(1, 2 * max_d, 2, dtype=np.int64)

    def k_counts(dmat, classes):
        counts = np.zeros(max_d, dtype=np.int64)
        n_labels = len(dmat[0])
        for cls in classes:
            for j in range(n_labels):
                d = sum(dmat[i][j] for i in cls)
                if d:
                    counts[:d] += 1
        return counts

    for dmat in canonical_dmatrices(k, dmax, labels):
        for part, refs, coeffs in structure:
            ref_counts = [k_counts(dmat, r.classes) for r in refs]
            big = np.maximum.reduce(ref_counts)
            budget = k - part.size - 1
            thetas = np.zeros(budget + 1, dtype=object)
            for cnt, coeff in zip(ref_counts, coeffs):
                diff = big - cnt
                e0 = 1
                p1 = int((odd * diff).sum())
                acc = [e0, p1]
                if budget >= 2:
                    p2 = int((odd * odd * diff).sum())
                    acc.append((p1 * p1 - p2) // 2)
                if budget >= 3:
                    vals = [int(o) for o, m in zip(odd, diff) for _ in range(int(m))]
                    acc = [elementary_symmetric(vals, i) for i in range(budget + 1)]
                for i in range(budget + 1):
                    thetas[i] += coeff * acc[i]
            if any(t != 0 for t in thetas):
                return False
    return True


def divisibility_grid_check(k: int, dmax: int = 3, labels: int = 2, sample=None, rng=None) -> bool:
    """Symbolic numerator-divisibility over the canonical grid (or a sample)."""
    mats = list(canonical_dmatrices(k, dmax, labels))
    if sample is not None and sample < len(mats):
        idx = rng.choice(len(mats), size=sample, replace=False)
        mats = [mats[int(i)] for i in idx]
    parts = enumerate_partitions(k)
    for dmat in mats:
        profile = profile_from_dmat(dmat)
        for part in parts:
            if not divisibility_check(profile, part):
                return False
    return True


# -- generators for the randomized suites -----------------------------------------


def profile_from_dmat(dmat) -> ComponentProfile:
    """Synthetic profile carrying a given d-matrix (for the identity suites,
    which depend on the tallies only).  Zero rows get one edge so every
    component is realizable."""
    rows = [list(map(int, row)) for row in dmat]
    for row in rows:
        if sum(row) == 0:
            row[0] = 1
    comps = []
    vcounts = []
    ecounts = []
    cursor = 0
    for row in rows:
        edges = sum(row)
        size = edges + 1
        comps.append(tuple(range(cursor, cursor + size)))
        vcounts.append(size)
        ecounts.append({j: c for j, c in enumerate(row) if c})
        cursor += size
    return ComponentProfile(
        components=tuple(comps),
        vertex_counts=tuple(vcounts),
        edge_counts=tuple(ecounts),
        labels=tuple(sorted({j for counts in ecounts for j in counts})),
    )


def random_feasible_monomial(
    rng: np.random.Generator, degree: int, pool: int = 10, labels: int = 2
) -> Monomial:
    """Random monomial whose same-label edges form partial matchings."""
    if degree > labels * (pool // 2):
        raise ValueError("degree too large for a feasible monomial on this pool")
    while True:
        quota = [0] * labels
        for _ in range(degree):
            choices = [j for j in range(labels) if quota[j] < pool // 2]
            quota[int(rng.choice(choices))] += 1
        terms = []
        for j, q in enumerate(quota):
            perm = rng.permutation(pool)
            for e in range(q):
                u, v = int(perm[2 * e]), int(perm[2 * e + 1])
                terms.append((min(u, v), max(u, v), j))
        mono = Monomial(terms)
        if mono.degree == degree:
            return mono


# -- error budgets ----------------------------------------------------------------


@dataclass(frozen=True)
class ErrorBudget:
    n: int
    t_queries: int
    l: int
    delta: float
    a_scale: float
    k: int
    c_exp: float
    degree_cap: int
    first_step_factor: Decimal
    second_step_factor: Decimal
    failure_term: Decimal

    def report(self, digits: int = 30) -> dict:
        with localcontext() as ctx:
            ctx.prec = digits
            return {
                "degree_cap": self.degree_cap,
                "first_step_factor": str(+self.first_step_factor),
                "second_step_factor": str(+self.second_step_factor),
                "failure_term": str(+self.failure_term),
            }


def error_budget(
    n: int,
    t_queries: int,
    l: int,
    delta: float,
    a_scale: float,
    k: int,
    c_exp: float = 0.1,
    digits: int = 30,
) -> ErrorBudget:
    """The three error factors of the desk-scale budget arithmetic.

    first: exp(-4 T^2 l / N); second: ((aN + delta^(3/2)) / aN)^D with the
    harmonic degree cap D = ceil(2T H(2T)); failure: N^(2k) 2^k
    exp(-N^(0.75 - 2 c_exp)/3).  Computed in decimal arithmetic so 30
    significant digits are meaningful.
    """
    if n < 1 or t_queries < 0 or l < 1 or delta < 0 or a_scale <= 0 or k < 0:
        raise ValueError("invalid budget arguments")
    with localcontext() as ctx:
        ctx.prec = digits + 15
        nd = Decimal(n)
        first = (Decimal(-4 * t_queries * t_queries * l) / nd).exp()
        h = harmonic(2 * t_queries)
        cap = int(math.ceil(2 * t_queries * float(h) - 1e-12)) if t_queries else 0
        if cap and delta > 0:
            an = Decimal(str(a_scale)) * nd
            bump = Decimal(str(delta)) ** Decimal("1.5")
            second = ((an + bump) / an) ** cap
        else:
            second = Decimal(1)
        exponent = Decimal(str(0.75 - 2 * c_exp))
        decay = (-(nd**exponent) / 3).exp()
        failure = nd ** (2 * k) * Decimal(2) ** k * decay
    return ErrorBudget(
        n=n,
        t_queries=t_queries,
        l=l,
        delta=delta,
        a_scale=a_scale,
        k=k,
        c_exp=c_exp,
        degree_cap=cap,
        first_step_factor=first,
        second_step_factor=second,
        failure_term=failure,
    )
