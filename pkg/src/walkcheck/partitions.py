"""Set partitions under refinement, with signed chain counts.

A partition L refines L' (written L <= L') when every class of L sits inside
a class of L'.  For L' <= L the signed chain count c(L', L) counts strictly
increasing chains L' < L_1 < ... < L, chains of even length as +1 and odd as
-1, with c(L, L) = 1; it satisfies the recursion
c(L', L) = -sum over L' <= L_1 < L of c(L', L_1) and coincides with the
Moebius function of the lattice interval.
"""

from __future__ import annotations

from math import factorial

ENUMERATION_CAP = 8

BELL = [1, 1, 2, 5, 15, 52, 203, 877, 4140, 21147]


class SetPartition:
    """Immutable partition; classes stored sorted and ordered by minimum."""

    __slots__ = ("classes", "_hash")

    def __init__(self, classes) -> None:
        cleaned = tuple(tuple(sorted(c)) for c in classes)
        seen = set()
        for c in cleaned:
            if not c:
                raise ValueError("empty class")
            for x in c:
                if x in seen:
                    raise ValueError(f"element {x} appears in two classes")
                seen.add(x)
        norm = tuple(sorted(cleaned, key=lambda c: c[0]))
        self.classes = norm
        self._hash = hash(norm)

    @property
    def size(self) -> int:
        return len(self.classes)

    @property
    def ground(self) -> frozenset:
        return frozenset(x for c in self.classes for x in c)

    def __eq__(self, other) -> bool:
        return isinstance(other, SetPartition) and self.classes == other.classes

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        inner = "|".join(",".join(str(x) for x in c) for c in self.classes)
        return f"SetPartition({inner})"

    def is_refinement_of(self, other: "SetPartition") -> bool:
        if self.ground != other.ground:
            raise ValueError("partitions of different ground sets")
        index = {}
        for i, c in enumerate(other.classes):
            for x in c:
                index[x] = i
        return all(len({index[x] for x in c}) == 1 for c in self.classes)

    def __le__(self, other) -> bool:
        return self.is_refinement_of(other)

    def __lt__(self, other) -> bool:
        return self != other and self.is_refinement_of(other)

    @classmethod
    def finest(cls, k: int) -> "SetPartition":
        return cls([(i,) for i in range(k)])

    @classmethod
    def coarsest(cls, k: int) -> "SetPartition":
        return cls([tuple(range(k))])


def partitions_of(elements) -> list[tuple]:
    """All partitions of an element list, as tuples of tuples."""
    elements = list(elements)
    if not elements:
        return [()]
    head, rest = elements[0], elements[1:]
    out = []
    for sub in partitions_of(rest):
        out.append(((head,),) + sub)
        for i, c in enumerate(sub):
            out.append(sub[:i] + ((head,) + c,) + sub[i + 1 :])
    return out


def enumerate_partitions(k: int) -> list[SetPartition]:
    """All partitions of {0..k-1}; capped at k <= 8 (Bell(8) = 4140)."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if k > ENUMERATION_CAP:
        raise ValueError(
            f"k={k} over the enumeration cap {ENUMERATION_CAP} (Bell({k}) = "
            f"{BELL[k] if k < len(BELL) else 'large'})"
        )
    return [SetPartition(p) for p in partitions_of(range(k))]


def refinement_order(parts: list[SetPartition]) -> list[tuple[int, int]]:
    """Index pairs (i, j) with parts[i] <= parts[j]."""
    return [
        (i, j)
        for i, a in enumerate(parts)
        for j, b in enumerate(parts)
        if a.is_refinement_of(b)
    ]


def refinements_of(part: SetPartition) -> list[SetPartition]:
    """All partitions <= part (split classes independently)."""
    per_class = [partitions_of(c) for c in part.classes]
    out = [()]
    for options in per_class:
        out = [acc + opt for acc in out for opt in options]
    return [SetPartition(p) for p in out]


def interval(lower: SetPartition, upper: SetPartition) -> list[SetPartition]:
    """Partitions P with lower <= P <= upper (group lower's classes within upper's)."""
    blocks = lower.classes
    per_class = []
    for c in upper.classes:
        cset = set(c)
        sub_blocks = [b for b in blocks if set(b) <= cset]
        if sum(len(b) for b in sub_blocks) != len(c):
            raise ValueError("lower does not refine upper")
        merged_options = []
        for grouping in partitions_of(range(len(sub_blocks))):
            merged_options.append(
                tuple(tuple(sorted(x for bi in grp for x in sub_blocks[bi])) for grp in grouping)
            )
        per_class.append(merged_options)
    out = [()]
    for options in per_class:
        out = [acc + opt for acc in out for opt in options]
    return [SetPartition(p) for p in out]


_chain_memo: dict = {}


def chain_coefficient(lower: SetPartition, upper: SetPartition) -> int:
    """Signed chain count c(lower, upper); 0 unless lower <= upper."""
    if lower.ground != upper.ground:
        raise ValueError("partitions of different ground sets")
    if lower == upper:
        return 1
    if not lower.is_refinement_of(upper):
        return 0
    key = (lower.classes, upper.classes)
    cached = _chain_memo.get(key)
    if cached is not None:
        return cached
    total = 0
    for mid in interval(lower, upper):
        if mid != upper:
            total -= chain_coefficient(lower, mid)
    _chain_memo[key] = total
    return total


def mobius_closed_form(lower: SetPartition, upper: SetPartition) -> int:
    """Independent product formula for the interval Moebius value (test oracle)."""
    if not lower.is_refinement_of(upper):
        return 0
    value = 1
    for c in upper.classes:
        cset = set(c)
        b = sum(1 for blk in lower.classes if set(blk) <= cset)
        value *= (-1) ** (b - 1) * factorial(b - 1)
    return value


def partition_lattice_mobius(k: int) -> int:
    """Moebius value between the finest and coarsest partitions of k elements."""
    return (-1) ** (k - 1) * factorial(k - 1)


def verify_prop_part(k: int) -> bool:
    """Interval sums of chain coefficients vanish: for every strict pair
    L'' < L, sum over L'' <= L' <= L of c(L', L) equals zero."""
    parts = enumerate_partitions(k)
    for upper in parts:
        for lower in refinements_of(upper):
            if lower == upper:
                continue
            total = sum(chain_coefficient(mid, upper) for mid in interval(lower, upper))
            if total != 0:
                return False
    return True
