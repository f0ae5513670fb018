"""Finite admissible collections of subsets of a ground set.

An admissible family over a ground set ``{0, .., n-1}`` is a finite list of
distinct subsets (stored as bitmasks) that contains its universe, has a
least member different from the universe, and in which every pair of members
has a unique largest member inside their intersection and a unique smallest
member containing their union.  Validation happens once, at construction;
afterwards every query is a pure table lookup.

Members are kept in a canonical order (ascending popcount, then the sorted
element tuple) which fixes all tie-breaking downstream.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import AdmissibilityError, EmptyInterval, NotComparable

MAX_GROUND = 64
MAX_MEMBERS = 4096


@dataclass(frozen=True)
class FamilyViolation:
    """One admissibility failure: what failed, where, and the incomparable witnesses."""

    kind: str  # missing_top | missing_bottom | inf_not_unique | sup_not_unique
    pair: tuple[tuple[int, ...], tuple[int, ...]] | None = None
    witnesses: tuple[tuple[int, ...], ...] | None = None

    def __str__(self):
        if self.pair is None:
            return self.kind
        msg = f"{self.kind} for {set(self.pair[0]) or '{}'}, {set(self.pair[1]) or '{}'}"
        if self.witnesses:
            msg += f" (witnesses: {[set(w) or set() for w in self.witnesses]})"
        return msg


def _bits_to_elems(bits: int) -> tuple[int, ...]:
    out = []
    i = 0
    while bits:
        if bits & 1:
            out.append(i)
        bits >>= 1
        i += 1
    return tuple(out)


def _canonical_key(bits: int):
    return (bin(bits).count("1"), _bits_to_elems(bits))


class AdmissibleFamily:
    """A validated admissible collection; immutable after construction."""

    def __init__(self, ground_size: int, member_bits: Sequence[int], universe: int):
        # internal: assumes members are canonical, distinct and pre-validated
        self.ground_size = ground_size
        self.members = tuple(member_bits)
        self.universe = universe
        self.member_elements = tuple(_bits_to_elems(m) for m in self.members)
        self._index = {m: i for i, m in enumerate(self.members)}
        self.top = self._index[universe]
        bottom_bits = self.members[0]
        self.bottom = 0
        self._inf, self._sup, violations = _pair_tables(self.members)
        if violations:
            raise AdmissibilityError(violations)
        if any(bottom_bits & ~m for m in self.members) or bottom_bits == universe:
            raise AdmissibilityError([FamilyViolation("missing_bottom")])

    def __len__(self):
        return len(self.members)

    def index_of(self, bits: int) -> int:
        return self._index[bits]

    def contains(self, i: int, j: int) -> bool:
        """True iff member ``i`` is a subset of member ``j``."""
        return self.members[i] & ~self.members[j] == 0

    def is_strict(self, i: int, j: int) -> bool:
        return i != j and self.contains(i, j)

    def inf_pair(self, i: int, j: int) -> int:
        """The unique largest member inside ``members[i] & members[j]``."""
        return self._inf[i][j]

    def sup_pair(self, i: int, j: int) -> int:
        """The unique smallest member containing ``members[i] | members[j]``."""
        return self._sup[i][j]

    def members_between(self, lo: int, hi: int) -> list[int]:
        """All members ``F`` with ``lo <= F <= hi``, in canonical order."""
        if not self.contains(lo, hi):
            raise NotComparable(
                f"{set(self.member_elements[lo])} is not contained in "
                f"{set(self.member_elements[hi])}"
            )
        lo_bits, hi_bits = self.members[lo], self.members[hi]
        return [
            k
            for k, m in enumerate(self.members)
            if lo_bits & ~m == 0 and m & ~hi_bits == 0
        ]

    def strict_pairs(self) -> list[tuple[int, int]]:
        """Every strict admissible pair ``(sub, sup)`` in canonical order."""
        n = len(self.members)
        return [
            (i, j) for i in range(n) for j in range(n) if self.is_strict(i, j)
        ]

    def interval_family(self, lo: int, hi: int) -> AdmissibleFamily:
        """The family of members between ``lo`` and ``hi``, with those as bottom and top.

        Admissibility is inherited from the parent; it is re-verified anyway
        because construction is cheap at this scale.
        """
        if lo == hi:
            raise EmptyInterval("interval endpoints must differ")
        between = self.members_between(lo, hi)
        return AdmissibleFamily(
            self.ground_size,
            [self.members[k] for k in between],
            self.members[hi],
        )

    def __repr__(self):
        return (
            f"AdmissibleFamily(ground_size={self.ground_size}, "
            f"members={len(self.members)})"
        )


def _pair_tables(members: Sequence[int]):
    """Build inf/sup lookup tables, collecting every uniqueness violation.

    A pair has an infimum iff the union of all members inside the
    intersection is itself a member (and dually for suprema), which keeps
    validation at O(n^3) bit operations.
    """
    n = len(members)
    index = {m: k for k, m in enumerate(members)}
    inf_table = [[0] * n for _ in range(n)]
    sup_table = [[0] * n for _ in range(n)]
    violations = []
    elems = [_bits_to_elems(m) for m in members]

    def maximal_of(candidates):
        return [
            k
            for k in candidates
            if not any(b != k and members[k] & ~members[b] == 0 for b in candidates)
        ]

    for i in range(n):
        for j in range(i, n):
            meet = members[i] & members[j]
            below = [k for k in range(n) if members[k] & ~meet == 0]
            union = 0
            for k in below:
                union |= members[k]
            if union in index and union & ~meet == 0:
                inf_table[i][j] = inf_table[j][i] = index[union]
            else:
                violations.append(
                    FamilyViolation(
                        "inf_not_unique",
                        (elems[i], elems[j]),
                        tuple(elems[k] for k in maximal_of(below)[:2]),
                    )
                )
            join = members[i] | members[j]
            above = [k for k in range(n) if join & ~members[k] == 0]
            inter = ~0
            for k in above:
                inter &= members[k]
            if inter in index and join & ~inter == 0:
                sup_table[i][j] = sup_table[j][i] = index[inter]
            else:
                minimal = [
                    k
                    for k in above
                    if not any(a != k and members[a] & ~members[k] == 0 for a in above)
                ]
                violations.append(
                    FamilyViolation(
                        "sup_not_unique",
                        (elems[i], elems[j]),
                        tuple(elems[k] for k in minimal[:2]),
                    )
                )
    return inf_table, sup_table, violations


def build_family(
    ground_size: int,
    subsets: Iterable[Iterable[int]],
    max_members: int = MAX_MEMBERS,
) -> AdmissibleFamily:
    """Validate a subset collection and return the admissible family.

    Raises :class:`AdmissibilityError` carrying the full list of violations:
    missing top (the ground set itself must be a member), missing bottom
    (a least member different from the ground set), or any pair whose
    infimum/supremum inside the collection is not unique.
    """
    if ground_size < 1:
        raise ValueError("ground set must be non-empty")
    if ground_size > MAX_GROUND:
        raise ValueError(f"ground set capped at {MAX_GROUND} elements")
    bits = []
    seen = set()
    for subset in subsets:
        m = 0
        for e in subset:
            if not 0 <= int(e) < ground_size:
                raise ValueError(f"element {e} outside ground set of size {ground_size}")
            m |= 1 << int(e)
        if m in seen:
            raise ValueError(f"duplicate member {set(_bits_to_elems(m)) or set()}")
        seen.add(m)
        bits.append(m)
    if not bits:
        raise ValueError("the collection must be non-empty")
    if len(bits) > max_members:
        raise ValueError(
            f"{len(bits)} members exceeds the cap of {max_members}; "
            "pass a larger max_members to override"
        )
    bits.sort(key=_canonical_key)
    universe = (1 << ground_size) - 1
    violations = []
    if universe not in seen:
        violations.append(FamilyViolation("missing_top"))
    bottom = bits[0]
    if any(bottom & ~m for m in bits) or bottom == universe:
        violations.append(FamilyViolation("missing_bottom"))
    if violations:
        # pair tables may add more detail when the endpoints exist
        if universe in seen:
            violations.extend(_pair_tables(bits)[2])
        raise AdmissibilityError(violations)
    return AdmissibleFamily(ground_size, bits, universe)
