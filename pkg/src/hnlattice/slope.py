"""Slope functions on strict admissible pairs, their axioms, and minimal slopes.

A slope function assigns a poset value to every strict pair ``(A, B)`` with
``A`` properly contained in ``B``; ``eval((A, B))`` plays the role of the
slope of the subquotient ``B/A``.  The slope inequality constrains pairs of
pairs related through the family's lattice operations; the strong variant
relaxes the supremum condition to containment.  The minimal slope of a pair
is the infimum of ``eval((F, B))`` over intermediate members ``F``.

Backings are either full tables over the strict pairs or rules
(degree/rank quotients, eigenvalue maxima, prime support of quotient
orders).  Evaluation is pure and memoized; memo inserts are idempotent, so
concurrent readers see identical results.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping, Sequence

from .errors import (
    BudgetExceeded,
    MissingTableEntry,
    NonStrictPair,
    RankCollision,
    StrongInequalityUnverified,
    SupUnavailable,
    WeakInequalityFails,
)
from .family import AdmissibleFamily
from .poset import ExtendedRealPoset, PosetValue, ReverseInclusionPoset, ValuePoset

Pair = tuple[int, int]


@dataclass
class ValidationReport:
    """Outcome of an exhaustive axiom check.

    ``violations`` holds witnesses ``(pair1, pair2, value1, value2)`` for the
    slope inequalities, or ``(member1, member2, detail)`` for the classical
    degree/rank axioms; a failing report always carries at least one.
    """

    kind: str
    passed: bool
    checked: int
    violations: list = field(default_factory=list)


class SlopeFunction:
    """A total map from strict admissible pairs to values of one poset."""

    def __init__(
        self,
        family: AdmissibleFamily,
        poset: ValuePoset,
        rule: Callable[[int, int], PosetValue],
        kind: str,
    ):
        self.family = family
        self.poset = poset
        self.kind = kind
        self._rule = rule
        self._eval_memo: dict[Pair, PosetValue] = {}
        self._mu_min_memo: dict[Pair, PosetValue] = {}
        self._weak_report: ValidationReport | None = None
        self._strong_report: ValidationReport | None = None

    def _check_pair(self, pair: Pair) -> Pair:
        i, j = pair
        n = len(self.family)
        if not (0 <= i < n and 0 <= j < n):
            raise NonStrictPair(f"member indices out of range: {pair}")
        if not self.family.is_strict(i, j):
            raise NonStrictPair(f"({i}, {j}) is not a strict admissible pair")
        return i, j

    def eval(self, pair: Pair) -> PosetValue:
        """Slope of the strict pair ``(sub, sup)``."""
        i, j = self._check_pair(pair)
        got = self._eval_memo.get((i, j))
        if got is None:
            got = self._eval_memo.setdefault((i, j), self._rule(i, j))
        return got

    def mu_min(self, pair: Pair) -> PosetValue:
        """Minimal slope: infimum of ``eval((F, sup))`` over ``sub <= F < sup``.

        The index set always contains ``F = sub``, so it is never empty.
        """
        i, j = self._check_pair(pair)
        got = self._mu_min_memo.get((i, j))
        if got is None:
            values = [
                self.eval((f, j))
                for f in self.family.members_between(i, j)
                if f != j
            ]
            got = self._mu_min_memo.setdefault((i, j), self.poset.inf_set(values))
        return got

    def restrict(self, subfamily: AdmissibleFamily) -> SlopeFunction:
        """The induced slope function on an interval family of the same ground set.

        Members of the interval are members of the parent; values carry over
        by subset identity.
        """
        parent = self

        def rule(i: int, j: int) -> PosetValue:
            return parent.eval(
                (
                    parent.family.index_of(subfamily.members[i]),
                    parent.family.index_of(subfamily.members[j]),
                )
            )

        return SlopeFunction(subfamily, self.poset, rule, self.kind)

    # -- cached axiom reports ------------------------------------------------

    def slope_inequality_report(self) -> ValidationReport:
        if self._weak_report is None:
            self._weak_report = validate_slope_inequality(self)
        return self._weak_report

    def strong_inequality_report(self) -> ValidationReport:
        if self._strong_report is None:
            self._strong_report = validate_strong_slope_inequality(self)
        return self._strong_report

    def require_strong(self):
        """Raise unless the strong slope inequality has been verified to hold."""
        report = self.strong_inequality_report()
        if not report.passed:
            raise StrongInequalityUnverified(
                f"strong slope inequality fails, witness: {report.violations[0]}"
            )

    def __repr__(self):
        return f"SlopeFunction(kind={self.kind!r}, members={len(self.family)})"


# -- constructors -------------------------------------------------------------


def table_slope(
    family: AdmissibleFamily,
    poset: ValuePoset,
    entries: Mapping[Pair, object],
    kind: str = "table",
) -> SlopeFunction:
    """A slope function backed by a full table over the strict pairs.

    Partial tables are a construction error: minimal slopes quantify over
    every intermediate member, so a silent default would corrupt infima.
    """
    table: dict[Pair, PosetValue] = {}
    for pair, value in entries.items():
        i, j = int(pair[0]), int(pair[1])
        if not family.is_strict(i, j):
            raise NonStrictPair(f"table entry for non-strict pair ({i}, {j})")
        if isinstance(value, PosetValue):
            poset._claim(value)
            table[(i, j)] = value
        else:
            table[(i, j)] = poset.value(value)
    missing = [p for p in family.strict_pairs() if p not in table]
    if missing:
        raise MissingTableEntry(missing)
    return SlopeFunction(family, poset, lambda i, j: table[(i, j)], kind)


@dataclass(frozen=True)
class DegreeRankLabels:
    """Per-member degree and rank labels, indexed like the family's members."""

    deg: tuple
    rk: tuple[int, ...]

    def __post_init__(self):
        if len(self.deg) != len(self.rk):
            raise ValueError("deg and rk must label the same members")


def check_rank_monotone(family: AdmissibleFamily, labels: DegreeRankLabels):
    """Ranks must strictly increase along strict inclusions."""
    if len(labels.rk) != len(family):
        raise ValueError("labels must cover every member")
    for i, j in family.strict_pairs():
        if labels.rk[i] >= labels.rk[j]:
            raise RankCollision(
                f"rk{set(family.member_elements[i]) or set()} = {labels.rk[i]} "
                f"!< rk{set(family.member_elements[j]) or set()} = {labels.rk[j]}"
            )


def degree_rank_slope(
    family: AdmissibleFamily, labels: DegreeRankLabels
) -> SlopeFunction:
    """The classical quotient slope ``(deg B - deg A) / (rk B - rk A)``, exact."""
    check_rank_monotone(family, labels)
    deg = [Fraction(d) for d in labels.deg]
    poset = ExtendedRealPoset(exact=True)

    def rule(i: int, j: int) -> PosetValue:
        return poset.value((deg[j] - deg[i]) / (labels.rk[j] - labels.rk[i]))

    return SlopeFunction(family, poset, rule, "degree_rank")


def prime_support_slope(
    family: AdmissibleFamily, poset: ReverseInclusionPoset | None = None
) -> SlopeFunction:
    """Prime support of the quotient order for group-like member lattices.

    Members are read as subgroup element sets: the pair ``(A, B)`` has
    quotient order ``|B| / |A|``; its slope is ``{p}`` when that order is a
    power of the prime ``p``, and the empty label set otherwise, inside a
    reverse-inclusion poset over prime labels.
    """
    sizes = [len(e) for e in family.member_elements]
    supports: dict[Pair, frozenset[str]] = {}
    needed: set[str] = set()
    for i, j in family.strict_pairs():
        if sizes[j] % sizes[i]:
            raise ValueError(
                f"member sizes {sizes[i]} and {sizes[j]} are not group-like "
                "(no integral quotient order)"
            )
        support = _prime_power_support(sizes[j] // sizes[i])
        supports[(i, j)] = support
        needed.update(support)
    if poset is None:
        universe = sorted(
            {str(p) for p in _prime_factors(sizes[family.top])}, key=int
        )
        poset = ReverseInclusionPoset(universe)
    stray = needed - set(poset.universe)
    if stray:
        raise ValueError(f"poset universe lacks prime labels {sorted(stray)}")
    return SlopeFunction(
        family, poset, lambda i, j: poset.value(supports[(i, j)]), "prime_support"
    )


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _prime_power_support(q: int) -> frozenset[str]:
    primes = _prime_factors(q)
    if len(primes) == 1:
        return frozenset({str(primes[0])})
    return frozenset()


def eigen_slope(
    family: AdmissibleFamily,
    atom_values: Sequence[float],
    poset: ExtendedRealPoset | None = None,
) -> SlopeFunction:
    """Largest per-atom value gained when passing from ``A`` to ``B``."""
    if len(atom_values) != family.ground_size:
        raise ValueError("one value per ground element is required")
    values = [float(v) for v in atom_values]
    if poset is None:
        poset = ExtendedRealPoset(exact=False, atol=1e-9)

    def rule(i: int, j: int) -> PosetValue:
        gained = set(family.member_elements[j]) - set(family.member_elements[i])
        return poset.value(max(values[x] for x in gained))

    return SlopeFunction(family, poset, rule, "eigen")


# -- axiom validation ---------------------------------------------------------


def _validate_inequality(
    sf: SlopeFunction, strong: bool, max_pairs: int | None
) -> ValidationReport:
    family = sf.family
    pairs = family.strict_pairs()
    kind = "strong_slope_inequality" if strong else "slope_inequality"
    if max_pairs is not None and len(pairs) * len(pairs) > max_pairs:
        raise BudgetExceeded(
            f"{len(pairs)}^2 pair combinations exceed the --max-pairs guard "
            f"of {max_pairs}; checks are exhaustive, never sampled"
        )
    report = ValidationReport(kind, True, 0)
    for a1, b1 in pairs:  # (W1', W1)
        for a2, b2 in pairs:  # (W2', W2)
            if family.inf_pair(a2, b1) != a1:
                continue
            s = family.sup_pair(b1, a2)
            if strong:
                if not family.contains(s, b2):
                    continue
            elif s != b2:
                continue
            report.checked += 1
            v1, v2 = sf.eval((a1, b1)), sf.eval((a2, b2))
            if not sf.poset.leq(v1, v2):
                report.violations.append(((a1, b1), (a2, b2), v1, v2))
    report.passed = not report.violations
    return report


def validate_slope_inequality(
    sf: SlopeFunction, max_pairs: int | None = None
) -> ValidationReport:
    """Exhaustively check the slope inequality over all constrained pair combinations.

    The constraint selects ordered combinations of strict pairs whose
    sub-members meet in the first pair's sub and whose join is exactly the
    second pair's sup.
    """
    return _validate_inequality(sf, strong=False, max_pairs=max_pairs)


def validate_strong_slope_inequality(
    sf: SlopeFunction, max_pairs: int | None = None
) -> ValidationReport:
    """Same as the slope inequality with the join condition relaxed to containment."""
    return _validate_inequality(sf, strong=True, max_pairs=max_pairs)


def strengthen(sf: SlopeFunction) -> SlopeFunction:
    """Replace each slope by the supremum over enlargements of the sub-member.

    The result assigns to ``(A, B)`` the supremum of ``eval((A, F))`` over
    members ``A < F <= B``; it satisfies the strong slope inequality whenever
    the input satisfies the plain one, and it dominates the input pointwise.
    The table is materialized because downstream minimal-slope queries hit
    every pair repeatedly.
    """
    if not sf.poset.has_suprema:
        raise SupUnavailable(
            f"{sf.poset.kind} poset lacks suprema; cannot strengthen"
        )
    weak = sf.slope_inequality_report()
    if not weak.passed:
        raise WeakInequalityFails(
            f"input is not a slope function, witness: {weak.violations[0]}"
        )
    family = sf.family
    entries = {}
    for i, j in family.strict_pairs():
        values = [
            sf.eval((i, f)) for f in family.members_between(i, j) if f != i
        ]
        entries[(i, j)] = sf.poset.sup_set(values)
    return table_slope(family, sf.poset, entries, kind=f"max_over_subs({sf.kind})")


def validate_classical_axioms(
    family: AdmissibleFamily, labels: DegreeRankLabels
) -> ValidationReport:
    """Rank modularity and the degree parallelogram bound, over all member pairs.

    For members ``N, H``: ``rk(sup) + rk(inf) == rk(N) + rk(H)`` and
    ``deg(sup) + deg(inf) >= deg(N) + deg(H)``.  Together with strictly
    monotone ranks these make the quotient slope a slope function.
    """
    report = ValidationReport("classical_axioms", True, 0)
    if len(labels.rk) != len(family):
        raise ValueError("labels must cover every member")
    n = len(family)
    for i in range(n):
        for j in range(i + 1, n):
            s, m = family.sup_pair(i, j), family.inf_pair(i, j)
            report.checked += 1
            if labels.rk[s] + labels.rk[m] != labels.rk[i] + labels.rk[j]:
                report.violations.append((i, j, "rank_not_modular"))
            if labels.deg[s] + labels.deg[m] < labels.deg[i] + labels.deg[j]:
                report.violations.append((i, j, "degree_not_superadditive"))
    report.passed = not report.violations
    return report
