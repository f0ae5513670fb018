"""Semistability, destabilizers, Harder-Narasimhan filtrations, and polygons.

A pair ``B/A`` is semistable when no intermediate member has a strictly
larger minimal slope.  The destabilizer of an interval is the largest
sub-member realizing the maximal minimal slope; iterating it from the bottom
produces a filtration whose steps are semistable and whose consecutive
minimal slopes are never comparable upwards (strictly decreasing when the
value poset is totally ordered).

The engine refuses to run over a slope function that fails the strong slope
inequality -- the hypothesis is necessary, and surfacing that is a feature --
unless the caller explicitly passes ``trusted=True``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import ClassicalAxiomsFail, StrongInequalityFails
from .family import AdmissibleFamily
from .poset import ExtendedRealPoset, PosetValue
from .slope import (
    DegreeRankLabels,
    Pair,
    SlopeFunction,
    check_rank_monotone,
    validate_classical_axioms,
)

Filtration = tuple[int, ...]

MODES = ("total_order", "partial_order", "auto")


def resolve_mode(sf: SlopeFunction, mode: str) -> str:
    """``auto`` picks the filtration mode from the value poset's order type."""
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    if mode != "auto":
        return mode
    return "total_order" if sf.poset.totally_ordered else "partial_order"


@dataclass
class HNReport:
    """A filtration with its per-step minimal slopes and certificates."""

    filtration: Filtration
    step_slopes: list[PosetValue]
    semistable: list[bool]
    mode: str
    axiom_checks: dict[str, bool]

    def chain_elements(self, family: AdmissibleFamily) -> list[tuple[int, ...]]:
        return [family.member_elements[k] for k in self.filtration]


@dataclass
class StepVerdict:
    semistable: bool
    witness: int | None
    slope_ok: bool | None  # None for the last step (no successor)


@dataclass
class HNCheck:
    """Detailed verdict of a candidate filtration against the HN conditions."""

    passed: bool
    chain_valid: bool
    steps: list[StepVerdict] = field(default_factory=list)
    reason: str | None = None


def is_semistable(sf: SlopeFunction, pair: Pair) -> tuple[bool, int | None]:
    """Whether no intermediate member destabilizes the pair; witness on failure.

    The witness is the first member ``F`` in canonical order with
    ``mu_min(F/sub)`` strictly larger than ``mu_min(sup/sub)``.
    """
    sub, sup = pair
    base = sf.mu_min(pair)
    for f in sf.family.members_between(sub, sup):
        if f == sub:
            continue
        if sf.poset.lt(base, sf.mu_min((sub, f))):
            return False, f
    return True, None


def destabilizer(
    sf: SlopeFunction, sub: int, sup: int, trusted: bool = False
) -> int:
    """The largest member of ``(sub, sup]`` with maximal minimal slope over ``sub``.

    Follows the finite ascent/descent argument: while the current interval
    top is not semistable, take the first witness with a strictly larger
    minimal slope, enlarge it greedily while some strict superset keeps the
    minimal slope at least as large (the ascent terminates by finiteness and
    can never reach the interval top), then shrink the interval to the
    enlarged member.  Ties are broken by the family's canonical member
    order, so the output is deterministic even when the value poset is only
    partially ordered.
    """
    if not sf.family.is_strict(sub, sup):
        raise ValueError("destabilizer needs a strict pair")
    if not trusted:
        sf.require_strong()
    family, poset = sf.family, sf.poset
    while True:
        ok, witness = is_semistable(sf, (sub, sup))
        if ok:
            return sup
        current = witness
        improved = True
        while improved:
            improved = False
            bar = sf.mu_min((sub, current))
            for w in family.members_between(sub, sup):
                if family.is_strict(current, w) and poset.leq(
                    bar, sf.mu_min((sub, w))
                ):
                    current = w
                    improved = True
                    break
        sup = current


def hn_filtration(
    sf: SlopeFunction, mode: str = "auto", trusted: bool = False
) -> HNReport:
    """Build the filtration by iterating the destabilizer from the bottom.

    Raises :class:`StrongInequalityFails` when the strong slope inequality
    fails and ``trusted`` is not set; with ``trusted`` the construction runs
    anyway and the report's axiom checks record the failure, so callers can
    see whether the output still verifies.
    """
    mode = resolve_mode(sf, mode)
    strong = sf.strong_inequality_report()
    if not strong.passed and not trusted:
        raise StrongInequalityFails(strong)
    family = sf.family
    chain = [family.bottom]
    while chain[-1] != family.top:
        chain.append(destabilizer(sf, chain[-1], family.top, trusted=True))
    pairs = list(zip(chain, chain[1:]))
    return HNReport(
        filtration=tuple(chain),
        step_slopes=[sf.mu_min(p) for p in pairs],
        semistable=[is_semistable(sf, p)[0] for p in pairs],
        mode=mode,
        axiom_checks={
            "slope_inequality": sf.slope_inequality_report().passed,
            "strong_slope_inequality": strong.passed,
        },
    )


def check_hn(sf: SlopeFunction, filtration: Filtration, mode: str = "auto") -> HNCheck:
    """Verify a candidate filtration: semistable steps plus the slope chain condition.

    In ``total_order`` mode consecutive minimal slopes must strictly
    decrease; in ``partial_order`` mode each must fail to be below its
    successor.
    """
    mode = resolve_mode(sf, mode)
    family, poset = sf.family, sf.poset
    chain = list(filtration)
    if (
        len(chain) < 2
        or chain[0] != family.bottom
        or chain[-1] != family.top
        or any(not family.is_strict(i, j) for i, j in zip(chain, chain[1:]))
    ):
        return HNCheck(False, False, reason="not a bottom-to-top strict chain")
    pairs = list(zip(chain, chain[1:]))
    slopes = [sf.mu_min(p) for p in pairs]
    steps = []
    for idx, p in enumerate(pairs):
        ss, witness = is_semistable(sf, p)
        if idx + 1 < len(pairs):
            if mode == "total_order":
                slope_ok = poset.lt(slopes[idx + 1], slopes[idx])
            else:
                slope_ok = poset.not_leq(slopes[idx], slopes[idx + 1])
        else:
            slope_ok = None
        steps.append(StepVerdict(ss, witness, slope_ok))
    passed = all(s.semistable and s.slope_ok is not False for s in steps)
    return HNCheck(passed, True, steps)


def hn_polygon(
    family: AdmissibleFamily, labels: DegreeRankLabels
) -> list[tuple[object, object]]:
    """Upper convex hull of the ``(rank, degree)`` cloud of all members.

    Vertices come back sorted by rank with non-increasing slopes between
    consecutive ones; collinear interior points are dropped, so a fully
    collinear cloud reduces to its endpoints.  Works with exact fractions
    and with floats.
    """
    if len(labels.rk) != len(family):
        raise ValueError("labels must cover every member")
    best: dict[object, object] = {}
    for r, d in zip(labels.rk, labels.deg):
        if r not in best or d > best[r]:
            best[r] = d
    points = sorted(best.items())
    hull: list[tuple[object, object]] = []
    for p in points:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (x2 - x1) * (p[1] - y1) - (y2 - y1) * (p[0] - x1) >= 0:
                hull.pop()
            else:
                break
        hull.append(p)
    return hull


def classical_hn(
    family: AdmissibleFamily, labels: DegreeRankLabels
) -> HNReport:
    """The classical filtration through largest maximal-slope sub-members.

    Each step picks, inside the interval above the current member, the
    unique largest member achieving the maximal quotient slope; the degree
    parallelogram bound makes the maximizer set closed under suprema, so the
    fold below is safe.  Step slopes strictly decrease.
    """
    axioms = validate_classical_axioms(family, labels)
    if not axioms.passed:
        raise ClassicalAxiomsFail(axioms)
    check_rank_monotone(family, labels)
    deg = [Fraction(d) if not isinstance(d, float) else d for d in labels.deg]
    poset = ExtendedRealPoset(exact=all(not isinstance(d, float) for d in deg))
    chain = [family.bottom]
    slopes: list[PosetValue] = []
    while chain[-1] != family.top:
        base = chain[-1]
        candidates = [
            f for f in family.members_between(base, family.top) if f != base
        ]
        mu = {
            f: (deg[f] - deg[base]) / (labels.rk[f] - labels.rk[base])
            for f in candidates
        }
        peak = max(mu.values())
        top_of = None
        for f in candidates:
            if mu[f] == peak:
                top_of = f if top_of is None else family.sup_pair(top_of, f)
        assert mu[top_of] == peak, "maximizers must be closed under suprema"
        chain.append(top_of)
        slopes.append(poset.value(peak))
    pairs = list(zip(chain, chain[1:]))
    return HNReport(
        filtration=tuple(chain),
        step_slopes=slopes,
        semistable=[True] * len(pairs),
        mode="total_order",
        axiom_checks={"classical_axioms": True},
    )
