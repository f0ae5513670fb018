"""Brute-force verification of the filtration theory on small instances.

Everything here is re-derived from ``eval``/``mu_min`` and exhaustive
enumeration -- never from the engine's construction internals -- so the
oracle can certify the engine's outputs independently.  All iteration
orders are deterministic, so failing witnesses are stable across runs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

from .engine import Filtration, check_hn, destabilizer, hn_filtration, resolve_mode
from .errors import BudgetExceeded
from .family import AdmissibleFamily
from .slope import SlopeFunction


@dataclass(frozen=True)
class EnumerationBudget:
    """Hard limits for exhaustive enumeration; exceeding one aborts, never truncates."""

    max_members: int = 64
    max_filtrations: int = 10**6

    def __post_init__(self):
        if self.max_members < 1 or self.max_filtrations < 1:
            raise ValueError("budgets must be positive")


def enumerate_filtrations(
    family: AdmissibleFamily, budget: EnumerationBudget = EnumerationBudget()
) -> Iterator[Filtration]:
    """Yield every strictly increasing member chain from bottom to top.

    Chains of all lengths are produced (not only maximal ones), in
    lexicographic order over canonical member indices.
    """
    if len(family) > budget.max_members:
        raise BudgetExceeded(
            f"{len(family)} members exceed the enumeration budget of "
            f"{budget.max_members}"
        )
    produced = 0

    def extend(chain: list[int]) -> Iterator[Filtration]:
        nonlocal produced
        last = chain[-1]
        if last == family.top:
            produced += 1
            if produced > budget.max_filtrations:
                raise BudgetExceeded(
                    f"more than {budget.max_filtrations} filtrations"
                )
            yield tuple(chain)
            return
        for nxt in range(len(family)):
            if family.is_strict(last, nxt):
                chain.append(nxt)
                yield from extend(chain)
                chain.pop()

    yield from extend([family.bottom])


def count_filtrations_dp(family: AdmissibleFamily) -> int:
    """Chain count by dynamic programming over the inclusion order.

    Independent of :func:`enumerate_filtrations`; the two must agree.
    """
    n = len(family)
    ways = [0] * n
    ways[family.bottom] = 1
    for j in range(n):  # canonical order: subsets come before supersets
        if j == family.bottom:
            continue
        ways[j] = sum(ways[i] for i in range(n) if family.is_strict(i, j))
    return ways[family.top]


def all_hn_filtrations(
    sf: SlopeFunction,
    mode: str = "auto",
    budget: EnumerationBudget = EnumerationBudget(),
) -> list[Filtration]:
    """Every chain that passes the full filtration check in the given mode."""
    return [
        chain
        for chain in enumerate_filtrations(sf.family, budget)
        if check_hn(sf, chain, mode).passed
    ]


@dataclass
class DestabilizerCertificate:
    """Re-derivation of the two destabilizer properties plus slope maximality."""

    passed: bool
    semistable_ok: bool
    universal_ok: bool
    maximal_ok: bool
    failures: list = field(default_factory=list)


def certify_destabilizer(
    sf: SlopeFunction, sub: int, sup: int, candidate: int
) -> DestabilizerCertificate:
    """Check that ``candidate`` is a valid destabilizer for the interval.

    Quantifies over every member of the interval: the candidate over ``sub``
    must be semistable, must contain every member whose minimal slope is at
    least its own, and its minimal slope must be maximal among all interval
    members.
    """
    family, poset = sf.family, sf.poset
    failures = []
    if not (family.is_strict(sub, candidate) and family.contains(candidate, sup)):
        return DestabilizerCertificate(
            False, False, False, False, [("not_in_interval", candidate)]
        )
    base = sf.mu_min((sub, candidate))
    semistable_ok = True
    universal_ok = True
    maximal_ok = True
    for g in family.members_between(sub, sup):
        if g == sub:
            continue
        slope = sf.mu_min((sub, g))
        if family.contains(g, candidate) and poset.lt(base, slope):
            semistable_ok = False
            failures.append(("destabilized_by", g))
        if poset.leq(base, slope) and not family.contains(g, candidate):
            universal_ok = False
            failures.append(("not_contained", g))
        if poset.lt(base, slope):
            maximal_ok = False
            failures.append(("slope_not_maximal", g))
    return DestabilizerCertificate(
        semistable_ok and universal_ok and maximal_ok,
        semistable_ok,
        universal_ok,
        maximal_ok,
        failures,
    )


@dataclass
class SuiteResult:
    name: str
    applicable: bool
    passed: bool | None
    witnesses: list = field(default_factory=list)
    note: str = ""


@dataclass
class TheoremCertification:
    """Structured result of every exhaustive property suite on one instance."""

    suites: dict[str, SuiteResult]
    hn_count: int
    mode: str

    @property
    def all_passed(self) -> bool:
        """True when no suite with its hypotheses met has failed."""
        return all(
            s.passed for s in self.suites.values() if s.applicable
        )


def certify_theorems(
    sf: SlopeFunction,
    budget: EnumerationBudget = EnumerationBudget(),
    mode: str = "auto",
) -> TheoremCertification:
    """Run every exhaustive suite the instance's hypotheses allow.

    Suites whose hypotheses fail (for example the join bound without the
    strong slope inequality) are reported as not applicable, not as
    failures.
    """
    family, poset = sf.family, sf.poset
    mode = resolve_mode(sf, mode)
    weak = sf.slope_inequality_report().passed
    strong = sf.strong_inequality_report().passed
    suites: dict[str, SuiteResult] = {}

    def add(name, applicable, passed=None, witnesses=None, note=""):
        suites[name] = SuiteResult(
            name, applicable, passed, list(witnesses or []), note
        )

    # minimal-slope monotonicity holds for any total map: the infimum can
    # only shrink when its index set grows
    witnesses = []
    for e1 in range(len(family)):
        for h in family.members_between(family.bottom, e1):
            if h == e1:
                continue
            for e2 in family.members_between(family.bottom, h):
                if not poset.leq(sf.mu_min((e2, e1)), sf.mu_min((h, e1))):
                    witnesses.append((e2, h, e1))
    add("minimal_slope_monotonicity", True, not witnesses, witnesses)

    chains = list(enumerate_filtrations(family, budget))
    dp = count_filtrations_dp(family)
    add(
        "chain_count_agreement",
        True,
        len(chains) == dp,
        [] if len(chains) == dp else [(len(chains), dp)],
    )

    hn_chains = [c for c in chains if check_hn(sf, c, mode).passed]

    if strong:
        witnesses = []
        for h in range(len(family)):
            for v in range(len(family)):
                if not family.is_strict(h, v):
                    continue
                for w in range(len(family)):
                    if not family.is_strict(h, w):
                        continue
                    bound = poset.inf_set(
                        [sf.mu_min((h, v)), sf.mu_min((h, w))]
                    )
                    join = family.sup_pair(v, w)
                    if not poset.leq(bound, sf.mu_min((h, join))):
                        witnesses.append((h, v, w))
        add("join_slope_lower_bound", True, not witnesses, witnesses)

        witnesses = []
        for sub, sup in family.strict_pairs():
            candidate = destabilizer(sf, sub, sup, trusted=True)
            cert = certify_destabilizer(sf, sub, sup, candidate)
            if not cert.passed:
                witnesses.append(((sub, sup), candidate, cert.failures))
        add("destabilizer_certified", True, not witnesses, witnesses)

        report = hn_filtration(sf, mode)
        self_ok = check_hn(sf, report.filtration, mode).passed
        if mode == "total_order":
            # uniqueness: enumeration must find exactly the engine's chain
            member_ok = hn_chains == [report.filtration]
        else:
            member_ok = report.filtration in hn_chains
        add(
            "engine_oracle_agreement",
            True,
            self_ok and member_ok,
            [] if self_ok and member_ok else [report.filtration],
        )
    else:
        note = "strong slope inequality fails; hypotheses not met"
        add("join_slope_lower_bound", False, note=note)
        add("destabilizer_certified", False, note=note)
        add("engine_oracle_agreement", False, note=note)

    if poset.totally_ordered and weak:
        count = len(hn_chains)
        if strong:
            passed = count == 1
            note = "existence and uniqueness demand exactly one"
        else:
            passed = count <= 1
            note = "uniqueness demands at most one" + (
                " (vacuous: none exists)" if count == 0 else ""
            )
        add("hn_count_total_order", True, passed, [], note)
    else:
        add(
            "hn_count_total_order",
            False,
            note="needs a totally ordered poset and the slope inequality",
        )

    return TheoremCertification(suites, len(hn_chains), mode)
