"""Exception types shared across the package."""

from __future__ import annotations


class HNLatticeError(Exception):
    """Base class for every error raised by this package."""


class CrossPosetComparison(HNLatticeError):
    """Values from two different posets were compared."""


class InvalidPoset(HNLatticeError):
    """An explicit order table is not a partial order or has no greatest element."""


class NoInfimum(InvalidPoset):
    """Some pair of poset elements has no greatest lower bound."""


class SupUnavailable(HNLatticeError):
    """The value poset does not provide suprema, so sup-based operations refuse to run."""


class AdmissibilityError(HNLatticeError):
    """A subset collection failed admissibility validation.

    Carries every violation found (missing top/bottom, non-unique pairwise
    infima or suprema with incomparable witnesses) rather than only the first.
    """

    def __init__(self, violations):
        self.violations = tuple(violations)
        summary = "; ".join(str(v) for v in self.violations)
        super().__init__(f"not an admissible family: {summary}")

    def kinds(self):
        return {v.kind for v in self.violations}


class NotComparable(HNLatticeError):
    """Interval endpoints are not nested."""


class EmptyInterval(HNLatticeError):
    """An interval family needs strictly nested endpoints."""


class NonStrictPair(HNLatticeError):
    """Slope evaluation requires a strict admissible pair (proper containment)."""


class MissingTableEntry(HNLatticeError):
    """A table-backed slope does not cover every strict pair."""

    def __init__(self, missing):
        self.missing = tuple(missing)
        super().__init__(f"slope table lacks entries for strict pairs: {self.missing}")


class RankCollision(HNLatticeError):
    """Rank labels are not strictly increasing along a strict inclusion."""


class WeakInequalityFails(HNLatticeError):
    """The input of a sup-strengthening is not a slope function."""


class StrongInequalityUnverified(HNLatticeError):
    """A destabilizer was requested without a verified strong slope inequality."""


class StrongInequalityFails(HNLatticeError):
    """The engine refuses to build a filtration over a slope that fails the strong inequality."""

    def __init__(self, report):
        self.report = report
        witness = report.violations[0] if report.violations else None
        super().__init__(f"strong slope inequality fails, witness: {witness}")


class ClassicalAxiomsFail(HNLatticeError):
    """Degree/rank labels violate rank modularity or the degree parallelogram bound."""

    def __init__(self, report):
        self.report = report
        witness = report.violations[0] if report.violations else None
        super().__init__(f"classical degree/rank axioms fail, witness: {witness}")


class BudgetExceeded(HNLatticeError):
    """An enumeration or validation pass would exceed its stated budget; nothing was truncated."""


class NotSymmetric(HNLatticeError):
    """The eigenvalue path requires a symmetric matrix."""


class JacobiNoConvergence(HNLatticeError):
    """The rotation sweep cap was reached before the off-diagonal norm target."""


class KTooSmall(HNLatticeError):
    """The skewed-norm demonstration requires k > sqrt(2)."""


class InstanceError(HNLatticeError):
    """An instance file failed to parse; names the offending field."""

    def __init__(self, field, message):
        self.field = field
        super().__init__(f"{field}: {message}")


class NoLabels(HNLatticeError):
    """The requested operation needs degree/rank labels and the instance has none."""
