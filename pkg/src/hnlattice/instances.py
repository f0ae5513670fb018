"""Builders for the bundled concrete instances.

* cyclic groups Z/n: the divisor lattice of subgroups with prime-support
  slopes in a reverse-inclusion poset (the canonical source of
  incomparable-slope, non-unique filtrations);
* eigenvalue lattices: the Boolean lattice over grouped eigenvalues of a
  symmetric matrix, with max-eigenvalue slopes (the filtration recovers the
  spectral decomposition);
* the skewed-norm plane demo: a three-member chain exhibiting a polygon
  whose last slope differs from the quotient degree;
* generic degree/rank instances for the classical filtration.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import JacobiNoConvergence, KTooSmall, NotSymmetric
from .family import AdmissibleFamily, build_family
from .poset import ReverseInclusionPoset
from .slope import (
    DegreeRankLabels,
    SlopeFunction,
    check_rank_monotone,
    eigen_slope,
    prime_support_slope,
    validate_classical_axioms,
)


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


@dataclass
class CyclicGroupInstance:
    """Subgroup lattice of Z/n with prime-support slopes."""

    n: int
    family: AdmissibleFamily
    slope: SlopeFunction
    divisors: tuple[int, ...]

    @property
    def poset(self) -> ReverseInclusionPoset:
        return self.slope.poset

    def subgroup_index(self, d: int) -> int:
        """Canonical member index of the subgroup generated by ``d``."""
        mask = 0
        for k in range(0, self.n, d):
            mask |= 1 << k
        return self.family.index_of(mask)


def build_cyclic(n: int) -> CyclicGroupInstance:
    """One member per divisor ``d`` of ``n``: the subgroup of multiples of ``d``."""
    if n < 2:
        raise ValueError("n must be at least 2")
    divisors = _divisors(n)
    subsets = [range(0, n, d) for d in divisors]
    family = build_family(n, subsets)
    return CyclicGroupInstance(n, family, prime_support_slope(family), tuple(divisors))


@dataclass
class EigenInstance:
    """Boolean lattice over eigenvalue groups with max-eigenvalue slopes."""

    group_values: tuple[float, ...]  # descending, separated by > tolerance
    multiplicities: tuple[int, ...]
    family: AdmissibleFamily
    slope: SlopeFunction
    tolerance: float
    matrix: np.ndarray | None = None

    def subquotient_sizes(self, filtration: Sequence[int]) -> list[int]:
        """Summed multiplicities of the groups gained at each filtration step."""
        sizes = []
        for i, j in zip(filtration, filtration[1:]):
            gained = set(self.family.member_elements[j]) - set(
                self.family.member_elements[i]
            )
            sizes.append(sum(self.multiplicities[g] for g in gained))
        return sizes


def build_eigen(eigenvalues: Sequence[float], tol: float = 1e-9) -> EigenInstance:
    """Group eigenvalues within ``tol`` and build the full power-set lattice over groups."""
    if not eigenvalues:
        raise ValueError("at least one eigenvalue is required")
    ordered = sorted((float(v) for v in eigenvalues), reverse=True)
    groups: list[list[float]] = [[ordered[0]]]
    for v in ordered[1:]:
        if groups[-1][-1] - v <= tol:
            groups[-1].append(v)
        else:
            groups.append([v])
    values = tuple(sum(g) / len(g) for g in groups)
    mults = tuple(len(g) for g in groups)
    g = len(groups)
    subsets = [
        [i for i in range(g) if mask >> i & 1] for mask in range(1 << g)
    ]
    family = build_family(g, subsets)
    return EigenInstance(values, mults, family, eigen_slope(family, values), tol)


JACOBI_OFF_TARGET = 1e-10
JACOBI_MAX_SWEEPS = 50


def jacobi_eigenvalues(matrix: np.ndarray, tol: float = 1e-9) -> list[float]:
    """Spectrum of a symmetric matrix by cyclic Jacobi rotations.

    Sweeps zero out every off-diagonal entry in turn until the off-diagonal
    Frobenius norm drops below ``1e-10``; gives up after 50 sweeps.
    """
    a = np.array(matrix, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise NotSymmetric(f"expected a square matrix, got shape {a.shape}")
    if np.max(np.abs(a - a.T), initial=0.0) > tol:
        raise NotSymmetric("matrix is not symmetric within tolerance")
    a = (a + a.T) / 2.0
    n = a.shape[0]
    if n == 1:
        return [float(a[0, 0])]
    for _ in range(JACOBI_MAX_SWEEPS):
        off = math.sqrt(max(0.0, (a * a).sum() - (np.diag(a) ** 2).sum()))
        if off < JACOBI_OFF_TARGET:
            return sorted((float(v) for v in np.diag(a)), reverse=True)
        for p in range(n - 1):
            for q in range(p + 1, n):
                if abs(a[p, q]) <= JACOBI_OFF_TARGET / (n * n):
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * a[p, q])
                t = math.copysign(1.0, theta) / (
                    abs(theta) + math.sqrt(theta * theta + 1.0)
                )
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                rot = np.eye(n)
                rot[p, p] = rot[q, q] = c
                rot[p, q] = s
                rot[q, p] = -s
                a = rot.T @ a @ rot
    raise JacobiNoConvergence(
        f"off-diagonal norm still above {JACOBI_OFF_TARGET} after "
        f"{JACOBI_MAX_SWEEPS} sweeps"
    )


def build_eigen_from_matrix(matrix, tol: float = 1e-9) -> EigenInstance:
    """Eigen instance from a symmetric matrix via the Jacobi spectrum."""
    a = np.array(matrix, dtype=float)
    instance = build_eigen(jacobi_eigenvalues(a, tol), tol)
    instance.matrix = a
    return instance


@dataclass
class NormKInstance:
    """The plane lattice under the skewed norm, reduced to its 3-member chain.

    The interesting data: the total degree ``ln(sqrt(2)) - ln(k)`` computed
    from the determinant norm, the quotient norm ``k`` found numerically,
    and the resulting mismatch between the polygon's last slope and the
    quotient degree.
    """

    k: float
    deg_total: float
    sub_degree: float
    quotient_norm: float
    quotient_degree: float
    family: AdmissibleFamily
    labels: DegreeRankLabels

    def norm(self, a: float, b: float) -> float:
        return norm_k(self.k, a, b)

    def last_polygon_slope(self) -> float:
        from .engine import hn_polygon

        hull = hn_polygon(self.family, self.labels)
        (x1, y1), (x2, y2) = hull[-2], hull[-1]
        return (y2 - y1) / (x2 - x1)

    def smallest_grid_vectors(self, radius: int = 50) -> tuple[float, list[tuple[int, int]]]:
        """Minimal norm over nonzero integer vectors with coordinates in [-radius, radius].

        A bounded check only; the full lattice claim is not enumerable.
        """
        best = None
        argmins: list[tuple[int, int]] = []
        for a in range(-radius, radius + 1):
            for b in range(-radius, radius + 1):
                if a == 0 and b == 0:
                    continue
                v = self.norm(a, b)
                if best is None or v < best - 1e-12:
                    best, argmins = v, [(a, b)]
                elif abs(v - best) <= 1e-12:
                    argmins.append((a, b))
        return best, sorted(argmins)


def norm_k(k: float, a: float, b: float) -> float:
    """The skewed plane norm: hypot of the positive and negative parts of (a, kb)."""
    hi = max(a, k * b, 0.0)
    lo = min(a, k * b, 0.0)
    return math.sqrt(hi * hi + lo * lo)


def _golden_min(f, lo: float, hi: float, xtol: float = 1e-9) -> float:
    """Golden-section minimum of a unimodal (possibly flat) function on [lo, hi]."""
    inv = (math.sqrt(5.0) - 1.0) / 2.0
    x1 = hi - inv * (hi - lo)
    x2 = lo + inv * (hi - lo)
    f1, f2 = f(x1), f(x2)
    while hi - lo > xtol:
        if f1 <= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - inv * (hi - lo)
            f1 = f(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + inv * (hi - lo)
            f2 = f(x2)
    return min(f1, f2)


def minimize_quotient_norm(k: float) -> float:
    """Numerical minimum of ``t -> ||e2 + t e1||`` by grid scan plus refinement."""
    f = lambda t: norm_k(k, t, 1.0)
    grid = [(-4.0 * k) + i * (8.0 * k / 800) for i in range(801)]
    best = min(grid, key=f)
    step = 8.0 * k / 800
    return _golden_min(f, best - step, best + step)


def build_norm_k_demo(k: float) -> NormKInstance:
    """All derived quantities of the skewed-norm demonstration for ``k > sqrt(2)``."""
    if k <= math.sqrt(2.0):
        raise KTooSmall(f"k must exceed sqrt(2) = {math.sqrt(2.0):.6f}, got {k}")
    # determinant norm via the explicit factorization of e1 ^ e2
    det = norm_k(k, k, 1.0) * norm_k(k, 1.0, -1.0 / k) / 2.0
    deg_total = -math.log(det)
    quotient_norm = minimize_quotient_norm(k)
    family = build_family(2, [[], [0], [0, 1]])
    labels = DegreeRankLabels(deg=(0.0, 0.0, deg_total), rk=(0, 1, 2))
    return NormKInstance(
        k=float(k),
        deg_total=deg_total,
        sub_degree=0.0,
        quotient_norm=quotient_norm,
        quotient_degree=-math.log(quotient_norm),
        family=family,
        labels=labels,
    )


def build_degree_rank(
    ground_size: int,
    subsets: Sequence[Sequence[int]],
    deg: Sequence,
    rk: Sequence[int],
) -> tuple[AdmissibleFamily, DegreeRankLabels]:
    """A validated classical instance: family plus degree/rank labels.

    ``deg`` and ``rk`` are given in the same order as ``subsets`` and are
    remapped to the family's canonical member order.  Rejects label sets
    that break rank monotonicity or the classical axioms.
    """
    if not (len(subsets) == len(deg) == len(rk)):
        raise ValueError("subsets, deg and rk must have equal lengths")
    family = build_family(ground_size, subsets)
    ordered_deg: list = [None] * len(family)
    ordered_rk: list = [None] * len(family)
    for subset, d, r in zip(subsets, deg, rk):
        mask = 0
        for e in subset:
            mask |= 1 << int(e)
        idx = family.index_of(mask)
        ordered_deg[idx] = Fraction(d) if not isinstance(d, float) else d
        ordered_rk[idx] = int(r)
    labels = DegreeRankLabels(tuple(ordered_deg), tuple(ordered_rk))
    check_rank_monotone(family, labels)
    report = validate_classical_axioms(family, labels)
    if not report.passed:
        from .errors import ClassicalAxiomsFail

        raise ClassicalAxiomsFail(report)
    return family, labels
