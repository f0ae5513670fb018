from __future__ import annotations

import pytest

from hnlattice import (
    ExtendedRealPoset,
    build_cyclic,
    build_eigen,
    build_family,
    table_slope,
)


@pytest.fixture
def chain3():
    """Three-member chain 0 < L < M with slopes mu(L)=2, mu(M)=1, mu(M/L)=3.

    Satisfies the slope inequality but not the strong one; the only
    bottom-to-top chain of length two fails the decreasing condition, so no
    filtration qualifies until the slope is strengthened.
    """
    family = build_family(2, [[], [0], [0, 1]])
    poset = ExtendedRealPoset()
    slope = table_slope(family, poset, {(0, 1): 2, (0, 2): 1, (1, 2): 3})
    return family, poset, slope


@pytest.fixture
def boolean2():
    return build_family(2, [[], [0], [1], [0, 1]])


@pytest.fixture
def boolean3():
    subsets = [[i for i in range(3) if m >> i & 1] for m in range(8)]
    return build_family(3, subsets)


@pytest.fixture
def z6():
    return build_cyclic(6)


@pytest.fixture
def z12():
    return build_cyclic(12)


@pytest.fixture
def eigen_3312():
    return build_eigen([3, 3, 1, -2])
