"""Partially ordered value sets for slope functions.

Slope values live in a poset with a greatest element in which every finite
collection of values has an infimum.  Three kinds are provided:

* ``extended_real`` -- rationals (exact) or floats (tolerance equality),
  totally ordered, with an adjoined greatest element ``+inf``;
* ``reverse_inclusion`` -- subsets of a finite label universe ordered by
  reverse containment (``a <= b`` iff ``a`` is a superset of ``b``), so the
  empty set is the greatest element, infima are unions and suprema are
  intersections;
* ``explicit_finite`` -- an arbitrary finite order given as a relation
  table, validated exhaustively at construction so that ``inf_set`` is total
  at call time.

Posets and their values are immutable; every operation is pure.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .errors import CrossPosetComparison, InvalidPoset, NoInfimum, SupUnavailable


class _PlusInfinity:
    """Singleton payload for the adjoined greatest element of ``extended_real``."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "+inf"


PLUS_INFINITY = _PlusInfinity()


class PosetValue:
    """A value tagged with the poset it belongs to.

    Comparing values from different posets is an error, not ``False``:
    equality raises :class:`CrossPosetComparison` when the posets differ.
    Values are intentionally unhashable because float-mode equality is
    tolerance based.
    """

    __slots__ = ("poset", "payload")

    def __init__(self, poset: ValuePoset, payload):
        self.poset = poset
        self.payload = payload

    def __eq__(self, other):
        if not isinstance(other, PosetValue):
            return NotImplemented
        if other.poset is not self.poset:
            raise CrossPosetComparison(
                f"cannot compare {self!r} with value from a different poset"
            )
        return self.poset.payloads_equal(self.payload, other.payload)

    __hash__ = None

    def __repr__(self):
        return f"PosetValue({self.poset.format_payload(self.payload)})"


class ValuePoset:
    """Base class: order tests, infima of finite collections, optional suprema."""

    kind: str
    has_suprema: bool
    totally_ordered: bool

    # -- payload plumbing ---------------------------------------------------

    def value(self, payload) -> PosetValue:
        """Wrap and validate a raw payload as a value of this poset."""
        return PosetValue(self, self._check_payload(payload))

    def top_value(self) -> PosetValue:
        """The greatest element."""
        return PosetValue(self, self._top_payload())

    def _claim(self, v: PosetValue):
        if not isinstance(v, PosetValue) or v.poset is not self:
            raise CrossPosetComparison(f"{v!r} does not belong to this poset")
        return v.payload

    def _check_payload(self, payload):
        raise NotImplementedError

    def _top_payload(self):
        raise NotImplementedError

    def payloads_equal(self, a, b) -> bool:
        raise NotImplementedError

    def _payload_leq(self, a, b) -> bool:
        raise NotImplementedError

    def format_payload(self, payload) -> str:
        return repr(payload)

    # -- order operations ---------------------------------------------------

    def leq(self, a: PosetValue, b: PosetValue) -> bool:
        """True iff ``a <= b``."""
        return self._payload_leq(self._claim(a), self._claim(b))

    def not_leq(self, a: PosetValue, b: PosetValue) -> bool:
        """True iff ``a <= b`` fails: either ``b < a`` or the two are incomparable."""
        return not self.leq(a, b)

    def lt(self, a: PosetValue, b: PosetValue) -> bool:
        """Strict order: ``a <= b`` and ``a != b``."""
        pa, pb = self._claim(a), self._claim(b)
        return self._payload_leq(pa, pb) and not self.payloads_equal(pa, pb)

    def inf_set(self, values: Iterable[PosetValue]) -> PosetValue:
        """Greatest lower bound of a finite collection.

        The empty collection returns the greatest element, matching the
        convention that the minimal slope of nothing is ``+inf``.
        """
        payloads = [self._claim(v) for v in values]
        if not payloads:
            return self.top_value()
        return PosetValue(self, self._inf_payloads(payloads))

    def sup_set(self, values: Iterable[PosetValue]) -> PosetValue:
        """Least upper bound of a nonempty collection, if this poset has suprema."""
        if not self.has_suprema:
            raise SupUnavailable(f"{self.kind} poset was built without suprema")
        payloads = [self._claim(v) for v in values]
        if not payloads:
            raise ValueError("sup_set of an empty collection is undefined")
        return PosetValue(self, self._sup_payloads(payloads))

    def _inf_payloads(self, payloads):
        raise NotImplementedError

    def _sup_payloads(self, payloads):
        raise NotImplementedError


class ExtendedRealPoset(ValuePoset):
    """Totally ordered numbers with ``+inf`` adjoined.

    Two numeric modes exist and are never mixed within one poset: exact
    (``Fraction`` payloads, default) and float (``atol``-based equality,
    used by the eigenvalue and skewed-norm instances).
    """

    kind = "extended_real"
    has_suprema = True
    totally_ordered = True

    def __init__(self, exact: bool = True, atol: float = 1e-9):
        self.exact = exact
        self.atol = 0.0 if exact else float(atol)

    def _check_payload(self, payload):
        if payload is PLUS_INFINITY:
            return payload
        if self.exact:
            if isinstance(payload, (int, Fraction)) and not isinstance(payload, bool):
                return Fraction(payload)
            raise TypeError(f"exact poset takes int/Fraction payloads, got {payload!r}")
        if isinstance(payload, (int, float)) and not isinstance(payload, bool):
            return float(payload)
        raise TypeError(f"float poset takes numeric payloads, got {payload!r}")

    def _top_payload(self):
        return PLUS_INFINITY

    def payloads_equal(self, a, b):
        if a is PLUS_INFINITY or b is PLUS_INFINITY:
            return a is b
        if self.exact:
            return a == b
        return abs(a - b) <= self.atol

    def _payload_leq(self, a, b):
        if b is PLUS_INFINITY:
            return True
        if a is PLUS_INFINITY:
            return False
        return a <= b or self.payloads_equal(a, b)

    def _inf_payloads(self, payloads):
        finite = [p for p in payloads if p is not PLUS_INFINITY]
        if not finite:
            return PLUS_INFINITY
        return min(finite)

    def _sup_payloads(self, payloads):
        if any(p is PLUS_INFINITY for p in payloads):
            return PLUS_INFINITY
        return max(payloads)

    def format_payload(self, payload):
        return str(payload)


class ReverseInclusionPoset(ValuePoset):
    """Subsets of a finite label universe under reverse containment.

    ``a <= b`` iff ``a`` contains ``b``; the empty set is the greatest
    element, the infimum of a collection is its union and the supremum its
    intersection.  Labels are arbitrary strings.
    """

    kind = "reverse_inclusion"
    has_suprema = True
    totally_ordered = False

    def __init__(self, universe: Iterable[str]):
        labels = tuple(universe)
        if len(set(labels)) != len(labels):
            raise InvalidPoset(f"duplicate universe labels: {labels}")
        self.universe = frozenset(labels)

    def _check_payload(self, payload):
        subset = frozenset(payload)
        stray = subset - self.universe
        if stray:
            raise ValueError(f"labels outside the universe: {sorted(stray)}")
        return subset

    def _top_payload(self):
        return frozenset()

    def payloads_equal(self, a, b):
        return a == b

    def _payload_leq(self, a, b):
        return a >= b

    def _inf_payloads(self, payloads):
        out = frozenset()
        for p in payloads:
            out |= p
        return out

    def _sup_payloads(self, payloads):
        out = payloads[0]
        for p in payloads[1:]:
            out &= p
        return out

    def format_payload(self, payload):
        return "{" + ",".join(sorted(payload)) + "}"


class ExplicitFinitePoset(ValuePoset):
    """A finite order given by element labels and a relation matrix.

    The matrix is validated eagerly: reflexivity, antisymmetry, transitivity,
    a greatest element, and meets for every pair (which makes every finite
    nonempty subset meet-complete).  Joins are also materialized; if any pair
    lacks one, the poset is still valid but flags itself as having no suprema.
    """

    kind = "explicit_finite"

    def __init__(self, elements: Sequence[str], order: Sequence[Sequence[bool]]):
        self.elements = tuple(elements)
        n = len(self.elements)
        if n == 0:
            raise InvalidPoset("explicit poset needs at least one element")
        if len(set(self.elements)) != n:
            raise InvalidPoset("duplicate element labels")
        if len(order) != n or any(len(row) != n for row in order):
            raise InvalidPoset(f"order matrix must be {n}x{n}")
        self._index = {label: i for i, label in enumerate(self.elements)}
        # up[i] = bitmask of j with i <= j
        up = [0] * n
        for i in range(n):
            for j in range(n):
                if order[i][j]:
                    up[i] |= 1 << j
        for i in range(n):
            if not up[i] >> i & 1:
                raise InvalidPoset(f"order not reflexive at {self.elements[i]!r}")
            for j in range(n):
                if i != j and up[i] >> j & 1 and up[j] >> i & 1:
                    raise InvalidPoset(
                        f"order not antisymmetric at {self.elements[i]!r}, {self.elements[j]!r}"
                    )
                if up[i] >> j & 1 and up[j] & ~up[i]:
                    raise InvalidPoset(
                        f"order not transitive through {self.elements[i]!r} <= {self.elements[j]!r}"
                    )
        self._up = up
        self._down = [0] * n
        for i in range(n):
            for j in range(n):
                if up[i] >> j & 1:
                    self._down[j] |= 1 << i
        greatest = ~0
        for i in range(n):
            greatest &= up[i]
        greatest &= (1 << n) - 1
        if not greatest:
            raise InvalidPoset("no greatest element")
        self._top = greatest.bit_length() - 1
        self._meet = self._binary_table(self._down, self._up, meets=True)
        try:
            self._join = self._binary_table(self._up, self._down, meets=False)
            self.has_suprema = True
        except NoInfimum:
            self._join = None
            self.has_suprema = False
        self.totally_ordered = all(
            up[i] >> j & 1 or up[j] >> i & 1 for i in range(n) for j in range(n)
        )

    def _binary_table(self, side, opposite, meets: bool):
        # meet(i, j): the unique common lower bound above all common lower bounds
        n = len(self.elements)
        table = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                common = side[i] & side[j]
                best = common
                k = common
                while k:
                    low = k & -k
                    best &= opposite[low.bit_length() - 1]
                    k ^= low
                best &= common
                if not best:
                    word = "meet" if meets else "join"
                    raise NoInfimum(
                        f"no {word} for {self.elements[i]!r}, {self.elements[j]!r}"
                    )
                table[i][j] = best.bit_length() - 1
        return table

    def _check_payload(self, payload):
        if payload not in self._index:
            raise ValueError(f"unknown element {payload!r}")
        return payload

    def _top_payload(self):
        return self.elements[self._top]

    def payloads_equal(self, a, b):
        return a == b

    def _payload_leq(self, a, b):
        return self._up[self._index[a]] >> self._index[b] & 1 == 1

    def _fold(self, payloads, table):
        acc = self._index[payloads[0]]
        for p in payloads[1:]:
            acc = table[acc][self._index[p]]
        return self.elements[acc]

    def _inf_payloads(self, payloads):
        return self._fold(payloads, self._meet)

    def _sup_payloads(self, payloads):
        return self._fold(payloads, self._join)

    def format_payload(self, payload):
        return str(payload)
