"""Self-describing JSON instance files.

One schema covers every instance kind::

    {
      "ground_size": 6,
      "gamma": [[0], [0, 3], [0, 2, 4], [0, 1, 2, 3, 4, 5]],
      "lambda": {"kind": "reverse_inclusion", "universe": ["2", "3"]},
      "slope": {"kind": "prime_support"},
      "labels": {"deg": ["0", "1/2"], "rk": [0, 1]}          // optional
    }

``lambda`` kinds: ``extended_real`` (optional ``"numeric": "exact" | "float"``,
default exact, and ``"atol"`` for float mode), ``reverse_inclusion``
(``universe``: label list), ``explicit_finite`` (``elements`` plus an
``order`` 0/1 matrix).  ``slope`` kinds: ``table`` (``entries`` of
``{"sub": i, "sup": j, "value": ...}`` indexed into ``gamma`` as written),
``degree_rank`` (reads ``deg``/``rk`` from the slope object or from
``labels``), ``prime_support``, ``eigen`` (``eigenvalues``, one per ground
element).  Exact numbers are written as rational strings ``"p/q"``; float
mode uses JSON numbers.

Parsing canonicalizes member order, so parse -> serialize -> parse is the
identity on instances.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .errors import HNLatticeError, InstanceError
from .family import AdmissibleFamily, build_family
from .poset import (
    ExplicitFinitePoset,
    ExtendedRealPoset,
    PosetValue,
    ReverseInclusionPoset,
    ValuePoset,
)
from .slope import (
    DegreeRankLabels,
    SlopeFunction,
    degree_rank_slope,
    eigen_slope,
    prime_support_slope,
    table_slope,
)


@dataclass
class Instance:
    """A parsed (family, poset, slope) triple with optional degree/rank labels."""

    family: AdmissibleFamily
    poset: ValuePoset
    slope: SlopeFunction
    labels: DegreeRankLabels | None = None


def _parse_exact(raw, field):
    if isinstance(raw, bool):
        raise InstanceError(field, "expected a rational string or integer")
    if isinstance(raw, int):
        return Fraction(raw)
    if isinstance(raw, str):
        try:
            return Fraction(raw)
        except (ValueError, ZeroDivisionError) as exc:
            raise InstanceError(field, f"bad rational {raw!r}: {exc}") from None
    raise InstanceError(field, f"expected a rational string or integer, got {raw!r}")


def _parse_value(poset: ValuePoset, raw, field) -> PosetValue:
    try:
        if isinstance(poset, ExtendedRealPoset):
            if poset.exact:
                return poset.value(_parse_exact(raw, field))
            if isinstance(raw, (int, float)) and not isinstance(raw, bool):
                return poset.value(float(raw))
            raise InstanceError(field, f"expected a number, got {raw!r}")
        if isinstance(poset, ReverseInclusionPoset):
            if not isinstance(raw, list):
                raise InstanceError(field, f"expected a label list, got {raw!r}")
            return poset.value(str(x) for x in raw)
        if not isinstance(raw, str):
            raise InstanceError(field, f"expected an element label, got {raw!r}")
        return poset.value(raw)
    except ValueError as exc:
        raise InstanceError(field, str(exc)) from None


def _value_to_json(poset: ValuePoset, value: PosetValue):
    payload = value.payload
    if isinstance(poset, ExtendedRealPoset):
        return str(payload) if poset.exact else float(payload)
    if isinstance(poset, ReverseInclusionPoset):
        return sorted(payload)
    return payload


def _parse_poset(spec, field="lambda") -> ValuePoset:
    if not isinstance(spec, dict):
        raise InstanceError(field, "expected an object")
    kind = spec.get("kind")
    if kind == "extended_real":
        numeric = spec.get("numeric", "exact")
        if numeric not in ("exact", "float"):
            raise InstanceError(f"{field}.numeric", f"unknown numeric mode {numeric!r}")
        atol = spec.get("atol", 1e-9)
        return ExtendedRealPoset(exact=numeric == "exact", atol=atol)
    if kind == "reverse_inclusion":
        universe = spec.get("universe")
        if not isinstance(universe, list):
            raise InstanceError(f"{field}.universe", "expected a label list")
        return ReverseInclusionPoset(str(x) for x in universe)
    if kind == "explicit_finite":
        elements = spec.get("elements")
        order = spec.get("order")
        if not isinstance(elements, list) or not isinstance(order, list):
            raise InstanceError(
                f"{field}.elements", "explicit_finite needs elements and order"
            )
        try:
            return ExplicitFinitePoset(
                [str(x) for x in elements],
                [[bool(x) for x in row] for row in order],
            )
        except HNLatticeError as exc:
            raise InstanceError(f"{field}.order", str(exc)) from None
    raise InstanceError(f"{field}.kind", f"unknown poset kind {kind!r}")


def parse_instance(data: dict) -> Instance:
    """Validate a schema dict into an :class:`Instance`; errors name the field."""
    if not isinstance(data, dict):
        raise InstanceError("$", "instance must be an object")
    ground_size = data.get("ground_size")
    if not isinstance(ground_size, int) or isinstance(ground_size, bool):
        raise InstanceError("ground_size", "expected an integer")
    gamma = data.get("gamma")
    if not isinstance(gamma, list) or not all(isinstance(s, list) for s in gamma):
        raise InstanceError("gamma", "expected a list of element lists")
    try:
        family = build_family(ground_size, gamma)
    except HNLatticeError as exc:
        raise InstanceError("gamma", str(exc)) from None
    except ValueError as exc:
        raise InstanceError("gamma", str(exc)) from None

    # map positions in the file's gamma to canonical member indices
    def mask_of(subset):
        m = 0
        for e in subset:
            m |= 1 << int(e)
        return m

    position_to_index = [family.index_of(mask_of(s)) for s in gamma]

    poset = _parse_poset(data.get("lambda"))

    labels = None
    raw_labels = data.get("labels")
    if raw_labels is not None:
        if not isinstance(raw_labels, dict):
            raise InstanceError("labels", "expected an object")
        labels = _parse_labels(raw_labels, family, position_to_index, "labels")

    slope_spec = data.get("slope")
    if not isinstance(slope_spec, dict):
        raise InstanceError("slope", "expected an object")
    kind = slope_spec.get("kind")
    try:
        if kind == "table":
            entries = slope_spec.get("entries")
            if not isinstance(entries, list):
                raise InstanceError("slope.entries", "expected a list")
            table = {}
            for pos, entry in enumerate(entries):
                where = f"slope.entries[{pos}]"
                if not isinstance(entry, dict):
                    raise InstanceError(where, "expected an object")
                try:
                    sub = position_to_index[int(entry["sub"])]
                    sup = position_to_index[int(entry["sup"])]
                except (KeyError, ValueError, IndexError):
                    raise InstanceError(
                        where, "sub/sup must index the gamma list"
                    ) from None
                if "value" not in entry:
                    raise InstanceError(where, "missing value")
                table[(sub, sup)] = _parse_value(
                    poset, entry["value"], f"{where}.value"
                )
            slope = table_slope(family, poset, table)
        elif kind == "degree_rank":
            if "deg" in slope_spec or "rk" in slope_spec:
                labels = _parse_labels(slope_spec, family, position_to_index, "slope")
            if labels is None:
                raise InstanceError(
                    "slope", "degree_rank needs deg/rk here or under labels"
                )
            if not isinstance(poset, ExtendedRealPoset) or not poset.exact:
                raise InstanceError(
                    "lambda.kind", "degree_rank slopes need an exact extended_real poset"
                )
            slope = degree_rank_slope(family, labels)
        elif kind == "prime_support":
            if not isinstance(poset, ReverseInclusionPoset):
                raise InstanceError(
                    "lambda.kind", "prime_support needs a reverse_inclusion poset"
                )
            slope = prime_support_slope(family, poset)
        elif kind == "eigen":
            eigenvalues = slope_spec.get("eigenvalues")
            if not isinstance(eigenvalues, list) or len(eigenvalues) != ground_size:
                raise InstanceError(
                    "slope.eigenvalues", "expected one number per ground element"
                )
            if not isinstance(poset, ExtendedRealPoset) or poset.exact:
                raise InstanceError(
                    "lambda.kind",
                    'eigen slopes need {"kind": "extended_real", "numeric": "float"}',
                )
            slope = eigen_slope(family, [float(v) for v in eigenvalues], poset)
        else:
            raise InstanceError("slope.kind", f"unknown slope kind {kind!r}")
    except InstanceError:
        raise
    except (HNLatticeError, ValueError) as exc:
        raise InstanceError("slope", str(exc)) from None
    return Instance(family, poset, slope, labels)


def _parse_labels(container, family, position_to_index, field) -> DegreeRankLabels:
    deg_raw = container.get("deg")
    rk_raw = container.get("rk")
    if not isinstance(deg_raw, list) or not isinstance(rk_raw, list):
        raise InstanceError(f"{field}.deg", "labels need deg and rk lists")
    if len(deg_raw) != len(family) or len(rk_raw) != len(family):
        raise InstanceError(f"{field}.deg", "labels must cover every gamma member")
    deg: list = [None] * len(family)
    rk: list = [None] * len(family)
    for pos, (d, r) in enumerate(zip(deg_raw, rk_raw)):
        idx = position_to_index[pos]
        if isinstance(d, float):
            deg[idx] = d
        else:
            deg[idx] = _parse_exact(d, f"{field}.deg[{pos}]")
        if not isinstance(r, int) or isinstance(r, bool):
            raise InstanceError(f"{field}.rk[{pos}]", "expected an integer")
        rk[idx] = r
    return DegreeRankLabels(tuple(deg), tuple(rk))


def serialize_instance(instance: Instance) -> dict:
    """Canonical schema dict: gamma in canonical order, table entries sorted."""
    family, poset, slope = instance.family, instance.poset, instance.slope
    out: dict = {
        "ground_size": family.ground_size,
        "gamma": [list(e) for e in family.member_elements],
    }
    if isinstance(poset, ExtendedRealPoset):
        spec = {"kind": "extended_real", "numeric": "exact" if poset.exact else "float"}
        if not poset.exact:
            spec["atol"] = poset.atol
    elif isinstance(poset, ReverseInclusionPoset):
        spec = {"kind": "reverse_inclusion", "universe": sorted(poset.universe)}
    else:
        spec = {
            "kind": "explicit_finite",
            "elements": list(poset.elements),
            "order": [
                [1 if poset._payload_leq(a, b) else 0 for b in poset.elements]
                for a in poset.elements
            ],
        }
    out["lambda"] = spec
    kind = slope.kind
    if kind == "degree_rank":
        out["slope"] = {"kind": "degree_rank"}
    elif kind == "prime_support":
        out["slope"] = {"kind": "prime_support"}
    elif kind == "eigen":
        # recover per-atom values from single-element gains between members
        values = [0.0] * family.ground_size
        atom_values = {}
        for i, j in family.strict_pairs():
            gained = set(family.member_elements[j]) - set(family.member_elements[i])
            if len(gained) == 1:
                atom_values[gained.pop()] = float(slope.eval((i, j)).payload)
        for e, v in atom_values.items():
            values[e] = v
        out["slope"] = {"kind": "eigen", "eigenvalues": values}
    else:
        entries = [
            {
                "sub": i,
                "sup": j,
                "value": _value_to_json(poset, slope.eval((i, j))),
            }
            for i, j in family.strict_pairs()
        ]
        out["slope"] = {"kind": "table", "entries": entries}
    if instance.labels is not None:
        out["labels"] = {
            "deg": [
                float(d) if isinstance(d, float) else str(Fraction(d))
                for d in instance.labels.deg
            ],
            "rk": list(instance.labels.rk),
        }
    return out


def load_instance(path) -> Instance:
    """Parse an instance from a JSON file."""
    try:
        data = json.loads(Path(path).read_text())
    except OSError as exc:
        raise InstanceError("$", f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise InstanceError("$", f"invalid JSON: {exc}") from None
    return parse_instance(data)


def save_instance(instance: Instance, path):
    Path(path).write_text(json.dumps(serialize_instance(instance), indent=2) + "\n")
