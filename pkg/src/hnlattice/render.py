"""Report, DOT, CSV and figure emission.

All output is deterministic byte-for-byte for a given input: member order is
canonical, dictionaries are built in fixed order, and floats are printed
with 12 significant digits.
"""

from __future__ import annotations

from decimal import Context
from fractions import Fraction
from pathlib import Path

from .engine import HNCheck, HNReport
from .family import AdmissibleFamily
from .oracle import TheoremCertification
from .poset import ExtendedRealPoset, PosetValue, ReverseInclusionPoset, ValuePoset

_TWELVE = Context(prec=12)


def format_number(x) -> str:
    """12 significant digits; integers stay bare."""
    if isinstance(x, Fraction):
        if x.denominator == 1:
            return str(x.numerator)
        x = float(x)
    if isinstance(x, int):
        return str(x)
    if x == int(x):
        return str(int(x))
    return str(_TWELVE.create_decimal(repr(float(x))))


def value_to_json(poset: ValuePoset, value: PosetValue):
    payload = value.payload
    if isinstance(poset, ExtendedRealPoset):
        if payload is poset._top_payload():
            return "+inf"
        return str(payload) if poset.exact else float(payload)
    if isinstance(poset, ReverseInclusionPoset):
        return sorted(payload)
    return payload


def report_to_dict(report: HNReport, family: AdmissibleFamily, poset: ValuePoset) -> dict:
    return {
        "filtration": [list(e) for e in report.chain_elements(family)],
        "slopes": [value_to_json(poset, s) for s in report.step_slopes],
        "semistable": list(report.semistable),
        "mode": report.mode,
        "axiom_checks": dict(report.axiom_checks),
    }


def check_to_dict(check: HNCheck) -> dict:
    return {
        "passed": check.passed,
        "chain_valid": check.chain_valid,
        "reason": check.reason,
        "steps": [
            {
                "semistable": s.semistable,
                "witness": s.witness,
                "slope_ok": s.slope_ok,
            }
            for s in check.steps
        ],
    }


def certification_to_dict(cert: TheoremCertification) -> dict:
    return {
        "mode": cert.mode,
        "hn_count": cert.hn_count,
        "all_passed": cert.all_passed,
        "suites": {
            name: {
                "applicable": s.applicable,
                "passed": s.passed,
                "witnesses": [repr(w) for w in s.witnesses],
                "note": s.note,
            }
            for name, s in cert.suites.items()
        },
    }


def _covers(family: AdmissibleFamily) -> list[tuple[int, int]]:
    edges = []
    n = len(family)
    for i in range(n):
        for j in range(n):
            if not family.is_strict(i, j):
                continue
            if any(
                family.is_strict(i, k) and family.is_strict(k, j) for k in range(n)
            ):
                continue
            edges.append((i, j))
    return edges


def _node_label(family: AdmissibleFamily, k: int) -> str:
    elems = family.member_elements[k]
    return "{" + ",".join(str(e) for e in elems) + "}"


def hasse_dot(family: AdmissibleFamily, highlight: tuple[int, ...] = ()) -> str:
    """Hasse diagram of the family (cover relations only) as a DOT digraph.

    Members of ``highlight`` (a filtration chain, usually) are drawn
    double-circled.
    """
    marked = set(highlight)
    lines = [
        "digraph admissible_family {",
        "  rankdir=BT;",
        '  node [shape=ellipse, fontname="Helvetica"];',
    ]
    for k in range(len(family)):
        extra = ", peripheries=2" if k in marked else ""
        lines.append(f'  n{k} [label="{_node_label(family, k)}"{extra}];')
    for i, j in _covers(family):
        lines.append(f"  n{i} -> n{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def polygon_csv(vertices) -> str:
    """Hull vertices as ``rank,degree`` rows with 12 significant digits."""
    lines = ["rank,degree"]
    for r, d in vertices:
        lines.append(f"{format_number(r)},{format_number(d)}")
    return "\n".join(lines) + "\n"


def polygon_figure(points, vertices, path):
    """Render the (rank, degree) cloud and its upper hull to an image file."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(6, 4))
    xs = [float(r) for r, _ in points]
    ys = [float(d) for _, d in points]
    ax.scatter(xs, ys, color="tab:gray", zorder=2, label="members")
    hx = [float(r) for r, _ in vertices]
    hy = [float(d) for _, d in vertices]
    ax.plot(hx, hy, "o-", color="tab:blue", zorder=3, label="upper hull")
    ax.set_xlabel("rank")
    ax.set_ylabel("degree")
    ax.legend(loc="best")
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def write_text(path, text: str):
    Path(path).write_text(text)
