"""Command-line frontend.

Exit codes are a stable contract: 0 success, 1 input or validation errors,
2 refused precondition (strong slope inequality fails and ``--trusted`` was
not given), 3 a requested validation or certification failed, 4 an
enumeration budget was exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .engine import check_hn, classical_hn, hn_filtration, hn_polygon
from .errors import (
    BudgetExceeded,
    HNLatticeError,
    InstanceError,
    NoLabels,
    StrongInequalityFails,
)
from .instances import (
    build_cyclic,
    build_eigen,
    build_eigen_from_matrix,
    build_norm_k_demo,
)
from .oracle import EnumerationBudget, certify_theorems
from .render import (
    certification_to_dict,
    format_number,
    hasse_dot,
    polygon_csv,
    polygon_figure,
    report_to_dict,
    write_text,
)
from .poset import ExtendedRealPoset
from .serialize import Instance, load_instance, save_instance
from .slope import (
    degree_rank_slope,
    strengthen,
    table_slope,
    validate_slope_inequality,
    validate_strong_slope_inequality,
)

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_REFUSED = 2
EXIT_FAILED = 3
EXIT_BUDGET = 4

_MODE = {"total": "total_order", "partial": "partial_order", "auto": "auto"}


def _print_report(instance: Instance, report, as_json: bool, self_check=None):
    payload = report_to_dict(report, instance.family, instance.slope.poset)
    if self_check is not None:
        payload["self_check"] = self_check.passed
    if as_json:
        print(json.dumps(payload, indent=2))
        return
    chain = " < ".join(
        "{" + ",".join(map(str, e)) + "}" for e in report.chain_elements(instance.family)
    )
    print(f"mode: {report.mode}")
    print(
        "axioms: "
        + " ".join(
            f"{k}={'pass' if v else 'fail'}" for k, v in report.axiom_checks.items()
        )
    )
    def fmt_slope(v):
        if isinstance(v, list):
            return "{" + ",".join(v) + "}"
        if isinstance(v, float):
            return format_number(v)
        return str(v)

    print(f"filtration: {chain}")
    print("slopes: " + ", ".join(fmt_slope(v) for v in payload["slopes"]))
    print("semistable: " + ", ".join("yes" if s else "no" for s in report.semistable))
    if self_check is not None:
        print(f"self_check: {'pass' if self_check.passed else 'fail'}")


def cmd_compute(args) -> int:
    instance = load_instance(args.path)
    mode = _MODE[args.mode]
    report = hn_filtration(instance.slope, mode=mode, trusted=args.trusted)
    self_check = (
        check_hn(instance.slope, report.filtration, mode) if args.trusted else None
    )
    _print_report(instance, report, args.json, self_check)
    if args.dot:
        write_text(args.dot, hasse_dot(instance.family, report.filtration))
    return EXIT_OK


def cmd_validate(args) -> int:
    instance = load_instance(args.path)
    validator = (
        validate_strong_slope_inequality if args.strong else validate_slope_inequality
    )
    report = validator(instance.slope, max_pairs=args.max_pairs)
    name = report.kind
    if report.passed:
        print(f"{name}: pass ({report.checked} constrained combinations)")
        return EXIT_OK
    print(f"{name}: fail ({len(report.violations)} violations)")
    family = instance.family

    def fmt(pair):
        a, b = pair
        return (
            "{" + ",".join(map(str, family.member_elements[b])) + "}"
            "/{" + ",".join(map(str, family.member_elements[a])) + "}"
        )

    for (p1, p2, v1, v2) in report.violations:
        print(f"  witness: mu({fmt(p1)}) = {v1} !<= mu({fmt(p2)}) = {v2}")
    return EXIT_FAILED


def cmd_oracle(args) -> int:
    instance = load_instance(args.path)
    budget = EnumerationBudget(max_filtrations=args.budget)
    cert = certify_theorems(instance.slope, budget, mode=_MODE[args.mode])
    print(json.dumps(certification_to_dict(cert), indent=2))
    return EXIT_OK if cert.all_passed else EXIT_FAILED


def cmd_polygon(args) -> int:
    instance = load_instance(args.path)
    if instance.labels is None:
        raise NoLabels("the instance carries no degree/rank labels")
    vertices = hn_polygon(instance.family, instance.labels)
    csv_text = polygon_csv(vertices)
    if args.csv:
        write_text(args.csv, csv_text)
    else:
        sys.stdout.write(csv_text)
    if args.plot:
        points = list(zip(instance.labels.rk, instance.labels.deg))
        polygon_figure(points, vertices, args.plot)
    return EXIT_OK


def _run_demo(instance: Instance, args) -> int:
    if args.emit:
        save_instance(instance, args.emit)
        print(f"instance written to {args.emit}", file=sys.stderr)
    mode = _MODE[args.mode]
    report = hn_filtration(instance.slope, mode=mode, trusted=args.trusted)
    self_check = (
        check_hn(instance.slope, report.filtration, mode) if args.trusted else None
    )
    _print_report(instance, report, args.json, self_check)
    return EXIT_OK


def cmd_demo_zn(args) -> int:
    inst = build_cyclic(args.n)
    return _run_demo(Instance(inst.family, inst.slope.poset, inst.slope), args)


def cmd_demo_eigen(args) -> int:
    if (args.eigs is None) == (args.matrix is None):
        raise InstanceError("eigen", "pass exactly one of --eigs or --matrix")
    if args.eigs is not None:
        values = [float(x) for x in args.eigs.split(",") if x.strip()]
        inst = build_eigen(values)
    else:
        matrix = np.loadtxt(args.matrix, delimiter=",", ndmin=2)
        inst = build_eigen_from_matrix(matrix)
    print(
        "eigenvalue groups: "
        + ", ".join(
            f"{format_number(v)} (x{m})"
            for v, m in zip(inst.group_values, inst.multiplicities)
        ),
        file=sys.stderr,
    )
    return _run_demo(Instance(inst.family, inst.slope.poset, inst.slope), args)


def cmd_demo_normk(args) -> int:
    inst = build_norm_k_demo(args.k)
    hull = hn_polygon(inst.family, inst.labels)
    last_slope = inst.last_polygon_slope()
    print(f"k: {format_number(inst.k)}")
    print(f"total_degree: {format_number(inst.deg_total)}")
    print(f"sublattice_degree: {format_number(inst.sub_degree)}")
    print(f"quotient_norm: {format_number(inst.quotient_norm)}")
    print(f"quotient_degree: {format_number(inst.quotient_degree)}")
    print(f"last_polygon_slope: {format_number(last_slope)}")
    print(f"mismatch: {format_number(last_slope - inst.quotient_degree)}")
    print("polygon:")
    sys.stdout.write(polygon_csv(hull))
    if args.emit:
        poset = ExtendedRealPoset(exact=False)
        entries = {}
        for i, j in inst.family.strict_pairs():
            d = inst.labels.deg[j] - inst.labels.deg[i]
            r = inst.labels.rk[j] - inst.labels.rk[i]
            entries[(i, j)] = poset.value(d / r)
        slope = table_slope(inst.family, poset, entries)
        save_instance(Instance(inst.family, poset, slope, inst.labels), args.emit)
        print(f"instance written to {args.emit}", file=sys.stderr)
    return EXIT_OK


def cmd_demo_degrank(args) -> int:
    instance = load_instance(args.path)
    if instance.labels is None:
        raise NoLabels("degrank demo needs an instance with labels")
    classical = classical_hn(instance.family, instance.labels)
    print("classical filtration:")
    _print_report(instance, classical, args.json)
    engine_report = hn_filtration(
        strengthen(degree_rank_slope(instance.family, instance.labels))
    )
    agree = engine_report.filtration == classical.filtration
    print(f"engine agreement: {'yes' if agree else 'no'}")
    return EXIT_OK if agree else EXIT_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hnlattice",
        description=(
            "Harder-Narasimhan filtrations over finite admissible subset "
            "lattices with poset-valued slopes"
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument(
            "--mode",
            choices=["total", "partial", "auto"],
            default="auto",
            help="slope chain condition (auto follows the poset's order type)",
        )
        p.add_argument(
            "--trusted",
            action="store_true",
            help="run even if the strong slope inequality fails, and self-check",
        )
        p.add_argument("--json", action="store_true", help="machine-readable report")

    p = sub.add_parser("compute", help="build the filtration of an instance file")
    p.add_argument("path")
    add_common(p)
    p.add_argument("--dot", metavar="FILE", help="write the Hasse diagram as DOT")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("validate", help="check the slope inequality axioms")
    p.add_argument("path")
    p.add_argument("--strong", action="store_true")
    p.add_argument(
        "--max-pairs",
        type=int,
        default=None,
        help="abort (exit 4) if the exhaustive check would exceed this many combinations",
    )
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("oracle", help="run the brute-force certification suites")
    p.add_argument("path")
    p.add_argument("--budget", type=int, default=10**6, help="max filtrations to enumerate")
    p.add_argument("--mode", choices=["total", "partial", "auto"], default="auto")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("polygon", help="upper hull of the (rank, degree) points")
    p.add_argument("path")
    p.add_argument("--csv", metavar="FILE", help="write vertices as CSV")
    p.add_argument("--plot", metavar="FILE", help="render the polygon figure (png/svg)")
    p.set_defaults(func=cmd_polygon)

    demo = sub.add_parser("demo", help="bundled instances").add_subparsers(
        dest="demo", required=True
    )

    p = demo.add_parser("zn", help="subgroup lattice of Z/n with prime-support slopes")
    p.add_argument("n", type=int)
    p.add_argument("--emit", metavar="FILE", help="write the instance file")
    add_common(p)
    p.set_defaults(func=cmd_demo_zn)

    p = demo.add_parser("eigen", help="eigenvalue lattice of a symmetric matrix")
    p.add_argument("--eigs", help="comma-separated eigenvalues, e.g. 3,3,1,-2")
    p.add_argument("--matrix", help="CSV file with a symmetric matrix")
    p.add_argument("--emit", metavar="FILE")
    add_common(p)
    p.set_defaults(func=cmd_demo_eigen)

    p = demo.add_parser("normk", help="skewed-norm polygon mismatch demo")
    p.add_argument("--k", type=float, required=True)
    p.add_argument("--emit", metavar="FILE")
    p.set_defaults(func=cmd_demo_normk)

    p = demo.add_parser("degrank", help="classical degree/rank filtration comparison")
    p.add_argument("path")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_demo_degrank)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except StrongInequalityFails as exc:
        print(f"refused: {exc}", file=sys.stderr)
        print("pass --trusted to run anyway and self-check the result", file=sys.stderr)
        return EXIT_REFUSED
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except InstanceError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (HNLatticeError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
