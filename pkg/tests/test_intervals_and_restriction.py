from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor

import pytest

from hnlattice import (
    certify_theorems,
    build_eigen,
    destabilizer,
    hn_filtration,
    parse_instance,
)


class TestSlopeRestriction:
    def test_values_carry_over_to_interval(self, z12):
        fam, sf = z12.family, z12.slope
        lo = z12.subgroup_index(6)
        sub = fam.interval_family(lo, fam.top)
        restricted = sf.restrict(sub)
        for i, j in sub.strict_pairs():
            parent_pair = (
                fam.index_of(sub.members[i]),
                fam.index_of(sub.members[j]),
            )
            assert restricted.eval((i, j)) == sf.eval(parent_pair)

    def test_interval_filtration_matches_bounds_based_destabilizer(self, z12):
        # recursing into an interval family reproduces the in-place interval
        # computation, step by step
        fam, sf = z12.family, z12.slope
        lo = z12.subgroup_index(6)
        sub = fam.interval_family(lo, fam.top)
        restricted = sf.restrict(sub)
        inner = destabilizer(restricted, sub.bottom, sub.top)
        outer = destabilizer(sf, lo, fam.top)
        assert sub.members[inner] == fam.members[outer]

    def test_restricted_mu_min_agrees(self, z6):
        fam, sf = z6.family, z6.slope
        sub = fam.interval_family(fam.bottom, fam.top)
        restricted = sf.restrict(sub)
        for i, j in sub.strict_pairs():
            assert restricted.mu_min((i, j)) == sf.mu_min((i, j))


def test_eigen_certification_up_to_six_distinct_values():
    # the Boolean lattice over six distinct eigenvalues has 64 members; every
    # suite must pass and the filtration is unique among all chains
    inst = build_eigen([8.0, 5.0, 4.0, 2.5, -1.0, -6.0])
    cert = certify_theorems(inst.slope)
    assert cert.all_passed
    assert cert.hn_count == 1
    report = hn_filtration(inst.slope)
    assert [s.payload for s in report.step_slopes] == list(inst.group_values)


def test_explicit_finite_poset_through_json():
    data = {
        "ground_size": 2,
        "gamma": [[], [0], [0, 1]],
        "lambda": {
            "kind": "explicit_finite",
            "elements": ["low", "mid", "high"],
            "order": [[1, 1, 1], [0, 1, 1], [0, 0, 1]],
        },
        "slope": {
            "kind": "table",
            "entries": [
                {"sub": 0, "sup": 1, "value": "high"},
                {"sub": 0, "sup": 2, "value": "high"},
                {"sub": 1, "sup": 2, "value": "low"},
            ],
        },
    }
    inst = parse_instance(data)
    assert inst.poset.totally_ordered
    report = hn_filtration(inst.slope)
    assert report.mode == "total_order"
    assert [s.payload for s in report.step_slopes] == ["high", "low"]
    # round-trip keeps the explicit order table
    from hnlattice import serialize_instance

    again = parse_instance(serialize_instance(inst))
    assert serialize_instance(again) == serialize_instance(inst)


def test_oracle_cli_exits_nonzero_on_suite_failure(tmp_path, monkeypatch, capsys):
    # theorem suites cannot fail mathematically, so exercise the exit wiring
    # by stubbing a failing certification
    import hnlattice.cli as cli
    from hnlattice.oracle import SuiteResult, TheoremCertification

    path = tmp_path / "z6.json"
    path.write_text(
        json.dumps(
            {
                "ground_size": 6,
                "gamma": [[0], [0, 3], [0, 2, 4], [0, 1, 2, 3, 4, 5]],
                "lambda": {"kind": "reverse_inclusion", "universe": ["2", "3"]},
                "slope": {"kind": "prime_support"},
            }
        )
    )
    failing = TheoremCertification(
        {"stub": SuiteResult("stub", True, False, [("w",)], "")}, 0, "partial_order"
    )
    monkeypatch.setattr(cli, "certify_theorems", lambda *a, **k: failing)
    assert cli.main(["oracle", str(path)]) == 3
    capsys.readouterr()


def test_concurrent_evaluation_is_stable(z12):
    sf = z12.slope
    pairs = z12.family.strict_pairs()
    expected = [sf.eval(p).payload for p in pairs]

    def worker(_):
        return [sf.eval(p).payload for p in reversed(pairs)] + [
            sf.mu_min(p).payload for p in pairs
        ]

    with ThreadPoolExecutor(max_workers=8) as pool:
        results = list(pool.map(worker, range(16)))
    assert all(r == results[0] for r in results)
    assert [sf.eval(p).payload for p in pairs] == expected
