from __future__ import annotations

import json
import subprocess
import sys

import pytest

from hnlattice import parse_instance, serialize_instance
from hnlattice.cli import main
from hnlattice.errors import InstanceError

COUNTEREXAMPLE = {
    "ground_size": 2,
    "gamma": [[], [0], [0, 1]],
    "lambda": {"kind": "extended_real"},
    "slope": {
        "kind": "table",
        "entries": [
            {"sub": 0, "sup": 1, "value": 2},
            {"sub": 0, "sup": 2, "value": 1},
            {"sub": 1, "sup": 2, "value": 3},
        ],
    },
}

Z6 = {
    "ground_size": 6,
    "gamma": [[0], [0, 3], [0, 2, 4], [0, 1, 2, 3, 4, 5]],
    "lambda": {"kind": "reverse_inclusion", "universe": ["2", "3"]},
    "slope": {"kind": "prime_support"},
}

DEGRANK = {
    "ground_size": 2,
    "gamma": [[], [0], [1], [0, 1]],
    "lambda": {"kind": "extended_real"},
    "slope": {"kind": "degree_rank"},
    "labels": {"deg": ["0", "2", "1", "3"], "rk": [0, 1, 1, 2]},
}

EIGEN = {
    "ground_size": 3,
    "gamma": [[], [0], [1], [2], [0, 1], [0, 2], [1, 2], [0, 1, 2]],
    "lambda": {"kind": "extended_real", "numeric": "float"},
    "slope": {"kind": "eigen", "eigenvalues": [3.0, 1.0, -2.0]},
}


class TestRoundTrip:
    @pytest.mark.parametrize(
        "data", [COUNTEREXAMPLE, Z6, DEGRANK, EIGEN], ids=["table", "zn", "degrank", "eigen"]
    )
    def test_parse_serialize_parse_is_identity(self, data):
        once = serialize_instance(parse_instance(data))
        twice = serialize_instance(parse_instance(once))
        assert once == twice

    def test_gamma_order_is_canonicalized(self):
        shuffled = dict(Z6, gamma=[[0, 1, 2, 3, 4, 5], [0, 2, 4], [0], [0, 3]])
        assert serialize_instance(parse_instance(shuffled)) == serialize_instance(
            parse_instance(Z6)
        )

    def test_table_indices_follow_the_file_order(self):
        # gamma listed top-first: entry indices refer to positions in the file
        data = {
            "ground_size": 2,
            "gamma": [[0, 1], [0], []],
            "lambda": {"kind": "extended_real"},
            "slope": {
                "kind": "table",
                "entries": [
                    {"sub": 2, "sup": 1, "value": 2},
                    {"sub": 2, "sup": 0, "value": 1},
                    {"sub": 1, "sup": 0, "value": 3},
                ],
            },
        }
        inst = parse_instance(data)
        assert inst.slope.eval((0, 1)).payload == 2
        assert inst.slope.eval((0, 2)).payload == 1


class TestParseErrors:
    @pytest.mark.parametrize(
        "mutate,field",
        [
            (lambda d: d.pop("ground_size"), "ground_size"),
            (lambda d: d.update(gamma="nope"), "gamma"),
            (lambda d: d.update({"lambda": {"kind": "mystery"}}), "lambda.kind"),
            (
                lambda d: d["slope"]["entries"].pop(),
                "slope",
            ),
            (
                lambda d: d["slope"]["entries"][0].pop("value"),
                "slope.entries[0]",
            ),
        ],
    )
    def test_errors_name_the_offending_field(self, mutate, field):
        data = json.loads(json.dumps(COUNTEREXAMPLE))
        mutate(data)
        with pytest.raises(InstanceError) as exc:
            parse_instance(data)
        assert field in str(exc.value)

    def test_bad_rational_label(self):
        data = json.loads(json.dumps(DEGRANK))
        data["labels"]["deg"][1] = "2/0"
        with pytest.raises(InstanceError, match="labels.deg"):
            parse_instance(data)

    def test_prime_support_needs_reverse_inclusion(self):
        data = json.loads(json.dumps(Z6))
        data["lambda"] = {"kind": "extended_real"}
        with pytest.raises(InstanceError, match="lambda.kind"):
            parse_instance(data)

    def test_eigen_needs_float_poset(self):
        data = json.loads(json.dumps(EIGEN))
        data["lambda"] = {"kind": "extended_real"}
        with pytest.raises(InstanceError, match="lambda.kind"):
            parse_instance(data)

    def test_inadmissible_gamma_reports_field(self):
        data = json.loads(json.dumps(COUNTEREXAMPLE))
        data["gamma"] = [[], [0], [1], [0, 1]][:3]  # missing top
        with pytest.raises(InstanceError, match="gamma"):
            parse_instance(data)


def _write(tmp_path, name, data):
    path = tmp_path / name
    path.write_text(json.dumps(data))
    return str(path)


class TestCLI:
    def test_compute_refuses_counterexample(self, tmp_path, capsys):
        path = _write(tmp_path, "chain.json", COUNTEREXAMPLE)
        assert main(["compute", path]) == 2
        err = capsys.readouterr().err
        assert "refused" in err and "witness" in err

    def test_compute_trusted_reports_failed_self_check(self, tmp_path, capsys):
        path = _write(tmp_path, "chain.json", COUNTEREXAMPLE)
        assert main(["compute", path, "--trusted", "--json"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["self_check"] is False
        assert payload["axiom_checks"]["strong_slope_inequality"] is False

    def test_validate_exit_codes(self, tmp_path, capsys):
        path = _write(tmp_path, "chain.json", COUNTEREXAMPLE)
        assert main(["validate", path]) == 0
        assert main(["validate", path, "--strong"]) == 3
        z6 = _write(tmp_path, "z6.json", Z6)
        assert main(["validate", z6, "--strong"]) == 0
        capsys.readouterr()

    def test_validate_budget_exit(self, tmp_path, capsys):
        z6 = _write(tmp_path, "z6.json", Z6)
        assert main(["validate", z6, "--max-pairs", "1"]) == 4
        capsys.readouterr()

    def test_malformed_file_names_field(self, tmp_path, capsys):
        bad = dict(COUNTEREXAMPLE, slope={"kind": "table", "entries": []})
        path = _write(tmp_path, "bad.json", bad)
        assert main(["compute", path]) == 1
        assert "slope" in capsys.readouterr().err

    def test_missing_file_is_input_error(self, capsys):
        assert main(["compute", "/nonexistent/x.json"]) == 1
        capsys.readouterr()

    def test_oracle_reports_count(self, tmp_path, capsys):
        z6 = _write(tmp_path, "z6.json", Z6)
        assert main(["oracle", z6]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["hn_count"] == 2
        assert payload["all_passed"] is True

    def test_eigen_compute_slopes(self, tmp_path, capsys):
        path = _write(tmp_path, "eigen.json", EIGEN)
        assert main(["compute", path, "--json"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["slopes"] == [3.0, 1.0, -2.0]
        assert payload["mode"] == "total_order"

    def test_polygon_csv_and_plot(self, tmp_path, capsys):
        main_args_csv = str(tmp_path / "out.csv")
        plot = str(tmp_path / "out.png")
        emitted = str(tmp_path / "nk.json")
        assert main(["demo", "normk", "--k", "2", "--emit", emitted]) == 0
        capsys.readouterr()
        assert main(["polygon", emitted, "--csv", main_args_csv, "--plot", plot]) == 0
        rows = (tmp_path / "out.csv").read_text().strip().splitlines()
        assert rows[0] == "rank,degree"
        assert rows[1:] == ["0,0", "1,0", "2,-0.346573590280"]
        assert (tmp_path / "out.png").stat().st_size > 0

    def test_polygon_without_labels_is_input_error(self, tmp_path, capsys):
        z6 = _write(tmp_path, "z6.json", Z6)
        assert main(["polygon", z6]) == 1
        capsys.readouterr()

    def test_demo_emit_reproduces_through_generic_path(self, tmp_path, capsys):
        emitted = str(tmp_path / "z6.json")
        assert main(["demo", "zn", "6", "--emit", emitted]) == 0
        demo_out = capsys.readouterr().out
        assert main(["compute", emitted]) == 0
        assert capsys.readouterr().out == demo_out

    def test_dot_output_highlights_chain(self, tmp_path, capsys):
        path = _write(tmp_path, "z6.json", Z6)
        dot = tmp_path / "z6.dot"
        assert main(["compute", path, "--dot", str(dot)]) == 0
        capsys.readouterr()
        text = dot.read_text()
        assert text.startswith("digraph")
        assert text.count("peripheries=2") == 3  # bottom, one Sylow, top
        # cover relations only: four edges, no bottom-to-top shortcut
        assert text.count("->") == 4
        assert "n0 -> n3" not in text

    def test_degree_rank_requires_exact_poset(self):
        data = json.loads(json.dumps(DEGRANK))
        data["lambda"] = {"kind": "extended_real", "numeric": "float"}
        with pytest.raises(InstanceError, match="lambda.kind"):
            parse_instance(data)

    def test_output_is_deterministic(self, tmp_path, capsys):
        path = _write(tmp_path, "z6.json", Z6)
        assert main(["compute", path, "--json"]) == 0
        first = capsys.readouterr().out
        assert main(["compute", path, "--json"]) == 0
        assert capsys.readouterr().out == first

    def test_degrank_demo_agreement(self, tmp_path, capsys):
        path = _write(tmp_path, "dr.json", DEGRANK)
        assert main(["demo", "degrank", path]) == 0
        out = capsys.readouterr().out
        assert "engine agreement: yes" in out

    def test_console_entry_point(self, tmp_path):
        path = _write(tmp_path, "z6.json", Z6)
        proc = subprocess.run(
            [sys.executable, "-m", "hnlattice", "compute", path],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0
        assert "filtration" in proc.stdout
