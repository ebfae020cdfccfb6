"""End-to-end tests for the command line interface.

Each exit code is exercised through main(argv) directly: 0 for success,
1 for semantically invalid instances, 2 for I/O and parse failures, 4 for
oracle caps.  JSON output is checked byte-identical across repeat runs.
"""

import json

import pytest

from aszcolor import build_table
from aszcolor.cli import (
    EXIT_INVALID,
    EXIT_IO,
    EXIT_LIMIT,
    EXIT_OK,
    instance_to_obj,
    load_instance,
    main,
)
from aszcolor.generators import gen_star_partition

TRIANGLE_OBJ = {
    "n": 3,
    "bicliques": [{"a": [0], "b": [1, 2]}, {"a": [1], "b": [2]}],
}


@pytest.fixture
def triangle(tmp_path):
    path = tmp_path / "triangle.json"
    path.write_text(json.dumps(TRIANGLE_OBJ))
    return str(path)


def write_instance(tmp_path, name, obj):
    path = tmp_path / name
    path.write_text(json.dumps(obj))
    return str(path)


class TestLoadInstance:
    def test_roundtrip_through_generated_file(self, tmp_path, triangle):
        p, expect = load_instance(triangle)
        assert p.n == 3 and p.m == 2 and expect is None
        out = tmp_path / "copy.json"
        out.write_text(json.dumps(instance_to_obj(p)))
        q, expect2 = load_instance(str(out))
        assert q == p and expect2 == 3

    def test_schema_errors(self, tmp_path):
        cases = [
            [1, 2],
            {"n": "3", "bicliques": []},
            {"n": True, "bicliques": []},
            {"n": 3},
            {"n": 3, "bicliques": [{"a": [0]}]},
            {"n": 3, "bicliques": [{"a": [0], "b": "x"}]},
            {"n": 3, "bicliques": [{"a": [0.5], "b": [1]}]},
            {"n": 3, "bicliques": [], "expect_edges": "many"},
        ]
        for obj in cases:
            path = write_instance(tmp_path, "bad.json", obj)
            with pytest.raises(ValueError):
                load_instance(path)


class TestValidateCommand:
    def test_valid_instance(self, triangle, capsys):
        assert main(["validate", triangle]) == EXIT_OK
        out = capsys.readouterr().out
        assert "OK: 2 bicliques partition 3 edges on 3 vertices" in out

    def test_json_output(self, triangle, capsys):
        assert main(["validate", "--json", triangle]) == EXIT_OK
        obj = json.loads(capsys.readouterr().out)
        assert obj == {"ok": True, "n": 3, "m": 2, "edges": 3, "violations": []}

    def test_collision_is_invalid(self, tmp_path, capsys):
        path = write_instance(
            tmp_path,
            "bad.json",
            {"n": 2, "bicliques": [{"a": [0], "b": [1]}, {"a": [1], "b": [0]}]},
        )
        assert main(["validate", path]) == EXIT_INVALID
        out = capsys.readouterr().out
        assert "edge-collision" in out and "INVALID" in out

    def test_expect_edges_mismatch(self, tmp_path, capsys):
        obj = dict(TRIANGLE_OBJ, expect_edges=4)
        path = write_instance(tmp_path, "mism.json", obj)
        assert main(["validate", path]) == EXIT_INVALID
        assert "expect-edges-mismatch" in capsys.readouterr().out

    def test_missing_file_is_io_error(self, tmp_path, capsys):
        assert main(["validate", str(tmp_path / "nope.json")]) == EXIT_IO

    def test_unparseable_json_is_io_error(self, tmp_path, capsys):
        path = tmp_path / "broken.json"
        path.write_text("{ not json")
        assert main(["validate", str(path)]) == EXIT_IO

    def test_wrong_shape_is_invalid(self, tmp_path, capsys):
        path = write_instance(tmp_path, "shape.json", {"n": 3})
        assert main(["validate", str(path)]) == EXIT_INVALID


class TestColorCommand:
    @pytest.mark.parametrize("strategy", ["thm1", "prop2", "greedy", "bitvector"])
    def test_strategies_succeed(self, triangle, capsys, strategy):
        assert main(["color", triangle, "--strategy", strategy, "--json"]) == EXIT_OK
        obj = json.loads(capsys.readouterr().out)
        assert obj["proper"] is True
        assert obj["num_colors"] <= obj["bound"]
        assert len(obj["colors"]) == 3

    def test_triangle_defaults(self, triangle, capsys):
        assert main(["color", triangle]) == EXIT_OK
        out = capsys.readouterr().out
        assert "strategy: thm1" in out
        assert "colors used: 3 (bound rec4[m] = 3)" in out
        assert "assignment: 1 2 0" in out

    def test_trace_rows_printed(self, triangle, capsys):
        assert main(["color", triangle, "--trace"]) == EXIT_OK
        out = capsys.readouterr().out
        assert "pivot=   1 side=A" in out

    def test_trace_in_json(self, triangle, capsys):
        assert main(["color", triangle, "--json", "--trace"]) == EXIT_OK
        obj = json.loads(capsys.readouterr().out)
        assert obj["trace"][0]["m"] == 2
        assert obj["trace"][0]["pivot"] == 1

    def test_invalid_instance_refused(self, tmp_path, capsys):
        path = write_instance(
            tmp_path,
            "bad.json",
            {"n": 2, "bicliques": [{"a": [0], "b": [1]}, {"a": [0], "b": [1]}]},
        )
        assert main(["color", path]) == EXIT_INVALID


class TestOracleCommands:
    def test_chi_of_k4(self, tmp_path, capsys):
        path = write_instance(tmp_path, "k4.json", instance_to_obj(gen_star_partition(4)))
        assert main(["chi", path, "--json"]) == EXIT_OK
        obj = json.loads(capsys.readouterr().out)
        assert obj["chi"] == 4
        assert len(set(obj["witness"])) == 4

    def test_bp_of_k4(self, tmp_path, capsys):
        path = write_instance(tmp_path, "k4.json", instance_to_obj(gen_star_partition(4)))
        assert main(["bp", path, "--json"]) == EXIT_OK
        obj = json.loads(capsys.readouterr().out)
        assert obj["bp"] == 3
        assert len(obj["witness"]) == 3

    def test_oracle_limit_env(self, tmp_path, capsys, monkeypatch):
        path = write_instance(tmp_path, "k4.json", instance_to_obj(gen_star_partition(4)))
        monkeypatch.setenv("ASZ_ORACLE_LIMIT", "3")
        assert main(["chi", path]) == EXIT_LIMIT
        assert main(["bp", path]) == EXIT_LIMIT
        monkeypatch.setenv("ASZ_ORACLE_LIMIT", "4")
        assert main(["chi", path]) == EXIT_OK

    def test_oracle_limit_env_must_be_integer(self, triangle, monkeypatch, capsys):
        monkeypatch.setenv("ASZ_ORACLE_LIMIT", "lots")
        assert main(["chi", triangle]) == EXIT_INVALID

    def test_bp_edge_cap(self, tmp_path, capsys):
        path = write_instance(tmp_path, "k7.json", instance_to_obj(gen_star_partition(7)))
        # 21 edges exceed the default bp edge cap
        assert main(["bp", path]) == EXIT_LIMIT


class TestBoundsCommand:
    def test_table_and_check(self, capsys):
        assert main(["bounds", "--max", "64", "--check"]) == EXIT_OK
        out = capsys.readouterr().out
        assert "bound chain verified for 0 <= k <= 64: OK (65 values)" in out

    def test_small_table_rows(self, capsys):
        assert main(["bounds", "--max", "5"]) == EXIT_OK
        out = capsys.readouterr().out
        rows = [line.split() for line in out.strip().splitlines()]
        assert rows[0][:4] == ["k", "rec4", "rec2", "2^k"]
        assert rows[6][:4] == ["5", "7", "10", "32"]

    def test_elision_and_full(self, capsys):
        assert main(["bounds", "--max", "60"]) == EXIT_OK
        assert "rows elided" in capsys.readouterr().out
        assert main(["bounds", "--max", "60", "--full"]) == EXIT_OK
        assert "rows elided" not in capsys.readouterr().out

    def test_mv_summary(self, capsys):
        assert main(["bounds", "--max", "1024", "--mv"]) == EXIT_OK
        out = capsys.readouterr().out
        assert "first improvement at k=10" in out
        assert "every k >= 10 improved" in out

    def test_check_needs_enough_rows(self, capsys):
        assert main(["bounds", "--max", "2", "--check"]) == EXIT_INVALID

    def test_out_writes_csv_and_figures(self, tmp_path, capsys):
        out_dir = tmp_path / "report"
        assert main(["bounds", "--max", "32", "--out", str(out_dir)]) == EXIT_OK
        csv_path = out_dir / "bounds.csv"
        assert csv_path.exists()
        lines = csv_path.read_text().strip().splitlines()
        assert lines[0].startswith("k,rec4,rec2,")
        assert len(lines) == 34  # header plus k = 0..32
        rec4 = build_table("rec4", 32)
        assert lines[-1].split(",")[1] == str(rec4[32])
        pngs = sorted(f.name for f in out_dir.glob("*.png"))
        assert pngs == [
            "bounds_exponents.png",
            "bounds_growth.png",
            "bounds_mv_ratio.png",
        ]
        for f in out_dir.glob("*.png"):
            assert f.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"


class TestGenCommand:
    def test_star_roundtrip(self, tmp_path, capsys):
        out = tmp_path / "star.json"
        assert main(["gen", "star", "--n", "5", "--out", str(out)]) == EXIT_OK
        assert main(["validate", str(out)]) == EXIT_OK

    def test_matching_to_stdout(self, capsys):
        assert main(["gen", "matching", "--m", "3"]) == EXIT_OK
        obj = json.loads(capsys.readouterr().out)
        assert obj["n"] == 6 and len(obj["bicliques"]) == 3
        assert obj["expect_edges"] == 3

    def test_random_is_byte_stable(self, capsys):
        assert main(["gen", "random", "--n", "12", "--m", "5", "--seed", "9"]) == EXIT_OK
        first = capsys.readouterr().out
        assert main(["gen", "random", "--n", "12", "--m", "5", "--seed", "9"]) == EXIT_OK
        assert capsys.readouterr().out == first
        obj = json.loads(first)
        assert obj["n"] == 12

    def test_generated_random_validates(self, tmp_path, capsys):
        out = tmp_path / "rand.json"
        assert main(
            ["gen", "random", "--n", "15", "--m", "6", "--seed", "4", "--out", str(out)]
        ) == EXIT_OK
        assert main(["color", str(out), "--strategy", "greedy"]) == EXIT_OK


class TestSweepCommand:
    def test_small_sweep_report(self, tmp_path, capsys):
        out = tmp_path / "sweep.json"
        assert main(["sweep", "--n-max", "3", "--out", str(out)]) == EXIT_OK
        stdout = capsys.readouterr().out
        assert "checked 11 graphs up to n=3" in stdout
        obj = json.loads(out.read_text())
        assert obj["ok"] is True
        assert obj["per_n"] == {"1": 1, "2": 2, "3": 8}
        assert obj["gap_counts"] == {"1": 11}
        assert obj["extremal_count"] == 11

    def test_sweep_to_stdout_is_byte_stable(self, capsys):
        assert main(["sweep", "--n-max", "2"]) == EXIT_OK
        first = capsys.readouterr().out
        assert main(["sweep", "--n-max", "2"]) == EXIT_OK
        assert capsys.readouterr().out == first

    def test_guard_exceeded(self, capsys):
        assert main(["sweep", "--n-max", "9"]) == EXIT_LIMIT

    def test_plot_output(self, tmp_path, capsys):
        plot_dir = tmp_path / "figs"
        assert main(["sweep", "--n-max", "3", "--plot", str(plot_dir)]) == EXIT_OK
        png = plot_dir / "sweep_gap_histogram.png"
        assert png.exists()
        assert png.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"

    def test_progress_file_written(self, tmp_path, capsys):
        progress = tmp_path / "prog.json"
        assert main(
            ["sweep", "--n-max", "3", "--progress", str(progress), "--checkpoint-every", "4"]
        ) == EXIT_OK
        payload = json.loads(progress.read_text())
        assert payload["next_index"] == 11


class TestDeterministicOutput:
    def test_validate_json_stable(self, triangle, capsys):
        assert main(["validate", "--json", triangle]) == EXIT_OK
        first = capsys.readouterr().out
        assert main(["validate", "--json", triangle]) == EXIT_OK
        assert capsys.readouterr().out == first

    def test_color_json_stable(self, triangle, capsys):
        argv = ["color", triangle, "--json", "--trace"]
        assert main(argv) == EXIT_OK
        first = capsys.readouterr().out
        assert main(argv) == EXIT_OK
        assert capsys.readouterr().out == first
