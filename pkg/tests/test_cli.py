"""End-to-end CLI behavior through the in-process entry point."""

import pytest

from balkcov.cli import main
from balkcov.harness import rows_from_csv


@pytest.fixture
def scenario_file(tmp_path):
    path = tmp_path / "scen.txt"
    code = main([
        "generate", "--seed", "7", "--sensors", "5", "--targets", "6",
        "--grid", "60", "60", "--out", str(path),
    ])
    assert code == 0
    return path


class TestGenerate:
    def test_writes_loadable_scenario(self, scenario_file):
        from balkcov import load_scenario

        scen = load_scenario(scenario_file)
        assert scen.sensor_count == 5
        assert scen.target_count == 6
        assert scen.seed == 7


class TestSolve:
    def test_greedy_solve_prints_record(self, scenario_file, capsys):
        code = main([
            "solve", "--scenario", str(scenario_file),
            "--solver", "GreedyQuadratic", "--k", "2",
        ])
        out = capsys.readouterr().out
        assert code == 0
        assert "balancing_index" in out
        assert "active_sensors" in out

    def test_exact_solve_with_oracle_matches(self, scenario_file, capsys):
        code = main([
            "solve", "--scenario", str(scenario_file),
            "--solver", "ILP-exact", "--k", "2", "--oracle",
        ])
        out = capsys.readouterr().out
        assert code == 0
        assert "oracle_match true" in out

    def test_oracle_rejected_for_greedy(self, scenario_file, capsys):
        code = main([
            "solve", "--scenario", str(scenario_file),
            "--solver", "GreedyLinear", "--k", "2", "--oracle",
        ])
        assert code == 2
        assert "exact solvers only" in capsys.readouterr().err

    def test_trace_prints_steps(self, scenario_file, capsys):
        code = main([
            "solve", "--scenario", str(scenario_file),
            "--solver", "GreedyQuadratic", "--k", "2", "--trace",
        ])
        out = capsys.readouterr().out
        assert code == 0
        for line in out.splitlines():
            if line.startswith("step "):
                assert "incentive=" in line and "histogram=" in line

    def test_show_assignment(self, scenario_file, capsys):
        code = main([
            "solve", "--scenario", str(scenario_file),
            "--solver", "ILP-exact", "--k", "2", "--show-assignment",
        ])
        out = capsys.readouterr().out
        assert code == 0
        assert "sensor 0:" in out

    def test_malformed_scenario_diagnosed(self, tmp_path, capsys):
        bad = tmp_path / "bad.txt"
        bad.write_text("schema_version 1\nnot_a_key 3\n")
        code = main(["solve", "--scenario", str(bad), "--solver", "ILP-exact", "--k", "1"])
        assert code == 1
        assert "unknown key" in capsys.readouterr().err

    def test_missing_file_diagnosed(self, tmp_path, capsys):
        code = main([
            "solve", "--scenario", str(tmp_path / "nope.txt"),
            "--solver", "ILP-exact", "--k", "1",
        ])
        assert code == 1
        assert capsys.readouterr().err.startswith("error:")

    def test_unknown_solver_rejected_by_parser(self, scenario_file):
        with pytest.raises(SystemExit):
            main(["solve", "--scenario", str(scenario_file), "--solver", "Magic", "--k", "1"])


class TestMetricsSubcommand:
    def test_recomputes_saved_assignment(self, scenario_file, tmp_path, capsys):
        assignment_path = tmp_path / "assign.txt"
        code = main([
            "solve", "--scenario", str(scenario_file), "--solver", "INLP-exact",
            "--k", "2", "--rho", "0.0001", "--save-assignment", str(assignment_path),
        ])
        assert code == 0
        solve_out = capsys.readouterr().out
        code = main([
            "metrics", "--scenario", str(scenario_file),
            "--assignment", str(assignment_path), "--k", "2",
        ])
        metrics_out = capsys.readouterr().out
        assert code == 0

        def value_of(out, key):
            for line in out.splitlines():
                if line.startswith(key + " "):
                    return line.split()[1]
            raise AssertionError(f"{key} not in output")

        assert value_of(metrics_out, "balancing_index") == value_of(solve_out, "balancing_index")
        assert value_of(metrics_out, "total_coverage") == value_of(solve_out, "total_coverage")

    def test_bad_assignment_file(self, scenario_file, tmp_path, capsys):
        path = tmp_path / "assign.txt"
        path.write_text("0 3\n")  # missing the other four sensors
        code = main([
            "metrics", "--scenario", str(scenario_file),
            "--assignment", str(path), "--k", "2",
        ])
        assert code == 1
        assert "one line per sensor" in capsys.readouterr().err


class TestSweepCommand:
    def test_sweep_writes_csv(self, tmp_path, capsys):
        out = tmp_path / "rows.csv"
        code = main([
            "sweep", "--axis", "targets", "--n", "5", "--m-list", "3,6",
            "--k", "2", "--seeds", "0:2", "--solvers", "GreedyLinear,GreedyQuadratic",
            "--grid", "60", "60", "--no-timings", "--out", str(out),
        ])
        assert code == 0
        rows = rows_from_csv(out.read_text())
        assert len(rows) == 8
        assert {r.solver for r in rows} == {"GreedyLinear", "GreedyQuadratic"}

    def test_sweep_from_config_file(self, tmp_path):
        cfg = tmp_path / "sweep.cfg"
        cfg.write_text(
            "axis targets\nn 5\nm_list 3,6\nk 2\nseeds 0:2\n"
            "solvers GreedyLinear\ngrid_width 60\ngrid_height 60\nrecord_timings 0\n"
        )
        out = tmp_path / "rows.csv"
        assert main(["sweep", "--config", str(cfg), "--out", str(out)]) == 0
        assert len(rows_from_csv(out.read_text())) == 4

    def test_sweep_missing_axis_diagnosed(self, tmp_path, capsys):
        code = main(["sweep", "--out", str(tmp_path / "rows.csv")])
        assert code == 1
        assert "missing required config key" in capsys.readouterr().err
