"""Sweep orchestration, result rows, and CSV/text emission."""

import numpy as np
import pytest

from balkcov import ExperimentConfig, run_sweep
from balkcov.harness import (
    config_from_mapping,
    csv_header,
    emit,
    load_config,
    parse_int_list,
    rows_from_csv,
    rows_to_csv,
    rows_to_text,
)
from helpers import CAMERA8


def tiny_config(**overrides):
    base = dict(
        axis="targets",
        fixed=6,
        sweep=(4, 8),
        k=2,
        seeds=(0, 1),
        solvers=("ILP-exact", "GreedyLinear"),
        camera=CAMERA8,
        grid=(60.0, 60.0),
        rho=None,
        record_timings=False,
    )
    base.update(overrides)
    return ExperimentConfig(**base)


class TestConfigValidation:
    def test_row_cardinality_inputs(self):
        config = tiny_config()
        assert config.populations(4) == (6, 4)

    def test_sensor_axis_populations(self):
        config = tiny_config(axis="sensors", fixed=10, sweep=(2, 4))
        assert config.populations(4) == (4, 10)

    def test_rejects_unknown_solver(self):
        with pytest.raises(ValueError, match="unknown solvers"):
            tiny_config(solvers=("ILP-exact", "Annealing"))

    def test_rejects_empty_seeds(self):
        with pytest.raises(ValueError):
            tiny_config(seeds=())

    def test_rejects_non_increasing_sweep(self):
        with pytest.raises(ValueError):
            tiny_config(sweep=(4, 4))
        with pytest.raises(ValueError):
            tiny_config(sweep=(8, 4))

    def test_rejects_bad_axis(self):
        with pytest.raises(ValueError):
            tiny_config(axis="pans")


class TestRunSweep:
    def test_row_cardinality(self):
        rows = run_sweep(tiny_config())
        # 2 seeds x 2 sweep points x 2 solvers
        assert len(rows) == 8

    def test_rows_in_deterministic_order(self):
        rows = run_sweep(tiny_config())
        keys = [(r.seed, r.m, r.solver) for r in rows]
        assert keys == sorted(keys, key=lambda t: (t[0], t[1], ["ILP-exact", "GreedyLinear"].index(t[2])))

    def test_byte_identical_reruns_without_timings(self):
        first = rows_to_csv(run_sweep(tiny_config()))
        second = rows_to_csv(run_sweep(tiny_config()))
        assert first == second

    def test_identical_metrics_with_timings(self):
        config = tiny_config(record_timings=True)
        rows_a = run_sweep(config)
        rows_b = run_sweep(config)
        strip = lambda rows: [
            tuple(v for f, v in vars(r).items() if f != "wall_time") for r in rows
        ]
        assert strip(rows_a) == strip(rows_b)

    def test_histogram_sums_to_target_count(self):
        for row in run_sweep(tiny_config()):
            assert sum(row.histogram) == row.m

    def test_sensor_usage_consistent(self):
        for row in run_sweep(tiny_config()):
            assert row.sensor_usage_percent == pytest.approx(
                100.0 * row.active_sensors / row.n, abs=1e-6
            )

    def test_exact_budget_flag_survives_to_rows(self):
        rows = run_sweep(tiny_config(max_nodes=3, solvers=("ILP-exact",)))
        assert all(not row.optimality_flag for row in rows)

    def test_solvers_share_the_matrix(self):
        # both exact objectives ran against identical geometry: total
        # capped coverage of ILP-exact can never be below INLP-exact's
        rows = run_sweep(tiny_config(solvers=("ILP-exact", "INLP-exact"), rho=1e-4))
        by_cell = {}
        for row in rows:
            by_cell.setdefault((row.seed, row.m), {})[row.solver] = row
        for cell in by_cell.values():
            assert cell["ILP-exact"].total_coverage >= cell["INLP-exact"].total_coverage - 0


class TestEmission:
    def test_csv_round_trip(self):
        rows = run_sweep(tiny_config(record_timings=True))
        parsed = rows_from_csv(rows_to_csv(rows))
        assert parsed == rows

    def test_header_shape(self):
        header = csv_header(2)
        assert header[:5] == ["seed", "n", "m", "k", "solver"]
        assert "covered_exactly_0" in header and "covered_atleast_2" in header
        assert header[-1] == "optimality_flag"

    def test_empty_rows_rejected(self):
        with pytest.raises(ValueError):
            rows_to_csv([])
        with pytest.raises(ValueError):
            rows_to_text([])

    def test_emit_csv_and_text(self, tmp_path):
        rows = run_sweep(tiny_config())
        csv_path = tmp_path / "rows.csv"
        text_path = tmp_path / "rows.txt"
        emit(rows, csv_path, fmt="csv")
        emit(rows, text_path, fmt="text")
        assert rows_from_csv(csv_path.read_text()) == rows
        blocks = text_path.read_text().strip().split("\n\n")
        assert len(blocks) == len(rows)
        assert blocks[0].splitlines()[0].startswith("seed ")
        with pytest.raises(ValueError):
            emit(rows, tmp_path / "rows.bin", fmt="parquet")

    def test_mixed_k_rejected(self):
        rows_a = run_sweep(tiny_config())
        rows_b = run_sweep(tiny_config(k=3))
        with pytest.raises(ValueError):
            rows_to_csv(rows_a + rows_b)


class TestConfigParsing:
    def test_parse_int_list(self):
        assert parse_int_list("1,2,3") == [1, 2, 3]
        assert parse_int_list("0:4") == [0, 1, 2, 3]

    def test_mapping_round_trip(self):
        raw = {
            "axis": "targets",
            "n": "6",
            "m_list": "4,8",
            "k": "2",
            "seeds": "0:2",
            "solvers": "ILP-exact,GreedyLinear",
            "rho": "default",
            "grid_width": "60",
            "grid_height": "60",
            "record_timings": "0",
        }
        config = config_from_mapping(raw)
        assert config == tiny_config()

    def test_missing_key_reported(self):
        with pytest.raises(ValueError, match="missing required config key 'k'"):
            config_from_mapping({"axis": "targets", "n": "6", "m_list": "4,8"})

    def test_load_config_file(self, tmp_path):
        path = tmp_path / "sweep.cfg"
        path.write_text(
            "# comment line\n"
            "axis sensors\n"
            "m 10\n"
            "n_list 2,4\n"
            "k 2\n"
            "seeds 0:3\n"
            "solvers GreedyQuadratic\n"
            "rho 0.01\n"
        )
        config = load_config(path)
        assert config.axis == "sensors"
        assert config.sweep == (2, 4)
        assert config.seeds == (0, 1, 2)
        assert config.rho == pytest.approx(0.01)

    def test_load_config_rejects_unknown_key(self, tmp_path):
        path = tmp_path / "sweep.cfg"
        path.write_text("axis targets\nwibble 3\n")
        with pytest.raises(ValueError, match="unknown config key"):
            load_config(path)

    def test_load_config_rejects_duplicate_key(self, tmp_path):
        path = tmp_path / "sweep.cfg"
        path.write_text("axis targets\naxis sensors\n")
        with pytest.raises(ValueError, match="duplicate"):
            load_config(path)
