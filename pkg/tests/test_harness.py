import csv
import json
import math

import numpy as np
import pytest

from wsnloc.errors import AllTrialsFailed, ConfigError
from wsnloc.harness import (
    CONFIG_SCHEMA,
    ScenarioConfig,
    compute_spectrum,
    dump_spectrum,
    load_config,
    monte_carlo,
    rng_for_trial,
    run_trial,
    write_rmse_csv,
)

RSS_RAW = {
    "seed": 1234,
    "trials": 20,
    "snr_grid_db": [5.0, 15.0],
    "region": [100.0, 100.0],
    "target": [30.0, 40.0],
    "channel": {"frequency_hz": 1e9, "eta": 2.0, "sigma_ref_db": 4.0},
    "anchors": [[0.0, 0.0], [100.0, 0.0], [0.0, 100.0], [100.0, 100.0]],
}

DOA_RAW = {
    "seed": 77,
    "trials": 10,
    "snr_grid_db": [10.0, 20.0],
    "array": {"kind": "ula", "n_elements": 8, "spacing_wavelengths": 0.5},
    "sources": {"azimuths_deg": [-10.0, 10.0], "snapshots": 100},
}


class TestConfig:
    def test_round_trip(self):
        cfg = ScenarioConfig.from_dict(RSS_RAW)
        assert cfg.seed == 1234
        assert cfg.snr_grid_db == (5.0, 15.0)
        assert cfg.wavelength == pytest.approx(0.299792458)

    def test_unknown_keys_rejected(self):
        bad = dict(RSS_RAW)
        bad["unexpected"] = 1
        with pytest.raises(ConfigError):
            ScenarioConfig.from_dict(bad)

    def test_nested_unknown_keys_rejected(self):
        bad = json.loads(json.dumps(RSS_RAW))
        bad["channel"]["mystery"] = 2.0
        with pytest.raises(ConfigError):
            ScenarioConfig.from_dict(bad)

    def test_target_outside_region(self):
        bad = dict(RSS_RAW)
        bad["target"] = [150.0, 40.0]
        with pytest.raises(ConfigError):
            ScenarioConfig.from_dict(bad)

    def test_random_target_needs_region(self):
        bad = {k: v for k, v in RSS_RAW.items() if k != "region"}
        bad["target"] = "random"
        with pytest.raises(ConfigError):
            ScenarioConfig.from_dict(bad)

    def test_wavelength_frequency_conflict(self):
        bad = json.loads(json.dumps(RSS_RAW))
        bad["channel"]["wavelength_m"] = 0.3
        with pytest.raises(ConfigError):
            ScenarioConfig.from_dict(bad)

    def test_schema_is_strict_everywhere(self):
        assert CONFIG_SCHEMA["additionalProperties"] is False
        assert CONFIG_SCHEMA["properties"]["method"]["additionalProperties"] is False

    def test_load_config_missing_file(self, tmp_path):
        with pytest.raises(ConfigError):
            load_config(tmp_path / "nope.json")


class TestRunTrial:
    def test_deterministic(self):
        cfg = ScenarioConfig.from_dict(RSS_RAW)
        a = run_trial(cfg, "rss", 0, 3)
        b = run_trial(cfg, "rss", 0, 3)
        assert np.array_equal(a.estimate, b.estimate)
        assert a.error == b.error

    def test_error_matches_recomputation(self):
        cfg = ScenarioConfig.from_dict(RSS_RAW)
        res = run_trial(cfg, "rss", 1, 0)
        assert res.error == pytest.approx(
            float(np.linalg.norm(res.estimate - res.truth)), abs=1e-12
        )

    def test_noiseless_trial_has_zero_error(self):
        raw = json.loads(json.dumps(RSS_RAW))
        raw["channel"]["sigma_ref_db"] = 0.0
        cfg = ScenarioConfig.from_dict(raw)
        assert run_trial(cfg, "rss", 0, 0).error < 1e-9

    def test_random_target_is_deterministic_and_in_region(self):
        raw = json.loads(json.dumps(RSS_RAW))
        raw["target"] = "random"
        cfg = ScenarioConfig.from_dict(raw)
        a = run_trial(cfg, "rss", 0, 4)
        b = run_trial(cfg, "rss", 0, 4)
        assert np.array_equal(a.truth, b.truth)
        assert 0 <= a.truth[0] <= 100 and 0 <= a.truth[1] <= 100
        other = run_trial(cfg, "rss", 0, 5)
        assert not np.array_equal(a.truth, other.truth)

    def test_unknown_kind(self):
        cfg = ScenarioConfig.from_dict(RSS_RAW)
        with pytest.raises(ConfigError):
            run_trial(cfg, "tdoa", 0, 0)


class TestMonteCarlo:
    def test_single_trial_rmse_is_abs_error(self):
        raw = dict(RSS_RAW)
        raw["trials"] = 1
        cfg = ScenarioConfig.from_dict(raw)
        result = monte_carlo(cfg, "rss")
        single = run_trial(cfg, "rss", 0, 0)
        assert result.rows[0].rmse == pytest.approx(abs(single.error), abs=1e-12)

    def test_rows_cover_grid(self):
        cfg = ScenarioConfig.from_dict(RSS_RAW)
        result = monte_carlo(cfg, "rss")
        assert [row.snr_db for row in result.rows] == [5.0, 15.0]
        assert all(row.trials == 20 for row in result.rows)
        assert result.unit == "m"

    def test_parallel_equals_serial(self):
        cfg = ScenarioConfig.from_dict(RSS_RAW)
        serial = monte_carlo(cfg, "rss", workers=1)
        parallel = monte_carlo(cfg, "rss", workers=4)
        for a, b in zip(serial.rows, parallel.rows):
            assert a.rmse == b.rmse
            assert a.failures == b.failures

    def test_rmse_matches_independent_recomputation(self):
        cfg = ScenarioConfig.from_dict(RSS_RAW)
        result = monte_carlo(cfg, "rss")
        for si, row in enumerate(result.rows):
            errors = [run_trial(cfg, "rss", si, ti).error for ti in range(cfg.trials)]
            assert row.rmse == pytest.approx(
                math.sqrt(float(np.mean(np.square(errors)))), rel=1e-12
            )

    def test_toeplitz_rejected_for_circular_arrays(self):
        raw = json.loads(json.dumps(DOA_RAW))
        raw["array"] = {
            "kind": "uca",
            "n_elements": 8,
            "radius_wavelengths": 0.55,
            "elevation_deg": 40.0,
        }
        raw["method"] = {"decorrelate": "toeplitz"}
        cfg = ScenarioConfig.from_dict(raw)
        with pytest.raises(ConfigError):
            run_trial(cfg, "doa", 0, 0)

    def test_doa_pipeline_unit(self):
        cfg = ScenarioConfig.from_dict(DOA_RAW)
        result = monte_carlo(cfg, "doa")
        assert result.unit == "deg"
        assert result.rows[1].rmse < result.rows[0].rmse + 1.0

    def test_failures_counted_and_all_failed_raises(self):
        # collinear anchors defeat every trilateration trial
        raw = json.loads(json.dumps(RSS_RAW))
        raw["anchors"] = [[0.0, 0.0], [50.0, 50.0], [100.0, 100.0]]
        raw["target"] = [30.0, 60.0]
        cfg = ScenarioConfig.from_dict(raw)
        with pytest.raises(AllTrialsFailed):
            monte_carlo(cfg, "rss")


class TestRngStreams:
    def test_streams_independent_of_each_other(self):
        a = rng_for_trial(9, 0, 0).standard_normal(4)
        b = rng_for_trial(9, 0, 1).standard_normal(4)
        c = rng_for_trial(9, 1, 0).standard_normal(4)
        assert not np.allclose(a, b)
        assert not np.allclose(a, c)

    def test_stream_reproducible(self):
        assert np.array_equal(
            rng_for_trial(9, 2, 7).standard_normal(8),
            rng_for_trial(9, 2, 7).standard_normal(8),
        )


class TestCsvOutputs:
    def test_rmse_csv_layout(self, tmp_path):
        cfg = ScenarioConfig.from_dict(RSS_RAW)
        result = monte_carlo(cfg, "rss")
        out = tmp_path / "rmse.csv"
        write_rmse_csv(result, out)
        rows = list(csv.reader(out.open()))
        assert rows[0] == ["snr_db", "rmse", "trials", "failures"]
        assert len(rows) == 1 + len(cfg.snr_grid_db)
        assert float(rows[1][1]) == pytest.approx(result.rows[0].rmse, rel=1e-10)

    def test_rerun_byte_identical(self, tmp_path):
        cfg = ScenarioConfig.from_dict(RSS_RAW)
        out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
        write_rmse_csv(monte_carlo(cfg, "rss"), out1)
        write_rmse_csv(monte_carlo(cfg, "rss", workers=3), out2)
        assert out1.read_bytes() == out2.read_bytes()

    def test_spectrum_dump(self, tmp_path):
        raw = json.loads(json.dumps(DOA_RAW))
        raw["sources"] = {"azimuths_deg": [10.0], "snapshots": 200}
        raw["snr_grid_db"] = [20.0]
        cfg = ScenarioConfig.from_dict(raw)
        out = tmp_path / "spec.csv"
        dump_spectrum(cfg, out)
        rows = list(csv.reader(out.open()))
        assert rows[0] == ["angle_deg", "power_db"]
        spectrum = compute_spectrum(cfg)
        assert len(rows) == 1 + spectrum.grid.size
        data = np.array([[float(a), float(p)] for a, p in rows[1:]])
        peak_angle = data[np.argmax(data[:, 1]), 0]
        assert abs(peak_angle - 10.0) <= 0.1 + 1e-9

    def test_spectrum_requires_music(self, tmp_path):
        raw = json.loads(json.dumps(DOA_RAW))
        raw["method"] = {"doa": "esprit"}
        cfg = ScenarioConfig.from_dict(raw)
        with pytest.raises(ConfigError):
            dump_spectrum(cfg, tmp_path / "x.csv")
