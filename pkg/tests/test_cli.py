import csv
import json

from wsnloc.cli import main

RSS_RAW = {
    "seed": 5,
    "trials": 8,
    "snr_grid_db": [6.0, 12.0],
    "region": [100.0, 100.0],
    "target": [30.0, 40.0],
    "channel": {"frequency_hz": 1e9, "sigma_ref_db": 4.0},
    "anchors": [[0.0, 0.0], [100.0, 0.0], [0.0, 100.0], [100.0, 100.0]],
}


def write_cfg(tmp_path, raw, name="scenario.json"):
    path = tmp_path / name
    path.write_text(json.dumps(raw))
    return path


def test_rss_subcommand(tmp_path):
    cfg = write_cfg(tmp_path, RSS_RAW)
    out = tmp_path / "rmse.csv"
    assert main(["rss", "--config", str(cfg), "--out", str(out), "--estimator", "wls"]) == 0
    rows = list(csv.reader(out.open()))
    assert rows[0] == ["snr_db", "rmse", "trials", "failures"]
    assert len(rows) == 3


def test_seed_override_changes_result(tmp_path):
    cfg = write_cfg(tmp_path, RSS_RAW)
    out1, out2, out3 = (tmp_path / n for n in ("a.csv", "b.csv", "c.csv"))
    assert main(["rss", "--config", str(cfg), "--out", str(out1)]) == 0
    assert main(["rss", "--config", str(cfg), "--out", str(out2), "--seed", "99"]) == 0
    assert main(["rss", "--config", str(cfg), "--out", str(out3)]) == 0
    assert out1.read_bytes() == out3.read_bytes()
    assert out1.read_bytes() != out2.read_bytes()


def test_workers_do_not_change_output(tmp_path):
    cfg = write_cfg(tmp_path, RSS_RAW)
    out1, out2 = tmp_path / "serial.csv", tmp_path / "par.csv"
    assert main(["rss", "--config", str(cfg), "--out", str(out1)]) == 0
    assert main(["rss", "--config", str(cfg), "--out", str(out2), "--workers", "4"]) == 0
    assert out1.read_bytes() == out2.read_bytes()


def test_config_error_exit_code(tmp_path):
    bad = dict(RSS_RAW)
    bad["surprise"] = True
    cfg = write_cfg(tmp_path, bad)
    assert main(["rss", "--config", str(cfg), "--out", str(tmp_path / "x.csv")]) == 1


def test_seed_out_of_range_exit_code(tmp_path):
    cfg = write_cfg(tmp_path, RSS_RAW)
    out = str(tmp_path / "x.csv")
    assert main(["rss", "--config", str(cfg), "--out", out, "--seed", "-3"]) == 1


def test_missing_config_exit_code(tmp_path):
    assert (
        main(["rss", "--config", str(tmp_path / "none.json"), "--out", str(tmp_path / "x.csv")])
        == 1
    )


def test_all_trials_failed_exit_code(tmp_path):
    raw = dict(RSS_RAW)
    raw["anchors"] = [[0.0, 0.0], [50.0, 50.0], [100.0, 100.0]]
    cfg = write_cfg(tmp_path, raw)
    assert main(["rss", "--config", str(cfg), "--out", str(tmp_path / "x.csv")]) == 2


def test_doa_subcommand_with_decorrelation(tmp_path):
    raw = {
        "seed": 11,
        "trials": 5,
        "snr_grid_db": [20.0],
        "array": {"kind": "ula", "n_elements": 12, "spacing_wavelengths": 0.5},
        "sources": {
            "azimuths_deg": [-40.0, -30.0, -20.0, 20.0, 30.0, 40.0],
            "coherent": True,
            "snapshots": 100,
        },
    }
    cfg = write_cfg(tmp_path, raw)
    out = tmp_path / "doa.csv"
    code = main(
        ["doa", "--config", str(cfg), "--out", str(out), "--decorrelate", "fss"]
    )
    assert code == 0
    rows = list(csv.reader(out.open()))
    assert float(rows[1][1]) < 2.0  # six coherent sources recovered


def test_hybrid_subcommand(tmp_path):
    raw = {
        "seed": 21,
        "trials": 5,
        "snr_grid_db": [10.0],
        "region": [30.0, 30.0],
        "target": [20.0, 18.0],
        "channel": {"frequency_hz": 1e9, "sigma_ref_db": 0.3},
        "hybrid_node": {
            "center": [18.0, 16.0],
            "n_elements": 4,
            "radius_wavelengths": 0.3183,
            "elevation_deg": 90.0,
        },
        "snapshots": 64,
    }
    cfg = write_cfg(tmp_path, raw)
    out = tmp_path / "hyb.csv"
    assert main(["hybrid", "--config", str(cfg), "--out", str(out)]) == 0
    rows = list(csv.reader(out.open()))
    assert float(rows[1][1]) < 1.0


def test_spectrum_subcommand(tmp_path):
    raw = {
        "seed": 2,
        "trials": 1,
        "snr_grid_db": [20.0],
        "array": {"kind": "uca", "n_elements": 8, "radius_wavelengths": 0.55, "elevation_deg": 40.0},
        "sources": {"azimuths_deg": [100.0], "snapshots": 200},
    }
    cfg = write_cfg(tmp_path, raw)
    out = tmp_path / "spec.csv"
    assert main(["spectrum", "--config", str(cfg), "--out", str(out)]) == 0
    rows = list(csv.reader(out.open()))
    assert rows[0] == ["angle_deg", "power_db"]
    data = [(float(a), float(p)) for a, p in rows[1:]]
    peak = max(data, key=lambda t: t[1])[0]
    assert abs(peak - 100.0) < 1.0
