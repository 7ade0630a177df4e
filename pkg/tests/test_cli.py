import json
import math

import numpy as np
import pytest

from squeezering import transmissions
from squeezering.cli import main


def run_cli(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def write_config(tmp_path, payload, name="cfg.json"):
    path = tmp_path / name
    path.write_text(json.dumps(payload))
    return str(path)


def read_csv(path):
    with open(path, newline="") as fh:
        raw = fh.read()
    lines = raw.split("\r\n")
    assert lines[-1] == ""  # CRLF-terminated
    header = lines[0].split(",")
    rows = [line.split(",") for line in lines[1:-1]]
    return raw, header, rows


class TestSweep:
    def test_header_and_operating_point(self, tmp_path, capsys):
        cfg = write_config(tmp_path, {
            "preset": "NMS",
            "overrides": {"alpha_in": 0.6},
            "sweep": {"axis": "Delta_a", "start": -1.0, "stop": 1.0, "step": 0.5},
        })
        out_path = str(tmp_path / "sweep.csv")
        code, _, _ = run_cli(["sweep", "--config", cfg, "--out", out_path], capsys)
        assert code == 0
        _, header, rows = read_csv(out_path)
        assert header == ["delta_a", "T12", "T12_sv", "T21", "T23", "eta_db"]
        assert len(rows) == 5
        mid = rows[2]
        assert float(mid[0]) == 0.0
        assert float(mid[2]) == pytest.approx(0.830598931635, abs=1e-9)
        assert float(mid[3]) == pytest.approx(2.5505024780e-9, rel=1e-4)
        assert float(mid[5]) == pytest.approx(85.1277, abs=1e-3)

    def test_backward_dip_and_forward_level(self, tmp_path, capsys):
        cfg = write_config(tmp_path, {
            "preset": "NMS",
            "sweep": {"axis": "Delta_a", "start": -6.0, "stop": 6.0, "step": 0.1},
        })
        out_path = str(tmp_path / "s.csv")
        assert run_cli(["sweep", "--config", cfg, "--out", out_path], capsys)[0] == 0
        _, _, rows = read_csv(out_path)
        delta = np.array([float(r[0]) for r in rows])
        t21 = np.array([float(r[3]) for r in rows])
        t12sv = np.array([float(r[2]) for r in rows])
        assert delta[np.argmin(t21)] == pytest.approx(0.0, abs=1e-12)
        assert t21.min() < 1e-8
        # squeezing keeps the forward channel open across the backward dip
        assert t12sv[np.abs(delta) <= 1.0].min() > 0.8

    def test_mrs_backward_doublet(self, tmp_path, capsys):
        cfg = write_config(tmp_path, {
            "preset": "MRS",
            "sweep": {"axis": "Delta_a", "start": -4.0, "stop": 4.0, "step": 0.02},
        })
        out_path = str(tmp_path / "m.csv")
        assert run_cli(["sweep", "--config", cfg, "--out", out_path], capsys)[0] == 0
        _, _, rows = read_csv(out_path)
        delta = np.array([float(r[0]) for r in rows])
        t21 = np.array([float(r[3]) for r in rows])
        interior = (np.diff(np.sign(np.diff(t21))) > 0).nonzero()[0] + 1
        dips = delta[interior]
        assert len(dips) == 2
        assert dips[0] == pytest.approx(-2.62, abs=0.05)
        assert dips[1] == pytest.approx(+2.62, abs=0.05)

    def test_numeric_columns_side_by_side(self, tmp_path, capsys):
        cfg = write_config(tmp_path, {
            "preset": "NMS",
            "overrides": {"alpha_in": 0.6},
            "solver": "moments",
            "sweep": {"axis": "Delta_a", "start": -0.5, "stop": 0.5, "step": 0.5},
        })
        out_path = str(tmp_path / "n.csv")
        assert run_cli(["sweep", "--config", cfg, "--out", out_path], capsys)[0] == 0
        _, header, rows = read_csv(out_path)
        assert header[-3:] == ["T12_moments", "T21_moments", "T23_moments"]
        for r in rows:
            assert float(r[6]) == pytest.approx(float(r[2]), abs=1e-9)

    def test_determinism_and_thread_invariance(self, tmp_path, capsys, monkeypatch):
        cfg = write_config(tmp_path, {
            "preset": "MRS",
            "sweep": {"axis": "Delta_a", "start": -2.0, "stop": 2.0, "step": 0.25},
        })
        paths = [str(tmp_path / f"d{i}.csv") for i in range(4)]
        run_cli(["sweep", "--config", cfg, "--out", paths[0]], capsys)
        run_cli(["sweep", "--config", cfg, "--out", paths[1]], capsys)
        run_cli(["sweep", "--config", cfg, "--out", paths[2], "--threads", "3"], capsys)
        monkeypatch.setenv("SQUEEZERING_THREADS", "4")
        run_cli(["sweep", "--config", cfg, "--out", paths[3]], capsys)
        blobs = [open(p, "rb").read() for p in paths]
        assert blobs[0] == blobs[1] == blobs[2] == blobs[3]

    def test_isolation_sentinel_serialized_as_inf(self, tmp_path, capsys):
        cfg = write_config(tmp_path, {
            "preset": "custom",
            "overrides": {"kappa_ex1": 0.5, "kappa_ex2": 0.5, "J": 0.0,
                          "Omega_p": 0.0, "Delta_p_b": 1.0},
            "sweep": {"axis": "Delta_a", "start": -0.5, "stop": 0.5, "step": 0.5},
        })
        out_path = str(tmp_path / "inf.csv")
        assert run_cli(["sweep", "--config", cfg, "--out", out_path], capsys)[0] == 0
        _, _, rows = read_csv(out_path)
        mid = rows[1]
        assert mid[3] == "0"  # T21 exactly dark at this point
        assert mid[5] == "inf"


class TestConfigErrors:
    def test_empty_sweep_range(self, tmp_path, capsys):
        cfg = write_config(tmp_path, {
            "preset": "NMS",
            "sweep": {"axis": "Delta_a", "start": 1.0, "stop": 1.0, "step": 0.1},
        })
        code, _, err = run_cli(["sweep", "--config", cfg], capsys)
        assert code == 2
        assert "degenerate" in err or "empty" in err

    def test_unknown_key_rejected(self, tmp_path, capsys):
        cfg = write_config(tmp_path, {"preset": "NMS", "sweeep": {}})
        assert run_cli(["sweep", "--config", cfg], capsys)[0] == 2

    def test_unknown_override_rejected(self, tmp_path, capsys):
        cfg = write_config(tmp_path, {"preset": "NMS", "overrides": {"Jz": 1.0}})
        assert run_cli(["sweep", "--config", cfg], capsys)[0] == 2

    def test_invalid_json(self, tmp_path, capsys):
        path = tmp_path / "bad.json"
        path.write_text("{not json")
        assert run_cli(["sweep", "--config", str(path)], capsys)[0] == 2

    def test_unknown_preset(self, capsys):
        assert run_cli(["sweep", "--preset", "XYZ"], capsys)[0] == 2

    def test_unknown_axis(self, tmp_path, capsys):
        cfg = write_config(tmp_path, {
            "preset": "NMS",
            "sweep": {"axis": "warp", "start": 0.0, "stop": 1.0, "step": 0.1},
        })
        assert run_cli(["sweep", "--config", cfg], capsys)[0] == 2

    def test_numerical_failure_exit_code(self, tmp_path, capsys):
        # beyond the parametric threshold: beta > 1
        cfg = write_config(tmp_path, {
            "preset": "NMS",
            "overrides": {"Omega_p": 20.0},
            "sweep": {"axis": "Delta_a", "start": -0.5, "stop": 0.5, "step": 0.5},
        })
        assert run_cli(["sweep", "--config", cfg], capsys)[0] == 3


class TestSqueezeScan:
    def test_reciprocal_at_zero_squeezing(self, tmp_path, capsys):
        cfg = write_config(tmp_path, {
            "preset": "NMS",
            "sweep": {"axis": "r_p", "start": 0.0, "stop": 1.2, "step": 0.3},
        })
        out_path = str(tmp_path / "scan.csv")
        assert run_cli(["squeeze-scan", "--config", cfg, "--out", out_path], capsys)[0] == 0
        _, header, rows = read_csv(out_path)
        assert header == ["r_p", "eta_db", "L_db"]
        assert float(rows[0][1]) == 0.0

    def test_curves_flatten_beyond_point_six(self, tmp_path, capsys):
        for preset in ("NMS", "MRS"):
            cfg = write_config(tmp_path, {
                "preset": preset,
                "sweep": {"axis": "r_p", "start": 0.1, "stop": 1.3, "step": 0.1},
            }, name=f"{preset}.json")
            out_path = str(tmp_path / f"scan_{preset}.csv")
            run_cli(["squeeze-scan", "--config", cfg, "--out", out_path], capsys)
            _, _, rows = read_csv(out_path)
            table = {round(float(r[0]), 3): (float(r[1]), float(r[2])) for r in rows}
            # stable beyond r_p = 0.6: small drift, large early-range swing
            assert abs(table[1.2][0] - table[0.7][0]) < 2.0
            assert abs(table[0.4][0] - table[0.1][0]) > 5.0
            assert table[0.7][1] - table[1.2][1] < 1.5
            assert table[0.1][1] - table[0.4][1] > 5.0

    def test_scan_row_consistent_with_direct_evaluation(self, tmp_path, capsys):
        # the implied (Omega_p, Delta_p_b) pair reproduces the scan row
        cfg = write_config(tmp_path, {
            "preset": "NMS",
            "sweep": {"axis": "r_p", "start": 1.05, "stop": 1.06, "step": 0.1},
        })
        out_path = str(tmp_path / "one.csv")
        run_cli(["squeeze-scan", "--config", cfg, "--out", out_path], capsys)
        _, _, rows = read_csv(out_path)
        r_p = float(rows[0][0])
        beta = math.tanh(2 * r_p)
        delta_p_b = 10.0 * math.sinh(r_p)
        from squeezering import nms_params

        p = nms_params().replace(Omega_p=beta * delta_p_b, Delta_p_b=delta_p_b,
                                 Delta_a=0.0, Delta_b=0.0)
        ts = transmissions(p)
        assert float(rows[0][1]) == pytest.approx(ts.eta_db, abs=1e-6)
        assert float(rows[0][2]) == pytest.approx(-10 * math.log10(ts.T12_sv), abs=1e-6)


class TestTransistorCommand:
    def test_linear_gain_column(self, tmp_path, capsys):
        cfg = write_config(tmp_path, {
            "preset": "NMS",
            "sweep": {"axis": "alpha_sq", "start": 2e7, "stop": 8e7, "step": 2e7},
        })
        out_path = str(tmp_path / "g.csv")
        assert run_cli(["transistor", "--config", cfg, "--out", out_path], capsys)[0] == 0
        _, header, rows = read_csv(out_path)
        assert header == ["delta_a", "alpha_sq", "G"]
        g = [float(r[2]) for r in rows]
        assert g[1] == pytest.approx(2 * g[0], rel=1e-9)
        assert g[3] == pytest.approx(4 * g[0], rel=1e-9)

    def test_pump_off_gives_zero_map(self, tmp_path, capsys):
        cfg = write_config(tmp_path, {
            "preset": "NMS",
            "overrides": {"Omega_p": 0.0},
            "sweep": {"axis": "alpha_sq", "start": 1e7, "stop": 5e7, "step": 1e7},
        })
        out_path = str(tmp_path / "g0.csv")
        assert run_cli(["transistor", "--config", cfg, "--out", out_path], capsys)[0] == 0
        _, _, rows = read_csv(out_path)
        assert all(r[2] == "0" for r in rows)


class TestPulseCommand:
    def test_report_and_series(self, tmp_path, capsys):
        out_path = str(tmp_path / "pulse.csv")
        code, out, _ = run_cli(["pulse", "--preset", "NMS", "--out", out_path], capsys)
        assert code == 0
        assert "fidelity F = 0.999497" in out
        assert "conservation residual" in out
        _, header, rows = read_csv(out_path)
        assert header == ["t", "flux_in_fw", "flux_out_fw", "flux_drop_fw",
                          "flux_in_bw", "flux_out_bw", "flux_drop_bw"]
        assert len(rows) == 601


class TestValidateCommand:
    def test_nms_cross_checks_pass(self, capsys):
        code, out, _ = run_cli(["validate", "--preset", "NMS"], capsys)
        assert code == 0
        assert out.count("PASS") == 2


def test_ln_chip_preset_maps_to_chip_operating_point(tmp_path, capsys):
    cfg = write_config(tmp_path, {
        "preset": "LN-chip",
        "sweep": {"axis": "Delta_a", "start": -0.5, "stop": 0.5, "step": 0.5},
    })
    out_path = str(tmp_path / "ln.csv")
    assert run_cli(["sweep", "--config", cfg, "--out", out_path], capsys)[0] == 0
    _, _, rows = read_csv(out_path)
    assert float(rows[1][2]) == pytest.approx(0.830598931635, abs=1e-9)
