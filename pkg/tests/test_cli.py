import json
import math

import jsonschema
import numpy as np
import pytest

from rindler_dicke import amplitudes as amp, cli, schemas
from rindler_dicke.errors import ConfigError
from rindler_dicke.kinematics import DimensionlessParams


def run(argv, capsys):
    code = cli.main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_csv_round_trip(tmp_path, capsys):
    path = tmp_path / "sweep.csv"
    code, _, _ = run(["sweep", "--points", "9", "--outputs", "P_s,P_a,P_e1e2,alpha", "--output-file", str(path)], capsys)
    assert code == 0
    text = path.read_text()
    meta, header, rows = cli.read_csv(text)
    assert any(m.startswith("# timestamp:") for m in meta)
    assert header[:3] == ["kd", "P_s", "P_a"] and "valid" in header and header[-1] == "error"
    assert len(rows) == 9
    # values re-evaluated from the parsed sweep variable match the printed ones exactly
    scale = None
    for r in rows:
        dp = DimensionlessParams(1.0, 0.1, r["kd"])
        scale = scale or amp.prob_symmetric(DimensionlessParams(1.0, 0.1, 0.0))
        assert r["P_s"] == amp.prob_symmetric(dp) / scale
        assert r["alpha_plus_re"] == amp.alpha_pm("+", dp).real
        assert r["valid"] is True and r["error"] == ""


def test_deterministic_without_timestamp(tmp_path, capsys):
    outs = []
    for i in range(2):
        p = tmp_path / f"s{i}.csv"
        run(["sweep", "--points", "7", "--no-timestamp", "--output-file", str(p)], capsys)
        outs.append(p.read_bytes())
    assert outs[0] == outs[1]
    assert b"timestamp" not in outs[0]


def test_parallel_rows_match_serial(capsys):
    _, serial, _ = run(["sweep", "--points", "11", "--no-timestamp", "--outputs", "P_s,beta"], capsys)
    _, par, _ = run(["sweep", "--points", "11", "--no-timestamp", "--outputs", "P_s,beta", "--jobs", "2"], capsys)
    assert serial == par


def test_interference_sweep_si(capsys):
    code, out, _ = run(["sweep", "--mode", "si", "--points", "401", "--no-timestamp"], capsys)
    assert code == 0
    _, header, rows = cli.read_csv(out)
    d = np.array([r["d"] for r in rows])
    ps = np.array([r["P_s"] for r in rows])
    pa = np.array([r["P_a"] for r in rows])
    lam = 2 * math.pi * 299792458.0 / 1e8
    assert d[-1] == pytest.approx(2 * lam)
    peak = ps.max()
    for target in (0, lam, 2 * lam):
        assert ps[np.argmin(abs(d - target))] == pytest.approx(peak, rel=1e-12)
    for target in (lam / 2, 1.5 * lam):
        assert pa[np.argmin(abs(d - target))] == pytest.approx(peak, rel=1e-12)
        assert ps[np.argmin(abs(d - target))] < 1e-25 * peak
    assert np.ptp(ps + pa) <= 1e-12 * peak


def test_sum_rule_column_dimensionless(capsys):
    _, out, _ = run(["sweep", "--var", "kd", "--points", "50", "--no-timestamp"], capsys)
    _, _, rows = cli.read_csv(out)
    total = np.array([r["P_s"] + r["P_a"] for r in rows])
    assert np.ptp(total) < 1e-14
    assert max(r["P_s"] for r in rows) == 1.0


def test_two_points(capsys):
    _, out, _ = run(["sweep", "--var", "xi", "--start", "1", "--stop", "2", "--points", "2", "--no-timestamp"], capsys)
    assert len(cli.read_csv(out)[2]) == 2


@pytest.mark.parametrize(
    "argv",
    [
        ["sweep", "--points", "1"],
        ["sweep", "--start", "2", "--stop", "1"],
        ["sweep", "--var", "d"],
        ["sweep", "--mode", "si", "--var", "xi"],
        ["sweep", "--var", "kd", "--kd", "0.3"],
        ["sweep", "--outputs", "P_x"],
        ["verify", "--grid-xi", ""],
    ],
)
def test_config_errors(argv, capsys):
    code, _, err = run(argv, capsys)
    assert code == 2 and "configuration error" in err


def test_row_errors_recorded(capsys):
    code, out, _ = run(["sweep", "--var", "xi", "--start", "-1", "--stop", "1", "--points", "3", "--no-timestamp"], capsys)
    assert code == 0
    _, _, rows = cli.read_csv(out)
    assert rows[0]["error"].startswith("DomainError") and math.isnan(rows[0]["P_s"])
    assert rows[2]["error"] == ""


def test_json_sweep_schema(capsys):
    code, out, _ = run(["sweep", "--out", "json", "--points", "4", "--outputs", "P_s,P_e1e2,alpha,beta"], capsys)
    assert code == 0
    doc = json.loads(out)
    jsonschema.validate(doc, schemas.SWEEP)
    assert set(doc["rows"][0]["beta_LL"]) == {"re", "im"}


def test_eval_matches_library(capsys):
    code, out, _ = run(["eval", "--xi", "1", "--kappa", "0.1", "--kd", "0"], capsys)
    assert code == 0
    doc = json.loads(out)
    jsonschema.validate(doc, schemas.EVAL)
    dp = DimensionlessParams(1.0, 0.1, 0.0)
    assert doc["probabilities"]["P_s"] == amp.prob_symmetric(dp)
    assert doc["amplitudes"]["alpha_plus"]["re"] == amp.alpha_pm("+", dp).real
    assert doc["amplitudes"]["alpha_plus"]["im"] == amp.alpha_pm("+", dp).imag
    assert doc["amplitudes"]["beta_LL"]["re"] == amp.beta_ll(dp).real
    assert doc["amplitudes"]["beta_RL"]["re"] == amp.beta_rl(dp).real


def test_eval_zero_coupling(capsys):
    _, out, _ = run(["eval", "--mode", "si", "--chi", "0"], capsys)
    doc = json.loads(out)
    probs = doc["probabilities"]
    assert probs["P_s"] == probs["P_a"] == probs["P_single"] == probs["P_e1e2"]["value"] == 0
    assert doc["dicke"]["amp_ground"]["re"] == 1
    assert all(v["modulus"] == 0 for k, v in doc["dicke"].items() if k != "amp_ground")


def test_eval_kd_pi_has_no_symmetric_amplitude(capsys):
    _, out, _ = run(["eval", "--kd", str(math.pi)], capsys)
    d = json.loads(out)["dicke"]
    assert d["amp_symmetric_left"]["modulus"] < 1e-15 * d["amp_antisymmetric_left"]["modulus"]


def test_verify_forced_failure(capsys):
    code, out, err = run(["verify", "--no-oracle", "--tol", "1e-30", "--out", "json"], capsys)
    assert code == 1
    doc = json.loads(out)
    jsonschema.validate(doc, schemas.VERIFY)
    assert not doc["passed"]
    assert "gamma_modulus" in err


def test_verify_small_grid_passes(capsys):
    code, out, _ = run(["verify", "--grid-xi", "1", "--grid-kappa", "0.5"], capsys)
    assert code == 0 and "all checks passed" in out


def test_config_precedence(tmp_path, capsys, monkeypatch):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"points": 5, "xi": 2.0}))
    _, out, _ = run(["sweep", "--config", str(cfg), "--show-config"], capsys)
    shown = json.loads(out)
    assert shown["points"] == 5 and shown["xi"] == 2.0
    _, out, _ = run(["sweep", "--config", str(cfg), "--points", "3", "--show-config"], capsys)
    assert json.loads(out)["points"] == 3
    monkeypatch.setenv(cli.CONFIG_ENV, str(cfg))
    _, out, _ = run(["sweep", "--show-config"], capsys)
    assert json.loads(out)["xi"] == 2.0


def test_bad_config_file(tmp_path, capsys):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"bogus": 1}))
    code, _, err = run(["sweep", "--config", str(cfg)], capsys)
    assert code == 2 and "bogus" in err
    cfg.write_text("{not json")
    assert run(["sweep", "--config", str(cfg)], capsys)[0] == 2


def test_cyclic_units(capsys):
    _, out, _ = run(["eval", "--mode", "si", "--cyclic"], capsys)
    params = json.loads(out)["params"]
    assert params["omega"] == pytest.approx(2 * math.pi * 1e9)
    assert params["nu"] == pytest.approx(2 * math.pi * 1e8)


def test_sweep_spec_validation():
    dp = DimensionlessParams(1.0, 0.1)
    with pytest.raises(ConfigError):
        cli.SweepSpec("kd", 0, 1, 1, dp, ("P_s",), "dimensionless")
    spec = cli.SweepSpec("kd", 0, 1, 2, dp, ("P_s",), "dimensionless")
    assert len(cli.cmd_sweep(spec).rows) == 2
