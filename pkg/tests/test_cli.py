import csv
import json
import os
import subprocess
import sys

import pytest

from framecurv.cli import main


def _write(tmp_path, name, obj):
    path = tmp_path / name
    path.write_text(obj if isinstance(obj, str) else json.dumps(obj))
    return str(path)


SMALL = {"samples": 5, "curvature_samples": 2, "invariant_samples": 5, "scalar_samples": 1, "dim": 2}


def test_verify_flat_sasaki(tmp_path):
    cfg = _write(tmp_path, "c.json", {"base": {"type": "flat"}, "weights": {"preset": "sasaki"}, **SMALL})
    out = tmp_path / "r.json"
    assert main(["verify", "--config", cfg, "--out", str(out)]) == 0
    rep = json.loads(out.read_text())
    assert rep["schema"] == 1 and rep["passed"]
    for case in rep["reports"]["connection"]["cases"].values():
        assert case["max_abs_err"] < 1e-9


def test_verify_space_form_cheeger_gromoll_and_adjudications(tmp_path):
    cfg = _write(tmp_path, "c.json", {"base": {"type": "space_form", "kappa": 1.0},
                                      "weights": {"preset": "cheeger_gromoll"}, **SMALL})
    out = tmp_path / "r.json"
    assert main(["verify", "--config", cfg, "--out", str(out)]) == 0
    rep = json.loads(out.read_text())
    items = {a["item"]: a for a in rep["adjudications"]}
    assert items["sectional_hv_general"]["verdict"] == "confirmed"
    assert not items["sectional_hv_space_form"]["printed_form_matches"]
    assert items["cheeger_gromoll_vertical_bound"]["violations_of_printed_bound"] > 0
    assert items["cheeger_gromoll_vertical_bound"]["violations_of_bound_3_over_(1+t)^2"] == 0
    assert main(["verify", "--config", cfg, "--out", str(out), "--strict-formulas"]) == 2


def test_verify_reports_are_reproducible(tmp_path):
    cfg = _write(tmp_path, "c.json", {"base": {"type": "space_form", "kappa": -0.5},
                                      "weights": {"preset": "cheeger_gromoll"}, **SMALL})
    outs = []
    for k, threads in enumerate(("1", "4")):
        out = tmp_path / f"r{k}.json"
        env_main = [sys.executable, "-m", "framecurv", "verify", "--config", cfg, "--seed", "7",
                    "--out", str(out)]
        subprocess.run(env_main, check=True, env=dict(os.environ, FRAMECURV_THREADS=threads))
        rep = json.loads(out.read_text())
        rep.pop("timestamp")
        outs.append(json.dumps(rep, sort_keys=True))
    assert outs[0] == outs[1]


def test_verify_tolerance_forces_discrepancy(tmp_path):
    cfg = _write(tmp_path, "c.json", {"base": {"type": "space_form", "kappa": 1.0},
                                      "weights": {"preset": "cheeger_gromoll"}, **SMALL})
    out = tmp_path / "r.json"
    assert main(["verify", "--config", cfg, "--tolerance", "1e-16", "--out", str(out)]) == 2
    assert json.loads(out.read_text())["discrepancies"]


def test_malformed_config(tmp_path, capsys):
    assert main(["verify", "--config", _write(tmp_path, "bad.json", '{"dim": 2,')]) == 1
    assert "line 1" in capsys.readouterr().err
    assert main(["verify", "--config", _write(tmp_path, "bad2.json", {"samples": "many"})]) == 1
    assert "samples" in capsys.readouterr().err
    assert main(["verify", "--config", str(tmp_path / "missing.json")]) == 1
    assert main(["nonsense"]) == 1


POINT = {"x": [0.0, 0.0], "u": [[1.0, 0.0], [0.0, 1.0]]}


def _eval(tmp_path, cfg, *extra):
    out = tmp_path / "e.json"
    code = main(["eval", "--config", _write(tmp_path, "e_cfg.json", cfg), "--out", str(out), *extra])
    return code, json.loads(out.read_text()) if code == 0 else None


def test_eval_scalar_flat_sasaki(tmp_path):
    code, res = _eval(tmp_path, {"base": {"type": "flat", "dim": 2}, "point": POINT,
                                 "quantity": "scalar"}, "--oracle")
    assert code == 0 and res["value"] == 0.0 and abs(res["oracle"]) < 1e-8


def test_eval_sectional_space_form(tmp_path):
    cfg = {"base": {"type": "space_form", "kappa": 1.0}, "dim": 2, "point": POINT,
           "vectors": {"X": [1.0, 0.0], "Y": [0.0, 1.0]}}
    code, res = _eval(tmp_path, cfg, "--quantity", "sectional", "--oracle")
    assert code == 0
    assert res["value"]["hh"] == pytest.approx(-0.5)
    assert abs(res["difference"]["hh"]) < 1e-6


def test_eval_gram_certificate(tmp_path):
    cfg = {"base": {"type": "space_form", "kappa": 1.0}, "weights": {"preset": "cheeger_gromoll"},
           "point": {"x": [0.2, 0.1], "u": [[0.9, 0.2], [0.1, 1.1]]}}
    code, res = _eval(tmp_path, cfg, "--quantity", "gram")
    assert code == 0 and res["pd_certificate"]["positive_definite"]


def test_eval_connection_and_curvature_with_oracle(tmp_path):
    cfg = {"base": {"type": "space_form", "kappa": 0.5}, "weights": {"preset": "cheeger_gromoll"},
           "point": {"x": [0.2, 0.1], "u": [[0.9, 0.2], [0.1, 1.1]]},
           "vectors": {"X": [1.0, 0.2], "Y": [0.3, -1.0], "Z": [0.5, 0.5], "kinds": [0, "h", 0],
                       "jacobian_Y": [[0.1, 0.0], [0.2, -0.3]]}}
    for q in ("connection", "curvature"):
        code, res = _eval(tmp_path, cfg, "--quantity", q, "--oracle")
        assert code == 0 and res["difference"] < 1e-5


def test_eval_requires_point(tmp_path):
    code, _ = _eval(tmp_path, {"base": {"type": "flat", "dim": 2}}, "--quantity", "scalar")
    assert code == 1


def _sweep(tmp_path, cfg, *extra):
    out = tmp_path / "s.csv"
    code = main(["sweep", "--config", _write(tmp_path, "s.json", cfg), "--out", str(out), *extra])
    lines = out.read_text().splitlines()
    rows = list(csv.DictReader(line for line in lines if not line.startswith("#")))
    return code, lines, rows


def test_sweep_positive_below_threshold(tmp_path):
    kappas = [0.05, 0.2, 0.4, 0.6]
    code, _, rows = _sweep(tmp_path, {"sweep": {"kappa": kappas, "t": [0.1, 1.0, 5.0, 50.0],
                                                "presets": ["cheeger_gromoll"]}})
    assert code == 0 and len(rows) == 16
    assert all(r["K_hh_positive"] == "True" and r["nonnegative"] == "True" for r in rows)


def test_sweep_sasaki_goes_negative(tmp_path):
    _, _, rows = _sweep(tmp_path, {"sweep": {"kappa": [1.0], "t": [4.0], "presets": ["sasaki"]}})
    assert float(rows[0]["K_hh"]) < 0


def test_sweep_empty_grid(tmp_path):
    code, lines, rows = _sweep(tmp_path, {"sweep": {"kappa": [], "t": [1.0]}})
    assert code == 0 and rows == []
    assert lines[-1].startswith("preset,") and all(line.startswith("#") for line in lines[:-1])


def test_pd_check(tmp_path):
    out = tmp_path / "p.json"
    assert main(["pd-check", "--samples", "200", "--dim", "3", "--out", str(out)]) == 0
    rep = json.loads(out.read_text())
    assert rep["failures"] == 0 and rep["dims"] == [3]


def test_pd_check_rejects_indefinite_cbar(tmp_path):
    cfg = _write(tmp_path, "p.json", {"general": {"c": [0.9, 0.9], "C": [[0.5, 0.0], [0.0, 0.5]]}})
    assert main(["pd-check", "--config", cfg]) == 1


def test_flag_validation():
    assert main(["pd-check", "--seed", "-1"]) == 1
    assert main(["pd-check", "--samples", "0"]) == 1
    assert main(["verify", "--dim", "1"]) == 1
