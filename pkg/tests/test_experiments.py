from __future__ import annotations

import csv
import json

import pytest
import yaml

from pmelab.cli import main
from pmelab.errors import ConfigInvalid
from pmelab.experiments import (load_config, parse_config, recipe_config, reproduce_theorem,
                                run_case, sweep)

BASE = {
    "name": "small",
    "density": {"R": 1.0, "q": 3.0},
    "exponents": {"m": 2, "p": 3},
    "barrier": {"system": "fast-global"},
    "datum": {"kind": "scaled-barrier", "scale": 0.5},
    "solver": {"delta": 0.05, "t_end": 0.5, "nx": 101},
}


def _with(path: str, value):
    data = json.loads(json.dumps(BASE))
    node = data
    keys = path.split(".")
    for k in keys[:-1]:
        node = node[k]
    if value is None:
        del node[keys[-1]]
    else:
        node[keys[-1]] = value
    return data


@pytest.mark.parametrize("path,value,where", [
    ("exponents.m", None, ".exponents.m"),
    ("density.q", None, ".density.q"),
    ("density.colour", 1, ".density.colour"),
    ("exponents.p", "three", ".exponents.p"),
    ("barrier.system", "nowhere", ".barrier.system"),
    ("datum.kind", "spike", ".datum.kind"),
    ("solver.nx", 4, ".solver"),
    ("exponents.m", 1.0, ".exponents"),
])
def test_config_errors_name_the_path(path, value, where):
    with pytest.raises(ConfigInvalid) as info:
        parse_config(_with(path, value))
    assert info.value.args[0].startswith(where) or where in str(info.value)


def test_scaled_barrier_needs_barrier():
    data = _with("barrier", None)
    with pytest.raises(ConfigInvalid):
        parse_config(data)


def test_explicit_barrier_needs_amplitude():
    data = _with("barrier", {"regime": "fast", "orientation": "super"})
    with pytest.raises(ConfigInvalid):
        parse_config(data)


def test_load_config_yaml(tmp_path):
    path = tmp_path / "case.yaml"
    path.write_text(yaml.safe_dump(BASE))
    cfg = load_config(path)
    assert cfg.exponents == {"m": 2, "p": 3}
    bad = tmp_path / "bad.yaml"
    bad.write_text("density: [unclosed")
    with pytest.raises(ConfigInvalid):
        load_config(bad)
    with pytest.raises(ConfigInvalid):
        load_config(tmp_path / "missing.yaml")


def test_run_case_outputs_and_determinism(tmp_path):
    cfg = parse_config(BASE)
    a = run_case(cfg, out_dir=tmp_path / "a")
    b = run_case(parse_config(BASE), out_dir=tmp_path / "b")
    assert a["status"] == "Global"
    assert a["comparison"]["passed"]
    for name in ("history.csv", "snapshots.csv"):
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()
    sa = json.loads((tmp_path / "a" / "summary.json").read_text())
    sb = json.loads((tmp_path / "b" / "summary.json").read_text())
    sa.pop("generated_at")
    sb.pop("generated_at")
    assert sa == sb
    assert b["feasibility_digest"] == a["feasibility_digest"]


def test_explicit_barrier_case():
    data = _with("barrier", {"regime": "fast", "orientation": "super", "C": 0.25,
                             "a": 4 / 3, "T": 16.0, "eps": 0.7, "bracket_sign": 1})
    summary = run_case(parse_config(data), write=False)
    assert "feasibility" not in summary or summary["feasibility"] is None
    assert summary["barrier"]["family"] == "fast-super"
    assert summary["barrier_check"]["passed"]
    assert summary["comparison"]["passed"]


def test_recipe_lookup():
    with pytest.raises(ConfigInvalid):
        recipe_config("T9.9")
    with pytest.raises(ConfigInvalid):
        recipe_config("T2.1", scale="huge")


def test_reproduce_fast_global(tmp_path):
    rep = reproduce_theorem("T2.1", out_dir=tmp_path)
    assert rep["passed"], rep["claims"]
    assert (tmp_path / "report.json").exists()


def test_sweep_csv_and_parallel_agree(tmp_path):
    solver = {"delta": 0.05, "t_end": 0.5, "nx": 81}
    axes = {"m": [2.0], "p": [3.0], "q": [1.0, 3.0]}
    t1 = sweep(axes, solver=solver, csv_path=tmp_path / "one.csv")
    t2 = sweep(axes, solver=solver, workers=2, csv_path=tmp_path / "two.csv")
    assert t1.rows() == t2.rows()
    assert (tmp_path / "one.csv").read_bytes() == (tmp_path / "two.csv").read_bytes()
    with open(tmp_path / "one.csv") as fh:
        rows = list(csv.DictReader(fh))
    assert [r["q"] for r in rows] == ["1.0", "3.0"]
    assert all(r["outcome"] == "Global" for r in rows)
    with pytest.raises(ConfigInvalid):
        sweep({"m": [], "p": [2.0], "q": [1.0]})


def test_cli_exit_codes(tmp_path, capsys):
    assert main(["feasible", "--system", "fast-global", "--m", "2", "--p", "3",
                 "--q", "2.1", "--c2", "50"]) == 1
    assert main(["feasible", "--system", "slow", "--m", "2", "--p", "2", "--q", "1"]) == 1
    assert main(["feasible", "--system", "fast-blowup", "--m", "2", "--p", "3", "--q", "3",
                 "--case", "PeqM"]) == 2
    out = tmp_path / "rep.json"
    assert main(["feasible", "--system", "slow", "--m", "2", "--p", "3", "--q", "1",
                 "--sign-mode", "corrected", "--out", str(out)]) == 0
    assert json.loads(out.read_text())["feasible"] is True
    assert main(["feasible", "--system", "slow", "--m", "2", "--p", "3", "--q", "1",
                 "--sign-mode", "literal"]) == 1

    cfg = tmp_path / "case.yaml"
    cfg.write_text(yaml.safe_dump(_with("exponents.m", None)))
    assert main(["simulate", "--config", str(cfg)]) == 2
    cfg.write_text(yaml.safe_dump(BASE))
    assert main(["simulate", "--config", str(cfg), "--out", str(tmp_path / "sim")]) == 0
    assert (tmp_path / "sim" / "history.csv").exists()
    dump = tmp_path / "dump.csv"
    assert main(["barrier-check", "--config", str(cfg), "--nx", "40", "--nt", "10",
                 "--dump", str(dump)]) == 0
    assert dump.read_text().splitlines()[0] == "x,t,residual,bracket"
    capsys.readouterr()
