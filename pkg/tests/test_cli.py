from __future__ import annotations

import json

import pytest

from skewberger.cli import main
from skewberger.supergeo import flat_metric, random_metric


def test_prolong_so5(capsys):
    assert main(["prolong", "--family", "so", "--n", "5", "--rep", "standard", "--kind", "skew", "--order", "1"]) == 0
    assert capsys.readouterr().out.splitlines()[0] == "dim 10"


def test_prolong_json(tmp_path):
    out = tmp_path / "p.json"
    assert main(["prolong", "--family", "sl", "--n", "3", "--json", str(out)]) == 0
    data = json.loads(out.read_text())
    assert data["dim"] == 6 and data["order"] == 1


def test_unknown_family_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["prolong", "--family", "e8", "--n", "3"])
    assert exc.value.code == 2
    err = capsys.readouterr().err
    assert "supported families" in err and "sl" in err


def test_unknown_module_is_usage_error():
    with pytest.raises(SystemExit) as exc:
        main(["curvature", "--family", "sl", "--n", "3", "--rep", "nonsense"])
    assert exc.value.code == 2


def test_curvature_and_skew_berger(capsys):
    assert main(["curvature", "--family", "sp", "--n", "2", "--json"]) == 0
    out = capsys.readouterr().out
    payload = json.loads(out[out.index("{"):])
    assert payload["curvature_dim"] == 20 and payload["derivative_dim"] == 20
    assert main(["skew-berger", "--family", "so+sp", "--n", "3", "--q", "2", "--rep", "tensor", "--json"]) == 0
    out = capsys.readouterr().out
    payload = json.loads(out[out.index("{"):])
    assert payload["is_skew_berger"] and payload["is_symmetric"]


def test_lagrangian_pair_exit_codes(capsys):
    assert main(["lagrangian-pair", "--family", "sl", "--n", "3"]) == 0
    assert main(["lagrangian-pair", "--family", "so", "--n", "2"]) == 1  # reducible over R


def test_holonomy_flat(tmp_path, capsys):
    f = tmp_path / "flat_m2.json"
    f.write_text(json.dumps(flat_metric(2).to_json()))
    assert main(["holonomy", "--metric", str(f)]) == 0
    assert capsys.readouterr().out.startswith("holonomy dim 0")


def test_holonomy_debug_span(tmp_path, capsys):
    f = tmp_path / "m.json"
    f.write_text(json.dumps(random_metric(1, 1).to_json()))
    assert main(["holonomy", "--metric", str(f), "--debug-span", "--json"]) == 0
    out = capsys.readouterr().out
    payload = json.loads(out[out.index("{"):])
    assert payload["dim"] == 3 and payload["debug_dim"] == 3


def test_holonomy_bad_file(tmp_path):
    f = tmp_path / "bad.json"
    f.write_text("{}")
    with pytest.raises(SystemExit) as exc:
        main(["holonomy", "--metric", str(f)])
    assert exc.value.code == 2


def test_verify_exit_codes(tmp_path):
    assert main(["verify", "--tables", "5", "--max-size", "4"]) == 0
    out = tmp_path / "r.json"
    assert main(["verify", "--tables", "8", "--max-size", "2", "--json", str(out)]) == 1
    assert json.loads(out.read_text())["summary"]["fail"] > 0


def test_verify_bad_table():
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--tables", "9"])
    assert exc.value.code == 2


def test_catalog_formats(capsys):
    assert main(["catalog", "--table", "6", "--format", "json"]) == 0
    assert json.loads(capsys.readouterr().out)["rows"]
    assert main(["catalog", "--table", "1", "--format", "text"]) == 0
    assert "osp" in capsys.readouterr().out
