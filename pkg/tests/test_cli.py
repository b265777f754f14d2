import json

import pytest

from terracini.classify import parse_report
from terracini.cli import main, parse_int_list


def test_parse_int_list():
    assert parse_int_list("1-3,7") == [1, 2, 3, 7]
    assert parse_int_list("5") == [5]


def test_dim_json(capsys):
    assert main(["dim", "--d", "3", "--m", "1", "--h", "1", "--format", "json"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert (out["dim"], out["defect"], out["expdim"]) == (8, 1, 9)
    assert out["predicted"] == "defective:former:a"
    assert out["lemma_v_equality"] is True


def test_dim_unequal_orders(capsys):
    assert main(["dim", "--d", "5", "--orders", "0,1,2", "--seed", "4"]) == 0
    lines = dict(line.split("\t", 1) for line in capsys.readouterr().out.splitlines())
    assert lines["orders"] == "0,1,2"
    assert lines["predicted"] == ""


def test_dim_needs_orders(capsys):
    assert main(["dim", "--d", "3"]) == 2
    assert "orders" in capsys.readouterr().err


def test_interp(capsys):
    assert main(["interp", "--d", "4", "--mults", "2,2,2,2,2", "--format", "json"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["speciality"] == 1
    assert out["cremona"] == "L_2(2,2)"


def test_sweep_tsv_to_file(tmp_path):
    target = tmp_path / "grid.tsv"
    code = main(["sweep", "--d", "3-5", "--m", "1", "--h", "1", "--seed", "42",
                 "--out", str(target)])
    assert code == 0
    rows = parse_report(target.read_text())
    assert [r["agreement"] for r in rows] == ["match", "not_applicable", "match"]
    assert all(r["seed"] == 42 and r["prime"] == 2147483647 for r in rows)


def test_sweep_json_with_config_file(tmp_path, capsys):
    cfg = tmp_path / "defaults.json"
    cfg.write_text(json.dumps({"prime": 1000000007, "seed": 9, "trials": 2}))
    assert main(["sweep", "--d", "3", "--m", "1", "--h", "1", "--format", "json",
                 "--config", str(cfg)]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["header"]["config"] == {"prime": 1000000007, "seed": 9, "trials": 2}


def test_sweep_exit_code_on_mismatch(monkeypatch, capsys):
    import terracini.classify as classify

    monkeypatch.setitem(classify._NONDEFECTIVE, "a", (1, (0, 99, 1), (0, 99, 1)))
    assert main(["sweep", "--d", "3", "--m", "1", "--h", "1"]) == 0
    monkeypatch.setitem(classify._FORMER_DEFECTIVE, "a", (1, (0, 1, 1), (0, 99, 1)))
    monkeypatch.setitem(classify._LATTER_DEFECTIVE, "a", (1, (0, 1, 1), (0, 99, 1)))
    # (5, 1, 1) is not defective, so a defective prediction must be a mismatch
    assert main(["sweep", "--d", "5", "--m", "1", "--h", "1"]) == 1
    assert "mismatch" in capsys.readouterr().out


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["sweep", "--d", "x", "--m", "1", "--h", "1"],
        ["sweep", "--d", "3", "--m", "1", "--h", "1", "--format", "xml"],
        ["dim", "--d", "3", "--m", "1", "--h", "1", "--prime", "100"],
        ["interp", "--d", "3", "--mults", "2,-1"],
    ],
)
def test_usage_errors(argv):
    assert main(argv) == 2
