import json
import shutil

import pytest

from chowring import cli, verifier
from chowring.report import VerificationReport
from chowring.verifier import DATA_DIR, default_catalogs


def test_report_structure():
    rep = VerificationReport("demo")
    rep.add("a", "anchor a", "ok", True, witness_poly="x")
    rep.add("b", "anchor b", "bad", False, validity="mod-torsion")
    assert rep.summary() == {"total": 2, "passed": 1, "failed": 1}
    data = rep.to_json()
    assert data["checks"][1]["verdict"] == "fail"
    assert data["checks"][1]["validity"] == "mod-torsion"
    assert "[FAIL] b" in rep.to_text()
    with pytest.raises(ValueError):
        rep.add("c", "anchor", "x", True, validity="approximately")


def test_every_check_has_an_anchor():
    for rep in verifier.run_all(8):
        assert rep.passed, [c.id for c in rep.failures()]
        assert all(c.anchor for c in rep.checks)


def test_g2_degree_zero_is_vacuous():
    rep = verifier.verify_g2(0)
    assert rep.passed
    basis = next(c for c in rep.checks if c.id == "g2:basis")
    assert basis.witness["per_degree"] == {
        "0": {"free": 1, "free_rank_QQ": 1, "torsion": 0, "torsion_rank_F2": 0, "normal_form_monomials": 1}
    }


def test_spin7_validity_labels():
    rep = verifier.verify_spin7(8)
    labels = {c.id: c.validity for c in rep.checks}
    assert labels["spin7:lift:c2p*c7"] == "both-delta-values"
    assert labels["spin7:lift:(c4p-c4)*c7"] == "both-delta-values"
    assert labels["spin7:lift:(c6p-c6)*c7"] == "exact"
    assert labels["spin7:pushforward:(c4p-c4)^2"] == "mod-c'8"
    amb = {c.id: c.witness.get("undetermined") for c in rep.checks if c.id.startswith("spin7:lift:")}
    assert amb["spin7:lift:c2p*c7"] == ["zeta3*c6"]
    assert amb["spin7:lift:(c4p-c4)*c7"] == ["c8p*zeta3"]


def test_negative_controls_are_caught():
    rep = verifier.negative_controls()
    assert len(rep.checks) >= 5 and rep.passed


def test_custom_catalog_directory(tmp_path):
    shutil.copy(DATA_DIR / "presentations.json", tmp_path)
    cat = verifier.load_catalogs(tmp_path)
    assert verifier.verify_so4(cat).passed
    with pytest.raises(FileNotFoundError):
        verifier.load_catalogs(tmp_path / "missing")


# ---- CLI


def test_cli_text(capsys):
    assert cli.main(["verify", "so4"]) == 0
    out = capsys.readouterr().out
    assert "TOTAL: 7/7 checks passed" in out
    assert "cross-reference" in out


def test_cli_json_and_report_dir(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("CHOWRING_REPORT_DIR", str(tmp_path / "reports"))
    assert cli.main(["verify", "characters", "--format", "json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["passed"] and payload["summary"]["failed"] == 0
    assert "characters:V" in payload["cross_reference"]
    assert (tmp_path / "reports" / "characters.json").exists()
    assert (tmp_path / "reports" / "summary.json").exists()


def test_cli_failure_exit_code(tmp_path, capsys):
    data = json.loads((DATA_DIR / "presentations.json").read_text())
    for entry in data["presentations"]:
        if entry["name"] == "CH_BSO4":
            entry["relations"][0]["poly"] = "y2^2 - 3*d4"
    (tmp_path / "presentations.json").write_text(json.dumps(data))
    assert cli.main(["verify", "so4", "--catalog", str(tmp_path)]) == 1
    assert "[FAIL]" in capsys.readouterr().out


def test_cli_internal_error_exit_code(tmp_path, capsys):
    (tmp_path / "maps.json").write_text("{not json")
    assert cli.main(["verify", "so4", "--catalog", str(tmp_path)]) == 2
    assert cli.main(["verify", "so4", "--catalog", str(tmp_path / "nope")]) == 2
    assert cli.main(["verify", "weyl", "--max-degree", "-1"]) == 2


def test_cli_usage_error():
    with pytest.raises(SystemExit) as e:
        cli.main(["verify", "e8"])
    assert e.value.code == 2


def test_catalog_is_cached():
    assert default_catalogs() is default_catalogs()
