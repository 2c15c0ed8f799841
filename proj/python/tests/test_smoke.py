import json
import os
import subprocess

import pytest

import qc_cartan as qc

CLI = os.environ.get("QC_CARTAN_CLI")


def test_closed_forms():
    c = qc.closed_form_counts(1)
    assert (c["d1"], c["d2"], c["D"]) == (21, 35, 112)
    assert c["v"][:5] == [0, 10, 12, 9, 4]
    assert qc.closed_form_counts(3)["dim_F_n"] == 92
    with pytest.raises(ValueError):
        qc.closed_form_counts(0)


def test_characters_n1():
    r = qc.characters(1)
    assert r["v"][:5] == [0, 10, 12, 9, 4]
    assert sum(r["v"]) == r["d2"] == 35
    assert r["D_nullity"] == r["D_closed"] == 112
    assert r["involutive"]
    assert qc.characters(1, nullity=False)["D_nullity"] is None


def test_system():
    s = qc.System(2)
    assert (s.n, s.d1, s.d2) == (2, 36, 126)
    assert s.bianchi_names()[-2:] == ["Psi_1", "Psi_23"]
    assert all(v == 0 for v in qc.System(1).d_squared_residuals().values())
    assert "d psi_3" in s.dump()


def test_circulant():
    assert [qc.recurrence(k) for k in range(1, 7)] == [1, 0, -1, -1, 1, 2]
    assert qc.nondegeneracy(1)["det_product"] == 3
    assert qc.nondegeneracy(2)["det_product"] == 9
    big = qc.nondegeneracy(200)
    assert big["passed"] and big["rank"] == 200 and isinstance(big["resultant"], int)
    d = qc.det3(3)
    assert d["derived_det"] == 9 and d["root_product"] == -9
    assert d["derived_is_minus_product"] and d["expansion_is_derived_det"]
    assert qc.telescoping(7, 7)["passed"]


def test_reports():
    r = qc.analyze(1)
    assert r["schema"] == "qc-cartan/1" and r["status"] == "pass"
    cartan = [c for c in r["checks"] if c["id"] == "n=1/cartan_test"][0]
    assert cartan["witness"]["D_nullity"] == 112
    assert qc.verify("shift", 1, seed=42)["status"] == "pass"
    assert qc.verify("circulant", 1, 20, jobs=4)["status"] == "pass"
    assert qc.analyze(2, seed=7) == qc.analyze(2, seed=7)
    with pytest.raises(ValueError):
        qc.verify("nothing", 1)


@pytest.mark.skipif(not CLI, reason="QC_CARTAN_CLI not set")
def test_cli_exit_codes(tmp_path):
    ok = subprocess.run([CLI, "analyze", "--n", "1", "--format", "json"], capture_output=True, text=True)
    assert ok.returncode == 0
    report = json.loads(ok.stdout)
    assert report["checks"][-1]["witness"]["v"] == [0, 10, 12, 9, 4]
    assert subprocess.run([CLI, "analyze", "--n", "0"], capture_output=True).returncode == 2
    assert subprocess.run([CLI, "verify", "bogus", "--n", "1"], capture_output=True).returncode == 2
    assert subprocess.run([CLI, "analyze", "--n", "3..1"], capture_output=True).returncode == 2
    out = tmp_path / "r.txt"
    assert subprocess.run([CLI, "verify", "counts", "--n", "1..3", "--format", "text", "--out", str(out)]).returncode == 0
    assert out.read_text().strip().endswith("overall: pass")
