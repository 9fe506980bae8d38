import csv
import io
import json
import subprocess
import sys

import pytest

from sggap.cli import main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_spectrum_dirichlet_level2():
    code, text = run("spectrum", "--level", "2", "--bc", "dirichlet")
    rows = list(csv.DictReader(io.StringIO(text)))
    assert code == 0 and len(rows) == 6
    assert [r["value"] for r in rows[-2:]] == ["5", "6"]


def test_spectrum_neumann_level1():
    code, text = run("spectrum", "--level", "1", "--bc", "neumann")
    assert code == 0
    assert [r["value"] for r in csv.DictReader(io.StringIO(text))] == ["0", "3", "6"]


def test_spectrum_json():
    code, text = run("spectrum", "--level", "2", "--bc", "neumann", "--format", "json")
    doc = json.loads(text)
    assert code == 0 and doc["level"] == 2 and len(doc["entries"]) == 6


def test_spectrum_domain_error():
    code, _ = run("spectrum", "--level", "0", "--bc", "dirichlet")
    assert code == 1


def test_usage_errors():
    assert run("spectrum", "--level", "1")[0] == 2
    assert run("nonsense")[0] == 2
    assert run("--precision", "32", "constants")[0] == 2
    assert run("verify", "--claim", "key1", "--min-m", "5", "--max-m", "2")[0] == 2


def test_constants():
    code, text = run("constants")
    doc = json.loads(text)
    assert code == 0
    assert doc["ratios_3dp"]["g1"] == "1.271"
    assert abs(float(doc["ratios"][0]["midpoint"]) - 2.425) <= 0.001
    assert all(doc["ordering"].values())
    diff = doc["differences"][0]
    assert diff["midpoint"].startswith("26.0465")
    names = [c["name"] for c in doc["constants"]]
    assert names == ["lambda0_2", "lambda0_5", "lambda1_5", "lambda6"]
    assert set(doc["constants"][0]) == {"name", "midpoint", "radius", "precision_bits", "tolerance"}


def test_verify_key2_sweep():
    code, text = run("verify", "--claim", "key2", "--max-m", "40")
    lines = [json.loads(x) for x in text.splitlines()]
    assert code == 0 and len(lines) == 40
    assert all(x["status"] == "CertifiedTrue" for x in lines)
    assert [x["params"]["m"] for x in lines] == list(range(1, 41))


def test_verify_theorem_witness():
    code, text = run("verify", "--claim", "theorem", "--bc", "dirichlet", "--fixation", "6")
    rep = json.loads(text)
    assert code == 0 and rep["witness"] == ["2@1[]", "5@1[]"]


def test_verify_dyadic():
    code, text = run("verify", "--claim", "dyadic", "--max-m", "6")
    lines = [json.loads(x) for x in text.splitlines()]
    assert code == 0
    ids = [x["claim_id"] for x in lines]
    assert ids.count("dyadic-separation") == 10 and ids.count("dyadic-sum") == 15


@pytest.mark.parametrize("claim", ["key1", "induction", "prelowest", "fullmin"])
def test_verify_other_claims(claim):
    code, text = run("verify", "--claim", claim, "--max-m", "4")
    assert code == 0 and text.strip()


def test_verify_inconclusive_exit(monkeypatch):
    import sggap.gaps as g
    from sggap.report import INCONCLUSIVE, GapReport

    monkeypatch.setattr(g, "verify_key2", lambda m, p: GapReport("key2", {"m": m}, INCONCLUSIVE, None, p))
    code, text = run("verify", "--claim", "key2", "--max-m", "2")
    assert code == 3 and json.loads(text.splitlines()[0])["status"] == "Inconclusive"


def test_table1():
    code, text = run("table1")
    assert code == 0
    comments = [x for x in text.splitlines() if x.startswith("#")]
    assert any("row 4" in c and "7.9131" in c for c in comments)
    rows = list(csv.DictReader(x for x in text.splitlines() if not x.startswith("#")))
    assert len(rows) == 11
    assert rows[1]["reference"] == "0.0164" and rows[10]["rounded"] == "0.0005"
    assert rows[3]["flagged"] == "1" and float(rows[3]["raw"]) < 1e-5
    assert all(r["match"] == "1" for r in rows)


def test_oracle_commands(tmp_path):
    code, text = run("oracle", "--level", "1", "--bc", "dirichlet")
    assert code == 0 and json.loads(text)["match"]
    code, text = run("oracle", "--level", "4", "--bc", "neumann")
    assert code == 0 and json.loads(text)["match"]
    assert run("oracle", "--level", "9")[0] == 2
    g, m = tmp_path / "g.txt", tmp_path / "m.txt"
    code, _ = run("oracle", "--level", "2", "--bc", "neumann", "--graph-out", str(g),
                  "--matrix-out", str(m))
    assert code == 0
    assert g.read_text().splitlines()[0] == "# level 2, vertices 15"
    assert len(m.read_text().splitlines()) == 15


def test_oracle_mismatch_exit(monkeypatch):
    import numpy as np

    import sggap.oracle.check as chk

    monkeypatch.setattr(chk, "oracle_eigenvalues", lambda m, bc: np.array([1.0, 5.0]))
    assert run("oracle", "--level", "1", "--bc", "dirichlet")[0] == 4


def test_output_is_deterministic():
    for argv in (("constants",), ("table1",), ("verify", "--claim", "fullmin", "--max-m", "3")):
        assert run(*argv) == run(*argv)


def test_console_entry_point():
    out = subprocess.run([sys.executable, "-m", "sggap.cli", "spectrum", "--level", "1",
                          "--bc", "dirichlet"], capture_output=True, text=True)
    assert out.returncode == 0 and out.stdout.splitlines()[1].startswith("1,dirichlet,0,2,")
