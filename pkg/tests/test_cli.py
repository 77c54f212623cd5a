import json
import subprocess
import sys

import jsonschema
import pytest

from conftest import CORPUS, corpus_path
from twistalex.cli import main

SCHEMA = json.loads((CORPUS.parent / "schema" / "report.schema.json").read_text())


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    doc = json.loads(out)
    jsonschema.validate(doc, SCHEMA)
    assert doc["exit_status"] == code
    return code, doc


@pytest.mark.parametrize("name, text", [("3_1", "t^2 - t + 1"), ("4_1", "t^2 - 3*t + 1"),
                                        ("unknot", "1")])
def test_alexander_text(capsys, name, text):
    code, out, _ = run(capsys, "alexander", corpus_path(f"{name}.pres"))
    assert code == 0 and out.strip() == text


def test_alexander_json(capsys):
    code, doc = run_json(capsys, "alexander", corpus_path("3_1.pres"))
    assert code == 0
    assert doc["result"]["polynomial"] == [[0, 1], [1, -1], [2, 1]]
    assert doc["result"]["normalization"] == "integer-primitive"
    assert list(doc["inputs"]) == [corpus_path("3_1.pres")]


def test_json_is_byte_deterministic(capsys):
    argv = ["twisted", corpus_path("4_1.pres"), "--rep", corpus_path("4_1_F5.rep"), "--json"]
    first = run(capsys, *argv)[1]
    second = run(capsys, *argv)[1]
    assert first == second


def test_twisted_trefoil(capsys):
    code, out, _ = run(capsys, "twisted", corpus_path("3_1.pres"), "--rep", corpus_path("3_1_F5.rep"))
    assert code == 0 and "reduced: t^2 + 1" in out
    code, doc = run_json(capsys, "twisted", corpus_path("3_1.pres"), "--rep", corpus_path("3_1_F5.rep"))
    assert doc["result"]["reduced"]["polynomial"] is True


def test_twisted_unknot_not_polynomial(capsys):
    code, doc = run_json(capsys, "twisted", corpus_path("unknot.pres"), "--rep", corpus_path("unknot_F5.rep"))
    assert code == 0 and doc["result"]["reduced"]["polynomial"] is False


def test_human_and_json_agree(capsys):
    argv = ["twisted", corpus_path("3_1.pres"), "--rep", corpus_path("3_1_F5.rep")]
    _, out, _ = run(capsys, *argv)
    _, doc = run_json(capsys, *argv)
    assert f"reduced: {doc['result']['reduced']['numerator']['text']}" in out


def test_missing_rep_file_is_input_error(capsys, tmp_path):
    code, _, err = run(capsys, "twisted", corpus_path("3_1.pres"), "--rep", tmp_path / "none.rep")
    assert code == 2 and "cannot read" in err


def test_parse_error_reports_position(capsys, tmp_path):
    bad = tmp_path / "bad.pres"
    bad.write_text("gens x y\nrel x z\n")
    code, doc = run_json(capsys, "alexander", bad)
    assert code == 2 and "2" in doc["result"]["error"]


def test_malformed_json_rep(capsys, tmp_path):
    bad = tmp_path / "bad.rep"
    bad.write_text("{not json")
    code, _, _ = run(capsys, "twisted", corpus_path("3_1.pres"), "--rep", bad)
    assert code == 2


def test_semantic_error_exit_code(capsys, tmp_path):
    bad = tmp_path / "bad.rep"
    bad.write_text(json.dumps({"field": {"type": "Fp", "p": 5},
                               "images": {"x": [[1, 1], [0, 1]], "y": [[1, 0], [0, 1]]}}))
    code, doc = run_json(capsys, "twisted", corpus_path("3_1.pres"), "--rep", bad)
    assert code == 3 and "relators" in doc["result"]["error"]


def test_enum_reps(capsys):
    code, doc = run_json(capsys, "enum-reps", corpus_path("3_1.pres"), "--p", 2)
    assert code == 0 and doc["result"]["count"] > 0
    code, _, err = run(capsys, "enum-reps", corpus_path("3_1.pres"), "--p", 17)
    assert code == 3 and "guard" in err


def test_enum_reps_figure_eight_riley(capsys):
    code, doc = run_json(capsys, "enum-reps", corpus_path("4_1.pres"), "--p", 7, "--irreducible",
                         "--normal-form")
    assert code == 0
    for r in doc["result"]["representations"]:
        (s, one), (zero, si) = r["x"]
        u = r["y"][1][0]
        assert (one, zero) == (1, 0) and s * si % 7 == 1
        sinv2 = si * si
        assert (3 - sinv2 - s * s - 3 * u + u * sinv2 + s * s * u + u * u) % 7 == 0


def test_check_fibered(capsys):
    code, out, _ = run(capsys, "check", "fibered", corpus_path("3_1.pres"), "--p", 5)
    assert code == 0 and "monic=true degree=2 genus=1" in out
    code, doc = run_json(capsys, "check", "fibered", corpus_path("T2_5.pres"), "--quotient",
                         corpus_path("T2_5_D5.quot"))
    assert code == 0 and doc["result"]["genus_estimate"] == "2"


def test_check_divides(capsys):
    code, doc = run_json(capsys, "check", "divides", "--from", corpus_path("8_5.pres"),
                         "--to", corpus_path("3_1_w3.pres"), "--map", corpus_path("8_5_to_3_1.map"),
                         "--rep", corpus_path("3_1_w3_F5_b.rep"))
    assert code == 0 and doc["result"]["divides"] is True and doc["result"]["classical"] is True


def test_check_divides_rejects_non_homomorphism(capsys, tmp_path):
    bad = tmp_path / "bad.map"
    bad.write_text(json.dumps({"x": "x", "y": "x^-1 y x x"}))
    code, doc = run_json(capsys, "check", "divides", "--from", corpus_path("3_1.pres"),
                         "--to", corpus_path("3_1.pres"), "--map", bad,
                         "--rep", corpus_path("3_1_F5.rep"))
    assert code == 3 and "not a homomorphism" in doc["result"]["error"]


def test_check_torsion_and_symmetry(capsys):
    code, out, _ = run(capsys, "check", "torsion", corpus_path("3_1.pres"))
    assert code == 0 and "matches Delta/(t-1): true" in out
    code, _, _ = run(capsys, "check", "symmetry", corpus_path("4_1.pres"))
    assert code == 0
    code, doc = run_json(capsys, "check", "symmetry", corpus_path("8_5_asymmetric.pres"))
    assert code == 1 and doc["result"]["symmetric"] is False


def test_check_derham(capsys):
    code, out, _ = run(capsys, "check", "derham", corpus_path("3_1.pres"), "--p", 7)
    assert code == 0
    assert "a=3: witness=yes" in out and "a=2: witness=no" in out


def test_torsion_verify_with_seed(capsys):
    code, doc = run_json(capsys, "torsion", corpus_path("4_1.pres"), "--rep", corpus_path("4_1_F5.rep"),
                         "--verify", "--seed", 3)
    assert code == 0


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "twistalex", "alexander", corpus_path("T2_5.pres")],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert proc.stdout.strip() == "t^4 - t^3 + t^2 - t + 1"
