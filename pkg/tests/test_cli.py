import json

import pytest

from koszul.cli import main

RING_63NE = {
    "field": "QQ",
    "variables": ["x", "y", "z", "u"],
    "relations": ["x^2", "x*y", "x*z + u^2", "x*u", "y^2 + z^2", "z*u"],
}

RING_PATH3 = {
    "field": "QQ",
    "variables": ["x1", "x2", "x3"],
    "relations": ["x1*x2", "x2*x3"],
}

RING_CI = {
    "field": "QQ",
    "variables": ["x", "y"],
    "relations": ["x^2", "y^2"],
}

RING_CYCLE9 = {
    "field": "QQ",
    "variables": [f"x{k}" for k in range(1, 10)],
    "relations": [f"x{k}*x{k+1}" for k in range(1, 9)] + ["x9*x1"],
}


def write_ring(tmp_path, doc, name="ring.json"):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


def run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    json_start = out.index("{")
    return code, json.loads(out[json_start:]), out


def test_homology_63ne(tmp_path, capsys):
    path = write_ring(tmp_path, RING_63NE)
    code, doc, _ = run(capsys, ["homology", path, "--max-hom", "4",
                                "--max-int", "6"])
    assert code == 0
    assert doc["tables"]["homology_dims"]["1,2"] == 6
    assert doc["timing"] is None


def test_homology_polynomial_ring(tmp_path, capsys):
    path = write_ring(tmp_path, {"field": "QQ", "variables": ["x", "y"],
                                 "relations": []})
    code, doc, _ = run(capsys, ["homology", path, "--max-int", "4"])
    assert code == 0
    assert doc["tables"]["homology_dims"] == {"0,0": 1}


def test_homology_multigraded(tmp_path, capsys):
    path = write_ring(tmp_path, RING_PATH3)
    code, doc, _ = run(capsys, ["homology", path, "--max-int", "3",
                                "--multigraded"])
    assert code == 0
    assert doc["tables"]["multigraded_dims"]["(1,1,1)"] == {"2": 1}


def test_homology_table_format(tmp_path, capsys):
    path = write_ring(tmp_path, RING_63NE)
    code = main(["homology", path, "--max-int", "5", "--format", "table"])
    out = capsys.readouterr().out
    assert code == 0
    assert "0:" in out and "1:" in out


def test_check_strand_koszul_63ne(tmp_path, capsys):
    path = write_ring(tmp_path, RING_63NE)
    code, doc, _ = run(capsys, ["check", path, "--what", "strand-koszul",
                                "--bound", "8", "--max-hom", "3"])
    assert code == 0
    verdict = doc["verdicts"]["strand_koszul"]
    assert verdict["status"] == "NOT-STRAND-KOSZUL"
    p, i, j = verdict["witness"]
    assert p != j - i


def test_check_strand_koszul_cycle9(tmp_path, capsys):
    path = write_ring(tmp_path, RING_CYCLE9)
    code, doc, _ = run(capsys, ["check", path, "--what", "strand-koszul",
                                "--bound", "9", "--max-hom", "2"])
    assert code == 0
    verdict = doc["verdicts"]["strand_koszul"]
    assert verdict["status"] == "NOT-STRAND-KOSZUL"
    assert verdict["witness"] == [2, 6, 9]


def test_check_theorem_b_ci(tmp_path, capsys):
    path = write_ring(tmp_path, RING_CI)
    code, doc, _ = run(capsys, ["check", path, "--what", "theorem-b",
                                "--bound", "5"])
    assert code == 0
    statements = doc["verdicts"]["theorem_b"]["data"]["statements"]
    assert all(statements.values())


def test_check_theorem_a_includes_hilbert(tmp_path, capsys):
    path = write_ring(tmp_path, RING_PATH3)
    code, doc, _ = run(capsys, ["check", path, "--what", "theorem-a",
                                "--bound", "6"])
    assert code == 0
    assert doc["verdicts"]["theorem_a"]["status"] == "PASS"
    assert doc["verdicts"]["hilbert_identity"]["status"] == "PASS"
    assert doc["tables"]["P_R"]["0,0"] == 1


def test_check_koszul_and_golod(tmp_path, capsys):
    path = write_ring(tmp_path, {"field": "QQ", "variables": ["x", "y"],
                                 "relations": ["x^2", "x*y", "y^2"]})
    code, doc, _ = run(capsys, ["check", path, "--what", "koszul",
                                "--bound", "4"])
    assert code == 0
    assert doc["verdicts"]["koszul"]["status"] == "KOSZUL-UP-TO-BOUND"
    code, doc, _ = run(capsys, ["check", path, "--what", "golod",
                                "--bound", "4"])
    assert code == 0
    assert doc["verdicts"]["golod"]["status"] == "GOLOD-UP-TO-BOUND"


def test_family_path(capsys):
    code, doc, _ = run(capsys, ["family", "--family", "path", "-n", "5"])
    assert code == 0
    family = doc["verdicts"]["family"]
    assert family["verdict"]["status"] == "STRAND-KOSZUL"
    assert "z1" in family["generators"]
    assert family["dimension_counts"]["0"] == [1, 1]


def test_family_ci(capsys):
    code, doc, _ = run(capsys, ["family", "--family", "ci",
                                "--variables", "x,y",
                                "--quadrics", "x^2,y^2"])
    assert code == 0
    family = doc["verdicts"]["family"]
    assert family["verdict"]["status"] == "STRAND-KOSZUL"


def test_family_gorenstein(tmp_path, capsys):
    doc_in = {"field": "QQ", "variables": ["x", "y"],
              "relations": ["x^2", "y^2"]}
    path = write_ring(tmp_path, doc_in)
    code, doc, _ = run(capsys, ["family", "--family", "gorenstein",
                                "--ring", path])
    assert code == 0
    assert doc["verdicts"]["family"]["verdict"]["status"] == "STRAND-KOSZUL"


def test_family_three_rel(tmp_path, capsys):
    path = write_ring(tmp_path, {"field": "QQ", "variables": ["x", "y", "z"],
                                 "relations": ["x^2", "x*y", "z^2"]})
    code, doc, _ = run(capsys, ["family", "--family", "three-rel",
                                "--ring", path])
    assert code == 0
    family = doc["verdicts"]["family"]
    assert family["data"]["table"] == "bottom-right"


def test_family_cycle(capsys):
    code, doc, _ = run(capsys, ["family", "--family", "cycle", "-n", "4"])
    assert code == 0
    assert "strand_koszul" in doc["verdicts"]


def test_usage_errors(tmp_path, capsys):
    assert main(["family", "--family", "path", "-n", "2"]) == 2
    capsys.readouterr()
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["homology", str(bad)]) == 2
    capsys.readouterr()
    nonhomog = write_ring(tmp_path, {"field": "QQ", "variables": ["x", "y"],
                                     "relations": ["x^2 + y"]}, "nh.json")
    assert main(["homology", nonhomog]) == 2
    capsys.readouterr()
    parse_fail = write_ring(tmp_path, {"field": "QQ", "variables": ["x"],
                                       "relations": ["x ^^ 2"]}, "pf.json")
    assert main(["homology", parse_fail]) == 2
    capsys.readouterr()


def test_deterministic_output(tmp_path, capsys):
    path = write_ring(tmp_path, RING_PATH3)
    main(["check", path, "--what", "koszul", "--bound", "4"])
    first = capsys.readouterr().out
    main(["check", path, "--what", "koszul", "--bound", "4"])
    second = capsys.readouterr().out
    assert first == second


def test_jobs_flag(tmp_path, capsys):
    path = write_ring(tmp_path, RING_PATH3)
    code, doc, _ = run(capsys, ["homology", path, "--max-int", "4",
                                "--jobs", "4"])
    assert code == 0


def test_prime_field_ring(tmp_path, capsys):
    doc_in = {"field": {"Fp": 5}, "variables": ["x", "y"],
              "relations": ["x^2", "y^2"]}
    path = write_ring(tmp_path, doc_in)
    code, doc, _ = run(capsys, ["check", path, "--what", "koszul",
                                "--bound", "4"])
    assert code == 0
    assert doc["verdicts"]["koszul"]["status"] == "KOSZUL-UP-TO-BOUND"
