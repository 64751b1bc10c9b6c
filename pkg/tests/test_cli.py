"""CLI and document layer: round-trips, determinism, verification, export."""

import json

import pytest

from kleinian.cli import main, run_derive, verify_document
from kleinian.document import RelationDocument
from kleinian.rationals import Q

G2_SPEC = "family = hyperelliptic_g2\n"
TRIG_SPEC = "family = cyclic_trigonal_34\n"


@pytest.fixture()
def g2_spec_file(tmp_path):
    p = tmp_path / "g2.curve"
    p.write_text(G2_SPEC)
    return str(p)


def run(argv):
    return main(argv)


def test_derive_verify_show_export_roundtrip(tmp_path, g2_spec_file, monkeypatch):
    monkeypatch.setenv("KLEINIAN_CACHE_DIR", str(tmp_path / "cache"))
    out = str(tmp_path / "doc.json")
    assert run(["derive", "--curve", g2_spec_file, "--max-weight", "6",
                "--out", out]) == 0
    assert run(["verify", "--doc", out]) == 0
    assert run(["show", "--doc", out, "--weight", "4"]) == 0

    latex = str(tmp_path / "doc.tex")
    assert run(["export", "--doc", out, "--format", "latex", "--out", latex]) == 0
    text = open(latex).read()
    assert r"\wp_{1111}" in text and r"\alpha_{4}" in text and r"\tfrac{1}{2}" in text

    txt = str(tmp_path / "doc.txt")
    assert run(["export", "--doc", out, "--format", "text", "--out", txt]) == 0
    body = open(txt).read()
    assert "p1111 = " in body and "1/2*a3" in body


def test_document_json_roundtrip(g2, tmp_path):
    doc = run_derive(g2, 6, cache_dir=None)
    text = doc.to_json()
    again = RelationDocument.from_json(text)
    assert again.to_json() == text
    assert len(again.relations) == len(doc.relations)
    for a, b in zip(again.relations, doc.relations):
        assert a.expr == b.expr and a.weight == b.weight and a.cls == b.cls


def test_determinism_and_cache_transparency(g2, tmp_path):
    cold = run_derive(g2, 6, cache_dir=str(tmp_path / "c"))
    warm = run_derive(g2, 6, cache_dir=str(tmp_path / "c"))
    none = run_derive(g2, 6, cache_dir=None)
    assert cold.to_json() == warm.to_json() == none.to_json()


def test_derive_weight6_exact_content(g2):
    doc = run_derive(g2, 6, cache_dir=None)
    assert sorted(r.weight for r in doc.relations) == [4, 6, 6]
    ok, lines = verify_document(doc)
    assert ok and all(line.startswith("PASS") for line in lines)


def test_method_both_agreement(g2):
    doc = run_derive(g2, 7, method="both", cache_dir=None)
    assert len(doc.classical) == 3
    ok, lines = verify_document(doc)
    assert ok


def test_method_classical_only(g2):
    doc = run_derive(g2, 7, method="classical", cache_dir=None)
    assert doc.relations == [] and len(doc.classical) == 3


def test_verify_detects_corruption(g2):
    doc = run_derive(g2, 4, cache_dir=None)
    data = json.loads(doc.to_json())
    # corrupt the 1/2*a3 constant of the weight-4 relation to a3
    for rel in data["relations"]:
        for term in rel["terms"]:
            if term["coeff"] == {"num": "-1", "den": "2"}:
                term["coeff"] = {"num": "-1", "den": "1"}
    corrupted = RelationDocument.from_json(json.dumps(data))
    ok, lines = verify_document(corrupted)
    assert not ok
    assert any(line.startswith("FAIL") and "p1111" in line for line in lines)


def test_trigonal_verify_reports_quartic_residual(trig):
    doc = run_derive(trig, 6, cache_dir=None)
    ok, lines = verify_document(doc)
    assert ok
    assert any(line.startswith("NOTE weight-12 quartic") for line in lines)


def test_config_errors(tmp_path, g2_spec_file):
    bad = str(tmp_path / "bad.curve")
    open(bad, "w").write("family = foo\n")
    assert run(["derive", "--curve", bad, "--max-weight", "6"]) == 2
    assert run(["derive", "--curve", g2_spec_file, "--max-weight", "3",
                "--out", str(tmp_path / "x.json")]) == 2
    assert run(["verify", "--doc", str(tmp_path / "missing.json")]) == 2


def test_classical_rejected_for_trigonal(tmp_path):
    spec = tmp_path / "trig.curve"
    spec.write_text(TRIG_SPEC)
    assert run(["derive", "--curve", str(spec), "--max-weight", "5",
                "--method", "classical", "--out", str(tmp_path / "o.json")]) == 2


def test_specialized_curve_derivation(tmp_path):
    spec = tmp_path / "s.curve"
    spec.write_text("family = hyperelliptic_g2\nalpha4 = 2\nalpha3 = -4\n")
    out = str(tmp_path / "s.json")
    assert run(["derive", "--curve", str(spec), "--max-weight", "4",
                "--out", out, "--no-cache"]) == 0
    doc = RelationDocument.from_json(open(out).read())
    # p1111 = 6 p11^2 + 2 p11 + 4 p12 - 2 with the parameters substituted
    (rel,) = doc.relations
    assert rel.rhs.coeff(()) == Q(-2)
