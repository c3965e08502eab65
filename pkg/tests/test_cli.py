import json
import subprocess
import sys

import jsonschema
import pytest

from affprob import adversarial
from affprob.cli import generate, main
from affprob.functionals import property_gate
from affprob.suites import schema
from affprob.textio import parse_document


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


# -- gen ----------------------------------------------------------------------------------


def test_gen_is_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.txt", tmp_path / "b.txt"
    assert run(capsys, "gen", "space", "--points", "3", "--seed", "7", "--out", str(a))[0] == 0
    assert run(capsys, "gen", "space", "--points", "3", "--seed", "7", "--out", str(b))[0] == 0
    assert a.read_bytes() == b.read_bytes()
    assert generate("functional", 7, 5) == generate("functional", 7, 5)


def test_gen_measure_on_one_atom(capsys):
    code, out, _ = run(capsys, "gen", "measure", "--points", "4", "--atoms", "1")
    assert code == 0
    assert "P: atom0=1\n" in out


def test_gen_rejects_sizes_beyond_cap(capsys):
    code, _, err = run(capsys, "gen", "space", "--points", "40")
    assert code == 2 and "--points" in err
    code, _, err = run(capsys, "gen", "space", "--points", "3", "--atoms", "5")
    assert code == 2


def declared_and_observed(text):
    doc = parse_document(text)
    spec = doc.functionals[0]
    g = spec.build(doc.space)
    return set(spec.declared_failures), {r.name for r in property_gate(g) if not r.passed}


@pytest.mark.parametrize("seed", range(12))
def test_gen_adversarial_fails_exactly_its_declared_property(seed):
    declared, observed = declared_and_observed(generate("functional", seed, 4, adversarial_kind=""))
    assert len(declared) == 1
    assert declared == observed


@pytest.mark.parametrize("kind", sorted(adversarial.KINDS))
def test_gen_named_adversarial_kinds(kind):
    for seed in range(8):
        declared, observed = declared_and_observed(generate("functional", seed, 5, adversarial_kind=kind))
        assert declared == observed == set(adversarial.KINDS[kind].properties)


def test_gen_refuses_spaces_too_small_for_the_kind(capsys):
    code, _, err = run(capsys, "gen", "functional", "--atoms", "2", "--adversarial", "capacity-integral")
    assert code == 2 and "at least 3 atoms" in err


def test_gen_adversarial_needs_functional(capsys):
    assert run(capsys, "gen", "space", "--adversarial")[0] == 2


# -- verify ------------------------------------------------------------------------------


def test_verify_all_generated_exits_zero(tmp_path, capsys):
    report = tmp_path / "r.json"
    code, out, _ = run(capsys, "verify", "all", "--samples", "6", "--json", str(report))
    assert code == 0, out
    payload = json.loads(report.read_text())
    jsonschema.validate(payload, schema())
    assert payload["counts"]["fail"] == 0
    ids = {c["id"] for c in payload["checks"]}
    assert {"monadIso-right-square", "lemma-basic-iii[0:canonical]", "cone-commutation"} <= ids
    assert len(ids) == len(payload["checks"])


def test_verify_lemma_basic_on_max_functional(tmp_path, capsys):
    fx = tmp_path / "max.txt"
    fx.write_text(generate("functional", 2, 3, atoms=3, adversarial_kind="max-over-atoms"))
    report = tmp_path / "r.json"
    code, out, _ = run(capsys, "verify", "lemma-basic", str(fx), "--json", str(report))
    assert code == 1
    payload = json.loads(report.read_text())
    jsonschema.validate(payload, schema())
    failed = {c["id"]: c["witness"] for c in payload["checks"] if c["status"] == "fail"}
    assert set(failed) == {"lemma-basic-ii[0:max-over-atoms]", "lemma-basic-iii[0:max-over-atoms]"}
    assert "S" in failed["lemma-basic-ii[0:max-over-atoms]"]
    assert {"S", "T"} <= set(failed["lemma-basic-iii[0:max-over-atoms]"])
    assert "witness:" in out


def test_verify_equivalence_exhaustive_on_two_atoms(tmp_path, capsys):
    fx = tmp_path / "two.txt"
    fx.write_text("points 2\natom 0: 0\natom 1: 1\n")
    report = tmp_path / "r.json"
    code, out, _ = run(capsys, "verify", "equivalence", str(fx), "--exhaustive-denominator", "3", "--json", str(report))
    assert code == 0, out
    checks = {c["id"]: c for c in json.loads(report.read_text())["checks"]}
    # masses (a, 1 - a) with a in {0, 1/3, 1/2, 2/3, 1}
    assert checks["phi-gamma-roundtrip"]["cases"] == 5
    assert checks["gamma-phi-roundtrip"]["cases"] == 5


def test_verify_parse_error_reports_file_and_line(tmp_path, capsys):
    fx = tmp_path / "bad.txt"
    fx.write_text("points 2\natom 0: 0\natom 1: 1\nP: atom0=1/2 atom1=1/3\n")
    code, _, err = run(capsys, "verify", "laws", str(fx))
    assert code == 2
    assert f"{fx}: line 4:" in err


def test_verify_rejects_bad_denominator(capsys):
    assert run(capsys, "verify", "laws", "--exhaustive-denominator", "0")[0] == 2


def test_verify_adversarial_fixture_fails_laws(tmp_path, capsys):
    fx = tmp_path / "adv.txt"
    fx.write_text(generate("functional", 0, 3, atoms=2, adversarial_kind="non-affine"))
    code, out, _ = run(capsys, "verify", "laws", str(fx), "--quiet")
    assert code == 1
    assert out.strip().endswith("1 failed, 0 skipped") or " failed" in out


def test_module_entry_point(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "affprob", "gen", "space", "--seed", "1"], capture_output=True, text=True, check=True
    )
    assert proc.stdout.startswith("points 3\n")
