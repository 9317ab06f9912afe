import io
import json
import os
import subprocess
import sys

import pytest

from brstkit import catalog
from brstkit.cli import main
from brstkit.io import SpecError, dumps_alg, load_alg, load_map, load_tensor, spec_from_doc, spec_to_doc

from conftest import CORPUS

ALG_FILES = sorted(f for f in os.listdir(CORPUS) if f.endswith(".alg"))
TENSOR_FILES = sorted(f for f in os.listdir(CORPUS) if f.endswith(".tensor"))
REPORT_KEYS = {"command", "status", "checks", "timing", "version"}


def corpus(name):
    return os.path.join(CORPUS, name)


def run(*argv):
    buf = io.StringIO()
    code = main([str(a) for a in argv], buf)
    return code, buf.getvalue()


def run_json(*argv):
    code, text = run(*argv, "--json")
    return code, json.loads(text)


# -- documents --------------------------------------------------------------------


@pytest.mark.parametrize("name", ALG_FILES)
def test_algebra_round_trip(name):
    with open(corpus(name)) as fh:
        text = fh.read()
    spec = load_alg(corpus(name))
    assert dumps_alg(spec) == text
    again = spec_from_doc(json.loads(dumps_alg(spec)))
    assert again.presentation.render_relations() == spec.presentation.render_relations()


@pytest.mark.parametrize("name", TENSOR_FILES)
def test_tensor_round_trip(name):
    op = load_tensor(corpus(name))
    with open(corpus(name)) as fh:
        assert op.dumps() + "\n" == fh.read()


def test_corpus_matches_catalog():
    assert load_alg(corpus("qla_scalar.alg")).presentation.render_relations() == catalog.qla_omega().render_relations()
    assert load_alg(corpus("s5.alg")).presentation.render_relations() == catalog.family_omega().render_relations()
    assert load_tensor(corpus("qla_R.tensor")) == catalog.qla_R()


def test_malformed_documents(tmp_path):
    bad = tmp_path / "bad.alg"
    bad.write_text("{ not json")
    with pytest.raises(SpecError, match="line 1"):
        load_alg(str(bad))
    with pytest.raises(SpecError):
        spec_from_doc({"parameters": []})
    doc = spec_to_doc(load_alg(corpus("s5.alg")))
    doc["relations"].append({"lhs": "bJ*cJ", "rhs": "cJ"})
    with pytest.raises(ValueError):
        spec_from_doc(doc)


def test_map_document():
    spec = load_alg(corpus("s5.alg"))
    target = load_alg(corpus("family_modified.alg")).presentation
    bc = load_map(corpus("ghosts.map"), spec.presentation, target)
    assert not bc.certificate(target)


# -- commands ----------------------------------------------------------------------


def test_check_nilpotent_example():
    code, rep = run_json("check-nilpotent", corpus("s5.alg"), "--charge", corpus("q53.txt"))
    assert code == 0 and rep["status"] == "pass"


def test_normal_form_example():
    code, out = run("normal-form", corpus("s4.alg"), "--expr", "chi3*chi1")
    assert code == 0
    assert "chi1*chi3 - a*chi1^2 - chi0*chi2" in out


@pytest.mark.parametrize("name", TENSOR_FILES)
def test_check_ybe_corpus(name):
    assert run("check-ybe", corpus(name))[0] == 0


def test_double_complex_at_rational_point():
    code, rep = run_json("double-complex", corpus("s5.alg"), "--subst", "a1=1", "a2=1", "a3=4")
    assert code == 0
    zeros = [c for c in rep["checks"] if c["name"] in ("Q^2", "Qt^2", "{Q,Qt}")]
    assert len(zeros) == 3 and all(c["status"] == "pass" for c in zeros)


@pytest.mark.parametrize(
    "argv",
    [
        ["check-qla", "s4.alg"],
        ["check-twist", "s4.alg", "--phi", "perm"],
        ["check-twist", "s4.alg", "--phi", "sigma"],
        ["confluence", "s5.alg", "--max-degree", "3"],
        ["build-brst", "qla_scalar.alg"],
        ["build-brst", "family_constraints.alg", "--mode", "ansatz"],
        ["basis-change", "s5.alg", "--map", "ghosts.map", "--target", "family_modified.alg", "--charge", "q53.txt"],
        ["basis-change", "family_constraints.alg", "--map", "tface.map"],
        ["fock", "s4.alg", "--charge", "qla_charge.txt"],
        ["paper-demo", "s4"],
        ["paper-demo", "s5"],
        ["paper-demo", "s5-double"],
    ],
)
def test_commands_pass_with_stable_schema(argv):
    args = [corpus(a) if os.path.exists(corpus(a)) else a for a in argv]
    code, rep = run_json(*args)
    assert code == 0, rep
    assert set(rep) == REPORT_KEYS
    assert rep["status"] == "pass"
    assert all(set(c) >= {"name", "status", "detail"} for c in rep["checks"])


def test_human_output_is_deterministic():
    a = run("paper-demo", "s4")[1]
    b = run("paper-demo", "s4")[1]
    assert a == b and a.rstrip().endswith("PASS")


# -- failure injection ------------------------------------------------------------------


def test_perturbed_tensor_fails(tmp_path):
    doc = json.loads(open(corpus("qla_R.tensor")).read())
    doc["entries"][0][-1] = str(doc["entries"][0][-1]) + " + 1"
    bad = tmp_path / "bad.tensor"
    bad.write_text(json.dumps(doc))
    code, rep = run_json("check-ybe", str(bad))
    assert code == 1 and rep["status"] == "fail"
    assert any(c.get("residual") or "component" in c["detail"] for c in rep["checks"])


def test_truncated_charge_fails():
    charge = open(corpus("q53.txt")).read().replace("+ a2*J*cW*cJ*bJ", "")
    code, rep = run_json("check-nilpotent", corpus("s5.alg"), "--charge", charge)
    assert code == 1 and rep["status"] == "fail"
    assert rep["checks"][-1]["residual"]


def test_step_limit_exhaustion_is_a_failure():
    code, rep = run_json("check-nilpotent", corpus("s5.alg"), "--charge", corpus("q53.txt"), "--step-limit", "2")
    assert code == 1 and rep["status"] == "fail"


def test_global_options_before_command():
    code, text = run("--json", "--step-limit", "2", "check-nilpotent", corpus("s5.alg"), "--charge", corpus("q53.txt"))
    rep = json.loads(text)
    assert code == 1 and rep["status"] == "fail"
    code, text = run("--subst", "a1=1", "a2=2", "a3=3", "--json", "check-nilpotent", corpus("s5.alg"), "--charge", corpus("q53.txt"))
    assert code == 0 and "a3" not in json.loads(text)["checks"][0]["detail"]


@pytest.mark.parametrize(
    "argv",
    [
        ["check-ybe", "missing.tensor"],
        ["normal-form", "s4.alg", "--expr", "chi9"],
        ["normal-form", "s4.alg", "--expr", "chi1 +"],
        ["check-nilpotent", "s5.alg", "--charge", "qla_charge.txt"],
        ["check-nilpotent", "s5.alg", "--charge", "q53.txt", "--subst", "zz=1"],
        ["check-nilpotent", "s5.alg", "--charge", "q53.txt", "--subst", "a1=x"],
        ["no-such-command"],
    ],
)
def test_input_errors_exit_two(argv):
    args = [corpus(a) if os.path.exists(corpus(a)) else a for a in argv]
    code, out = run(*args)
    assert code == 2


def test_console_script_exit_codes():
    ok = subprocess.run([sys.executable, "-m", "brstkit.cli", "check-ybe", corpus("identity4.tensor")], capture_output=True)
    bad = subprocess.run([sys.executable, "-m", "brstkit.cli", "check-ybe", corpus("missing.tensor")], capture_output=True)
    assert ok.returncode == 0 and bad.returncode == 2
