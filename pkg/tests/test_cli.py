import io
import json
import subprocess
import sys

import pytest

from ckz.cli import run
from ckz.jobs import JOBS_ENV, default_jobs


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out=out)
    return code, out.getvalue()


def report(*argv):
    code, text = call(*argv)
    return code, json.loads(text)


def strip_elapsed(x):
    if isinstance(x, dict):
        return {k: strip_elapsed(v) for k, v in x.items() if k != "elapsed_ms"}
    if isinstance(x, list):
        return [strip_elapsed(v) for v in x]
    return x


def test_roots():
    code, r = report("roots", "--N", "2")
    assert code == 0
    assert r["result"]["positive_roots"] == ["a1"]
    _, r = report("roots", "--N", "3")
    assert r["result"]["positive_roots"] == ["a1", "a1+a2", "a2"]
    assert r["result"]["C"]["2"] == ["a1+a2", "a2"]


def test_commute_sl3():
    code, r = report("commute", "--N", "3", "--sites", "0")
    assert code == 0
    assert len(r["checks"]) == 6
    assert all(c["status"] == "pass" for c in r["checks"])
    assert {"command", "parameters", "checks", "version", "seed"} <= set(r)


def test_commute_failure_exit_code():
    code, r = report("commute", "--N", "2", "--sites", "1", "--variant", "printed")
    assert code == 1
    bad = [c for c in r["checks"] if c["status"] == "fail"]
    assert bad and all(c["witness"] for c in bad)


def test_classical_check():
    code, r = report("classical-check", "--N", "3", "--n", "1", "--k", "2", "--trials", "25", "--seed", "7")
    assert code == 0
    assert r["result"]["passed"] == 25 and r["result"]["trials"] == 25


def test_determinism_apart_from_elapsed():
    a = report("classical-check", "--N", "2", "--n", "1", "--k", "1", "--trials", "5", "--seed", "3")
    b = report("classical-check", "--N", "2", "--n", "1", "--k", "1", "--trials", "5", "--seed", "3", "--jobs", "2")
    sa, sb = strip_elapsed(a[1]), strip_elapsed(b[1])
    sa["parameters"].pop("jobs"), sb["parameters"].pop("jobs")
    assert sa == sb


def test_hamiltonian_and_verma_apply():
    code, r = report("hamiltonian", "--N", "2", "--k", "1", "--p", "1")
    assert code == 0
    assert r["result"]["operator"] == [{"word": "e[inf,-a(1,1),1]*e[inf,a(1,1),1]", "coef": "-g1/mu1^2"}]
    code, r = report("verma-apply", "--N", "2", "--sites", "0", "--op", "e[inf,a(1,1),1]",
                     "--vector", "e[inf,-a(1,1),1]*e[inf,-a(1,1),1]")
    assert code == 0
    assert r["result"]["result"] == "(2*mu1)*e[inf,-a(1,1),1]*v"


def test_lemma_and_theorem_commands():
    code, r = report("lemma-check", "--m1", "2", "--m2", "1", "--relation", "t1sq-free")
    assert code == 0 and r["checks"]
    assert {c["relation"] for c in r["checks"]} == {"t1sq-free"}
    code, r = report("thm-check", "--m1", "1", "--m2", "1", "--flow", "mu2")
    assert code == 0


@pytest.mark.parametrize("argv", [
    ["roots", "--N", "1"],
    ["nosuch"],
    ["hamiltonian", "--N", "3", "--k", "1", "--p", "5"],
    ["thm-check", "--m1", "1", "--m2", "1", "--flow", "z1"],
    ["lemma-check", "--m1", "1", "--m2", "1", "--relation", "bogus"],
    ["verma-apply", "--op", "g1", "--vector", "e[1,a(1,1)]"],
    ["commute", "--N", "3", "--jobs", "0"],
])
def test_usage_errors(argv):
    code, r = report(*argv)
    assert code == 2
    assert r["error"]


def test_human_output():
    code, text = call("roots", "--N", "3", "--human")
    assert code == 0
    assert text.startswith("roots  PASS")
    assert "positive_roots" in text


def test_jobs_default_from_environment(monkeypatch):
    monkeypatch.setenv(JOBS_ENV, "3")
    assert default_jobs() == 3
    monkeypatch.setenv(JOBS_ENV, "junk")
    assert default_jobs() == 1


def test_module_entry_point():
    p = subprocess.run([sys.executable, "-m", "ckz", "roots", "--N", "2"], capture_output=True, text=True)
    assert p.returncode == 0
    assert json.loads(p.stdout)["result"]["positive_roots"] == ["a1"]


def test_selftest_runs_every_criterion():
    code, r = report("selftest", "--seed", "0")
    assert code == 0
    assert [c["name"] for c in r["checks"]] == [
        "commutativity", "gaudin-brackets", "sl3-hamiltonians", "quantization", "classical-oracle",
        "sl3-integrand", "phi-relations", "flow-equations", "properties"]
