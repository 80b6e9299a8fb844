"""Command-line front end: every subcommand prints one JSON report.

Exit status is 0 when all checks pass, 1 when any check fails and 2 on usage errors."""
from __future__ import annotations

import argparse
import json
import sys
import time

from . import __version__
from .jobs import JOBS_ENV, default_jobs


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _check(name, ok, elapsed_ms=0.0, witness=None, **extra) -> dict:
    rec = {"name": name, "status": "pass" if ok else "fail", "witness": None if ok else witness,
           "elapsed_ms": elapsed_ms}
    rec.update(extra)
    return rec


def _ms(t0) -> float:
    return round((time.perf_counter() - t0) * 1000, 1)


def _flow(text: str):
    for kind in ("mu", "g", "z"):
        if text.startswith(kind) and text[len(kind):].isdigit():
            return kind, int(text[len(kind):])
    raise UsageError(f"unknown flow {text!r}")


# ------------------------------------------------------------ subcommands

def cmd_roots(a):
    from .rootsys import build_root_system
    t0 = time.perf_counter()
    rs = build_root_system(a.N)
    out = {
        "positive_roots": [r.label() for r in rs.positive_roots],
        "J": {str(p): [r.label() for r in rs.J[p]] for p in range(1, a.N)},
        "R": {str(p): [r.label() for r in rs.R[p]] for p in range(1, a.N)},
        "C": {str(p): [r.label() for r in rs.C[p]] for p in range(1, a.N)},
    }
    n_expected = a.N * (a.N - 1) // 2
    return [_check("root-count", len(rs.positive_roots) == n_expected, _ms(t0),
                   witness={"count": len(rs.positive_roots)})], out


def cmd_hamiltonian(a):
    from .hamiltonians import HamiltonianSet
    from .ncalg import NCAlgebra
    if not 1 <= a.p <= a.N - 1:
        raise UsageError("--p must lie in 1..N-1")
    t0 = time.perf_counter()
    hs = HamiltonianSet(NCAlgebra(a.N, a.sites), a.provenance, variant=a.variant)
    op = hs.operator(("g" if a.k == 1 else "mu", a.p))
    terms = [{"word": hs.alg.render_word(w), "coef": str(c)} for w, c in sorted(op.terms.items())]
    return [_check("operator", True, _ms(t0), terms=len(terms))], {"operator": terms}


def cmd_commute(a):
    from .acceptance import compat_records
    fams = a.families.split(",") if a.families else None
    recs = compat_records(a.N, a.sites, fams, variant=a.variant, jobs=a.jobs)
    checks = [_check(r["pair"], r["is_zero"], r["elapsed_ms"], r.get("witness"),
                     bracket_terms_before_cancel=r["bracket_terms_before_cancel"]) for r in recs]
    return checks, {}


def cmd_classical(a):
    from .classical import oracle_compare
    if not 1 <= a.k <= 2:
        raise UsageError("--k must be 1 or 2")
    r = oracle_compare(a.trials, a.seed, a.N, a.n, a.k, variant=a.variant, jobs=a.jobs)
    check = _check("oracle", not r["failures"], r["elapsed_ms"], r["failures"],
                   passed=r["passed"], trials=r["trials"])
    return [check], {"trials": r["trials"], "passed": r["passed"], "failures": r["failures"]}


def cmd_verma(a):
    from .fock import VecV, act
    from .hamiltonians import HamiltonianSet
    from .ncalg import NCAlgebra
    t0 = time.perf_counter()
    alg = NCAlgebra(a.N, a.sites)
    try:
        if a.op.startswith(("g", "mu", "z")) and "[" not in a.op:
            op = HamiltonianSet(alg).operator(_flow(a.op))
        else:
            op = alg.word(alg.parse_word(a.op))
        vec = VecV.vacuum(alg) if a.vector.strip() in ("v", "1", "") else VecV.basis(alg, a.vector)
    except (ValueError, KeyError) as e:
        raise UsageError(str(e)) from e
    res = act(op, vec)
    return [_check("apply", True, _ms(t0))], {"result": res.render()}


def cmd_lemma(a):
    from .integrals import RELATIONS, lemma_check
    if a.relation is not None and a.relation not in RELATIONS:
        raise UsageError(f"--relation must be one of {', '.join(RELATIONS)}")
    recs = lemma_check(a.m1, a.m2, a.relation)
    checks = [_check(f"{r['relation']}:k={r['k']}:b={r['b']}", r["status"] == "pass", r["elapsed_ms"],
                     relation=r["relation"], k=r["k"], b=r["b"]) for r in recs]
    return checks, {}


def cmd_thm(a):
    from .integrals import theorem_check
    r = theorem_check(a.m1, a.m2, a.flow, variant=a.variant)
    return [_check(a.flow, r["status"] == "pass", r["elapsed_ms"], r.get("witness"),
                   symbols=r["symbols"])], {}


def cmd_selftest(a):
    from .acceptance import run_all
    return run_all(jobs=a.jobs, seed=a.seed), {}


# ------------------------------------------------------------ parser

def _nonneg(text):
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return v


def _rank(text):
    v = int(text)
    if v < 2:
        raise argparse.ArgumentTypeError("N must be >= 2")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="ckz", description="Exact checks for confluent KZ systems of sl_N.")
    jobs_help = f"worker processes (default from ${JOBS_ENV}, else 1)"
    p.add_argument("--jobs", type=int, default=default_jobs(), help=jobs_help)
    p.add_argument("--human", action="store_true", help="readable text instead of JSON")
    # the same flags after the subcommand; SUPPRESS keeps the top-level value otherwise
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--jobs", type=int, default=argparse.SUPPRESS, help=jobs_help)
    common.add_argument("--human", action="store_true", default=argparse.SUPPRESS)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    _add = sub.add_parser

    def add(name, **kw):
        return _add(name, parents=[common], **kw)

    s = add("roots", help="ordered positive roots and the J, R, C subsets")
    s.add_argument("--N", type=_rank, required=True)
    s.set_defaults(fn=cmd_roots)

    s = add("hamiltonian", help="print one Hamiltonian")
    s.add_argument("--N", type=_rank, required=True)
    s.add_argument("--sites", type=_nonneg, default=0)
    s.add_argument("--k", type=int, choices=(1, 2), required=True)
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--provenance", choices=("explicit", "quantized"), default="explicit")
    s.add_argument("--variant", choices=("corrected", "printed"), default="corrected")
    s.set_defaults(fn=cmd_hamiltonian)

    s = add("commute", help="compatibility brackets of all flow pairs")
    s.add_argument("--N", type=_rank, required=True)
    s.add_argument("--sites", type=_nonneg, default=0)
    s.add_argument("--families", help="comma list such as z-z,z-g,g-mu")
    s.add_argument("--variant", choices=("corrected", "printed"), default="corrected")
    s.set_defaults(fn=cmd_commute)

    s = add("classical-check", help="closed-form one-forms against residues")
    s.add_argument("--N", type=_rank, required=True)
    s.add_argument("--n", type=_nonneg, default=0)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--trials", type=_nonneg, default=50)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--variant", choices=("corrected", "printed"), default="corrected")
    s.set_defaults(fn=cmd_classical)

    s = add("verma-apply", help="apply an operator to a module vector")
    s.add_argument("--N", type=_rank, default=2)
    s.add_argument("--sites", type=_nonneg, default=1)
    s.add_argument("--op", required=True, help="flow name (g1, mu2, z1) or a generator word")
    s.add_argument("--vector", default="v", help="lowering word, or v for the highest weight vector")
    s.set_defaults(fn=cmd_verma)

    s = add("lemma-check", help="reduction relations among the phi_k integrals")
    s.add_argument("--m1", type=_nonneg, required=True)
    s.add_argument("--m2", type=_nonneg, required=True)
    s.add_argument("--relation")
    s.set_defaults(fn=cmd_lemma)

    s = add("thm-check", help="integral solution against one flow (N=3, n=0)")
    s.add_argument("--m1", type=_nonneg, required=True)
    s.add_argument("--m2", type=_nonneg, required=True)
    s.add_argument("--flow", choices=("g1", "g2", "mu1", "mu2"), required=True)
    s.add_argument("--variant", choices=("corrected", "printed"), default="corrected")
    s.set_defaults(fn=cmd_thm)

    s = add("selftest", help="run the full acceptance suite")
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(fn=cmd_selftest)
    return p


def _params(ns) -> dict:
    return {k: v for k, v in sorted(vars(ns).items()) if k not in ("fn", "command", "human")}


def render_human(report: dict) -> str:
    lines = [f"{report['command']}  {'PASS' if report['ok'] else 'FAIL'}"]
    for c in report["checks"]:
        lines.append(f"  [{c['status']}] {c['name']}  ({c['elapsed_ms']} ms)")
        if c.get("witness"):
            lines.append("      witness: " + json.dumps(c["witness"])[:400])
    for k, v in report.get("result", {}).items():
        if isinstance(v, list):
            lines.append(f"  {k}:")
            lines += [f"    {json.dumps(x)}" for x in v]
        else:
            lines.append(f"  {k}: {v if isinstance(v, str) else json.dumps(v)}")
    return "\n".join(lines)


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    argv = list(sys.argv[1:] if argv is None else argv)
    human = "--human" in argv
    try:
        ns = build_parser().parse_args(argv)
        if ns.jobs < 1:
            raise UsageError("--jobs must be >= 1")
        checks, result = ns.fn(ns)
    except UsageError as e:
        report = {"command": argv[0] if argv else None, "parameters": {}, "ok": False, "error": str(e),
                  "checks": [], "version": __version__}
        print(str(e), file=sys.stderr)
        print(render_human(report) if human else json.dumps(report, indent=2), file=out)
        return 2
    ok = all(c["status"] != "fail" for c in checks)
    report = {"command": ns.command, "parameters": _params(ns), "ok": ok, "checks": checks,
              "result": result, "version": __version__, "seed": getattr(ns, "seed", None)}
    print(render_human(report) if ns.human else json.dumps(report, indent=2, default=str), file=out)
    return 0 if ok else 1


def main():
    sys.exit(run())
