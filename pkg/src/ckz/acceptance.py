"""The nine acceptance checks, shared by the `selftest` command and the test suite.

Every check returns a record {name, status, witness, elapsed_ms, detail}."""
from __future__ import annotations

import random
import time
from fractions import Fraction
from itertools import product

from .classical import oracle_compare
from .fock import VecV, act, d_gamma, d_mu, in_weight_space, weight_space_basis
from .hamiltonians import HamiltonianSet, compat_check, h1, h2, pair_families, term_diff
from .integrals import (MasterFunction, RELATIONS, build_omega_m, lemma_check, omega_algebra,
                        theorem_check)
from .jobs import pmap
from .ncalg import NCAlgebra, NCPoly, nc_commutator
from .rootsys import (Cartan, Fundamental, Root, RootVec, bracket_basis, build_root_system,
                      matrix_realization)


def _record(name, ok, t0, witness=None, detail=None) -> dict:
    return {
        "name": name,
        "status": "pass" if ok else "fail",
        "witness": None if ok else witness,
        "elapsed_ms": round((time.perf_counter() - t0) * 1000, 1),
        "detail": detail or {},
    }


# ------------------------------------------------------------ compatibility

def _compat_pair(args) -> dict:
    N, n, variant, complement, fa, fb = args
    hs = HamiltonianSet(NCAlgebra(N, n), "explicit", variant=variant, complement=complement)
    return compat_check(hs, [(fa, fb)])[0]


def compat_records(N, n, families=None, variant="corrected", complement=True, jobs=1) -> list:
    hs = HamiltonianSet(NCAlgebra(N, n), "explicit", variant=variant, complement=complement)
    pairs = pair_families(hs, families)
    return pmap(_compat_pair, [(N, n, variant, complement, fa, fb) for fa, fb in pairs], jobs)


def check_commutativity(Ns=(2, 3, 4), jobs=1) -> dict:
    t0 = time.perf_counter()
    bad, counts = [], {}
    for N in Ns:
        recs = compat_records(N, 0, jobs=jobs)
        counts[f"N={N}"] = len(recs)
        bad += [dict(r, N=N) for r in recs if not r["is_zero"]]
    return _record("commutativity", not bad, t0, bad, {"pairs": counts})


def check_gaudin_brackets(Ns=(2, 3), ns=(1, 2), jobs=1) -> dict:
    t0 = time.perf_counter()
    bad, counts = [], {}
    fams = ("z-z", "z-g", "z-mu")
    for N, n in product(Ns, ns):
        recs = compat_records(N, n, families=fams, jobs=jobs)
        counts[f"N={N},n={n}"] = len(recs)
        bad += [dict(r, N=N, n=n) for r in recs if not r["is_zero"]]
    return _record("gaudin-brackets", not bad, t0, bad, {"pairs": counts})


# ------------------------------------------------------- sl_3 fixture

def sl3_fixture(alg: NCAlgebra):
    """Hand-entered h1 and 2*h2 for p = 1 at N = 3, n = 0, in the written order."""
    c = alg.ctx
    g1, g2, m1, m2 = (c.var(x) for x in ("g1", "g2", "mu1", "mu2"))
    a1, a2, a12 = Root(1, 1), Root(2, 2), Root(1, 2)

    def e(s, r):
        return alg.inf(s, r)

    M, G = m1 + m2, g1 + g2
    P1 = e(-1, a1) * e(1, a1)
    P12 = e(-1, a12) * e(1, a12)
    cubic = e(-1, a1) * e(-1, a2) * e(1, a12) + e(-1, a12) * e(1, a1) * e(1, a2)
    H1 = -P1.scale(g1 / (m1 * m1)) - P12.scale(G / (M * M)) + cubic.scale((m1 * M).inverse())
    H2x2 = (
        -(e(-1, a1) * e(-1, a1) * e(1, a1) * e(1, a1)).scale((m1 * m1 * m1).inverse())
        - (e(-1, a12) * e(-1, a12) * e(1, a12) * e(1, a12)).scale((M * M * M).inverse())
        + P1.scale(g1 * g1 / (m1 * m1 * m1))
        + P12.scale(G * G / (M * M * M))
        - cubic.scale((m1 * M).inverse() * (g1 / m1 + G / M))
        + (e(-1, a1) * e(1, a1) * e(-1, a2) * e(1, a2)
           - e(-1, a1) * e(1, a1) * e(-1, a12) * e(1, a12)).scale((m1 * m1 * M).inverse())
        + (e(1, a2) * e(-1, a2) * e(-1, a12) * e(1, a12)
           - e(-1, a12) * e(1, a12) * e(-1, a1) * e(1, a1)).scale((m1 * M * M).inverse())
    )
    return H1, H2x2


def check_sl3_hamiltonians() -> dict:
    t0 = time.perf_counter()
    alg = NCAlgebra(3, 0)
    H1, H2x2 = sl3_fixture(alg)
    d1 = term_diff(h1(alg, 1), H1)
    d2 = term_diff(h2(alg, 1).scale(2), H2x2)
    return _record("sl3-hamiltonians", not d1 and not d2, t0, {"h1": d1, "2h2": d2},
                   {"h1_terms": len(H1), "2h2_terms": len(H2x2)})


def check_quantization(Ns=(2, 3), ns=(0, 1)) -> dict:
    t0 = time.perf_counter()
    bad, count = [], 0
    for N, n in product(Ns, ns):
        alg = NCAlgebra(N, n)
        ex = HamiltonianSet(alg, "explicit")
        qu = HamiltonianSet(alg, "quantized")
        for kind, p in product(("g", "mu"), range(1, N)):
            count += 1
            diff = term_diff(qu.operator((kind, p)), ex.operator((kind, p)))
            if diff:
                bad.append({"N": N, "n": n, "flow": f"{kind}{p}", "terms": diff})
    return _record("quantization", not bad, t0, bad, {"operators": count})


# ------------------------------------------------------------ classical

def check_classical(trials=50, seed=7, jobs=1) -> dict:
    t0 = time.perf_counter()
    bad, runs = [], 0
    for N, n, k in product((2, 3), (0, 1, 2), (1, 2)):
        r = oracle_compare(trials, seed, N, n, k, jobs=jobs)
        runs += 1
        if r["failures"]:
            bad.append({"N": N, "n": n, "k": k, "failures": r["failures"][:3]})
    return _record("classical-oracle", not bad, t0, bad, {"runs": runs, "trials_each": trials, "seed": seed})


# ------------------------------------------------------------ integrals

def check_sl3_integrand() -> dict:
    t0 = time.perf_counter()
    m = (1, 1)
    mf = MasterFunction(3, 0, m)
    c = mf.ctx
    t1, t2 = c.var("t1_1"), c.var("t2_1")
    g1, g2, m1, m2 = (c.var(x) for x in ("g1", "g2", "mu1", "mu2"))
    half = Fraction(1, 2)
    expected = {
        "t1_1": g1 + m1 * t1 - (t1 - t2).inverse(),
        "t2_1": g2 + m2 * t2 + (t1 - t2).inverse(),
        "g1": t1, "g2": t2,
        "mu1": (t1 * t1).scale(half), "mu2": (t2 * t2).scale(half),
    }
    bad = [{"variable": v, "got": str(mf.log_derivative(v)), "expected": str(e)}
           for v, e in expected.items() if mf.log_derivative(v) != e]
    alg = omega_algebra(3, 0, m)
    a1, a2, a12 = Root(1, 1), Root(2, 2), Root(1, 2)
    op = alg.inf(-1, a1) * alg.inf(-1, a2) - alg.inf(-1, a12).scale((t2 - t1).inverse())
    want = act(op, VecV.vacuum(alg))
    got = build_omega_m(3, 0, m, alg)
    if got != want:
        bad.append({"omega": got.render(), "expected": want.render()})
    return _record("sl3-integrand", not bad, t0, bad)


def check_phi_relations(mmax=3) -> dict:
    t0 = time.perf_counter()
    bad, count = [], 0
    for m1, m2 in product(range(mmax + 1), repeat=2):
        for r in lemma_check(m1, m2):
            count += 1
            if r["status"] != "pass":
                bad.append(dict(r, m=[m1, m2]))
    return _record("phi-relations", not bad, t0, bad, {"instances": count, "relations": list(RELATIONS)})


def check_flow_equations(mmax=2) -> dict:
    t0 = time.perf_counter()
    bad, count = [], 0
    for m1, m2 in product(range(mmax + 1), repeat=2):
        for flow in ("g1", "g2", "mu1", "mu2"):
            r = theorem_check(m1, m2, flow)
            count += 1
            if r["status"] != "pass":
                bad.append(r)
    return _record("flow-equations", not bad, t0, bad, {"instances": count})


# ------------------------------------------------------------ properties

def _lin_bracket(x: dict, y: dict) -> dict:
    out: dict = {}
    for a, ca in x.items():
        for b, cb in y.items():
            for k, v in bracket_basis(a, b).items():
                out[k] = out.get(k, 0) + ca * cb * v
    return {k: v for k, v in out.items() if v}


def jacobi_failures(N: int) -> list:
    basis = build_root_system(N).basis()
    bad = []
    for x, y, z in product(basis, repeat=3):
        s: dict = {}
        for a, b, c in ((x, y, z), (y, z, x), (z, x, y)):
            for k, v in _lin_bracket({a: 1}, bracket_basis(b, c)).items():
                s[k] = s.get(k, 0) + v
        if any(s.values()):
            bad.append([repr(x), repr(y), repr(z)])
    for x, y in product(basis, repeat=2):
        a, b = bracket_basis(x, y), bracket_basis(y, x)
        if a != {k: -v for k, v in b.items()}:
            bad.append([repr(x), repr(y)])
    return bad


def _mat_mul(A, B):
    n = len(A)
    return [[sum(A[i][k] * B[k][j] for k in range(n)) for j in range(n)] for i in range(n)]


def _mat_lin(N, d: dict):
    out = [[Fraction(0)] * N for _ in range(N)]
    for g, c in d.items():
        m = matrix_realization(g, N)
        for i in range(N):
            for j in range(N):
                out[i][j] += c * m[i][j]
    return out


def homomorphism_failures(N: int) -> list:
    basis = build_root_system(N).basis()
    bad = []
    for x, y in product(basis, repeat=2):
        X, Y = matrix_realization(x, N), matrix_realization(y, N)
        XY, YX = _mat_mul(X, Y), _mat_mul(Y, X)
        comm = [[XY[i][j] - YX[i][j] for j in range(N)] for i in range(N)]
        if comm != _mat_lin(N, bracket_basis(x, y)):
            bad.append([repr(x), repr(y)])
    return bad


def duality_failures(N: int) -> list:
    rs = build_root_system(N)

    def tr(A, B):
        return sum(_mat_mul(A, B)[i][i] for i in range(N))

    bad = []
    for a, b in product(rs.positive_roots, repeat=2):
        v = tr(matrix_realization(RootVec(a, 1), N), matrix_realization(RootVec(b, -1), N))
        if v != (1 if a == b else 0):
            bad.append([repr(a), repr(b)])
    for p, q in product(range(1, N), repeat=2):
        v = tr(matrix_realization(Cartan(p), N), matrix_realization(Fundamental(q), N))
        if v != (1 if p == q else 0):
            bad.append([f"h{p}", f"w{q}"])
    return bad


def casimir_failures(N: int) -> list:
    alg = NCAlgebra(N, 2)
    om = alg.casimir(1, 2)
    bad = []
    for x in build_root_system(N).basis():
        X = alg.site(1, x) + alg.site(2, x)
        if not nc_commutator(om, X).is_zero():
            bad.append(repr(x))
    return bad


def _random_coeff(ctx, rng: random.Random, names):
    c = ctx.const(rng.randint(-3, 3) or 1)
    for v in names:
        if rng.random() < 0.4:
            c = c * ctx.var(v)
    return c


def random_element(alg: NCAlgebra, rng: random.Random, terms=2, maxlen=2, names=("g1", "mu1")) -> NCPoly:
    out = alg.zero()
    for _ in range(terms):
        w = [rng.randrange(len(alg.gens)) for _ in range(rng.randint(0, maxlen))]
        out = out + alg.word(w).scale(_random_coeff(alg.ctx, rng, names))
    return out


def random_vector(alg: NCAlgebra, rng: random.Random, terms=2, maxlen=2, names=("g1", "mu1")) -> VecV:
    lows = [g for g, x in enumerate(alg.gens) if x.kind in ("lower", "inf_lower")]
    out = VecV(alg, {})
    for _ in range(terms):
        w = [rng.choice(lows) for _ in range(rng.randint(0, maxlen))]
        out = out + VecV.basis(alg, w).scale(_random_coeff(alg.ctx, rng, names))
    return out


def representation_failures(N: int, n: int, trials: int, seed: int) -> list:
    alg = NCAlgebra(N, n)
    rng = random.Random(f"rep:{seed}:{N}:{n}")
    bad = []
    for t in range(trials):
        a, b, v = random_element(alg, rng), random_element(alg, rng), random_vector(alg, rng)
        if act(a * b, v) != act(a, act(b, v)):
            bad.append({"trial": t, "a": a.render(), "b": b.render(), "v": v.render()})
    return bad


def leibniz_failures(N: int, n: int, trials: int, seed: int) -> list:
    alg = NCAlgebra(N, n)
    rng = random.Random(f"leib:{seed}:{N}:{n}")
    bad = []
    for t in range(trials):
        a, v = random_element(alg, rng), random_vector(alg, rng)
        for k in range(1, N):
            lhs = d_mu(k, act(a, v))
            rhs = act(a.parameter_derivative(f"mu{k}"), v) + act(a, d_mu(k, v))
            lg = d_gamma(k, act(a, v))
            rg = act(a.coeff_derivative(f"g{k}"), v) + act(a, d_gamma(k, v))
            if lhs != rhs or lg != rg:
                bad.append({"trial": t, "k": k, "a": a.render(), "v": v.render()})
    return bad


def weight_failures(N: int, n: int, max_total: int = 3) -> list:
    alg = NCAlgebra(N, n)
    hs = HamiltonianSet(alg)
    bad = []
    for m in product(range(max_total + 1), repeat=N - 1):
        if sum(m) > max_total:
            continue
        for w in weight_space_basis(alg, m):
            v = VecV.basis(alg, w)
            if not in_weight_space(alg, v, m):
                bad.append({"m": list(m), "vector": alg.render_word(w)})
                continue
            for flow in hs.flows():
                if not in_weight_space(alg, act(hs.operator(flow), v), m):
                    bad.append({"m": list(m), "vector": alg.render_word(w), "flow": hs.variable(flow)})
    return bad


def check_properties(seed=0, trials=10) -> dict:
    t0 = time.perf_counter()
    parts = {}
    parts["jacobi"] = [x for N in (2, 3, 4) for x in jacobi_failures(N)]
    parts["homomorphism"] = [x for N in (2, 3, 4, 5) for x in homomorphism_failures(N)]
    parts["duality"] = [x for N in (2, 3, 4, 5) for x in duality_failures(N)]
    parts["casimir"] = [x for N in (2, 3, 4) for x in casimir_failures(N)]
    parts["representation"] = [x for N, n in ((2, 1), (3, 0), (3, 1)) for x in
                               representation_failures(N, n, trials, seed)]
    parts["leibniz"] = [x for N, n in ((2, 1), (3, 0), (3, 1)) for x in leibniz_failures(N, n, trials, seed)]
    parts["weights"] = [x for N, n in ((2, 0), (2, 1), (3, 0), (3, 1)) for x in weight_failures(N, n)]
    bad = {k: v for k, v in parts.items() if v}
    return _record("properties", not bad, t0, bad, {"suites": sorted(parts), "seed": seed, "trials": trials})


CHECKS = (
    ("commutativity", check_commutativity),
    ("gaudin-brackets", check_gaudin_brackets),
    ("sl3-hamiltonians", check_sl3_hamiltonians),
    ("quantization", check_quantization),
    ("classical-oracle", check_classical),
    ("sl3-integrand", check_sl3_integrand),
    ("phi-relations", check_phi_relations),
    ("flow-equations", check_flow_equations),
    ("properties", check_properties),
)


def run_all(jobs=1, seed=0) -> list:
    out = []
    for name, fn in CHECKS:
        if name in ("commutativity", "gaudin-brackets", "classical-oracle"):
            out.append(fn(jobs=jobs))
        elif name == "properties":
            out.append(fn(seed=seed))
        else:
            out.append(fn())
    return out
