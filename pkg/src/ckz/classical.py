"""Classical side: formal solution at infinity of dY/dz = A(z) Y with a
Poincare rank 2 pole there, the tau-function one-form as a residue, and the
closed-form one-form coefficients written as sums over matrix entries.

A(z) = -B_2 z - B_1 + sum_{j>=0} B_{-j} z^{-j-1},  B_{-j} = sum_i A_i z_i^j,
Y = F(z) D(z) exp(T(z)),  T(z) = -T_2 z^2/2 - T_1 z - T_0 log z.
"""
from __future__ import annotations

import random
import time
from collections import namedtuple
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction


# ---------------------------------------------------------------- matrices

def _zeros(N, zero):
    return [[zero] * N for _ in range(N)]


def _eye(N, zero, one):
    m = _zeros(N, zero)
    for i in range(N):
        m[i][i] = one
    return m


def _mm(A, B, zero):
    N = len(A)
    out = []
    for i in range(N):
        row = []
        Ai = A[i]
        for j in range(N):
            s = zero
            for k in range(N):
                a = Ai[k]
                if a:
                    b = B[k][j]
                    if b:
                        s = s + a * b
            row.append(s)
        out.append(row)
    return out


def _madd(A, B, s=1):
    N = len(A)
    if s == 1:
        return [[A[i][j] + B[i][j] for j in range(N)] for i in range(N)]
    return [[A[i][j] - B[i][j] for j in range(N)] for i in range(N)]


def _msc(c, A):
    return [[c * x for x in row] for row in A]


def _is_zero_matrix(A):
    return all(not x for row in A for x in row)


@dataclass
class MatSeries:
    """Truncated series sum_k C_k z^k for top >= k >= -M (matrix coefficients)."""

    N: int
    M: int
    coeffs: dict
    zero: object = Fraction(0)

    def coef(self, k):
        return self.coeffs.get(k) or _zeros(self.N, self.zero)

    def powers(self):
        return sorted(self.coeffs, reverse=True)

    def __mul__(self, other: "MatSeries") -> "MatSeries":
        M = min(self.M, other.M)
        out = {}
        for i, A in self.coeffs.items():
            for j, B in other.coeffs.items():
                k = i + j
                if k < -M:
                    continue
                P = _mm(A, B, self.zero)
                out[k] = _madd(out[k], P) if k in out else P
        return MatSeries(self.N, M, out, self.zero)

    def __add__(self, other):
        out = dict(self.coeffs)
        for k, B in other.coeffs.items():
            out[k] = _madd(out[k], B) if k in out else B
        return MatSeries(self.N, min(self.M, other.M), out, self.zero)

    def __sub__(self, other):
        return self + MatSeries(other.N, other.M, {k: _msc(-1, v) for k, v in other.coeffs.items()}, self.zero)

    def derivative(self) -> "MatSeries":
        out = {}
        for k, A in self.coeffs.items():
            if k and k - 1 >= -self.M:
                out[k - 1] = _msc(k, A)
        return MatSeries(self.N, self.M, out, self.zero)

    def is_zero_through(self, lowest: int) -> bool:
        return all(_is_zero_matrix(A) for k, A in self.coeffs.items() if k >= lowest)


@dataclass
class ClassicalInstance:
    """Residue matrices A_i at z_i, B_1, and the distinct diagonal of B_2."""

    N: int
    A: list
    z: list
    B1: list
    t2: list
    zero: object = Fraction(0)
    one: object = Fraction(1)

    def __post_init__(self):
        if len(set(map(str, self.t2))) != len(self.t2) or any(
                not (self.t2[i] - self.t2[j]) for i in range(self.N) for j in range(i)):
            raise ValueError("diagonal of B_2 must have pairwise distinct entries")

    @property
    def n(self):
        return len(self.A)

    def Bneg(self, j: int):
        """B_{-j} = sum_i A_i z_i^j."""
        m = _zeros(self.N, self.zero)
        for Ai, zi in zip(self.A, self.z):
            m = _madd(m, _msc(zi ** j, Ai))
        return m

    def B2(self):
        m = _zeros(self.N, self.zero)
        for i, t in enumerate(self.t2):
            m[i][i] = t
        return m

    def A_series(self, M: int) -> MatSeries:
        co = {1: _msc(-1, self.B2()), 0: _msc(-1, self.B1)}
        for j in range(M):
            co[-j - 1] = self.Bneg(j)
        return MatSeries(self.N, M, co, self.zero)

    def dump(self) -> dict:
        s = lambda x: str(x)
        return {"N": self.N, "A": [[[s(x) for x in r] for r in a] for a in self.A],
                "z": [s(x) for x in self.z], "B1": [[s(x) for x in r] for r in self.B1],
                "t2": [s(x) for x in self.t2]}


def random_instance(N: int, n: int, rng: random.Random, zero_b1: bool = False) -> ClassicalInstance:
    ri = lambda: Fraction(rng.randint(-3, 3))
    while True:
        t2 = [ri() for _ in range(N)]
        if len(set(t2)) == N:
            break
    B1 = [[Fraction(0) if zero_b1 else ri() for _ in range(N)] for _ in range(N)]
    A = [[[ri() for _ in range(N)] for _ in range(N)] for _ in range(n)]
    z = [ri() for _ in range(n)]
    return ClassicalInstance(N, A, z, B1, t2)


FormalSolution = namedtuple("FormalSolution", "F D T G")


def solve_formal_series(inst: ClassicalInstance, M: int, order=None) -> FormalSolution:
    """F (off-diagonal beyond 1), D (diagonal, D_0 = 1) and T_2, T_1, T_0.

    Order by order: (A F)_m = -B_1 F_m + sum_j B_{-j} F_{m-1-j}; its diagonal
    is G_m, the z^{-m} coefficient of the diagonal part (A F)_D, and the
    off-diagonal part of F_{m+1} solves the adjoint equation of B_2.
    `order` permutes the entry-by-entry elimination (results are unique).
    """
    if M < 1:
        raise ValueError("truncation order must be >= 1")
    N, zero, one = inst.N, inst.zero, inst.one
    t = inst.t2
    F = {0: _eye(N, zero, one)}
    Bn = [inst.Bneg(j) for j in range(M + 2)]
    G = {-1: [[(-t[i] if i == j else zero) for j in range(N)] for i in range(N)]}
    pairs = [(i, j) for i in range(N) for j in range(N) if i != j]
    if order is not None:
        pairs = [pairs[k] for k in order]
    for m in range(0, M + 2):
        R = _msc(-1, _mm(inst.B1, F[m], zero))
        for j in range(m):
            R = _madd(R, _mm(Bn[j], F[m - 1 - j], zero))
        G[m] = [[R[i][i] if i == j else zero for j in range(N)] for i in range(N)]
        rhs = R
        for a in range(0, m + 1):
            rhs = _madd(rhs, _mm(F[a], G[m - a], zero), -1)
        if m >= 1:
            rhs = _madd(rhs, _msc(m - 1, F[m - 1]))
        nxt = _zeros(N, zero)
        for i, j in pairs:
            nxt[i][j] = rhs[i][j] / (t[i] - t[j])
        F[m + 1] = nxt
    # log D = sum_{m>=2} G_m z^{-(m-1)} / (-(m-1))
    L = {m - 1: [G[m][i][i] / (-(m - 1)) for i in range(N)] for m in range(2, M + 2)}
    Dd = []
    for i in range(N):
        d = [zero] * (M + 1)
        d[0] = one
        for k in range(1, M + 1):
            s = zero
            for j in range(1, k + 1):
                s = s + j * L[j][i] * d[k - j]
            d[k] = s / k
        Dd.append(d)
    Fs = MatSeries(N, M, {-k: F[k] for k in range(M + 1)}, zero)
    Ds = MatSeries(N, M, {-k: [[(Dd[i][k] if i == j else zero) for j in range(N)] for i in range(N)]
                          for k in range(M + 1)}, zero)
    T2 = [t[i] for i in range(N)]
    T1 = [-G[0][i][i] for i in range(N)]
    T0 = [-G[1][i][i] for i in range(N)]
    return FormalSolution(Fs, Ds, (T2, T1, T0), G)


def check_defining_equation(inst: ClassicalInstance, sol: FormalSolution) -> bool:
    """(FD)' + FD T' = A FD through order z^{-M+1}, T' = -T_2 z - T_1 - T_0/z."""
    N, zero = inst.N, inst.zero
    M = sol.F.M
    Y = sol.F * sol.D
    T2, T1, T0 = sol.T
    diag = lambda v: [[(v[i] if i == j else zero) for j in range(N)] for i in range(N)]
    Tp = MatSeries(N, M, {1: _msc(-1, diag(T2)), 0: _msc(-1, diag(T1)), -1: _msc(-1, diag(T0))}, zero)
    lhs = Y.derivative() + Y * Tp
    rhs = inst.A_series(M) * Y
    return (lhs - rhs).is_zero_through(-M + 2)


def omega_residue_all(inst: ClassicalInstance, M: int = 5):
    """(H^(1)_nu, H^(2)_nu) for all nu from -res tr Y^{-1} Y' d'T."""
    N, zero, one = inst.N, inst.zero, inst.one
    sol = solve_formal_series(inst, M)
    Y = sol.F * sol.D
    Yk = [Y.coef(-k) for k in range(M + 1)]
    Yi = [_eye(N, zero, one)]
    for k in range(1, M + 1):
        s = _zeros(N, zero)
        for a in range(1, k + 1):
            s = _madd(s, _mm(Yk[a], Yi[k - a], zero))
        Yi.append(_msc(-1, s))
    # coefficient of z^{-k} in Y^{-1} Y'
    dY = [_zeros(N, zero), _zeros(N, zero)] + [_msc(-(k - 1), Yk[k - 1]) for k in range(2, M + 1)]
    Q = []
    for k in range(4):
        s = _zeros(N, zero)
        for a in range(k + 1):
            s = _madd(s, _mm(Yi[a], dY[k - a], zero))
        Q.append(s)
    H1 = [-Q[2][v][v] for v in range(N)]
    H2 = [-Q[3][v][v] / 2 for v in range(N)]
    return H1, H2


def omega_residue(inst: ClassicalInstance, k: int, nu: int, M: int = 5, check_stability: bool = False):
    """H^(k)_nu (nu is 1-based)."""
    if k not in (1, 2):
        raise ValueError("k must be 1 or 2")
    if M < k + 2:
        raise ValueError("truncation too small")
    H = omega_residue_all(inst, M)[k - 1][nu - 1]
    if check_stability:
        for MM in (M + 1, M + 2):
            if omega_residue_all(inst, MM)[k - 1][nu - 1] != H:
                raise ArithmeticError("residue not stable under increasing truncation")
    return H


# ---------------------------------------------------------------- closed forms

Term = namedtuple("Term", "coef dens t1pow entries")
# coef: Fraction; dens: tuple of (k, e) meaning 1/(t2_p - t2_k)^e;
# t1pow: power of (B_1)_pp; entries: tuple of (name, a, b), name in
# B1, B0, Bm1, Bm2 (0-based indices), multiplied left to right.


def _dens(*ks):
    d = {}
    for k in ks:
        d[k] = d.get(k, 0) + 1
    return tuple(sorted(d.items()))


def oneform_terms(N: int, k: int, p: int, variant: str = "corrected") -> list:
    """Term list for H^(k)_p (p 0-based).

    k=1, variant "printed" uses +sum (B1)_pk (B1)_kp/(t_p-t_k)^2 as the
    last sum; "corrected" uses -(B1)_pp times that sum, which is what the
    residue produces.
    """
    if variant not in ("corrected", "printed"):
        raise ValueError("variant must be 'corrected' or 'printed'")
    R = [j for j in range(N) if j != p]
    T = []
    one = Fraction(1)
    if k == 1:
        for a in R:
            for s in R:
                T.append(Term(one, _dens(a, s), 0, (("B1", p, a), ("B1", a, s), ("B1", s, p))))
        T.append(Term(-one, (), 0, (("Bm1", p, p),)))
        for a in R:
            T.append(Term(-one, _dens(a), 0, (("B1", p, a), ("B0", a, p))))
            T.append(Term(-one, _dens(a), 0, (("B0", p, a), ("B1", a, p))))
        for a in R:
            if variant == "printed":
                T.append(Term(one, _dens(a, a), 0, (("B1", p, a), ("B1", a, p))))
            else:
                T.append(Term(-one, _dens(a, a), 1, (("B1", p, a), ("B1", a, p))))
        return T
    if k != 2:
        raise ValueError("k must be 1 or 2")
    h = Fraction(1, 2)
    for a in R:
        for s in R:
            T.append(Term(-h, _dens(s, a), 0, (("B1", p, a), ("B0", a, s), ("B1", s, p))))
            T.append(Term(-h, _dens(a, s), 0, (("B0", p, a), ("B1", a, s), ("B1", s, p))))
            T.append(Term(-h, _dens(s, a, a), 0, (("B1", p, a), ("B1", a, p), ("B1", p, s), ("B1", s, p))))
    for a in R:
        T.append(Term(h, _dens(a, a), 0, (("B1", p, a), ("B1", a, p), ("B0", p, p))))
    for a in R:
        for s in R:
            for r in R:
                T.append(Term(h, _dens(a, s, r), 0, (("B1", p, a), ("B1", a, s), ("B1", s, r), ("B1", r, p))))
    for a in R:
        for s in R:
            T.append(Term(-h, _dens(a, s), 0, (("B1", p, a), ("B1", a, s), ("B0", s, p))))
            T.append(Term(-h, _dens(a, s, s), 1, (("B1", p, a), ("B1", a, s), ("B1", s, p))))
            T.append(Term(-h, _dens(a, a, s), 1, (("B1", p, a), ("B1", a, s), ("B1", s, p))))
    for a in R:
        T.append(Term(h, _dens(a, a), 1, (("B1", p, a), ("B0", a, p))))
        T.append(Term(h, _dens(a, a), 1, (("B0", p, a), ("B1", a, p))))
        T.append(Term(h, _dens(a, a, a), 2, (("B1", p, a), ("B1", a, p))))
        T.append(Term(h, _dens(a), 0, (("B0", p, a), ("B0", a, p))))
        T.append(Term(-h, _dens(a), 0, (("B1", p, a), ("Bm1", a, p))))
        T.append(Term(-h, _dens(a), 0, (("Bm1", p, a), ("B1", a, p))))
    T.append(Term(-h, (), 0, (("Bm2", p, p),)))
    return T


def omega_explicit(inst: ClassicalInstance, k: int, nu: int, variant: str = "corrected"):
    """Evaluate the closed-form H^(k)_nu (nu 1-based) on an instance."""
    p = nu - 1
    mats = {"B1": inst.B1, "B0": inst.Bneg(0), "Bm1": inst.Bneg(1), "Bm2": inst.Bneg(2)}
    t = inst.t2
    t1 = inst.B1[p][p]
    total = inst.zero
    for term in oneform_terms(inst.N, k, p, variant):
        v = term.coef * inst.one
        for name, a, b in term.entries:
            v = v * mats[name][a][b]
            if not v:
                break
        if not v:
            continue
        for j, e in term.dens:
            v = v / (t[p] - t[j]) ** e
        if term.t1pow:
            v = v * t1 ** term.t1pow
        total = total + v
    return total


def _trial(args):
    N, n, k, seed, trial, variant, zero_b1 = args
    rng = random.Random(f"{seed}:{N}:{n}:{k}:{trial}")
    inst = random_instance(N, n, rng, zero_b1=zero_b1)
    res = omega_residue_all(inst, M=k + 3)[k - 1]
    mism = []
    for nu in range(1, N + 1):
        ex = omega_explicit(inst, k, nu, variant)
        if ex != res[nu - 1]:
            mism.append({"nu": nu, "explicit": str(ex), "residue": str(res[nu - 1])})
    return trial, inst, mism


def oracle_compare(trials: int, seed: int, N: int, n: int, k: int, variant: str = "corrected",
                   jobs: int = 1, zero_b1: bool = False) -> dict:
    """Compare the closed form against the residue on random instances."""
    t0 = time.perf_counter()
    args = [(N, n, k, seed, t, variant, zero_b1) for t in range(trials)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            results = list(ex.map(_trial, args))
    else:
        results = [_trial(a) for a in args]
    results.sort(key=lambda r: r[0])
    failures = [{"trial": t, "instance": inst.dump(), "mismatches": mm} for t, inst, mm in results if mm]
    return {"N": N, "n": n, "k": k, "variant": variant, "trials": trials, "seed": seed,
            "passed": trials - len(failures), "failures": failures,
            "elapsed_ms": round(1000 * (time.perf_counter() - t0), 1)}
