"""Gaudin operators and the gamma/mu flow Hamiltonians, built two ways:
from the explicit root-sum formulas and by quantizing the classical
one-form coefficients.  Also the compatibility brackets of the flows."""
from __future__ import annotations

import time
from fractions import Fraction
from itertools import combinations_with_replacement

from .classical import oneform_terms
from .ncalg import NCAlgebra, NCPoly, nc_commutator
from .ratfunc import RatFunc
from .rootsys import Fundamental, Root, epsilon, root_order_cmp


# ---------------------------------------------------------------- root vectors

def _vec(root: Root, N: int, sign: int = 1) -> tuple:
    return tuple(sign if root.start <= q <= root.end else 0 for q in range(1, N))


def _as_root(v: tuple):
    """Signed root (sign, Root) for a coefficient vector, None for 0 / non-roots."""
    nz = [q for q, c in enumerate(v, start=1) if c]
    if not nz:
        return None
    s = v[nz[0] - 1]
    if s not in (1, -1) or nz != list(range(nz[0], nz[-1] + 1)):
        return None
    if any(v[q - 1] != s for q in nz):
        return None
    return s, Root(nz[0], nz[-1])


def _sub(*terms):
    """sum of sign * vector over (sign, vector) pairs."""
    out = None
    for sgn, v in terms:
        out = tuple(sgn * x for x in v) if out is None else tuple(a + sgn * b for a, b in zip(out, v))
    return out


class _Ops:
    """Shorthands for building operators in a fixed algebra."""

    def __init__(self, alg: NCAlgebra):
        self.alg = alg
        self.ctx = alg.ctx
        self.N = alg.N
        self.n = alg.n
        self._mu = {}
        self._ga = {}

    def mu(self, root: Root) -> RatFunc:
        r = self._mu.get(root)
        if r is None:
            r = sum((self.ctx.var(f"mu{q}") for q in range(root.start, root.end + 1)), self.ctx.zero())
            self._mu[root] = r
        return r

    def gamma(self, root: Root) -> RatFunc:
        r = self._ga.get(root)
        if r is None:
            r = sum((self.ctx.var(f"g{q}") for q in range(root.start, root.end + 1)), self.ctx.zero())
            self._ga[root] = r
        return r

    def inf(self, sign: int, root: Root) -> NCPoly:
        return self.alg.inf(sign, root)

    def E(self, sign: int, root: Root, zpow: int = 0) -> NCPoly:
        """sum_i z_i^zpow e^(i)_{sign root}."""
        out = self.alg.zero()
        for i in range(1, self.n + 1):
            g = self.alg.gen(self.alg.site_vec(i, sign, root))
            out = out + (g.scale(self.ctx.var(f"z{i}") ** zpow) if zpow else g)
        return out

    def H(self, root: Root) -> NCPoly:
        out = self.alg.zero()
        for i in range(1, self.n + 1):
            for q in range(root.start, root.end + 1):
                out = out + self.alg.gen(self.alg.cartan_id(i, q))
        return out

    def w(self, i: int, p: int) -> NCPoly:
        return self.alg.site(i, Fundamental(p))

    def z(self, i: int) -> RatFunc:
        return self.ctx.var(f"z{i}")

    def sgen(self, sr, zpow=None) -> NCPoly:
        """Signed root -> infinity generator (zpow None) or site sum."""
        s, r = sr
        if zpow is None:
            return self.inf(s, r)
        return self.E(s, r, zpow)


def _ops(alg) -> _Ops:
    o = getattr(alg, "_ham_ops", None)
    if o is None:
        o = _Ops(alg)
        alg._ham_ops = o
    return o


# ---------------------------------------------------------------- Gaudin

def gaudin(alg: NCAlgebra, i: int) -> NCPoly:
    """G^(i)_{-1}: Casimirs over z_i - z_j, minus gamma and z_i mu weights, minus
    the coupling sum over all roots of e^inf_a[1] e^(i)_{-a}."""
    if not 1 <= i <= alg.n:
        raise ValueError(f"invalid site {i} for n={alg.n}")
    o = _ops(alg)
    ctx = alg.ctx
    out = alg.zero()
    for j in range(1, alg.n + 1):
        if j != i:
            out = out + alg.casimir(i, j).scale((o.z(i) - o.z(j)).inverse())
    for p in range(1, alg.N):
        out = out - o.w(i, p).scale(ctx.var(f"g{p}") + o.z(i) * ctx.var(f"mu{p}"))
    for r in alg.rs.positive_roots:
        for s in (1, -1):
            out = out - o.inf(s, r) * alg.gen(alg.site_vec(i, -s, r))
    return out


# ---------------------------------------------------------------- explicit forms

def h1_explicit(alg: NCAlgebra, p: int) -> NCPoly:
    o = _ops(alg)
    rs = alg.rs
    if not 1 <= p <= alg.N - 1:
        raise ValueError("p out of range")
    out = alg.zero()
    for i in range(1, alg.n + 1):
        out = out - o.w(i, p).scale(o.z(i))
    J = rs.J[p]
    for a in J:
        im = o.mu(a).inverse()
        out = out - (o.inf(-1, a) * o.E(1, a) + o.inf(1, a) * o.E(-1, a)).scale(im)
        out = out - (o.inf(-1, a) * o.inf(1, a)).scale(o.gamma(a) * im * im)
    for a in J:
        for ab in J:
            d = _as_root(_sub((1, _vec(ab, alg.N)), (-1, _vec(a, alg.N))))
            if d is None or d[0] < 0:
                continue
            b = d[1]
            c = (o.mu(a).inverse() * o.mu(ab).inverse()).scale(epsilon(a, b))
            out = out + (o.inf(1, a) * o.inf(1, b) * o.inf(-1, ab)
                         + o.inf(-1, a) * o.inf(-1, b) * o.inf(1, ab)).scale(c)
    return out


def h2_explicit_doubled(alg: NCAlgebra, p: int, variant: str = "corrected") -> NCPoly:
    """2 H^(2)_p from the explicit root sums.

    variant "printed" reproduces the e^inf_{-a}[1] E_{-a}(-1) slot as written;
    "corrected" uses E_a(-1) there (mirror of the gamma-flow formula).
    """
    if variant not in ("corrected", "printed"):
        raise ValueError("variant must be 'corrected' or 'printed'")
    o = _ops(alg)
    N = alg.N
    J = alg.rs.J[p]
    V = lambda r, s=1: _vec(r, N, s)
    out = alg.zero()
    for i in range(1, alg.n + 1):
        out = out - o.w(i, p).scale(o.z(i) ** 2)
    for a in J:
        mu, ga = o.mu(a), o.gamma(a)
        im = mu.inverse()
        first = o.E(-1 if variant == "printed" else 1, a, 1)
        out = out - (o.inf(-1, a) * first + o.inf(1, a) * o.E(-1, a, 1)).scale(im)
        out = out + (o.E(-1, a) * o.E(1, a)).scale(im)
        out = out + (o.inf(-1, a) * o.inf(1, a) * o.H(a)).scale(im * im)
        out = out + (o.inf(-1, a) * o.E(1, a) + o.inf(1, a) * o.E(-1, a)).scale(ga * im * im)
        out = out + (o.inf(-1, a) * o.inf(1, a)).scale(ga * ga * im * im * im)
    for a in J:
        for b in J:
            amb = _as_root(_sub((1, V(a)), (-1, V(b))))
            if amb is None:
                continue
            eps = epsilon(a, amb[1])
            bma = (-amb[0], amb[1])
            ima, imb = o.mu(a).inverse(), o.mu(b).inverse()
            c = (ima * imb).scale(-eps)
            out = out + (o.E(1, a) * o.sgen(bma) * o.inf(-1, b)
                         + o.inf(1, a) * o.sgen(bma, 0) * o.inf(-1, b)
                         + o.inf(1, a) * o.sgen(bma) * o.E(-1, b)).scale(c)
            c2 = c * (o.gamma(a) * ima + o.gamma(b) * imb)
            out = out + (o.inf(1, a) * o.sgen(bma) * o.inf(-1, b)).scale(c2)
    for a in J:
        for b in J:
            amb = _as_root(_sub((1, V(a)), (-1, V(b))))
            if amb is None:
                continue
            for g in J:
                bmg = _as_root(_sub((1, V(b)), (-1, V(g))))
                if bmg is None:
                    continue
                amg = _sub((1, V(a)), (-1, V(g)))
                sign = 1 if (not any(amg) or _as_root(amg) is not None) else -1
                c = (o.mu(a) * o.mu(b) * o.mu(g)).inverse().scale(sign)
                out = out + (o.inf(-1, a) * o.sgen(amb) * o.sgen(bmg) * o.inf(1, g)).scale(c)
    for a in J:
        for b in J:
            amb = _sub((1, V(a)), (-1, V(b)))
            if any(amb) and _as_root(amb) is None:
                continue
            for g in J:
                if root_order_cmp(a, g) < 0:
                    continue
                bmg = _sub((1, V(b)), (-1, V(g)))
                if any(bmg) and _as_root(bmg) is None:
                    continue
                bag = _as_root(_sub((1, V(b)), (-1, V(a)), (-1, V(g))))
                if bag is None:
                    continue
                c = (o.mu(a) * o.mu(b) * o.mu(g)).inverse()
                out = out - (o.inf(-1, b) * o.sgen(bag) * o.inf(1, a) * o.inf(1, g)).scale(c)
    return out


def h2_explicit(alg: NCAlgebra, p: int, variant: str = "corrected") -> NCPoly:
    return h2_explicit_doubled(alg, p, variant).scale(Fraction(1, 2))


def complement_term(alg: NCAlgebra, p: int) -> NCPoly:
    """sum over a, b in J_p with a - b a positive root of
    mu_{a-b} / (mu_a^2 mu_b) e^inf_{-a}[1] e^inf_a[1]."""
    o = _ops(alg)
    out = alg.zero()
    J = alg.rs.J[p]
    for a in J:
        for b in J:
            d = _as_root(_sub((1, _vec(a, alg.N)), (-1, _vec(b, alg.N))))
            if d is None or d[0] < 0:
                continue
            c = o.mu(d[1]) * (o.mu(a) ** 2 * o.mu(b)).inverse()
            out = out + (o.inf(-1, a) * o.inf(1, a)).scale(c)
    return out


def h1(alg: NCAlgebra, p: int) -> NCPoly:
    return h1_explicit(alg, p)


def h2(alg: NCAlgebra, p: int, variant: str = "corrected") -> NCPoly:
    return h2_explicit(alg, p, variant)


# ---------------------------------------------------------------- quantization

class AmbiguousOrdering(ValueError):
    pass


def _entry_op(o: _Ops, name: str, a: int, b: int):
    """Operator for a classical matrix entry (0-based indices) and its side."""
    alg = o.alg
    right = a <= b
    if name == "B1":
        if a == b:
            return None, right, _t1(o, a)
        if a < b:
            return o.inf(1, Root(a + 1, b)), right, None
        return o.inf(-1, Root(b + 1, a)), right, None
    zpow = {"B0": 0, "Bm1": 1, "Bm2": 2}[name]
    out = alg.zero()
    for i in range(1, alg.n + 1):
        if a == b:
            g = alg.site_diag(i, a + 1)
        elif a < b:
            g = alg.gen(alg.site_vec(i, 1, Root(a + 1, b)))
        else:
            g = alg.gen(alg.site_vec(i, -1, Root(b + 1, a)))
        out = out + (g.scale(o.z(i) ** zpow) if zpow else g)
    return out, right, None


def _t1(o: _Ops, a: int) -> RatFunc:
    """Diagonal entry a (0-based) of B_1: sum_q gamma_q (w_q)_aa."""
    N = o.N
    out = o.ctx.zero()
    for q in range(1, N):
        c = Fraction(N - q, N) if a < q else Fraction(-q, N)
        out = out + o.ctx.var(f"g{q}").scale(c)
    return out


def _t2diff(o: _Ops, p: int, k: int) -> RatFunc:
    """t2_p - t2_k (0-based) as a signed mu-sum."""
    if p < k:
        return o.mu(Root(p + 1, k))
    return -o.mu(Root(k + 1, p))


def quantize_entry_term(o: _Ops, p: int, term) -> NCPoly:
    alg = o.alg
    coef = o.ctx.const(term.coef)
    for k, e in term.dens:
        coef = coef * _t2diff(o, p, k).inverse() ** e
    if term.t1pow:
        coef = coef * _t1(o, p) ** term.t1pow
    left, right = [], []
    for name, a, b in term.entries:
        op, is_right, scalar = _entry_op(o, name, a, b)
        if scalar is not None:
            coef = coef * scalar
            continue
        if op.is_zero():
            return alg.zero()
        (right if is_right else left).append(op)
    for group in (left, right):
        for x in range(len(group)):
            for y in range(x + 1, len(group)):
                if not nc_commutator(group[x], group[y]).is_zero():
                    raise AmbiguousOrdering(f"entries of term {term} do not commute within a side")
    out = alg.one()
    for op in left + right:
        out = out * op
    return out.scale(coef)


def quantized_bar(alg: NCAlgebra, k: int, a: int, variant: str = "corrected") -> NCPoly:
    """Quantized coefficient of dt^(k)_a (a 1-based)."""
    o = _ops(alg)
    out = alg.zero()
    for term in oneform_terms(alg.N, k, a - 1, variant):
        out = out + quantize_entry_term(o, a - 1, term)
    return out


def quantize_oneform(alg: NCAlgebra, k: int, p: int, complement=Fraction(1, 2),
                     variant: str = "corrected") -> NCPoly:
    """sum_j (w_p)_jj Hbar^(k)_j, plus `complement` times the complement term
    for k = 2.  Weight 1/2 is the one for which the flows commute (it equals
    the explicit formula); pass 1 for the literal definition, 0 or False to
    omit it."""
    N = alg.N
    out = alg.zero()
    for j in range(1, N + 1):
        c = Fraction(N - p, N) if j <= p else Fraction(-p, N)
        out = out + quantized_bar(alg, k, j, variant).scale(c)
    if k == 2 and complement:
        w = Fraction(1, 2) if complement is True else Fraction(complement)
        out = out + complement_term(alg, p).scale(w)
    return out


def term_diff(a: NCPoly, b: NCPoly) -> list:
    """Words where a and b differ, with both coefficients (for reports)."""
    d = a - b
    out = []
    for w, c in sorted(d.terms.items(), key=lambda wc: (len(wc[0]), wc[0])):
        if c:
            out.append({"word": a.alg.render_word(w), "left": str(a.coefficient(w)),
                        "right": str(b.coefficient(w))})
    return out


# ---------------------------------------------------------------- flows

class HamiltonianSet:
    """Operators for all flows of one (N, n): ('z', i), ('g', p), ('mu', p)."""

    def __init__(self, alg: NCAlgebra, provenance: str = "explicit", variant: str = "corrected",
                 complement=True):
        if provenance not in ("explicit", "quantized"):
            raise ValueError("provenance must be 'explicit' or 'quantized'")
        self.alg = alg
        self.provenance = provenance
        self.variant = variant
        self.complement = complement
        self._ops: dict = {}

    def flows(self):
        out = [("z", i) for i in range(1, self.alg.n + 1)]
        out += [("g", p) for p in range(1, self.alg.N)]
        out += [("mu", p) for p in range(1, self.alg.N)]
        return out

    @staticmethod
    def variable(flow) -> str:
        kind, idx = flow
        return f"{kind}{idx}"

    def operator(self, flow) -> NCPoly:
        op = self._ops.get(flow)
        if op is not None:
            return op
        kind, idx = flow
        alg = self.alg
        if kind == "z":
            op = gaudin(alg, idx)
        elif kind == "g":
            op = h1_explicit(alg, idx) if self.provenance == "explicit" else quantize_oneform(alg, 1, idx)
        elif kind == "mu":
            if self.provenance == "explicit":
                op = h2_explicit(alg, idx, self.variant)
                if self.complement is not True:
                    w = Fraction(self.complement or 0) - Fraction(1, 2)
                    op = op + complement_term(alg, idx).scale(w)
            else:
                op = quantize_oneform(alg, 2, idx, complement=self.complement, variant="corrected")
        else:
            raise ValueError(f"unknown flow {flow!r}")
        self._ops[flow] = op
        return op


def compat_bracket(hs: HamiltonianSet, fa, fb) -> tuple[NCPoly, int]:
    """[kappa d_a - A, kappa d_b - B] = kappa (d_b A - d_a B) + [A, B].

    Returns the bracket and the number of terms before cancellation."""
    A, B = hs.operator(fa), hs.operator(fb)
    va, vb = hs.variable(fa), hs.variable(fb)
    kappa = hs.alg.ctx.var("kappa")
    comm = nc_commutator(A, B)
    deriv = A.parameter_derivative(vb) - B.parameter_derivative(va)
    before = len(A) * len(B) * 2 + len(deriv)
    return deriv.scale(kappa) + comm, before


def pair_families(hs: HamiltonianSet, families=None) -> list:
    """All unordered flow pairs (i <= j for z-z, p < q ... ), grouped by family."""
    flows = hs.flows()
    pairs = []
    for x, y in combinations_with_replacement(flows, 2):
        if x == y:
            continue
        fam = f"{x[0]}-{y[0]}"
        if families is None or fam in families:
            pairs.append((x, y))
    return pairs


def compat_check(hs: HamiltonianSet, pairs=None) -> list:
    """One record per flow pair: bracket vanishes or not."""
    if pairs is None:
        pairs = pair_families(hs)
    records = []
    for fa, fb in pairs:
        t0 = time.perf_counter()
        br, before = compat_bracket(hs, fa, fb)
        zero = br.is_zero()
        rec = {"pair": f"{hs.variable(fa)},{hs.variable(fb)}", "bracket_terms_before_cancel": before,
               "is_zero": zero, "elapsed_ms": round(1000 * (time.perf_counter() - t0), 1)}
        if not zero:
            rec["witness"] = [{"word": hs.alg.render_word(w), "coef": str(c)}
                              for w, c in list(br.reduced().terms.items())[:8]]
        records.append(rec)
    return records
