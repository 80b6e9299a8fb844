"""Tensor product of Verma modules (symbolic highest weights L<i>_<p>) with the
Fock-type module at infinity.  Basis vectors are normal words in the lowering
generators applied to the product of highest-weight vectors."""
from __future__ import annotations

from fractions import Fraction

from .ncalg import NCAlgebra, NCPoly
from .ratfunc import RatAcc, RatFunc, _merge_den, _pmul
from .rootsys import cartan_entry


class VecV:
    """Linear combination of basis words with RatFunc coefficients."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg: NCAlgebra, terms: dict):
        self.alg = alg
        self.terms = terms

    @classmethod
    def vacuum(cls, alg) -> "VecV":
        return cls(alg, {(): alg.ctx.one()})

    @classmethod
    def basis(cls, alg, word) -> "VecV":
        if isinstance(word, str):
            word = alg.parse_word(word)
        word = tuple(word)
        if any(not _is_lowering(alg, g) for g in word):
            raise ValueError("basis words contain lowering generators only")
        return act(NCPoly(alg, {tuple(sorted(word)): alg.ctx.one()}), cls.vacuum(alg))

    def __add__(self, other):
        out = dict(self.terms)
        for w, c in other.terms.items():
            v = out.get(w)
            v = c if v is None else v + c
            if v:
                out[w] = v
            else:
                out.pop(w, None)
        return VecV(self.alg, out)

    def __neg__(self):
        return VecV(self.alg, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "VecV":
        if not isinstance(c, RatFunc):
            c = self.alg.ctx.const(c)
        return VecV(self.alg, {w: v * c for w, v in self.terms.items() if v and c})

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.terms.values())

    def __eq__(self, other):
        return (self - other).is_zero()

    __hash__ = None

    def coefficient(self, word) -> RatFunc:
        if isinstance(word, str):
            word = self.alg.parse_word(word)
        return self.terms.get(tuple(sorted(word)), self.alg.ctx.zero())

    def map_coeffs(self, f) -> "VecV":
        out = {}
        for w, c in self.terms.items():
            v = f(c)
            if v:
                out[w] = v
        return VecV(self.alg, out)

    def render(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for w in sorted(self.terms, key=lambda w: (len(w), w)):
            c = self.terms[w]
            if not c:
                continue
            word = self.alg.render_word(w) + "*v" if w else "v"
            parts.append(f"({c})*{word}")
        return " + ".join(parts) if parts else "0"

    __str__ = render

    def __repr__(self):
        return f"VecV({self.render()})"


def _is_lowering(alg, g: int) -> bool:
    return alg.gens[g].kind in ("lower", "inf_lower")


def _project(alg: NCAlgebra, w: tuple, lam_cache: dict):
    """Apply a normal word to the highest-weight vector: None if it vanishes,
    else (lowering word, highest-weight scalar as poly dict)."""
    scalar = None
    keep = []
    for g in w:
        gg = alg.gens[g]
        if gg.kind in ("raise", "inf_raise"):
            return None
        if gg.kind == "cartan":
            lam = lam_cache.get(g)
            if lam is None:
                lam = {alg.ctx.var_mono(f"L{gg.site}_{gg.p}"): alg.ctx.one().num[0]}
                lam_cache[g] = lam
            scalar = lam if scalar is None else _pmul(scalar, lam)
        else:
            keep.append(g)
    return tuple(keep), scalar


def act(op: NCPoly, v: VecV) -> VecV:
    alg = op.alg
    ctx = alg.ctx
    acc: dict = {}
    lam_cache: dict = {}
    for wo, co in op.terms.items():
        for wv, cv in v.terms.items():
            base = _pmul(co.num, cv.num)
            den = _merge_den(co.den, cv.den)
            for w, p in alg.mul_words(wo, wv).items():
                pr = _project(alg, w, lam_cache)
                if pr is None:
                    continue
                ww, s = pr
                num = _pmul(base, p)
                if s is not None:
                    num = _pmul(num, s)
                r = acc.get(ww)
                if r is None:
                    r = acc[ww] = RatAcc(ctx)
                r.add_poly(num, den)
    out = {}
    for w, r in acc.items():
        val = r.value()
        if val:
            out[w] = val
    return VecV(alg, out)


def act_by_rewriting(op: NCPoly, v: VecV) -> VecV:
    """Same as act but through the generic word rewriting (independent path)."""
    alg = op.alg
    out = VecV(alg, {})
    lam_cache: dict = {}
    for wo, co in op.terms.items():
        for wv, cv in v.terms.items():
            for w, p in alg.normal_order_dict(wo + wv).items():
                pr = _project(alg, w, lam_cache)
                if pr is None:
                    continue
                ww, s = pr
                c = co * cv * RatFunc(alg.ctx, p if s is None else _pmul(p, s), ())
                out = out + VecV(alg, {ww: c})
    return out


def weight_space_basis(alg: NCAlgebra, m) -> list:
    """All lowering words whose total root content is sum_p m_p alpha_p."""
    m = tuple(m)
    if len(m) != alg.N - 1 or any(x < 0 for x in m):
        raise ValueError("m must have N-1 nonnegative entries")
    lows = [g for g in range(len(alg.gens)) if _is_lowering(alg, g)]
    out = []

    def rec(idx, rest, word):
        if not any(rest):
            out.append(tuple(word))
            return
        if idx == len(lows):
            return
        g = lows[idx]
        r = alg.gens[g].root
        # use g zero or more times
        k = 0
        cur = list(rest)
        while True:
            rec(idx + 1, tuple(cur), word + [g] * k)
            ok = all(cur[q - 1] >= 1 for q in range(r.start, r.end + 1))
            if not ok:
                break
            for q in range(r.start, r.end + 1):
                cur[q - 1] -= 1
            k += 1

    rec(0, m, [])
    return sorted(out, key=lambda w: (len(w), w))


def h_inf_zero(alg: NCAlgebra, p: int) -> NCPoly:
    """h_p[0] at infinity: -sum_a (a(h_p)/mu_a) e_{-a}[1] e_a[1]."""
    from .hamiltonians import _ops
    from .rootsys import root_value
    o = _ops(alg)
    out = alg.zero()
    for r in alg.rs.positive_roots:
        v = root_value(r, p)
        if v:
            out = out - (alg.inf(-1, r) * alg.inf(1, r)).scale(o.mu(r).inverse().scale(v))
    return out


def total_cartan(alg: NCAlgebra, p: int) -> NCPoly:
    out = h_inf_zero(alg, p)
    for i in range(1, alg.n + 1):
        out = out + alg.gen(alg.cartan_id(i, p))
    return out


def weight_eigenvalue(alg: NCAlgebra, m, p: int) -> RatFunc:
    ctx = alg.ctx
    out = ctx.zero()
    for i in range(1, alg.n + 1):
        out = out + ctx.var(f"L{i}_{p}")
    return out - ctx.const(sum(cartan_entry(p, q) * m[q - 1] for q in range(1, alg.N)))


def in_weight_space(alg: NCAlgebra, v: VecV, m) -> bool:
    for p in range(1, alg.N):
        lhs = act(total_cartan(alg, p), v)
        if not (lhs - v.scale(weight_eigenvalue(alg, m, p))).is_zero():
            return False
    return True


def d_gamma(k: int, v: VecV) -> VecV:
    return v.map_coeffs(lambda c: c.partial_derivative(f"g{k}"))


def mu_structural_factor(alg: NCAlgebra, word: tuple, k: int) -> RatFunc:
    """(1/2) sum over infinity lowering gens with root containing alpha_k of 1/mu_root."""
    ctx = alg.ctx
    out = ctx.zero()
    for g in word:
        gg = alg.gens[g]
        if gg.kind == "inf_lower" and gg.root.contains(k):
            mu = RatFunc(ctx, dict(alg.mu_alpha(gg.root)), ())
            out = out + mu.inverse().scale(Fraction(1, 2))
    return out


def d_mu(k: int, v: VecV) -> VecV:
    alg = v.alg
    out = {}
    for w, c in v.terms.items():
        val = c.partial_derivative(f"mu{k}") + c * mu_structural_factor(alg, w, k)
        if val:
            out[w] = val
    return VecV(alg, out)
