"""Noncommutative algebra of n copies of sl_N plus the degree-one currents at
infinity, with PBW normal ordering.

Generators are identified by their PBW rank (an int), so a normal word is a
nondecreasing tuple of ints.  Coefficients are RatFuncs; inside the rewriting
engine they are plain polynomial dicts (all structure constants are
polynomials: integers for sl_N, mu_alpha at infinity).
"""
from __future__ import annotations

import random
import re
from collections import namedtuple
from fractions import Fraction
from math import comb, factorial

from .ratfunc import (RatAcc, RatFunc, _merge_den, _padd_into, _pmul, _ppow,
                      _pscale, standard_context, mpq)
from .rootsys import (Cartan, Fundamental, Root, RootVec, bracket_basis,
                      build_root_system, casimir_terms, diagonal_unit_in_cartan,
                      fundamental_in_cartan)

_ONE = mpq(1)

# kind: "lower" | "cartan" | "raise" | "inf_lower" | "inf_raise"
Gen = namedtuple("Gen", "kind site root p")

_INF = ("inf_lower", "inf_raise")


def render_gen(g: Gen) -> str:
    if g.kind == "cartan":
        return f"h[{g.site},{g.p}]"
    r = f"a({g.root.start},{g.root.end})"
    neg = g.kind in ("lower", "inf_lower")
    s = ("-" if neg else "") + r
    if g.kind in _INF:
        return f"e[inf,{s},1]"
    return f"e[{g.site},{s}]"


_GEN_RE = re.compile(r"\s*(?:e\[\s*(inf|\d+)\s*,\s*(-?)a\((\d+),(\d+)\)\s*(?:,\s*1\s*)?\]|h\[\s*(\d+)\s*,\s*(\d+)\s*\])\s*")


class NCAlgebra:
    """PBW algebra for given (N, n) over a coefficient context."""

    _cache: dict = {}

    def __new__(cls, N: int, n: int = 0, ctx=None):
        if ctx is None:
            ctx = standard_context(N, n)
        key = (N, n, id(ctx))
        obj = cls._cache.get(key)
        if obj is None:
            obj = super().__new__(cls)
            obj._init(N, n, ctx)
            cls._cache[key] = obj
        return obj

    def _init(self, N, n, ctx):
        self.N = N
        self.n = n
        self.ctx = ctx
        self.rs = build_root_system(N)
        roots = self.rs.positive_roots
        gens = []
        for i in range(1, n + 1):
            gens += [Gen("lower", i, r, None) for r in roots]
            gens += [Gen("cartan", i, None, p) for p in range(1, N)]
            gens += [Gen("raise", i, r, None) for r in roots]
        gens += [Gen("inf_lower", None, r, None) for r in roots]
        gens += [Gen("inf_raise", None, r, None) for r in roots]
        self.gens = gens
        self.rank = {g: k for k, g in enumerate(gens)}
        self.block = [(g.site - 1) if g.site is not None else n for g in gens]
        self.is_raise = [g.kind in ("raise", "inf_raise") for g in gens]
        self.is_cartan = [g.kind == "cartan" for g in gens]
        self.inf_start = n * (2 * len(roots) + N - 1)
        self.nroots = len(roots)
        self._mu_alpha = {}
        for r in roots:
            d = {}
            for p in range(r.start, r.end + 1):
                d[ctx.var_mono(f"mu{p}")] = _ONE
            self._mu_alpha[r] = d
        self._comm: dict = {}
        self._mwg: dict = {}
        self._blockmul: dict = {}
        self._mupow: dict = {}
        self.one_word = ()

    # ------------------------------------------------------------ generators
    def gen_id(self, kind, site=None, root=None, p=None) -> int:
        return self.rank[Gen(kind, site, root, p)]

    def site_vec(self, i: int, sign: int, root: Root) -> int:
        return self.rank[Gen("raise" if sign > 0 else "lower", i, root, None)]

    def inf_vec(self, sign: int, root: Root) -> int:
        return self.rank[Gen("inf_raise" if sign > 0 else "inf_lower", None, root, None)]

    def cartan_id(self, i: int, p: int) -> int:
        return self.rank[Gen("cartan", i, None, p)]

    def _basis_of(self, g: Gen):
        if g.kind == "cartan":
            return Cartan(g.p)
        return RootVec(g.root, 1 if g.kind == "raise" else -1)

    def _gen_of_basis(self, i: int, x) -> int:
        if isinstance(x, Cartan):
            return self.cartan_id(i, x.p)
        return self.site_vec(i, x.sign, x.root)

    def mu_alpha(self, root: Root) -> dict:
        return self._mu_alpha[root]

    # ------------------------------------------------------------ commutators
    def gen_comm(self, a: int, b: int) -> dict:
        """[a, b] as {word: poly-dict}; words of length <= 1."""
        key = (a, b)
        c = self._comm.get(key)
        if c is not None:
            return c
        ga, gb = self.gens[a], self.gens[b]
        out: dict = {}
        if a == b or self.block[a] != self.block[b]:
            pass
        elif ga.kind in _INF:
            if ga.root == gb.root and ga.kind != gb.kind:
                s = 1 if ga.kind == "inf_raise" else -1
                out[()] = _pscale(self._mu_alpha[ga.root], s)
        else:
            i = ga.site
            for x, v in bracket_basis(self._basis_of(ga), self._basis_of(gb)).items():
                out[(self._gen_of_basis(i, x),)] = {0: mpq(v)}
        self._comm[key] = out
        return out

    # ------------------------------------------------------------ rewriting
    def mul_word_gen(self, w: tuple, g: int) -> dict:
        """Normal form of (normal word w) * g as {word: poly-dict}."""
        if not w or w[-1] <= g:
            return {w + (g,): {0: _ONE}}
        key = (w, g)
        r = self._mwg.get(key)
        if r is not None:
            return r
        last = w[-1]
        head = w[:-1]
        out: dict = {}
        if self.block[last] != self.block[g]:
            # commuting blocks: no correction term
            for ww, c in self.mul_word_gen(head, g).items():
                for w2, c2 in self.mul_word_gen(ww, last).items():
                    _acc(out, w2, _pmul(c, c2))
        else:
            for ww, c in self.mul_word_gen(head, g).items():
                for w2, c2 in self.mul_word_gen(ww, last).items():
                    _acc(out, w2, _pmul(c, c2))
            for cw, cc in self.gen_comm(last, g).items():
                if not cw:
                    _acc(out, head, cc)
                else:
                    for w2, c2 in self.mul_word_gen(head, cw[0]).items():
                        _acc(out, w2, _pmul(cc, c2))
        self._mwg[key] = out
        return out

    def normal_order_dict(self, word) -> dict:
        cur = {(): {0: _ONE}}
        for g in word:
            nxt: dict = {}
            for w, c in cur.items():
                for w2, c2 in self.mul_word_gen(w, g).items():
                    _acc(nxt, w2, _pmul(c, c2))
            cur = nxt
        return cur

    def normal_order_random(self, word, rng: random.Random) -> dict:
        """Independent strategy: random adjacent transpositions until sorted."""
        todo = [(tuple(word), {0: _ONE})]
        out: dict = {}
        while todo:
            w, c = todo.pop()
            bad = [k for k in range(len(w) - 1) if w[k] > w[k + 1]]
            if not bad:
                _acc(out, w, c)
                continue
            k = rng.choice(bad)
            a, b = w[k], w[k + 1]
            todo.append((w[:k] + (b, a) + w[k + 2:], c))
            for cw, cc in self.gen_comm(a, b).items():
                todo.append((w[:k] + cw + w[k + 2:], _pmul(c, cc)))
        return {w: c for w, c in out.items() if c}

    def mul_words(self, a: tuple, b: tuple) -> dict:
        """Normal form of a*b for normal words a, b via per-block products."""
        if not a:
            return {b: {0: _ONE}}
        if not b:
            return {a: {0: _ONE}}
        if a[-1] <= b[0]:
            return {a + b: {0: _ONE}}
        blk = self.block
        na = self.n + 1
        pa = [[] for _ in range(na)]
        pb = [[] for _ in range(na)]
        for g in a:
            pa[blk[g]].append(g)
        for g in b:
            pb[blk[g]].append(g)
        parts = []
        for k in range(na):
            x, y = tuple(pa[k]), tuple(pb[k])
            if not y:
                parts.append({x: None})
            elif not x:
                parts.append({y: None})
            elif k == self.n:
                parts.append(self._inf_mul(x, y))
            else:
                parts.append(self._site_mul(x, y))
        out = {(): None}
        for part in parts:
            if len(part) == 1:
                (w, c), = part.items()
                out = {ww + w: _cmul(cc, c) for ww, cc in out.items()}
                continue
            nxt = {}
            for ww, cc in out.items():
                for w, c in part.items():
                    nxt[ww + w] = _cmul(cc, c)
            out = nxt
        return {w: (c if c is not None else {0: _ONE}) for w, c in out.items()}

    def _site_mul(self, x, y) -> dict:
        key = (x, y)
        r = self._blockmul.get(key)
        if r is not None:
            return r
        cur = {x: {0: _ONE}}
        for g in y:
            nxt: dict = {}
            for w, c in cur.items():
                for w2, c2 in self.mul_word_gen(w, g).items():
                    _acc(nxt, w2, _pmul(c, c2))
            cur = nxt
        self._blockmul[key] = cur
        return cur

    def _mu_pow(self, r: Root, j: int) -> dict:
        key = (r, j)
        p = self._mupow.get(key)
        if p is None:
            p = _ppow(self._mu_alpha[r], j)
            self._mupow[key] = p
        return p

    def _inf_mul(self, x, y) -> dict:
        key = (x, y)
        res = self._blockmul.get(key)
        if res is not None:
            return res
        s = self.inf_start
        R = self.nroots
        ea = [0] * (2 * R)
        eb = [0] * (2 * R)
        for g in x:
            ea[g - s] += 1
        for g in y:
            eb[g - s] += 1
        roots = self.rs.positive_roots
        # per root: L^{a1} R^{a2} L^{b1} R^{b2}, [R, L] = mu
        per = []
        for k in range(R):
            a1, a2, b1, b2 = ea[k], ea[R + k], eb[k], eb[R + k]
            opts = []
            for j in range(min(a2, b1) + 1):
                c = comb(a2, j) * comb(b1, j) * factorial(j)
                coef = _pscale(self._mu_pow(roots[k], j), mpq(c)) if j else {0: mpq(c)}
                opts.append((a1 + b1 - j, a2 + b2 - j, coef))
            per.append(opts)
        results = [([0] * R, [0] * R, {0: _ONE})]
        for k, opts in enumerate(per):
            if len(opts) == 1:
                l, r_, c = opts[0]
                for lo, hi, _ in results:
                    lo[k] = l
                    hi[k] = r_
                if not (len(c) == 1 and c.get(0) == 1):
                    results = [(lo, hi, _pmul(cc, c)) for lo, hi, cc in results]
                continue
            nxt = []
            for lo, hi, cc in results:
                for l, r_, c in opts:
                    lo2 = list(lo)
                    hi2 = list(hi)
                    lo2[k] = l
                    hi2[k] = r_
                    nxt.append((lo2, hi2, _pmul(cc, c)))
            results = nxt
        out: dict = {}
        for lo, hi, c in results:
            w = []
            for k in range(R):
                w += [s + k] * lo[k]
            for k in range(R):
                w += [s + R + k] * hi[k]
            _acc(out, tuple(w), c)
        self._blockmul[key] = out
        return out

    # ------------------------------------------------------------ builders
    def zero(self) -> "NCPoly":
        return NCPoly(self, {})

    def one(self) -> "NCPoly":
        return NCPoly(self, {(): self.ctx.one()})

    def scalar(self, c) -> "NCPoly":
        c = c if isinstance(c, RatFunc) else self.ctx.const(c)
        return NCPoly(self, {(): c} if c else {})

    def gen(self, gid: int) -> "NCPoly":
        return NCPoly(self, {(gid,): self.ctx.one()})

    def word(self, gids) -> "NCPoly":
        return NCPoly.from_dict(self, self.normal_order_dict(tuple(gids)))

    def site(self, i: int, x) -> "NCPoly":
        """Copy of a basis element (RootVec, Cartan, Fundamental) on site i."""
        if isinstance(x, Fundamental):
            terms = fundamental_in_cartan(self.N, x.p)
            return NCPoly(self, {(self.cartan_id(i, c.p),): self.ctx.const(v) for c, v in terms.items() if v})
        return self.gen(self._gen_of_basis(i, x))

    def site_diag(self, i: int, a: int) -> "NCPoly":
        """Traceless part of the matrix unit E_aa on site i."""
        terms = diagonal_unit_in_cartan(self.N, a)
        return NCPoly(self, {(self.cartan_id(i, c.p),): self.ctx.const(v) for c, v in terms.items()})

    def inf(self, sign: int, root: Root) -> "NCPoly":
        return self.gen(self.inf_vec(sign, root))

    def casimir(self, i: int, j: int) -> "NCPoly":
        out = self.zero()
        for c, x, y in casimir_terms(self.N):
            out = out + (self.site(i, x) * self.site(j, y)).scale(c)
        return out

    def parse_word(self, text: str) -> tuple:
        """Parse `e[inf,-a(1,2),1]*e[1,a(1,1)]*h[1,2]` into gen ids (not reordered)."""
        text = text.strip()
        if text in ("", "1"):
            return ()
        out = []
        for piece in text.split("*"):
            m = _GEN_RE.fullmatch(piece)
            if not m:
                raise ValueError(f"cannot parse generator {piece!r}")
            site, neg, i, j, hs, hp = m.groups()
            if hs is not None:
                out.append(self.cartan_id(int(hs), int(hp)))
                continue
            root = Root(int(i), int(j))
            sign = -1 if neg else 1
            if site == "inf":
                out.append(self.inf_vec(sign, root))
            else:
                out.append(self.site_vec(int(site), sign, root))
        return tuple(out)

    def render_word(self, w: tuple) -> str:
        if not w:
            return "1"
        return "*".join(render_gen(self.gens[g]) for g in w)


def _acc(out: dict, w, c: dict):
    if not c:
        return
    cur = out.get(w)
    if cur is None:
        out[w] = dict(c)
    else:
        _padd_into(cur, c)
        if not cur:
            del out[w]


def _cmul(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return _pmul(a, b)


class NCPoly:
    """Linear combination of normal words with RatFunc coefficients."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg: NCAlgebra, terms: dict):
        self.alg = alg
        self.terms = terms

    @classmethod
    def from_dict(cls, alg, d: dict) -> "NCPoly":
        ctx = alg.ctx
        from .ratfunc import RatFunc as RF
        return cls(alg, {w: RF(ctx, c, ()) for w, c in d.items() if c})

    @property
    def ctx(self):
        return self.alg.ctx

    def _check(self, other):
        if not isinstance(other, NCPoly):
            return self.alg.scalar(other)
        if other.alg is not self.alg:
            raise ValueError("NCPolys from different algebras")
        return other

    def __add__(self, other):
        other = self._check(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            v = out.get(w)
            v = c if v is None else v + c
            if v:
                out[w] = v
            else:
                out.pop(w, None)
        return NCPoly(self.alg, out)

    __radd__ = __add__

    def __neg__(self):
        return NCPoly(self.alg, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "NCPoly":
        if not isinstance(c, RatFunc):
            c = self.ctx.const(c)
        if not c:
            return self.alg.zero()
        return NCPoly(self.alg, {w: v * c for w, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, NCPoly):
            return self.scale(other)
        return nc_mul(self, other)

    def __rmul__(self, other):
        return self.scale(other)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.terms.values())

    def __eq__(self, other):
        return (self - other).is_zero()

    __hash__ = None

    def __len__(self):
        return len(self.terms)

    def max_word_length(self) -> int:
        return max((len(w) for w in self.terms), default=0)

    def coefficient(self, word) -> RatFunc:
        if isinstance(word, str):
            word = self.alg.parse_word(word)
        return self.terms.get(tuple(word), self.ctx.zero())

    def map_coeffs(self, f) -> "NCPoly":
        out = {}
        for w, c in self.terms.items():
            v = f(c)
            if v:
                out[w] = v
        return NCPoly(self.alg, out)

    def coeff_derivative(self, v: str) -> "NCPoly":
        return self.map_coeffs(lambda c: c.partial_derivative(v))

    def structural_mu_derivative(self, k: int) -> "NCPoly":
        """Derivation e_{+-a}[1] -> e_{+-a}[1]/(2 mu_a) for roots a containing a_k."""
        alg = self.alg
        ctx = self.ctx
        out = {}
        cache = {}
        for w, c in self.terms.items():
            f = alg.ctx.zero()
            for g in w:
                gg = alg.gens[g]
                if gg.kind in _INF and gg.root.contains(k):
                    inv = cache.get(gg.root)
                    if inv is None:
                        inv = RatFunc(ctx, dict(alg.mu_alpha(gg.root)), ()).inverse().scale(Fraction(1, 2))
                        cache[gg.root] = inv
                    f = f + inv
            if f:
                out[w] = c * f
        return NCPoly(alg, out)

    def parameter_derivative(self, v: str) -> "NCPoly":
        """Total derivative: coefficients plus the structural rule for mu_k."""
        d = self.coeff_derivative(v)
        m = re.fullmatch(r"mu(\d+)", v)
        if m:
            d = d + self.structural_mu_derivative(int(m.group(1)))
        return d

    def reduced(self) -> "NCPoly":
        return NCPoly(self.alg, {w: c.reduced() for w, c in self.terms.items() if c})

    def render(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for w in sorted(self.terms, key=lambda w: (len(w), w)):
            c = self.terms[w]
            parts.append(f"({c})*{self.alg.render_word(w)}" if w else f"({c})")
        return " + ".join(parts)

    __str__ = render

    def __repr__(self):
        return f"NCPoly({self.render()})"


def gen_commutator(alg: NCAlgebra, g: int, h: int) -> NCPoly:
    return NCPoly.from_dict(alg, alg.gen_comm(g, h))


def normal_order(alg: NCAlgebra, word) -> NCPoly:
    if isinstance(word, str):
        word = alg.parse_word(word)
    return NCPoly.from_dict(alg, alg.normal_order_dict(tuple(word)))


def nc_mul(a: NCPoly, b: NCPoly) -> NCPoly:
    alg = a.alg
    if b.alg is not alg:
        raise ValueError("NCPolys from different algebras")
    ctx = alg.ctx
    acc: dict = {}
    for wa, ca in a.terms.items():
        if not ca:
            continue
        for wb, cb in b.terms.items():
            if not cb:
                continue
            base = _pmul(ca.num, cb.num)
            den = _merge_den(ca.den, cb.den)
            for w, p in alg.mul_words(wa, wb).items():
                r = acc.get(w)
                if r is None:
                    r = acc[w] = RatAcc(ctx)
                r.add_poly(_pmul(base, p), den)
    out = {}
    for w, r in acc.items():
        v = r.value()
        if v:
            out[w] = v
    return NCPoly(alg, out)


def nc_commutator(a: NCPoly, b: NCPoly) -> NCPoly:
    """a*b - b*a, accumulated before any lcm is taken."""
    alg = a.alg
    ctx = alg.ctx
    acc: dict = {}
    for x, y, s in ((a, b, None), (b, a, mpq(-1))):
        for wa, ca in x.terms.items():
            for wb, cb in y.terms.items():
                prod = alg.mul_words(wa, wb)
                base = _pmul(ca.num, cb.num)
                if s is not None:
                    base = _pscale(base, s)
                den = _merge_den(ca.den, cb.den)
                for w, p in prod.items():
                    r = acc.get(w)
                    if r is None:
                        r = acc[w] = RatAcc(ctx)
                    r.add_poly(_pmul(base, p), den)
    out = {}
    for w, r in acc.items():
        v = r.value()
        if v:
            out[w] = v
    return NCPoly(alg, out)
