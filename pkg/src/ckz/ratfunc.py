"""Exact multivariate polynomials and rational functions over Q.

Monomials are packed into a single int (BITS bits per variable) so that
monomial multiplication is integer addition.  Denominators are kept factored
as a product of registered "atoms" (primitive polynomials with positive
leading coefficient), so sums use an lcm of factor lists instead of a gcd.
Zero testing is exact: a RatFunc is zero iff its numerator is.
"""
from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from math import gcd

from gmpy2 import mpq

BITS = 16
MASK = (1 << BITS) - 1

_ZERO = mpq(0)
_ONE = mpq(1)


class ContextMismatch(ValueError):
    pass


class PoleError(ZeroDivisionError):
    pass


def _to_mpq(c) -> mpq:
    if isinstance(c, Fraction):
        return mpq(c.numerator, c.denominator)
    return mpq(c)


# ---------------------------------------------------------------- dict polys

def _padd(a: dict, b: dict, s=1) -> dict:
    if len(a) < len(b) and s == 1:
        a, b = b, a
    out = dict(a)
    get = out.get
    if s == 1:
        for m, c in b.items():
            v = get(m, _ZERO) + c
            if v:
                out[m] = v
            else:
                del out[m]
    else:
        for m, c in b.items():
            v = get(m, _ZERO) - c
            if v:
                out[m] = v
            else:
                del out[m]
    return out


def _padd_into(out: dict, b: dict, scale=None):
    get = out.get
    if scale is None:
        for m, c in b.items():
            v = get(m, _ZERO) + c
            if v:
                out[m] = v
            else:
                del out[m]
    else:
        for m, c in b.items():
            v = get(m, _ZERO) + c * scale
            if v:
                out[m] = v
            else:
                del out[m]


def _pmul(a: dict, b: dict) -> dict:
    if not a or not b:
        return {}
    if len(a) == 1:
        (m1, c1), = a.items()
        if m1 == 0 and c1 == 1:
            return b
        return {m1 + m: c1 * c for m, c in b.items()}
    if len(b) == 1:
        (m2, c2), = b.items()
        if m2 == 0 and c2 == 1:
            return a
        return {m + m2: c * c2 for m, c in a.items()}
    out: dict = {}
    get = out.get
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            k = m1 + m2
            out[k] = get(k, _ZERO) + c1 * c2
    return {k: v for k, v in out.items() if v}


def _pscale(a: dict, c) -> dict:
    if not c:
        return {}
    if c == 1:
        return a
    return {m: v * c for m, v in a.items()}


def _ppow(a: dict, e: int) -> dict:
    out = {0: _ONE}
    base = a
    while e:
        if e & 1:
            out = _pmul(out, base)
        e >>= 1
        if e:
            base = _pmul(base, base)
    return out


class VarContext:
    """Ordered set of named variables; also owns the denominator atom table."""

    def __init__(self, names):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError("duplicate variable names")
        for n in names:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", n):
                raise ValueError(f"bad variable name {n!r}")
        self.names = names
        self.index = {n: i for i, n in enumerate(names)}
        self.nvars = len(names)
        self._atoms: list[dict] = []
        self._atom_key: dict = {}
        self._powcache: dict = {}
        self._dencache: dict = {}

    def __repr__(self):
        return f"VarContext({', '.join(self.names)})"

    def __contains__(self, name):
        return name in self.index

    # monomials
    def exps(self, m: int) -> list[int]:
        out = []
        for _ in range(self.nvars):
            out.append(m & MASK)
            m >>= BITS
        return out

    def pack(self, exps) -> int:
        m = 0
        for i, e in enumerate(exps):
            if e < 0 or e > MASK:
                raise OverflowError("exponent out of range")
            m |= e << (BITS * i)
        return m

    def var_mono(self, name: str) -> int:
        return 1 << (BITS * self.index[name])

    # constructors
    def var(self, name: str) -> "RatFunc":
        if name not in self.index:
            raise KeyError(f"unknown variable {name!r}")
        return RatFunc(self, {self.var_mono(name): _ONE}, ())

    def const(self, c) -> "RatFunc":
        c = _to_mpq(c)
        return RatFunc(self, {0: c} if c else {}, ())

    def zero(self) -> "RatFunc":
        return RatFunc(self, {}, ())

    def one(self) -> "RatFunc":
        return RatFunc(self, {0: _ONE}, ())

    def poly(self, name: str) -> "MPoly":
        return MPoly(self, {self.var_mono(name): _ONE})

    # atoms
    def _lead(self, poly: dict) -> int:
        return max(poly, key=lambda m: (_degree(m), self.exps(m)))

    def canonical(self, poly: dict):
        """poly = scale * canon with canon primitive and positive leading coefficient."""
        dens = 1
        nums = 0
        for c in poly.values():
            dens = dens * int(c.denominator) // gcd(dens, int(c.denominator))
            nums = gcd(nums, int(c.numerator))
        scale = mpq(nums, dens)
        if poly[self._lead(poly)] < 0:
            scale = -scale
        canon = {m: c / scale for m, c in poly.items()}
        return scale, canon

    def atom_id(self, canon: dict) -> int:
        key = tuple(sorted(canon.items()))
        k = self._atom_key.get(key)
        if k is None:
            k = len(self._atoms)
            self._atoms.append(canon)
            self._atom_key[key] = k
        return k

    def atom(self, k: int) -> dict:
        return self._atoms[k]

    def atom_pow(self, k: int, e: int) -> dict:
        key = (k, e)
        p = self._powcache.get(key)
        if p is None:
            p = _ppow(self._atoms[k], e)
            self._powcache[key] = p
        return p

    def den_poly(self, den: tuple) -> dict:
        p = self._dencache.get(den)
        if p is None:
            p = {0: _ONE}
            for k, e in den:
                p = _pmul(p, self.atom_pow(k, e))
            if len(self._dencache) < 200000:
                self._dencache[den] = p
        return p

    def factor_poly(self, poly: dict):
        """Split a nonzero polynomial into (scalar, den-style atom tuple)."""
        if not poly:
            raise ZeroDivisionError("division by zero polynomial")
        factors: dict = {}
        # monomial content
        mins = None
        for m in poly:
            e = self.exps(m)
            mins = e if mins is None else [min(x, y) for x, y in zip(mins, e)]
        mono = self.pack(mins)
        if mono:
            poly = {m - mono: c for m, c in poly.items()}
            for i, e in enumerate(mins):
                if e:
                    k = self.atom_id({1 << (BITS * i): _ONE})
                    factors[k] = factors.get(k, 0) + e
        scale = _ONE
        if len(poly) == 1:
            (m, c), = poly.items()
            return c, tuple(sorted(factors.items()))
        # trial division by known atoms
        for k, a in enumerate(self._atoms):
            if len(a) < 2:
                continue
            while True:
                q = _pdivexact(poly, a)
                if q is None:
                    break
                factors[k] = factors.get(k, 0) + 1
                poly = q
                if len(poly) == 1:
                    break
            if len(poly) == 1:
                break
        if len(poly) == 1:
            (m, c), = poly.items()
            if m:
                for i, e in enumerate(self.exps(m)):
                    if e:
                        k = self.atom_id({1 << (BITS * i): _ONE})
                        factors[k] = factors.get(k, 0) + e
            return c, tuple(sorted(factors.items()))
        scale, canon = self.canonical(poly)
        k = self.atom_id(canon)
        factors[k] = factors.get(k, 0) + 1
        return scale, tuple(sorted(factors.items()))


def _degree(m: int) -> int:
    d = 0
    while m:
        d += m & MASK
        m >>= BITS
    return d


def _mono_divides(a: int, b: int) -> bool:
    """monomial a divides monomial b."""
    while a:
        if (a & MASK) > (b & MASK):
            return False
        a >>= BITS
        b >>= BITS
    return True


def _pdivexact(p: dict, a: dict):
    """p / a if exact, else None.  Uses the packed-int order (a lex order)."""
    la = max(a)
    lc = a[la]
    r = dict(p)
    q = {}
    while r:
        lm = max(r)
        if not _mono_divides(la, lm):
            return None
        d = lm - la
        c = r[lm] / lc
        q[d] = c
        for m, v in a.items():
            k = m + d
            nv = r.get(k, _ZERO) - v * c
            if nv:
                r[k] = nv
            else:
                r.pop(k, None)
    return q


def _merge_den(a: tuple, b: tuple) -> tuple:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for k, e in b:
        d[k] = d.get(k, 0) + e
    return tuple(sorted(d.items()))


def _lcm_den(a: tuple, b: tuple):
    """(lcm, multiplier-for-a, multiplier-for-b) as den tuples."""
    da, db = dict(a), dict(b)
    lcm = {}
    for k in set(da) | set(db):
        lcm[k] = max(da.get(k, 0), db.get(k, 0))
    ma = tuple(sorted((k, e - da.get(k, 0)) for k, e in lcm.items() if e > da.get(k, 0)))
    mb = tuple(sorted((k, e - db.get(k, 0)) for k, e in lcm.items() if e > db.get(k, 0)))
    return tuple(sorted(lcm.items())), ma, mb


# ---------------------------------------------------------------- MPoly

class MPoly:
    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: VarContext, terms: dict):
        self.ctx = ctx
        self.terms = terms

    def _check(self, other):
        if isinstance(other, (int, Fraction)) or type(other).__name__ == "mpq":
            return MPoly(self.ctx, {0: _to_mpq(other)} if other else {})
        if other.ctx is not self.ctx:
            raise ContextMismatch("polynomials from different contexts")
        return other

    def __add__(self, other):
        other = self._check(other)
        return MPoly(self.ctx, _padd(self.terms, other.terms))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._check(other)
        return MPoly(self.ctx, _padd(self.terms, other.terms, -1))

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return MPoly(self.ctx, {m: -c for m, c in self.terms.items()})

    def __mul__(self, other):
        other = self._check(other)
        return MPoly(self.ctx, _pmul(self.terms, other.terms))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        return MPoly(self.ctx, _ppow(self.terms, e))

    def __eq__(self, other):
        other = self._check(other)
        return not _padd(self.terms, other.terms, -1)

    __hash__ = None

    def is_zero(self) -> bool:
        return not self.terms

    def sorted_terms(self):
        """Terms in graded-lex order, largest first."""
        return sorted(self.terms.items(), key=lambda mc: _grlex_key(self.ctx, mc[0]), reverse=True)

    def __str__(self):
        return _render_poly(self.ctx, self.terms)

    def __repr__(self):
        return f"MPoly({self})"

    def to_ratfunc(self) -> "RatFunc":
        return RatFunc(self.ctx, dict(self.terms), ())


def _grlex_key(ctx, m):
    # graded, then lex by context order (earlier variables dominate)
    return (_degree(m), ctx.exps(m))


def _render_mono(ctx, m) -> str:
    parts = []
    for name, e in zip(ctx.names, ctx.exps(m)):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def _render_coeff(c) -> str:
    c = Fraction(int(c.numerator), int(c.denominator))
    return str(c)


def _render_poly(ctx, terms: dict) -> str:
    if not terms:
        return "0"
    items = sorted(terms.items(), key=lambda mc: _grlex_key(ctx, mc[0]), reverse=True)
    out = []
    for i, (m, c) in enumerate(items):
        neg = c < 0
        a = -c if neg else c
        mono = _render_mono(ctx, m)
        if mono and a == 1:
            body = mono
        elif mono:
            body = f"{_render_coeff(a)}*{mono}"
        else:
            body = _render_coeff(a)
        if i == 0:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


# ---------------------------------------------------------------- RatFunc

class RatFunc:
    """num / prod(atom_k ^ e_k).  Immutable by convention."""

    __slots__ = ("ctx", "num", "den")

    def __init__(self, ctx: VarContext, num: dict, den: tuple):
        self.ctx = ctx
        self.num = num
        self.den = den if num else ()

    # coercion
    def _coerce(self, other):
        if isinstance(other, RatFunc):
            if other.ctx is not self.ctx:
                raise ContextMismatch("rational functions from different contexts")
            return other
        if isinstance(other, MPoly):
            if other.ctx is not self.ctx:
                raise ContextMismatch("rational functions from different contexts")
            return RatFunc(self.ctx, other.terms, ())
        if isinstance(other, (int, Fraction)) or type(other).__name__ in ("mpq", "mpz"):
            return self.ctx.const(other)
        return NotImplemented

    def is_zero(self) -> bool:
        return not self.num

    def __bool__(self):
        return bool(self.num)

    def is_const(self) -> bool:
        return not self.den and (not self.num or (len(self.num) == 1 and 0 in self.num))

    def const_value(self) -> Fraction:
        if not self.is_const():
            r = self.reduced()
            if not r.is_const():
                raise ValueError("not a constant")
            return r.const_value()
        c = self.num.get(0, _ZERO)
        return Fraction(int(c.numerator), int(c.denominator))

    def __neg__(self):
        return RatFunc(self.ctx, {m: -c for m, c in self.num.items()}, self.den)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other.num:
            return self
        if not self.num:
            return other
        if self.den == other.den:
            return RatFunc(self.ctx, _padd(self.num, other.num), self.den)
        lcm, ma, mb = _lcm_den(self.den, other.den)
        ctx = self.ctx
        na = _pmul(self.num, ctx.den_poly(ma)) if ma else self.num
        nb = _pmul(other.num, ctx.den_poly(mb)) if mb else other.num
        return RatFunc(ctx, _padd(na, nb), lcm)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.num or not other.num:
            return RatFunc(self.ctx, {}, ())
        return RatFunc(self.ctx, _pmul(self.num, other.num), _merge_den(self.den, other.den))

    __rmul__ = __mul__

    def scale(self, c) -> "RatFunc":
        c = _to_mpq(c)
        if not c:
            return RatFunc(self.ctx, {}, ())
        return RatFunc(self.ctx, _pscale(self.num, c), self.den)

    def inverse(self) -> "RatFunc":
        if not self.num:
            raise ZeroDivisionError("division by zero rational function")
        scale, factors = self.ctx.factor_poly(self.num)
        num = self.ctx.den_poly(self.den) if self.den else {0: _ONE}
        return RatFunc(self.ctx, _pscale(num, 1 / scale), factors)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        if e >= 2 and len(self.num) > 1:
            # remember the base so a later division can split the power
            self.ctx.atom_id(self.ctx.canonical(self.num)[1])
        out = self.ctx.one()
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return False
        return (self - other).is_zero()

    __hash__ = None

    # calculus
    def partial_derivative(self, v: str) -> "RatFunc":
        ctx = self.ctx
        if v not in ctx.index:
            raise KeyError(f"unknown variable {v!r}")
        idx = ctx.index[v]
        out = RatFunc(ctx, _pdiff(self.num, idx), self.den)
        for k, e in self.den:
            da = _pdiff(ctx.atom(k), idx)
            if not da:
                continue
            d = dict(self.den)
            d[k] = e + 1
            out = out + RatFunc(ctx, _pscale(_pmul(self.num, da), -e), tuple(sorted(d.items())))
        return out

    def variables(self) -> set[str]:
        used = 0
        for m in self.num:
            used |= m
        for k, _ in self.den:
            for m in self.ctx.atom(k):
                used |= m
        return {n for i, n in enumerate(self.ctx.names) if (used >> (BITS * i)) & MASK}

    def evaluate(self, assignment: dict) -> Fraction:
        vals = {}
        for n, x in assignment.items():
            if n in self.ctx.index:
                vals[self.ctx.index[n]] = _to_mpq(x)
        missing = [n for n in self.variables() if self.ctx.index[n] not in vals]
        if missing:
            raise KeyError(f"assignment misses variables {sorted(missing)}")
        ctx = self.ctx
        den = _ONE
        for k, e in self.den:
            v = _peval(ctx, ctx.atom(k), vals)
            if not v:
                raise PoleError("pole at the given assignment")
            den *= v ** e
        r = _peval(ctx, self.num, vals) / den
        return Fraction(int(r.numerator), int(r.denominator))

    def substitute(self, mapping: dict) -> "RatFunc":
        """Replace variables by RatFuncs (same or other context)."""
        tctx = None
        for v in mapping.values():
            if isinstance(v, RatFunc):
                tctx = v.ctx
                break
        if tctx is None:
            tctx = self.ctx
        images = []
        for i, n in enumerate(self.ctx.names):
            if n in mapping:
                x = mapping[n]
                images.append(x if isinstance(x, RatFunc) else tctx.const(x))
            else:
                images.append(tctx.var(n) if n in tctx.index else None)
        num = _psubst(self.ctx, self.num, images, tctx)
        den = tctx.one()
        for k, e in self.den:
            den = den * _psubst(self.ctx, self.ctx.atom(k), images, tctx) ** e
        return num / den

    def rename(self, perm: dict) -> "RatFunc":
        """Permute variables: perm maps variable index -> variable index."""
        ctx = self.ctx
        num = {_perm_mono(ctx, m, perm): c for m, c in self.num.items()}
        den = {}
        for k, e in self.den:
            a = {_perm_mono(ctx, m, perm): c for m, c in ctx.atom(k).items()}
            s, canon = ctx.canonical(a)
            kk = ctx.atom_id(canon)
            den[kk] = den.get(kk, 0) + e
            if s != 1:
                num = _pscale(num, 1 / s ** e)
        return RatFunc(ctx, num, tuple(sorted(den.items())))

    def reduced(self) -> "RatFunc":
        """Cancel denominator atoms that divide the numerator."""
        num = self.num
        den = dict(self.den)
        ctx = self.ctx
        for k in list(den):
            a = ctx.atom(k)
            while den[k]:
                q = _pdivexact(num, a)
                if q is None:
                    break
                num = q
                den[k] -= 1
        return RatFunc(ctx, num, tuple(sorted((k, e) for k, e in den.items() if e)))

    def numerator(self) -> MPoly:
        return MPoly(self.ctx, self.num)

    def denominator(self) -> MPoly:
        return MPoly(self.ctx, self.ctx.den_poly(self.den))

    def __str__(self):
        r = self.reduced()
        ctx = r.ctx
        num = r.num
        if not r.den:
            return _render_poly(ctx, num)
        # pull a rational constant out so denominators read cleanly
        ns = _render_poly(ctx, num)
        if len(num) > 1:
            ns = f"({ns})"
        dens = []
        atoms = sorted(r.den, key=lambda ke: _render_poly(ctx, ctx.atom(ke[0])))
        for k, e in atoms:
            a = ctx.atom(k)
            s = _render_poly(ctx, a)
            if len(a) > 1:
                s = f"({s})"
            dens.append(s if e == 1 else f"{s}^{e}")
        d = "*".join(dens)
        if len(dens) > 1:
            d = f"({d})"
        return f"{ns}/{d}"

    def __repr__(self):
        return f"RatFunc({self})"


def _pdiff(p: dict, idx: int) -> dict:
    shift = BITS * idx
    unit = 1 << shift
    out = {}
    for m, c in p.items():
        e = (m >> shift) & MASK
        if e:
            out[m - unit] = c * e
    return out


def _peval(ctx, p: dict, vals: dict):
    total = _ZERO
    for m, c in p.items():
        t = c
        i = 0
        while m:
            e = m & MASK
            if e:
                t = t * vals[i] ** e
            m >>= BITS
            i += 1
        total += t
    return total


def _psubst(ctx, p: dict, images, tctx) -> RatFunc:
    total = tctx.zero()
    for m, c in p.items():
        t = tctx.const(c)
        for i, e in enumerate(ctx.exps(m)):
            if e:
                if images[i] is None:
                    raise KeyError(f"variable {ctx.names[i]} has no image")
                t = t * images[i] ** e
        total = total + t
    return total


def _perm_mono(ctx, m: int, perm: dict) -> int:
    out = 0
    i = 0
    while m:
        e = m & MASK
        if e:
            out += e << (BITS * perm.get(i, i))
        m >>= BITS
        i += 1
    return out


def rsum(items, ctx: VarContext | None = None) -> RatFunc:
    """Sum many RatFuncs, grouping by denominator before taking lcms."""
    groups: dict = {}
    for r in items:
        if ctx is None:
            ctx = r.ctx
        if not r.num:
            continue
        g = groups.get(r.den)
        if g is None:
            groups[r.den] = dict(r.num)
        else:
            _padd_into(g, r.num)
    if ctx is None:
        raise ValueError("empty sum needs a context")
    out = ctx.zero()
    for den, num in groups.items():
        if num:
            out = out + RatFunc(ctx, num, den)
    return out


class RatAcc:
    """Mutable accumulator for sums of RatFuncs (grouped by denominator)."""

    __slots__ = ("ctx", "groups")

    def __init__(self, ctx):
        self.ctx = ctx
        self.groups: dict = {}

    def add(self, r: RatFunc, scale=None):
        if not r.num:
            return
        g = self.groups.get(r.den)
        if g is None:
            self.groups[r.den] = _pscale(r.num, scale) if scale is not None else dict(r.num)
        else:
            _padd_into(g, r.num, scale)

    def add_poly(self, num: dict, den: tuple):
        g = self.groups.get(den)
        if g is None:
            self.groups[den] = dict(num)
        else:
            _padd_into(g, num)

    def value(self) -> RatFunc:
        out = self.ctx.zero()
        for den, num in self.groups.items():
            if num:
                out = out + RatFunc(self.ctx, num, den)
        return out


# ---------------------------------------------------------------- parsing

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")


def parse(ctx: VarContext, text: str) -> RatFunc:
    """Parse the rendering syntax (+ - * / ^, parentheses, integers, names)."""
    toks = []
    for num, name, op in _TOKEN.findall(text):
        if num:
            toks.append(("n", int(num)))
        elif name:
            toks.append(("v", name))
        elif op.strip():
            toks.append(("o", op))
    pos = 0

    def peek():
        return toks[pos] if pos < len(toks) else ("e", None)

    def take(kind=None, val=None):
        nonlocal pos
        t = peek()
        if kind and (t[0] != kind or (val is not None and t[1] != val)):
            raise ValueError(f"parse error near token {t[1]!r} in {text!r}")
        pos += 1
        return t

    def expr():
        v = term()
        while peek() in (("o", "+"), ("o", "-")):
            op = take()[1]
            r = term()
            v = v + r if op == "+" else v - r
        return v

    def term():
        v = unary()
        while peek() in (("o", "*"), ("o", "/")):
            op = take()[1]
            r = unary()
            v = v * r if op == "*" else v / r
        return v

    def unary():
        if peek() == ("o", "-"):
            take()
            return -unary()
        if peek() == ("o", "+"):
            take()
            return unary()
        return power()

    def power():
        v = atom()
        if peek() == ("o", "^"):
            take()
            e = take("n")[1]
            v = v ** e
        return v

    def atom():
        t = take()
        if t[0] == "n":
            return ctx.const(t[1])
        if t[0] == "v":
            return ctx.var(t[1])
        if t == ("o", "("):
            v = expr()
            take("o", ")")
            return v
        raise ValueError(f"parse error near token {t[1]!r} in {text!r}")

    v = expr()
    if pos != len(toks):
        raise ValueError(f"trailing input in {text!r}")
    return v


# ---------------------------------------------------------------- contexts

@lru_cache(maxsize=None)
def standard_context(N: int, n: int = 0, m: tuple = ()) -> VarContext:
    """Variables g_p, mu_p, z_i, L<i>_<p>, kappa and t<p>_<a> for a given shape."""
    names = [f"g{p}" for p in range(1, N)]
    names += [f"mu{p}" for p in range(1, N)]
    names += [f"z{i}" for i in range(1, n + 1)]
    names += [f"L{i}_{p}" for i in range(1, n + 1) for p in range(1, N)]
    names += ["kappa"]
    for p, mp in enumerate(m, start=1):
        names += [f"t{p}_{a}" for a in range(1, mp + 1)]
    return VarContext(names)
