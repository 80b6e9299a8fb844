"""Type A root system: positive roots as index intervals, the linear order,
structure constants, matrix realization and the Casimir element."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache


@dataclass(frozen=True, order=False)
class Root:
    """Positive root alpha_start + ... + alpha_end (1-based simple indices)."""

    start: int
    end: int

    def __post_init__(self):
        if not (1 <= self.start <= self.end):
            raise ValueError(f"invalid root interval [{self.start}..{self.end}]")

    def contains(self, p: int) -> bool:
        return self.start <= p <= self.end

    def height(self) -> int:
        return self.end - self.start + 1

    def label(self) -> str:
        if self.start == self.end:
            return f"a{self.start}"
        return "+".join(f"a{k}" for k in range(self.start, self.end + 1))

    def short(self) -> str:
        return f"{self.start},{self.end}"

    def __repr__(self):
        return f"Root({self.start},{self.end})"


@dataclass(frozen=True)
class RootVec:
    """Root vector e_{sign*root}."""

    root: Root
    sign: int = 1

    def __repr__(self):
        return f"e[{'-' if self.sign < 0 else ''}{self.root.short()}]"


@dataclass(frozen=True)
class Cartan:
    """Simple coroot h_p."""

    p: int

    def __repr__(self):
        return f"h[{self.p}]"


@dataclass(frozen=True)
class Fundamental:
    """Dual Cartan element w_p (trace pairing (h_p, w_q) = delta_pq)."""

    p: int

    def __repr__(self):
        return f"w[{self.p}]"


def root_order_cmp(a: Root, b: Root) -> int:
    """+1 if a > b, -1 if a < b, 0 if equal.  a > b when a starts earlier,
    or starts at the same place and ends earlier."""
    if (a.start, a.end) == (b.start, b.end):
        return 0
    if a.start < b.start or (a.start == b.start and a.end < b.end):
        return 1
    return -1


def epsilon(a: Root, b: Root) -> int:
    c = root_order_cmp(a, b)
    if c == 0:
        raise ValueError("epsilon is undefined for equal roots")
    return c


def cartan_entry(p: int, q: int) -> int:
    if p == q:
        return 2
    if abs(p - q) == 1:
        return -1
    return 0


def root_value(root: Root, p: int) -> int:
    """alpha(h_p) computed from the Cartan matrix."""
    return sum(cartan_entry(p, q) for q in range(root.start, root.end + 1))


def inverse_cartan(N: int, p: int, q: int) -> Fraction:
    return Fraction(min(p, q) * (N - max(p, q)), N)


# signed roots are (sign, Root) pairs; helpers for interval arithmetic

def root_add(a: Root, b: Root) -> Root | None:
    """a + b if it is a positive root."""
    if a.end + 1 == b.start:
        return Root(a.start, b.end)
    if b.end + 1 == a.start:
        return Root(b.start, a.end)
    return None


def root_sub(a: Root, b: Root) -> tuple[int, Root] | None:
    """a - b as a signed root, or None if it is not a root (or zero)."""
    if a == b:
        return None
    if a.start == b.start:
        if a.end > b.end:
            return 1, Root(b.end + 1, a.end)
        return -1, Root(a.end + 1, b.end)
    if a.end == b.end:
        if a.start < b.start:
            return 1, Root(a.start, b.start - 1)
        return -1, Root(b.start, a.start - 1)
    return None


def _ab(x: RootVec) -> tuple[int, int]:
    r = x.root
    return (r.start, r.end + 1) if x.sign > 0 else (r.end + 1, r.start)


def _from_ab(a: int, b: int) -> RootVec:
    if a < b:
        return RootVec(Root(a, b - 1), 1)
    return RootVec(Root(b, a - 1), -1)


def bracket_basis(x, y) -> dict:
    """[x, y] for x, y among RootVec / Cartan, as {basis element: int}."""
    if isinstance(x, Cartan) and isinstance(y, Cartan):
        return {}
    if isinstance(x, Cartan):
        v = y.sign * root_value(y.root, x.p)
        return {y: v} if v else {}
    if isinstance(y, Cartan):
        return {k: -v for k, v in bracket_basis(y, x).items()}
    a, b = _ab(x)
    c, d = _ab(y)
    out: dict = {}
    if b == c and a == d:
        # E_aa - E_bb
        lo, hi, s = (a, b, 1) if a < b else (b, a, -1)
        for p in range(lo, hi):
            out[Cartan(p)] = s
        return out
    if b == c:
        out[_from_ab(a, d)] = out.get(_from_ab(a, d), 0) + 1
    if d == a:
        k = _from_ab(c, b)
        out[k] = out.get(k, 0) - 1
    return {k: v for k, v in out.items() if v}


@dataclass(frozen=True)
class RootSystem:
    N: int
    positive_roots: tuple = field(repr=False)
    ordinal: dict = field(repr=False, compare=False, hash=False)
    J: dict = field(repr=False, compare=False, hash=False)
    R: dict = field(repr=False, compare=False, hash=False)
    C: dict = field(repr=False, compare=False, hash=False)

    @property
    def rank(self) -> int:
        return self.N - 1

    def basis(self):
        """Chevalley basis: lowering, Cartan, raising."""
        out = [RootVec(r, -1) for r in self.positive_roots]
        out += [Cartan(p) for p in range(1, self.N)]
        out += [RootVec(r, 1) for r in self.positive_roots]
        return out


@lru_cache(maxsize=None)
def build_root_system(N: int) -> RootSystem:
    if not isinstance(N, int) or N < 2:
        raise ValueError("N must be an integer >= 2")
    roots = tuple(Root(i, j) for i in range(1, N) for j in range(i, N))
    ordinal = {r: k for k, r in enumerate(roots)}
    J = {p: tuple(r for r in roots if r.contains(p)) for p in range(1, N)}
    R = {p: tuple(r for r in roots if r.start == p) for p in range(1, N)}
    C = {p: tuple(r for r in roots if r.end == p) for p in range(1, N)}
    return RootSystem(N, roots, ordinal, J, R, C)


def _unit(N, a, b):
    m = [[Fraction(0)] * N for _ in range(N)]
    m[a - 1][b - 1] = Fraction(1)
    return m


def matrix_realization(g, N: int) -> list[list[Fraction]]:
    if isinstance(g, RootVec):
        if g.root.end > N - 1:
            raise ValueError("root out of range")
        a, b = _ab(g)
        return _unit(N, a, b)
    if isinstance(g, Cartan):
        m = _unit(N, g.p, g.p)
        m[g.p][g.p] = Fraction(-1)
        return m
    if isinstance(g, Fundamental):
        p = g.p
        m = [[Fraction(0)] * N for _ in range(N)]
        for a in range(N):
            m[a][a] = Fraction(N - p, N) if a < p else Fraction(-p, N)
        return m
    raise TypeError(f"not a basis element: {g!r}")


def fundamental_in_cartan(N: int, p: int) -> dict:
    """w_p as {Cartan(q): coefficient}."""
    return {Cartan(q): inverse_cartan(N, p, q) for q in range(1, N)}


def diagonal_unit_in_cartan(N: int, a: int) -> dict:
    """Traceless part of E_aa, i.e. w_a - w_{a-1}, in terms of h_q."""
    out = {}
    for q in range(1, N):
        c = (inverse_cartan(N, a, q) if a <= N - 1 else 0) - (inverse_cartan(N, a - 1, q) if a >= 2 else 0)
        if c:
            out[Cartan(q)] = Fraction(c)
    return out


def casimir_terms(N: int) -> list:
    """Omega as a list of (coefficient, left, right) basis pairs."""
    rs = build_root_system(N)
    out = []
    for r in rs.positive_roots:
        out.append((Fraction(1), RootVec(r, 1), RootVec(r, -1)))
        out.append((Fraction(1), RootVec(r, -1), RootVec(r, 1)))
    for p in range(1, N):
        for q in range(1, N):
            c = inverse_cartan(N, p, q)
            if c:
                out.append((c, Cartan(p), Cartan(q)))
    return out


def casimir(N: int, ctx=None):
    """Omega as an NCPoly on sites 1 and 2 of a two-site algebra."""
    from .ncalg import NCAlgebra
    alg = NCAlgebra(N, 2, ctx)
    return alg.casimir(1, 2)
