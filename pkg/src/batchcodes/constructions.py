"""Explicit bipartite graphs of girth at least 8.

All generators are deterministic: node indices follow mixed-radix or
lexicographic enumeration of the underlying labels.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from sympy import isprime

from .bigraph import BiGraph, degree_profile, has_four_cycle, has_six_cycle
from .gf import Field, FieldElement, frobenius


class ConstructionError(ValueError):
    pass


def _mixed_radix(digits: Sequence[int], base: int) -> int:
    x = 0
    for d in digits:
        x = x * base + d
    return x


def _int_power(q: int, e: Fraction) -> int:
    """``q**e`` when it is an integer, else raise."""
    e = Fraction(e)
    if e <= 0:
        raise ConstructionError(f"exponent must be positive, got {e}")
    num = q ** e.numerator
    root = round(num ** (1.0 / e.denominator))
    for cand in (root - 1, root, root + 1):
        if cand > 0 and cand ** e.denominator == num:
            return cand
    raise ConstructionError(f"{q}^{e} is not an integer")


# -- zig-zag -----------------------------------------------------------------

@dataclass(frozen=True)
class ZigZagParams:
    k: int
    r: int

    def __post_init__(self):
        if not isprime(self.k):
            raise ConstructionError(f"zig-zag alphabet k must be prime, got {self.k}")
        if self.r < 1:
            raise ConstructionError(f"r must be >= 1, got {self.r}")

    @property
    def n1(self) -> int:
        return self.r * self.k ** self.r

    @property
    def n2(self) -> int:
        return self.k ** (self.r + 1)


def zigzag_left_index(k: int, r: int, l0: int, ls: Sequence[int]) -> int:
    """Index of left node ``(l0, l_1..l_r)``; ``l0`` is 1-based in ``[1, r]``."""
    return (l0 - 1) * k ** r + _mixed_radix(ls, k)


def zigzag_right_index(k: int, vs: Sequence[int]) -> int:
    """Index of right node ``(v_0, v_1..v_r)``."""
    return _mixed_radix(vs, k)


def zigzag(k: int, r: int) -> BiGraph:
    """Zig-zag graph: ``l -- v`` iff ``(l_1..l_r) + v_0 e_{l_0} == (v_1..v_r) mod k``."""
    params = ZigZagParams(k, r)
    adj = []
    for l0 in range(1, r + 1):
        for ls in itertools.product(range(k), repeat=r):
            row = []
            for v0 in range(k):
                vs = list(ls)
                vs[l0 - 1] = (vs[l0 - 1] + v0) % k
                row.append(zigzag_right_index(k, [v0, *vs]))
            adj.append(sorted(row))
    return BiGraph(params.n1, params.n2, adj)


# -- Lazebnik-Ustimenko-Woldar ------------------------------------------------

@dataclass(frozen=True)
class LazebnikParams:
    q: int
    s: Fraction = Fraction(1)
    t: Fraction = Fraction(1)

    def __post_init__(self):
        if not isprime(self.q) or self.q == 2:
            raise ConstructionError(f"q must be an odd prime, got {self.q}")
        s, t = Fraction(self.s), Fraction(self.t)
        if not (0 < s <= 1):
            raise ConstructionError(f"s must lie in (0, 1], got {s}")
        if not (0 < t <= 2):
            raise ConstructionError(f"t must lie in (0, 2], got {t}")
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "t", t)
        # validates integrality
        self.size_s, self.size_t

    @property
    def size_s(self) -> int:
        return _int_power(self.q, self.s)

    @property
    def size_t(self) -> int:
        return _int_power(self.q, self.t)


def lazebnik(q: int, s=1, t=1) -> BiGraph:
    """The graph ``B_{s,t}(q)``.

    Left nodes ``(l1, l2, l3)`` with ``l1`` in T (first ``q^t`` elements of
    GF(q^2)), ``l2`` in GF(q^2), ``l3`` in GF(q); right nodes ``(v1, v2, v3)``
    with ``v1`` in S (first ``q^s`` elements of GF(q)). Adjacent iff
    ``l2 - v2 = l1 v1`` and ``l3 - v3 = f(l1) v2 + l1 f(v2)``.
    """
    params = LazebnikParams(q, Fraction(s), Fraction(t))
    big = Field(q, extension=True)
    ext = list(big.elements())
    T = ext[: params.size_t]
    S = [big(a) for a in range(params.size_s)]
    q2 = q * q
    n1 = params.size_t * q2 * q
    n2 = params.size_s * q2 * q
    adj = []
    for it, l1 in enumerate(T):
        fl1 = frobenius(l1)
        for l2 in ext:
            for l3 in range(q):
                row = []
                for iv1, v1 in enumerate(S):
                    v2 = l2 - l1 * v1
                    cross = fl1 * v2 + l1 * frobenius(v2)
                    if not cross.in_base_field():
                        raise AssertionError("cross term left the base field")
                    v3 = (l3 - cross.a) % q
                    row.append((iv1 * q2 + big.index(v2)) * q + v3)
                adj.append(sorted(row))
    return BiGraph(n1, n2, adj)


def lazebnik_cross_term(l1: FieldElement, v2: FieldElement) -> FieldElement:
    """``f(l1) v2 + l1 f(v2)``; always Frobenius-fixed."""
    return frobenius(l1) * v2 + l1 * frobenius(v2)


# -- generalized quadrangles --------------------------------------------------

GQ_FAMILIES = ("W", "Q5")


@dataclass(frozen=True)
class GQParams:
    family: str
    q: int

    def __post_init__(self):
        if self.family not in GQ_FAMILIES:
            raise ConstructionError(f"unknown GQ family {self.family!r}")
        if not isprime(self.q):
            raise ConstructionError(f"q must be prime, got {self.q}")
        if self.q > 5:
            raise ConstructionError(f"q={self.q} exceeds the desk-scale limit of 5")

    @property
    def order(self) -> tuple[int, int]:
        return (self.q, self.q) if self.family == "W" else (self.q, self.q * self.q)


@dataclass(frozen=True)
class GeneralizedQuadrangle:
    points: tuple[tuple[int, ...], ...]
    lines: tuple[tuple[int, ...], ...]
    order: tuple[int, int]

    def incidence_graph(self) -> BiGraph:
        """Lines on the left, points on the right."""
        return BiGraph(len(self.lines), len(self.points), self.lines)

    def check_axioms(self) -> list[str]:
        """Exhaustively test the three GQ axioms; returns the violations."""
        s, t = self.order
        problems = []
        on_point: list[set[int]] = [set() for _ in self.points]
        line_sets = [set(L) for L in self.lines]
        for li, L in enumerate(self.lines):
            if len(L) != s + 1:
                problems.append(f"line {li} has {len(L)} points, expected {s + 1}")
            for x in L:
                on_point[x].add(li)
        for x, ls in enumerate(on_point):
            if len(ls) != t + 1:
                problems.append(f"point {x} is on {len(ls)} lines, expected {t + 1}")
        for x, y in itertools.combinations(range(len(self.points)), 2):
            if len(on_point[x] & on_point[y]) > 1:
                problems.append(f"points {x},{y} share more than one line")
        for a, b in itertools.combinations(range(len(self.lines)), 2):
            if len(line_sets[a] & line_sets[b]) > 1:
                problems.append(f"lines {a},{b} share more than one point")
        for x in range(len(self.points)):
            for li, L in enumerate(self.lines):
                if x in line_sets[li]:
                    continue
                connectors = [(y, M) for y in L for M in on_point[x] if y in line_sets[M]]
                if len(connectors) != 1:
                    problems.append(f"point {x}, line {li}: {len(connectors)} connecting pairs")
        return problems


def _projective_points(q: int, dim: int) -> list[tuple[int, ...]]:
    """Points of PG(dim-1, q) as vectors whose first nonzero entry is 1."""
    pts = []
    for v in itertools.product(range(q), repeat=dim):
        nz = next((c for c in v if c), 0)
        if nz == 1:
            pts.append(v)
    return pts


def _normalize(v: Sequence[int], q: int) -> tuple[int, ...]:
    nz = next(c for c in v if c)
    inv = pow(nz, q - 2, q)
    return tuple(c * inv % q for c in v)


def _lines_from_pairs(points, q, collinear_ok) -> tuple[tuple[int, ...], ...]:
    index = {p: i for i, p in enumerate(points)}
    seen = set()
    for i, j in itertools.combinations(range(len(points)), 2):
        x, y = points[i], points[j]
        if not collinear_ok(x, y):
            continue
        span = {i}
        for c in range(q):
            span.add(index[_normalize([(yc + c * xc) % q for xc, yc in zip(x, y)], q)])
        seen.add(tuple(sorted(span)))
    return tuple(sorted(seen))


def _irreducible_binary_form(q: int) -> int:
    """Least ``c`` with ``x^2 + xy + c y^2`` irreducible over GF(q)."""
    for c in range(q):
        if all((u * u + u + c) % q for u in range(q)):
            return c
    raise ConstructionError(f"no irreducible binary quadratic form over GF({q})")


def symplectic_gq(q: int) -> GeneralizedQuadrangle:
    """W(q): PG(3,q) with the totally isotropic lines of ``x0y1-x1y0+x2y3-x3y2``."""
    pts = _projective_points(q, 4)

    def isotropic(x, y):
        return (x[0] * y[1] - x[1] * y[0] + x[2] * y[3] - x[3] * y[2]) % q == 0

    return GeneralizedQuadrangle(tuple(pts), _lines_from_pairs(pts, q, isotropic), (q, q))


def elliptic_gq(q: int) -> GeneralizedQuadrangle:
    """Q-(5,q): the quadric ``x0x1 + x2x3 + (x4^2 + x4x5 + c x5^2)`` in PG(5,q)."""
    c = _irreducible_binary_form(q)

    def Q(v):
        return (v[0] * v[1] + v[2] * v[3] + v[4] * v[4] + v[4] * v[5] + c * v[5] * v[5]) % q

    pts = [v for v in _projective_points(q, 6) if Q(v) == 0]

    def singular(x, y):
        s = tuple((a + b) % q for a, b in zip(x, y))
        return (Q(s) - Q(x) - Q(y)) % q == 0

    return GeneralizedQuadrangle(tuple(pts), _lines_from_pairs(pts, q, singular), (q, q * q))


def build_gq(family: str, q: int) -> GeneralizedQuadrangle:
    params = GQParams(family, q)
    return symplectic_gq(q) if params.family == "W" else elliptic_gq(q)


def gq_incidence(family: str, q: int) -> BiGraph:
    return build_gq(family, q).incidence_graph()


# -- left-copy splitting ------------------------------------------------------

@dataclass(frozen=True)
class SplitParams:
    b: int

    def __post_init__(self):
        if self.b < 1:
            raise ConstructionError(f"b must be >= 1, got {self.b}")


def split_left(g: BiGraph, b: int) -> BiGraph:
    """Replace each left node by ``b`` copies that partition its neighbors.

    Copy ``u`` of node ``i`` becomes node ``u*n1 + i`` and keeps the ``u``-th
    contiguous block of ``D/b`` entries of the ascending adjacency list.
    """
    SplitParams(b)
    prof = degree_profile(g)
    if not prof.left_uniform:
        raise ConstructionError("split_left needs a uniform left degree")
    D = prof.min_left
    if D % b:
        raise ConstructionError(f"b={b} does not divide the left degree {D}")
    w4 = has_four_cycle(g)
    if w4 is not None:
        raise ConstructionError(f"input graph has a 4-cycle: {w4}")
    w6 = has_six_cycle(g)
    if w6 is not None:
        raise ConstructionError(f"input graph has a 6-cycle: {w6}")
    step = D // b
    adj = [g.adj[i][u * step:(u + 1) * step] for u in range(b) for i in range(g.n1)]
    return BiGraph(b * g.n1, g.n2, adj)


# -- replication baseline -----------------------------------------------------

@dataclass(frozen=True)
class ReplicationLayout:
    """``k`` servers each holding all ``n`` symbols."""
    n: int
    k: int

    def __post_init__(self):
        if self.n < 1 or self.k < 1:
            raise ConstructionError("replication needs n, k >= 1")

    @property
    def m(self) -> int:
        return self.k

    @property
    def rate(self) -> Fraction:
        return Fraction(1, self.k)

    def to_dict(self) -> dict:
        return {"scheme": "replication", "n": self.n, "k": self.k, "m": self.m,
                "rate": str(self.rate)}


def replication(n: int, k: int) -> ReplicationLayout:
    return ReplicationLayout(n, k)


def build_family(family: str, **kw) -> BiGraph:
    """Dispatch by CLI family name."""
    if family == "zigzag":
        return zigzag(kw["k"], kw["r"])
    if family == "lazebnik":
        return lazebnik(kw["q"], Fraction(kw.get("s", 1)), Fraction(kw.get("t", 1)))
    if family == "gq-w":
        return gq_incidence("W", kw["q"])
    if family == "gq-q5":
        return gq_incidence("Q5", kw["q"])
    if family == "split":
        return split_left(gq_incidence("W", kw["q"]), kw["b"])
    raise ConstructionError(f"unknown family {family!r}")
