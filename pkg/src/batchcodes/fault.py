"""MDS parities on top of a batch code, erasure recovery and exact distance."""
from __future__ import annotations

import itertools
import json
from fractions import Fraction
from typing import Optional, Sequence

from sympy import isprime, nextprime

from .code import SystematicCode
from .gf import Field
from .scheduler import BudgetExceededError
from .storage import BucketStore

EXACT_DISTANCE_MAX_N = 24


class FaultError(ValueError):
    pass


class RankDeficientError(FaultError):
    """Surviving symbols do not determine the message."""


# -- dense linear algebra mod a prime -------------------------------------------

def _inv(a: int, p: int) -> int:
    return pow(a, p - 2, p)


def rank_mod(vectors: Sequence[Sequence[int]], p: int, stop_at: int | None = None) -> int:
    """Rank of a list of vectors over GF(p); stops early at ``stop_at``."""
    basis: dict[int, list[int]] = {}  # pivot position -> reduced row
    for v in vectors:
        row = [c % p for c in v]
        for piv, b in basis.items():
            c = row[piv]
            if c:
                row = [(x - c * y) % p for x, y in zip(row, b)]
        piv = next((i for i, c in enumerate(row) if c), None)
        if piv is None:
            continue
        inv = _inv(row[piv], p)
        row = [x * inv % p for x in row]
        for q, b in basis.items():
            c = b[piv]
            if c:
                basis[q] = [(x - c * y) % p for x, y in zip(b, row)]
        basis[piv] = row
        if stop_at is not None and len(basis) >= stop_at:
            break
    return len(basis)


def solve_mod(A: Sequence[Sequence[int]], y: Sequence[int], p: int) -> list[int]:
    """Unique ``x`` with ``A x = y`` over GF(p); ``A`` has full column rank."""
    ncols = len(A[0]) if A else 0
    M = [[a % p for a in row] + [yi % p] for row, yi in zip(A, y)]
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(M)) if M[i][c]), None)
        if pr is None:
            raise RankDeficientError(f"column {c} has no pivot")
        M[r], M[pr] = M[pr], M[r]
        inv = _inv(M[r][c], p)
        M[r] = [v * inv % p for v in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [(a - f * b) % p for a, b in zip(M[i], M[r])]
        r += 1
    for i in range(r, len(M)):
        if M[i][-1]:
            raise FaultError("inconsistent surviving symbols")
    return [M[i][-1] for i in range(ncols)]


def _invert(A: list[list[int]], p: int) -> list[list[int]]:
    n = len(A)
    M = [[a % p for a in row] + [int(i == j) for j in range(n)] for i, row in enumerate(A)]
    for c in range(n):
        pr = next((i for i in range(c, n) if M[i][c]), None)
        if pr is None:
            raise FaultError("singular matrix")
        M[c], M[pr] = M[pr], M[c]
        inv = _inv(M[c][c], p)
        M[c] = [v * inv % p for v in M[c]]
        for i in range(n):
            if i != c and M[i][c]:
                f = M[i][c]
                M[i] = [(a - f * b) % p for a, b in zip(M[i], M[c])]
    return [row[n:] for row in M]


# -- codes ------------------------------------------------------------------------

class LinearCode:
    """Systematic code given by a dense ``n x N`` generator over GF(prime)."""

    def __init__(self, G: list[list[int]], prime: int):
        self.G = G
        self.prime = prime

    @property
    def n(self) -> int:
        return len(self.G)

    @property
    def N(self) -> int:
        return len(self.G[0]) if self.G else 0

    @property
    def rate(self) -> Fraction:
        return Fraction(self.n, self.N)

    def generator_matrix(self) -> list[list[int]]:
        return self.G

    def columns(self) -> list[list[int]]:
        return [[self.G[i][c] for i in range(self.n)] for c in range(self.N)]

    def encode(self, x: Sequence[int]) -> list[int]:
        if len(x) != self.n:
            raise FaultError(f"message length {len(x)} != n = {self.n}")
        p = self.prime
        return [sum(xi * self.G[i][c] for i, xi in enumerate(x)) % p for c in range(self.N)]


class MdsCode(LinearCode):
    """Systematic Reed-Solomon code ``[I | V]`` with ``parities`` check symbols."""

    def __init__(self, n: int, parities: int, prime: int, V: list[list[int]]):
        self.parities = parities
        self.V = V
        G = [[int(i == j) for j in range(n)] + list(V[i]) for i in range(n)]
        super().__init__(G, prime)

    @property
    def distance(self) -> int:
        return self.parities + 1


def rs_systematic(n: int, parities: int, prime: int) -> MdsCode:
    """Systematize an ``n x (n+parities)`` Vandermonde matrix on points ``0..n+parities-1``."""
    if n < 1 or parities < 0:
        raise FaultError("need n >= 1 and parities >= 0")
    if not isprime(prime):
        raise FaultError(f"{prime} is not prime")
    NG = n + parities
    if prime <= NG:
        raise FaultError(f"field size {prime} must exceed n + parities = {NG}")
    vand = [[pow(a, i, prime) for a in range(NG)] for i in range(n)]
    Ainv = _invert([row[:n] for row in vand], prime)
    V = [[sum(Ainv[i][t] * vand[t][n + c] for t in range(n)) % prime for c in range(parities)]
         for i in range(n)]
    return MdsCode(n, parities, prime, V)


class ComposedCode(LinearCode):
    """Codeword ``(x, batch parities, MDS parities)`` over the MDS field."""

    def __init__(self, batch: SystematicCode, mds: MdsCode):
        if batch.n != mds.n:
            raise FaultError(f"message lengths differ: batch n={batch.n}, MDS n={mds.n}")
        self.batch = SystematicCode(batch.graph, Field(mds.prime))
        self.mds = mds
        G = [row + list(mds.V[i]) for i, row in enumerate(self.batch.generator_matrix())]
        super().__init__(G, mds.prime)

    @property
    def batch_length(self) -> int:
        return self.batch.N

    def puncture_batch(self, word: Sequence[int]) -> list[int]:
        return list(word[: self.batch.N])

    def puncture_mds(self, word: Sequence[int]) -> list[int]:
        return list(word[: self.n]) + list(word[self.batch.N:])

    def to_dict(self) -> dict:
        return {"batch": self.batch.to_dict(), "mds_parities": self.mds.parities,
                "field_p": self.prime, "mds_V": self.mds.V}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_dict(cls, d: dict) -> "ComposedCode":
        batch = SystematicCode.from_dict(d["batch"])
        mds = MdsCode(batch.n, int(d["mds_parities"]), int(d["field_p"]), d["mds_V"])
        return cls(batch, mds)


def compose(base: SystematicCode | BucketStore, mds: MdsCode) -> ComposedCode:
    code = base.code if isinstance(base, BucketStore) else base
    return ComposedCode(code, mds)


def default_prime(length: int) -> int:
    """Smallest prime exceeding ``length``."""
    return nextprime(length)


def erasure_recover(code: LinearCode, word: Sequence[Optional[int]]) -> list[int]:
    """Message from a codeword with erasures marked ``None``."""
    if len(word) != code.N:
        raise FaultError(f"word length {len(word)} != N = {code.N}")
    alive = [c for c, v in enumerate(word) if v is not None]
    cols = code.columns()
    if rank_mod([cols[c] for c in alive], code.prime, stop_at=code.n) < code.n:
        raise RankDeficientError(f"{len(alive)} surviving symbols do not span the message space")
    return solve_mod([cols[c] for c in alive], [word[c] for c in alive], code.prime)


def min_distance(code: LinearCode | SystematicCode, budget: int = 2_000_000,
                 max_length: int = EXACT_DISTANCE_MAX_N) -> int:
    """Exact minimum distance: the size of the smallest unrecoverable erasure set.

    Erasure sets are tried by increasing size; the first set whose complement
    has rank below ``n`` is the support of a minimum-weight codeword.
    """
    if isinstance(code, SystematicCode):
        G = code.generator_matrix()
        code = LinearCode(G, code.p)
    n, N, p = code.n, code.N, code.prime
    if N > max_length:
        raise BudgetExceededError(f"N = {N} exceeds the exact-distance limit {max_length}")
    cols = code.columns()
    checks = 0
    for e in range(1, N - n + 2):
        for erased in itertools.combinations(range(N), e):
            checks += 1
            if checks > budget:
                raise BudgetExceededError(f"distance search exceeded {budget} rank checks")
            gone = set(erased)
            if rank_mod([cols[c] for c in range(N) if c not in gone], p, stop_at=n) < n:
                return e
    raise AssertionError("Singleton bound violated")  # unreachable for n >= 1
