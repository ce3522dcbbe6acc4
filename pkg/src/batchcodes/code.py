"""Systematic linear codes compiled from bipartite graphs.

Codeword layout: positions ``0..n-1`` hold the message, position ``n + j``
holds parity ``j`` = sum of the message symbols adjacent to right node ``j``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Mapping, Sequence

from .bigraph import BiGraph
from .gf import Field


class CodeError(ValueError):
    pass


@dataclass(frozen=True)
class RepairGroup:
    target: int
    parity: int  # right-node index j; the bucket is n + j
    members: tuple[int, ...]
    n: int

    @property
    def parity_bucket(self) -> int:
        return self.n + self.parity

    @property
    def buckets(self) -> frozenset[int]:
        return frozenset((self.parity_bucket, *self.members))


class SystematicCode:
    """All-ones ``[n, N]`` code over a prime field with graph ``graph``."""

    convention = "all-ones"

    def __init__(self, graph: BiGraph, field: Field | None = None):
        field = field or Field(2)
        if field.extension:
            raise CodeError("codes are defined over prime fields only")
        self.graph = graph
        self.field = field

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def n(self) -> int:
        return self.graph.n1

    @property
    def N(self) -> int:
        return self.graph.n1 + self.graph.n2

    @property
    def rate(self) -> Fraction:
        return Fraction(self.n, self.N) if self.N else Fraction(1)

    @cached_property
    def _columns(self) -> tuple[dict[int, int], ...]:
        cols: list[dict[int, int]] = [{i: 1} for i in range(self.n)]
        cols.extend({i: 1 for i in nbrs} for nbrs in self.graph.radj)
        return tuple(cols)

    def generator_columns(self) -> tuple[dict[int, int], ...]:
        """Sparse columns of ``[I | E]``: column ``c`` maps message index to coefficient."""
        return self._columns

    def generator_matrix(self) -> list[list[int]]:
        G = [[0] * self.N for _ in range(self.n)]
        for c, col in enumerate(self.generator_columns()):
            for i, v in col.items():
                G[i][c] = v % self.p
        return G

    def encode(self, x: Sequence[int]) -> list[int]:
        if len(x) != self.n:
            raise CodeError(f"message length {len(x)} != n = {self.n}")
        p = self.p
        xs = [int(v) % p for v in x]
        return xs + [sum(xs[i] for i in nbrs) % p for nbrs in self.graph.radj]

    def repair_groups(self, i: int) -> list[RepairGroup]:
        if not 0 <= i < self.n:
            raise CodeError(f"message index {i} out of range [0, {self.n})")
        return [
            RepairGroup(i, j, tuple(v for v in self.graph.radj[j] if v != i), self.n)
            for j in self.graph.adj[i]
        ]

    def reconstruct(self, group: RepairGroup, reads: Mapping[int, int]) -> int:
        """``c_j`` minus the other members of parity ``j``.

        ``reads`` maps bucket index to the value read there and must cover
        exactly the group's buckets.
        """
        missing = group.buckets - set(reads)
        if missing:
            raise CodeError(f"missing reads for buckets {sorted(missing)}")
        extra = set(reads) - group.buckets
        if extra:
            raise CodeError(f"reads outside the repair group: {sorted(extra)}")
        return (reads[group.parity_bucket] - sum(reads[m] for m in group.members)) % self.p

    def to_dict(self) -> dict:
        d = self.graph.to_dict()
        d["field_p"] = self.p
        d["convention"] = self.convention
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "SystematicCode":
        if d.get("convention", "all-ones") != "all-ones":
            raise CodeError(f"unsupported coefficient convention {d['convention']!r}")
        graph = BiGraph.from_dict({k: d[k] for k in ("n1", "n2", "adj")})
        return cls(graph, Field(int(d.get("field_p", 2))))

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str) -> "SystematicCode":
        return cls.from_dict(json.loads(text))

    def __repr__(self):
        return f"SystematicCode(n={self.n}, N={self.N}, GF({self.p}))"


def code_from_graph(g: BiGraph, field: Field | None = None) -> SystematicCode:
    return SystematicCode(g, field)


def disjoint_group_violations(code: SystematicCode) -> list[tuple[int, int, int]]:
    """``(i, j1, j2)`` for every pair of intersecting repair groups of one symbol."""
    bad = []
    for i in range(code.n):
        groups = code.repair_groups(i)
        for a in range(len(groups)):
            for b in range(a + 1, len(groups)):
                if groups[a].buckets & groups[b].buckets:
                    bad.append((i, groups[a].parity, groups[b].parity))
    return bad


def blocking_violations(code: SystematicCode) -> list[tuple[int, int, int]]:
    """``(i, parity, j)`` where a repair group of ``x_i`` meets two or more groups of ``x_j``.

    Uses a bucket -> groups index, so only symbol pairs whose groups can
    meet at all are compared; every other pair meets zero groups.
    """
    n = code.n
    owners: dict[int, list[tuple[int, int]]] = {}
    for j in range(n):
        for grp in code.repair_groups(j):
            for bkt in grp.buckets:
                owners.setdefault(bkt, []).append((j, grp.parity))
    bad = []
    for i in range(n):
        for grp in code.repair_groups(i):
            hit: dict[int, set[int]] = {}
            for bkt in grp.buckets:
                for j, par in owners.get(bkt, ()):
                    if j != i:
                        hit.setdefault(j, set()).add(par)
            for j, pars in sorted(hit.items()):
                if len(pars) > 1:
                    bad.append((i, grp.parity, j))
    return bad
