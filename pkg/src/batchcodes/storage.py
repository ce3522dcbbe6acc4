"""Gadget-stacked storage: ``g`` codewords laid out across ``m = N`` buckets."""
from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from typing import Sequence

from .code import SystematicCode
from .scheduler import Assignment, InfeasibleScheduleError, RequestPattern, schedule
from .bigraph import degree_profile


class StorageError(ValueError):
    pass


@dataclass(frozen=True)
class Read:
    request: int  # position in the request list
    bucket: int
    row: int


@dataclass(frozen=True)
class ServeResult:
    values: tuple[int, ...]
    trace: tuple[Read, ...]
    assignment: Assignment

    def bucket_reads(self) -> Counter:
        return Counter(r.bucket for r in self.trace)

    @property
    def max_bucket_reads(self) -> int:
        return max(self.bucket_reads().values(), default=0)


class BucketStore:
    """Bucket ``j`` holds ``(C(x^1)_j, ..., C(x^g)_j)``."""

    def __init__(self, code: SystematicCode, g: int, buckets: Sequence[Sequence[int]]):
        if g < 1:
            raise StorageError("stacking factor g must be >= 1")
        if len(buckets) != code.N or any(len(b) != g for b in buckets):
            raise StorageError(f"expected {code.N} buckets of {g} symbols")
        self.code = code
        self.g = g
        self.buckets = tuple(tuple(b) for b in buckets)

    @property
    def m(self) -> int:
        return len(self.buckets)

    @property
    def n_total(self) -> int:
        return self.g * self.code.n

    @property
    def supported_k(self) -> int:
        return degree_profile(self.code.graph).min_left

    def to_dict(self) -> dict:
        return {"code": self.code.to_dict(), "g": self.g, "buckets": [list(b) for b in self.buckets]}

    @classmethod
    def from_dict(cls, d: dict) -> "BucketStore":
        return cls(SystematicCode.from_dict(d["code"]), int(d["g"]), d["buckets"])

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str) -> "BucketStore":
        return cls.from_dict(json.loads(text))


def store(code: SystematicCode, g: int, x: Sequence[int]) -> BucketStore:
    n = code.n
    if len(x) != g * n:
        raise StorageError(f"message length {len(x)} != g*n = {g * n}")
    words = [code.encode(x[r * n:(r + 1) * n]) for r in range(g)]
    return BucketStore(code, g, [[w[j] for w in words] for j in range(code.N)])


def serve(st: BucketStore, requests: Sequence[int], k: int | None = None) -> ServeResult:
    """Serve global indices ``requests`` in one batch.

    Request ``idx`` is row ``idx // n``, base symbol ``idx % n``. The folded
    pattern is scheduled once; plans for base symbol ``j`` are handed to the
    requests for ``j`` in request order, and each reads its own row.
    """
    code = st.code
    n = code.n
    k = st.supported_k if k is None else k
    if len(requests) > k:
        raise StorageError(f"{len(requests)} requests exceed supported k = {k}")
    for idx in requests:
        if not 0 <= idx < st.n_total:
            raise StorageError(f"request {idx} out of range [0, {st.n_total})")
    pattern = RequestPattern(idx % n for idx in requests)
    assignment = schedule(code, pattern)
    pending: dict[int, list] = {}
    for plan in assignment.plans:
        pending.setdefault(plan.target, []).append(plan)
    p = code.p
    values = []
    trace = []
    for pos, idx in enumerate(requests):
        row, j = divmod(idx, n)
        plan = pending[j].pop(0)
        got = {}
        for b in plan.buckets:
            got[b] = st.buckets[b][row]
            trace.append(Read(pos, b, row))
        if plan.parity is None:
            values.append(got[plan.buckets[0]])
        else:
            values.append((got[plan.parity] - sum(v for b, v in got.items() if b != plan.parity)) % p)
    return ServeResult(tuple(values), tuple(trace), assignment)


__all__ = ["BucketStore", "ServeResult", "Read", "StorageError", "store", "serve",
           "InfeasibleScheduleError"]
