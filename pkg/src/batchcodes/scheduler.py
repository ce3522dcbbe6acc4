"""Assigning k read requests to disjoint bucket sets.

:func:`schedule` is the deterministic greedy assignment; :func:`oracle_feasible`
is an exhaustive backtracking search used to cross-check it.
"""
from __future__ import annotations

import json
import random
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional

from .code import RepairGroup, SystematicCode


class InfeasibleScheduleError(RuntimeError):
    """No unblocked repair group was left; the code violates the preconditions."""


class BudgetExceededError(RuntimeError):
    pass


class RequestPattern:
    """Multiset of read requests as ``{message index: count}``."""

    def __init__(self, counts: Mapping[int, int] | Iterable[int]):
        if isinstance(counts, Mapping):
            items = {int(j): int(c) for j, c in counts.items()}
        else:
            items = dict(Counter(int(j) for j in counts))
        if any(c < 0 for c in items.values()):
            raise ValueError("request counts must be non-negative")
        self.counts: dict[int, int] = {j: c for j, c in sorted(items.items()) if c > 0}

    @classmethod
    def parse(cls, text: str) -> "RequestPattern":
        """Parse ``"0:2,5:1"``; a bare index counts once."""
        counts: Counter[int] = Counter()
        for tok in filter(None, (t.strip() for t in text.split(","))):
            if ":" in tok:
                j, c = tok.split(":", 1)
                counts[int(j)] += int(c)
            else:
                counts[int(tok)] += 1
        return cls(counts)

    @property
    def k(self) -> int:
        return sum(self.counts.values())

    def expanded(self) -> list[int]:
        return [j for j, c in self.counts.items() for _ in range(c)]

    def validate(self, n: int):
        for j in self.counts:
            if not 0 <= j < n:
                raise ValueError(f"request index {j} out of range [0, {n})")

    def __eq__(self, other):
        return isinstance(other, RequestPattern) and self.counts == other.counts

    def __repr__(self):
        return f"RequestPattern({self.counts})"


@dataclass(frozen=True)
class Plan:
    """Serve ``target`` from ``buckets``; ``parity`` is the parity bucket, ``None`` for a direct read."""
    target: int
    buckets: tuple[int, ...]
    parity: Optional[int] = None

    def to_dict(self) -> dict:
        return {"target": self.target, "buckets": list(self.buckets), "parity": self.parity}


@dataclass(frozen=True)
class Assignment:
    plans: tuple[Plan, ...]

    def to_dict(self) -> dict:
        return {"plans": [p.to_dict() for p in self.plans]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_dict(cls, d: dict) -> "Assignment":
        return cls(tuple(Plan(int(p["target"]), tuple(p["buckets"]), p.get("parity"))
                         for p in d["plans"]))


def _direct(i: int) -> Plan:
    return Plan(i, (i,), None)


def _repair(grp: RepairGroup) -> Plan:
    return Plan(grp.target, tuple(sorted(grp.buckets)), grp.parity_bucket)


def schedule(code: SystematicCode, req: RequestPattern) -> Assignment:
    """Greedy assignment in ascending message order.

    For each requested ``x_j``: one request goes to bucket ``j`` if no
    earlier symbol used it, the rest to repair groups of ``x_j`` (ascending
    parity index) avoiding every bucket already taken.
    """
    req.validate(code.n)
    used: set[int] = set()
    plans: list[Plan] = []
    for j, kj in req.counts.items():
        lam = 0
        if j not in used:
            plans.append(_direct(j))
            used.add(j)
            lam = 1
        need = kj - lam
        if need == 0:
            continue
        for grp in code.repair_groups(j):
            b = grp.buckets
            if used.isdisjoint(b):
                plans.append(_repair(grp))
                used |= b
                need -= 1
                if need == 0:
                    break
        if need:
            raise InfeasibleScheduleError(
                f"x_{j}: {need} of {kj} requests left with no unblocked repair group")
    return Assignment(tuple(plans))


def oracle_feasible(code: SystematicCode, req: RequestPattern,
                    budget: int = 1_000_000) -> Optional[Assignment]:
    """Exact search for a bucket-disjoint assignment; ``None`` if none exists.

    Every request may use its direct bucket or any of its repair groups.
    Identical requests take strictly increasing option indices.
    """
    req.validate(code.n)
    targets = req.expanded()
    options = {j: [_direct(j)] + [_repair(g) for g in code.repair_groups(j)] for j in req.counts}
    chosen: list[Plan] = []
    used: set[int] = set()
    nodes = 0

    def search(pos: int, floor: int) -> bool:
        nonlocal nodes
        if pos == len(targets):
            return True
        j = targets[pos]
        opts = options[j]
        for idx in range(floor, len(opts)):
            nodes += 1
            if nodes > budget:
                raise BudgetExceededError(f"oracle exceeded {budget} nodes")
            plan = opts[idx]
            if used.isdisjoint(plan.buckets):
                used.update(plan.buckets)
                chosen.append(plan)
                nxt = idx + 1 if pos + 1 < len(targets) and targets[pos + 1] == j else 0
                if search(pos + 1, nxt):
                    return True
                chosen.pop()
                used.difference_update(plan.buckets)
        return False

    if search(0, 0):
        return Assignment(tuple(chosen))
    return None


def _recipe_value(code: SystematicCode, plan: Plan, word: list[int]) -> int:
    if plan.parity is None:
        return word[plan.buckets[0]]
    members = [b for b in plan.buckets if b != plan.parity]
    return (word[plan.parity] - sum(word[b] for b in members)) % code.p


def _recipe_shape_ok(code: SystematicCode, plan: Plan) -> bool:
    n = code.n
    if plan.parity is None:
        return len(plan.buckets) == 1 and 0 <= plan.buckets[0] < code.N
    if plan.parity not in plan.buckets or not n <= plan.parity < code.N:
        return False
    return all(0 <= b < n for b in plan.buckets if b != plan.parity)


def verify_assignment(code: SystematicCode, req: RequestPattern, a: Assignment,
                      seed: int = 0) -> bool:
    """Check bucket disjointness, request coverage and every recipe.

    Recipes are evaluated on each unit message ``e_u`` that any read bucket
    depends on (all other unit vectors read as zero everywhere) and on one
    seeded random message.
    """
    if Counter(p.target for p in a.plans) != Counter(req.counts):
        return False
    reads: Counter[int] = Counter()
    for plan in a.plans:
        if not _recipe_shape_ok(code, plan):
            return False
        reads.update(plan.buckets)
    if any(c > 1 for c in reads.values()):
        return False
    cols = code.generator_columns()
    rng = random.Random(seed)
    x = [rng.randrange(code.p) for _ in range(code.n)]
    word = code.encode(x)
    for plan in a.plans:
        if _recipe_value(code, plan, word) != x[plan.target]:
            return False
        support = {plan.target}
        for b in plan.buckets:
            support.update(cols[b])
        for u in support:
            unit = {b: cols[b].get(u, 0) for b in plan.buckets}
            if plan.parity is None:
                val = unit[plan.buckets[0]] % code.p
            else:
                val = (unit[plan.parity] - sum(v for b, v in unit.items() if b != plan.parity)) % code.p
            if val != (1 if u == plan.target else 0):
                return False
    return True
