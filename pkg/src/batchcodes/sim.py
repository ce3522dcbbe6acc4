"""Workload simulation and the rate/servers tradeoff table."""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional

import numpy as np
from sympy import primerange

from .bigraph import BiGraph, degree_profile, girth
from .constructions import ReplicationLayout, gq_incidence, lazebnik, split_left, zigzag
from .scheduler import InfeasibleScheduleError
from .storage import BucketStore, StorageError, serve

DISTRIBUTIONS = ("uniform", "zipf", "single-hot")
CSV_HEADER = ("scheme", "tick", "rounds", "max_server_reads", "overhead", "failures")


@dataclass(frozen=True)
class Workload:
    distribution: str = "uniform"
    k: int = 2
    ticks: int = 100
    seed: int = 0
    theta: float = 1.0

    def __post_init__(self):
        if self.distribution not in DISTRIBUTIONS:
            raise ValueError(f"unknown distribution {self.distribution!r}")
        if self.k < 1 or self.ticks < 0:
            raise ValueError("need k >= 1 and ticks >= 0")

    def batches(self, universe: int) -> Iterable[list[int]]:
        rng = np.random.default_rng(self.seed)
        if self.distribution == "zipf":
            w = 1.0 / np.arange(1, universe + 1) ** self.theta
            cdf = np.cumsum(w / w.sum())
        for _ in range(self.ticks):
            if self.distribution == "uniform":
                yield [int(v) for v in rng.integers(0, universe, size=self.k)]
            elif self.distribution == "zipf":
                u = rng.random(self.k)
                yield [int(min(v, universe - 1)) for v in np.searchsorted(cdf, u, side="right")]
            else:
                hot = int(rng.integers(0, universe))
                yield [hot] * self.k


@dataclass(frozen=True)
class TickRow:
    scheme: str
    tick: int
    rounds: int
    max_server_reads: int
    overhead: Fraction
    failures: int


@dataclass
class SimReport:
    rows: list[TickRow] = field(default_factory=list)

    def schemes(self) -> list[str]:
        return sorted({r.scheme for r in self.rows})

    def summary(self) -> dict[str, dict]:
        out = {}
        for s in self.schemes():
            rs = [r for r in self.rows if r.scheme == s]
            out[s] = {
                "ticks": len(rs),
                "max_rounds": max((r.rounds for r in rs), default=0),
                "max_server_reads": max((r.max_server_reads for r in rs), default=0),
                "overhead": rs[0].overhead if rs else None,
                "failures": sum(r.failures for r in rs),
            }
        return out

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_HEADER)
        for r in self.rows:
            w.writerow([r.scheme, r.tick, r.rounds, r.max_server_reads,
                        f"{float(r.overhead):.6f}", r.failures])
        return buf.getvalue()


def _replication_tick(layout: ReplicationLayout, batch: list[int]) -> tuple[int, int]:
    """``(rounds, max reads per server per round)``; request t goes to replica t mod k."""
    loads = [0] * layout.m
    for t, _ in enumerate(batch):
        loads[t % layout.m] += 1
    rounds = max(loads, default=0)
    return rounds, min(rounds, 1)


def simulate(st: BucketStore, wl: Workload, name: str = "batch") -> SimReport:
    """Serve ``wl`` on ``st`` and on ``k``-replication, tick by tick."""
    if wl.k > st.supported_k:
        raise ValueError(f"workload k={wl.k} exceeds supported k={st.supported_k}")
    layout = ReplicationLayout(st.n_total, wl.k)
    overhead = Fraction(st.code.N, st.code.n)
    report = SimReport()
    for tick, batch in enumerate(wl.batches(st.n_total)):
        try:
            res = serve(st, batch, k=wl.k)
            report.rows.append(TickRow(name, tick, 1, res.max_bucket_reads, overhead, 0))
        except (InfeasibleScheduleError, StorageError):
            # fall back to one direct read per round
            report.rows.append(TickRow(name, tick, len(batch), 1, overhead, 1))
        rounds, reads = _replication_tick(layout, batch)
        report.rows.append(TickRow("replication", tick, rounds, reads, Fraction(layout.k), 0))
    return report


# -- tradeoff table ------------------------------------------------------------

FAMILIES = ("zigzag", "lazebnik", "gq-w", "gq-q5", "split")


@dataclass(frozen=True)
class TableRow:
    family: str
    params: str
    n: int
    m: int
    k: int
    girth: float
    rate: Fraction
    bound: Optional[Fraction]
    edge_ratio: float

    @property
    def satisfied(self) -> bool:
        return self.bound is None or self.rate >= self.bound

    def cells(self) -> list[str]:
        g = "inf" if self.girth == float("inf") else str(int(self.girth))
        return [self.family, self.params, str(self.n), str(self.m), str(self.k), g,
                str(self.rate), f"{float(self.rate):.4f}",
                "-" if self.bound is None else str(self.bound),
                "yes" if self.satisfied else "NO", f"{self.edge_ratio:.4f}"]


TABLE_HEADER = ("family", "params", "n", "m", "k", "girth", "rate", "rate_f", "bound",
                "bound_ok", "edge_ratio")


def _row(family: str, params: str, g: BiGraph, bound: Optional[Fraction]) -> TableRow:
    prof = degree_profile(g)
    ratio = g.num_edges / ((g.n1 * g.n2) ** (2.0 / 3.0)) if g.n1 and g.n2 else 0.0
    return TableRow(family, params, g.n1, g.n1 + g.n2, prof.min_left, girth(g),
                    Fraction(g.n1, g.n1 + g.n2), bound, ratio)


def _instances(family: str, max_q: int):
    primes = list(primerange(2, max_q + 1))
    if family == "zigzag":
        for k in primes:
            for r in (2, 3, 4):
                yield f"k={k},r={r}", zigzag(k, r), max(Fraction(0), 1 - Fraction(k, r))
    elif family == "lazebnik":
        for q in (p for p in primes if p > 2):
            for s, t in ((1, 1), (1, 2)):
                yield f"q={q},s={s},t={t}", lazebnik(q, s, t), 1 - Fraction(1, q ** (t - 1))
    elif family == "gq-w":
        for q in primes:
            yield f"q={q}", gq_incidence("W", q), Fraction(1, 2)
    elif family == "gq-q5":
        for q in primes:
            yield f"q={q}", gq_incidence("Q5", q), 1 - Fraction(1, q)
    elif family == "split":
        for q in primes:
            for b in range(2, q + 2):
                if (q + 1) % b == 0 and (q + 1) // b >= 2:
                    yield f"W(q={q}),b={b}", split_left(gq_incidence("W", q), b), Fraction(b, b + 1)
    else:
        raise ValueError(f"unknown family {family!r}")


def tradeoff_table(families: Iterable[str] = FAMILIES, max_q: int = 3) -> list[TableRow]:
    """One row per desk-scale instance, with the family's rate bound.

    Bounds: zig-zag ``max(0, 1 - k/r)``; Lazebnik ``1 - 1/q^(t-1)``; W(q) ``1/2``;
    Q5(q) ``1 - 1/(k-1)`` with ``k = q+1``; split ``b/(b+1)``.
    """
    rows = []
    for fam in families:
        for params, g, bound in _instances(fam, max_q):
            rows.append(_row(fam, params, g, bound))
    return rows


def format_table(rows: list[TableRow], fmt: str = "text") -> str:
    cells = [list(TABLE_HEADER)] + [r.cells() for r in rows]
    if fmt == "csv":
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerows(cells)
        return buf.getvalue()
    widths = [max(len(row[c]) for row in cells) for c in range(len(TABLE_HEADER))]
    return "".join("  ".join(v.ljust(w) for v, w in zip(row, widths)).rstrip() + "\n"
                   for row in cells)
