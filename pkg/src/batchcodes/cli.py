"""``batchcodes`` command line.

Exit status: 0 on success, 1 on a domain failure (failed verification,
infeasible schedule, unrecoverable erasures), 2 on usage errors.
"""
from __future__ import annotations

import argparse
import itertools
import json
import math
import random
import sys
from fractions import Fraction
from pathlib import Path

from .bigraph import BiGraph, degree_profile, girth, has_four_cycle, has_six_cycle
from .code import SystematicCode
from .constructions import ConstructionError, build_family, replication
from .fault import (ComposedCode, FaultError, compose, default_prime, erasure_recover,
                    min_distance, rs_systematic, EXACT_DISTANCE_MAX_N)
from .gf import Field, FieldError
from .scheduler import (BudgetExceededError, InfeasibleScheduleError, RequestPattern,
                        oracle_feasible, schedule, verify_assignment)
from .sim import FAMILIES, Workload, format_table, simulate, tradeoff_table
from .storage import BucketStore, StorageError, serve, store


class DomainFailure(Exception):
    pass


def _read_json(path: str) -> dict:
    return json.loads(Path(path).read_text())


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text if text.endswith("\n") else text + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _dump(obj) -> str:
    return json.dumps(obj, separators=(",", ":"))


def _load_graph(path: str) -> BiGraph:
    d = _read_json(path)
    return BiGraph.from_dict({k: d[k] for k in ("n1", "n2", "adj")}) if "field_p" in d else BiGraph.from_dict(d)


def cmd_construct(a) -> int:
    if a.family == "replication":
        _emit(_dump(replication(a.n, a.copies).to_dict()), a.output)
        return 0
    kw = {"k": a.k, "r": a.r, "q": a.q, "b": a.b, "s": Fraction(a.s), "t": Fraction(a.t)}
    needed = {"zigzag": ("k", "r"), "lazebnik": ("q",), "gq-w": ("q",), "gq-q5": ("q",),
              "split": ("q", "b")}[a.family]
    missing = [f"--{n}" for n in needed if kw[n] is None]
    if missing:
        return _usage(f"--family {a.family} requires {', '.join(missing)}")
    _emit(build_family(a.family, **kw).to_json(), a.output)
    return 0


def _usage(msg: str) -> int:
    sys.stderr.write(f"usage error: {msg}\n")
    return 2


def cmd_verify(a) -> int:
    g = _load_graph(a.graph)
    prof = degree_profile(g)
    w4 = has_four_cycle(g)
    w6 = None if w4 else has_six_cycle(g)
    gi = girth(g)
    ok = w4 is None and w6 is None
    report = {
        "n1": g.n1, "n2": g.n2, "edges": g.num_edges,
        "girth": "inf" if gi == math.inf else int(gi),
        "girth>=8": ok,
        "min_left_degree": prof.min_left, "max_left_degree": prof.max_left,
        "min_right_degree": prof.min_right, "max_right_degree": prof.max_right,
    }
    if w4:
        report["4-cycle witness"] = {"left": list(w4.left), "right": list(w4.right)}
    if w6:
        report["6-cycle witness"] = {"left": list(w6.left), "right": list(w6.right)}
    if a.format == "json":
        _emit(_dump(report), None)
    else:
        lines = [f"girth>=8: {str(ok).lower()}", f"girth: {report['girth']}",
                 f"min_left_degree: {prof.min_left}",
                 f"left degree: {prof.min_left}..{prof.max_left}, right degree: {prof.min_right}..{prof.max_right}"]
        if w4:
            lines.append(f"4-cycle witness: left={list(w4.left)} right={list(w4.right)}")
        if w6:
            lines.append(f"6-cycle witness: left={list(w6.left)} right={list(w6.right)}")
        _emit("\n".join(lines), None)
    return 0 if ok else 1


def cmd_code(a) -> int:
    code = SystematicCode(_load_graph(a.graph), Field(a.field_p))
    _emit(code.to_json(), a.output)
    return 0


def cmd_schedule(a) -> int:
    code = SystematicCode.from_dict(_read_json(a.code))
    req = RequestPattern.parse(a.requests)
    if a.oracle:
        asg = oracle_feasible(code, req)
        if asg is None:
            raise DomainFailure("no bucket-disjoint assignment exists")
    else:
        asg = schedule(code, req)
    if not verify_assignment(code, req, asg):
        raise DomainFailure("assignment failed verification")
    _emit(asg.to_json(), a.output)
    return 0


def cmd_store(a) -> int:
    code = SystematicCode.from_dict(_read_json(a.code))
    total = a.g * code.n
    if a.message:
        x = [int(v) for v in a.message.split(",")]
    else:
        rng = random.Random(a.seed)
        x = [rng.randrange(code.p) for _ in range(total)]
    _emit(store(code, a.g, x).to_json(), a.output)
    return 0


def cmd_serve(a) -> int:
    st = BucketStore.from_dict(_read_json(a.store))
    reqs = RequestPattern.parse(a.requests).expanded() if ":" in a.requests else \
        [int(v) for v in a.requests.split(",") if v.strip()]
    res = serve(st, reqs)
    if res.max_bucket_reads > 1:
        raise DomainFailure("a bucket was read more than once")
    out = {"values": list(res.values),
           "trace": [{"request": r.request, "bucket": r.bucket, "row": r.row} for r in res.trace],
           "max_bucket_reads": res.max_bucket_reads}
    _emit(_dump(out), a.output)
    return 0


def cmd_compose(a) -> int:
    batch = SystematicCode.from_dict(_read_json(a.batch))
    prime = a.field_p or default_prime(batch.n + a.mds_parities)
    cc = compose(batch, rs_systematic(batch.n, a.mds_parities, prime))
    _emit(cc.to_json(), a.output)
    return 0


def cmd_check_distance(a) -> int:
    d = _read_json(a.code)
    if "mds_parities" in d:
        code = ComposedCode.from_dict(d)
        lower = code.mds.distance
    else:
        code = SystematicCode.from_dict(d)
        lower = 1
    report = {"n": code.n, "N": code.N, "lower_bound": lower}
    if a.exhaustive and code.N <= EXACT_DISTANCE_MAX_N:
        report["min_distance"] = min_distance(code)
        if report["min_distance"] < lower:
            raise DomainFailure(f"distance {report['min_distance']} below bound {lower}")
    elif a.exhaustive:
        report["note"] = f"N > {EXACT_DISTANCE_MAX_N}: exact distance not computed"
    if isinstance(code, ComposedCode) and lower > 1 and a.exhaustive:
        # certificate: every (d^G - 1)-erasure pattern recovers a random message
        rng = random.Random(0)
        x = [rng.randrange(code.prime) for _ in range(code.n)]
        word = code.encode(x)
        count = 0
        for gone in itertools.combinations(range(code.N), lower - 1):
            w = [None if c in gone else v for c, v in enumerate(word)]
            if erasure_recover(code, w) != x:
                raise DomainFailure(f"erasure pattern {gone} not recovered")
            count += 1
        report["erasure_patterns_checked"] = count
    _emit(_dump(report), None)
    return 0


def cmd_simulate(a) -> int:
    code = SystematicCode.from_dict(_read_json(a.code))
    rng = random.Random(a.seed)
    x = [rng.randrange(code.p) for _ in range(a.g * code.n)]
    st = store(code, a.g, x)
    k = a.k or st.supported_k
    rep = simulate(st, Workload(a.workload, k, a.ticks, a.seed, a.theta))
    if a.format == "json":
        summ = {s: {kk: (str(v) if isinstance(v, Fraction) else v) for kk, v in d.items()}
                for s, d in rep.summary().items()}
        _emit(_dump(summ), a.output)
    else:
        _emit(rep.to_csv(), a.output)
    return 0 if all(r.failures == 0 for r in rep.rows) else 1


def cmd_table(a) -> int:
    fams = FAMILIES if a.family == "all" else (a.family,)
    rows = tradeoff_table(fams, a.max_q)
    if a.format == "json":
        _emit(_dump([dict(zip(("family", "params", "n", "m", "k", "girth", "rate", "rate_f",
                                "bound", "bound_ok", "edge_ratio"), r.cells())) for r in rows]), a.output)
    else:
        _emit(format_table(rows, "csv" if a.format == "csv" else "text"), a.output)
    return 0 if all(r.satisfied for r in rows) else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="batchcodes", description="Multiset batch codes from girth-8 graphs")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="build a graph family")
    c.add_argument("--family", required=True,
                   choices=["zigzag", "lazebnik", "gq-w", "gq-q5", "split", "replication"])
    c.add_argument("--k", type=int)
    c.add_argument("--r", type=int)
    c.add_argument("--q", type=int)
    c.add_argument("--s", default="1")
    c.add_argument("--t", default="1")
    c.add_argument("--b", type=int)
    c.add_argument("--n", type=int, default=1)
    c.add_argument("--copies", type=int, default=1)
    c.add_argument("-o", "--output")
    c.set_defaults(func=cmd_construct)

    v = sub.add_parser("verify", help="girth and degree report")
    v.add_argument("--graph", required=True)
    v.add_argument("--format", choices=["text", "json"], default="text")
    v.set_defaults(func=cmd_verify)

    cd = sub.add_parser("code", help="compile a graph into a code")
    cd.add_argument("--graph", required=True)
    cd.add_argument("--field-p", type=int, default=2)
    cd.add_argument("-o", "--output")
    cd.set_defaults(func=cmd_code)

    s = sub.add_parser("schedule", help="assign a request pattern to bucket groups")
    s.add_argument("--code", required=True)
    s.add_argument("--requests", required=True, help='e.g. "0:2,5:1,7:1"')
    s.add_argument("--oracle", action="store_true", help="use the backtracking search")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_schedule)

    st = sub.add_parser("store", help="gadget-stack g messages")
    st.add_argument("--code", required=True)
    st.add_argument("--g", type=int, default=1)
    st.add_argument("--message", help="comma-separated g*n symbols")
    st.add_argument("--seed", type=int, default=0)
    st.add_argument("-o", "--output")
    st.set_defaults(func=cmd_store)

    sv = sub.add_parser("serve", help="serve one batch of global indices")
    sv.add_argument("--store", required=True)
    sv.add_argument("--requests", required=True)
    sv.add_argument("-o", "--output")
    sv.set_defaults(func=cmd_serve)

    cp = sub.add_parser("compose", help="append systematic MDS parities")
    cp.add_argument("--batch", required=True)
    cp.add_argument("--mds-parities", type=int, required=True)
    cp.add_argument("--field-p", type=int)
    cp.add_argument("-o", "--output")
    cp.set_defaults(func=cmd_compose)

    dd = sub.add_parser("check-distance", help="minimum distance and erasure certificate")
    dd.add_argument("--code", required=True)
    dd.add_argument("--exhaustive", action="store_true")
    dd.set_defaults(func=cmd_check_distance)

    sm = sub.add_parser("simulate", help="batch code vs replication workload run")
    sm.add_argument("--code", required=True)
    sm.add_argument("--g", type=int, default=1)
    sm.add_argument("--workload", choices=["uniform", "zipf", "single-hot"], default="uniform")
    sm.add_argument("--k", type=int)
    sm.add_argument("--ticks", type=int, default=100)
    sm.add_argument("--seed", type=int, default=0)
    sm.add_argument("--theta", type=float, default=1.0)
    sm.add_argument("--format", choices=["csv", "json"], default="csv")
    sm.add_argument("-o", "--output")
    sm.set_defaults(func=cmd_simulate)

    t = sub.add_parser("table", help="rate / servers tradeoff table")
    t.add_argument("--family", choices=["all", *FAMILIES], default="all")
    t.add_argument("--max-q", type=int, default=3)
    t.add_argument("--format", choices=["text", "csv", "json"], default="text")
    t.add_argument("-o", "--output")
    t.set_defaults(func=cmd_table)
    return p


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (DomainFailure, InfeasibleScheduleError, FaultError, StorageError,
            BudgetExceededError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    except (ConstructionError, FieldError, ValueError, KeyError, OSError) as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return 2


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
