from collections import Counter
from fractions import Fraction

import pytest

from batchcodes.code import code_from_graph
from batchcodes.sim import (CSV_HEADER, FAMILIES, TABLE_HEADER, Workload, format_table, simulate,
                            tradeoff_table)
from batchcodes.storage import store

from conftest import constructed


def make_store(name, g=1):
    c = code_from_graph(constructed(name))
    return store(c, g, [i % 2 for i in range(g * c.n)])


def test_workload_validation():
    with pytest.raises(ValueError):
        Workload("pareto")
    with pytest.raises(ValueError):
        Workload(k=0)


def test_workload_shapes():
    for dist in ("uniform", "zipf", "single-hot"):
        batches = list(Workload(dist, k=3, ticks=50, seed=4).batches(40))
        assert len(batches) == 50
        assert all(len(b) == 3 and all(0 <= v < 40 for v in b) for b in batches)
    hot = list(Workload("single-hot", k=3, ticks=20).batches(40))
    assert all(len(set(b)) == 1 for b in hot)


def test_zipf_skews_to_low_indices():
    draws = Counter(v for b in Workload("zipf", k=4, ticks=2000, seed=1, theta=1.2).batches(50) for v in b)
    assert draws[0] == max(draws.values())
    assert draws[0] > 5 * draws.get(40, 0)


def test_workload_seeded():
    a = list(Workload("uniform", k=2, ticks=30, seed=9).batches(10))
    b = list(Workload("uniform", k=2, ticks=30, seed=9).batches(10))
    assert a == b


def test_single_hot_zigzag33():
    st_ = make_store("zigzag(3,3)")
    rep = simulate(st_, Workload("single-hot", k=st_.supported_k, ticks=40, seed=2))
    s = rep.summary()
    assert s["batch"] == {"ticks": 40, "max_rounds": 1, "max_server_reads": 1,
                          "overhead": Fraction(st_.code.N, st_.code.n), "failures": 0}
    assert s["replication"]["max_rounds"] == 1
    assert s["replication"]["overhead"] == 3


def test_zigzag_34_overhead():
    c = code_from_graph(__import__("batchcodes").zigzag(3, 4))
    assert Fraction(c.N, c.n) == Fraction(7, 4) < 3


def test_k_above_supported_rejected():
    st_ = make_store("W(2)")
    with pytest.raises(ValueError):
        simulate(st_, Workload(k=4))


def test_failures_fall_back_to_direct_reads():
    # K_{2,3} has 4-cycles, so some 3-multisets are unschedulable
    from batchcodes.bigraph import BiGraph
    from batchcodes.code import SystematicCode
    c = SystematicCode(BiGraph(2, 3, [[0, 1, 2], [0, 1, 2]]))
    st_ = store(c, 1, [1, 0])
    rows = [r for r in simulate(st_, Workload("uniform", k=3, ticks=60, seed=0)).rows
            if r.scheme == "batch"]
    failed = [r for r in rows if r.failures]
    assert failed and all(r.rounds == 3 for r in failed)
    assert all(r.rounds == 1 for r in rows if not r.failures)


def test_csv_format():
    st_ = make_store("zigzag(2,2)", g=2)
    text = simulate(st_, Workload("uniform", k=2, ticks=5, seed=3)).to_csv()
    lines = text.splitlines()
    assert lines[0] == ",".join(CSV_HEADER)
    assert len(lines) == 11


def test_table_rows_and_bounds():
    rows = tradeoff_table(FAMILIES, max_q=3)
    assert rows and all(r.satisfied for r in rows)
    by = {(r.family, r.params): r for r in rows}
    assert by[("lazebnik", "q=3,s=1,t=2")].rate == Fraction(3, 4)
    assert by[("lazebnik", "q=3,s=1,t=2")].k == 3
    assert by[("split", "W(q=3),b=2")].rate == Fraction(2, 3)
    assert by[("gq-w", "q=2")].rate == by[("gq-w", "q=3")].rate == Fraction(1, 2)
    for r in rows:
        if r.family == "zigzag":
            k = int(r.params.split(",")[0][2:])
            rr = int(r.params.split(",")[1][2:])
            assert r.rate == Fraction(rr, rr + k)
        assert r.girth == 8


def test_format_table():
    rows = tradeoff_table(["gq-w"], max_q=2)
    text = format_table(rows)
    assert text.splitlines()[0].split() == list(TABLE_HEADER)
    csv = format_table(rows, "csv")
    assert csv.splitlines()[1].startswith("gq-w,q=2,15,30,3,8,1/2")


def test_unknown_family():
    with pytest.raises(ValueError):
        tradeoff_table(["cage"])
