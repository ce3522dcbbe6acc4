import itertools
from fractions import Fraction

import pytest

from batchcodes.bigraph import BiGraph, degree_profile, girth, has_four_cycle, has_six_cycle
from batchcodes.constructions import (ConstructionError, build_family, build_gq, gq_incidence,
                                      lazebnik, lazebnik_cross_term, replication, split_left,
                                      zigzag, zigzag_left_index, zigzag_right_index)
from batchcodes.gf import Field, frobenius

from conftest import complete_bipartite


# -- zig-zag ------------------------------------------------------------------

def zigzag_oracle(k, r):
    """All (left, right) label pairs tested directly against the edge equation."""
    edges = set()
    for l0 in range(1, r + 1):
        for ls in itertools.product(range(k), repeat=r):
            for v in itertools.product(range(k), repeat=r + 1):
                shifted = list(ls)
                shifted[l0 - 1] += v[0]
                if all((a - b) % k == 0 for a, b in zip(shifted, v[1:])):
                    edges.add((zigzag_left_index(k, r, l0, ls), zigzag_right_index(k, v)))
    return edges


@pytest.mark.parametrize("k,r", [(2, 2), (2, 3), (3, 2), (3, 3), (5, 2)])
def test_zigzag_matches_brute_force(k, r):
    g = zigzag(k, r)
    got = {(i, j) for i, row in enumerate(g.adj) for j in row}
    assert got == zigzag_oracle(k, r)
    assert (g.n1, g.n2) == (r * k ** r, k ** (r + 1))
    p = degree_profile(g)
    assert (p.min_left, p.max_left, p.min_right, p.max_right) == (k, k, r, r)
    assert g.num_edges == r * k ** (r + 1)


def test_zigzag_neighbors_of_first_node():
    g = zigzag(2, 2)
    i = zigzag_left_index(2, 2, 1, (0, 0))
    assert set(g.adj[i]) == {zigzag_right_index(2, (0, 0, 0)), zigzag_right_index(2, (1, 1, 0))}


def test_zigzag_rejects_composite_k():
    with pytest.raises(ConstructionError):
        zigzag(4, 2)


def test_zigzag_rate():
    g = zigzag(3, 4)
    assert Fraction(g.n1, g.n1 + g.n2) == Fraction(4, 7)


# -- Lazebnik -------------------------------------------------------------------

def lazebnik_oracle(q, size_s, size_t):
    F = Field(q, extension=True)
    ext = list(F.elements())
    T, S = ext[:size_t], [F(a) for a in range(size_s)]
    edges = set()
    for (it, l1), l2, l3 in itertools.product(enumerate(T), ext, range(q)):
        for (iv, v1), v2, v3 in itertools.product(enumerate(S), ext, range(q)):
            if l2 - v2 != l1 * v1:
                continue
            rhs = frobenius(l1) * v2 + l1 * frobenius(v2)
            if rhs == F(l3 - v3):
                left = (it * q * q + F.index(l2)) * q + l3
                right = (iv * q * q + F.index(v2)) * q + v3
                edges.add((left, right))
    return edges


@pytest.mark.parametrize("s,t", [(1, 1), (1, 2)])
def test_lazebnik_matches_brute_force(s, t):
    q = 3
    g = lazebnik(q, s, t)
    got = {(i, j) for i, row in enumerate(g.adj) for j in row}
    assert got == lazebnik_oracle(q, q ** s, q ** t)
    assert (g.n1, g.n2) == (q ** (3 + t), q ** (3 + s))
    assert g.num_edges == q ** (3 + s + t)
    p = degree_profile(g)
    assert (p.min_left, p.max_left, p.min_right, p.max_right) == (q ** s, q ** s, q ** t, q ** t)


def test_lazebnik_cross_term_fixed():
    F = Field(3, extension=True)
    for l1, v2 in itertools.product(F.elements(), repeat=2):
        c = lazebnik_cross_term(l1, v2)
        assert frobenius(c) == c and c.in_base_field()


def test_lazebnik_one_neighbor_per_v1():
    g = lazebnik(3, 1, 2)
    q = 3
    for row in g.adj:
        assert sorted(j // (q ** 3) for j in row) == list(range(q))


@pytest.mark.parametrize("q,s,t", [(2, 1, 1), (9, 1, 1), (3, 0, 1), (3, 1, 3), (3, Fraction(1, 2), 1)])
def test_lazebnik_bad_params(q, s, t):
    with pytest.raises(ConstructionError):
        lazebnik(q, s, t)


# -- generalized quadrangles ------------------------------------------------------

@pytest.mark.parametrize("family,q,s,t", [("W", 2, 2, 2), ("W", 3, 3, 3), ("Q5", 2, 2, 4)])
def test_gq_counts_and_axioms(family, q, s, t):
    gq = build_gq(family, q)
    assert gq.order == (s, t)
    assert len(gq.points) == (s + 1) * (s * t + 1)
    assert len(gq.lines) == (t + 1) * (s * t + 1)
    assert gq.check_axioms() == []
    g = gq.incidence_graph()
    p = degree_profile(g)
    assert (p.min_left, p.max_left, p.min_right, p.max_right) == (s + 1, s + 1, t + 1, t + 1)
    assert girth(g) == 8


def test_gq_axiom_checker_detects_damage():
    gq = build_gq("W", 2)
    broken = type(gq)(gq.points, gq.lines[1:], gq.order)
    assert broken.check_axioms()


def test_gq_q_guard():
    with pytest.raises(ConstructionError):
        gq_incidence("W", 7)
    with pytest.raises(ConstructionError):
        gq_incidence("W", 4)
    with pytest.raises(ConstructionError):
        gq_incidence("H", 3)


# -- split ----------------------------------------------------------------------------

def test_split_w3():
    base = gq_incidence("W", 3)
    g = split_left(base, 2)
    assert (g.n1, g.n2) == (80, 40)
    assert g.num_edges == base.num_edges
    p = degree_profile(g)
    assert (p.min_left, p.max_left) == (2, 2)
    assert [len(r) for r in g.radj] == [len(r) for r in base.radj]
    assert has_four_cycle(g) is None and has_six_cycle(g) is None
    assert Fraction(g.n1, g.n1 + g.n2) == Fraction(2, 3)
    for i in range(base.n1):
        assert g.adj[i] + g.adj[base.n1 + i] == base.adj[i]


def test_split_identity():
    base = gq_incidence("W", 2)
    assert split_left(base, 1) == base


def test_split_errors():
    with pytest.raises(ConstructionError):
        split_left(complete_bipartite(2, 2), 2)
    with pytest.raises(ConstructionError):
        split_left(gq_incidence("W", 3), 3)
    with pytest.raises(ConstructionError):
        split_left(BiGraph(2, 3, [[0, 1], [2]]), 1)


# -- replication / dispatch -------------------------------------------------------------

def test_replication():
    r = replication(10, 3)
    assert r.m == 3 and r.rate == Fraction(1, 3)
    assert replication(1, 1).m == 1
    with pytest.raises(ConstructionError):
        replication(0, 1)


def test_build_family_dispatch():
    assert build_family("zigzag", k=2, r=2) == zigzag(2, 2)
    assert build_family("gq-q5", q=2) == gq_incidence("Q5", 2)
    assert build_family("split", q=3, b=2) == split_left(gq_incidence("W", 3), 2)
    with pytest.raises(ConstructionError):
        build_family("cage")


def test_generators_deterministic():
    assert zigzag(3, 2).to_json() == zigzag(3, 2).to_json()
    assert lazebnik(3).to_json() == lazebnik(3).to_json()
