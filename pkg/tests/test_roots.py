from __future__ import annotations

import itertools
import random
from fractions import Fraction

import pytest

from oracles import folded_roots_oracle, graph_roots
from signed_quivers.graphs import Graph, GraphError
from signed_quivers.quiver import FoldingData, signed_quiver
from signed_quivers.roots import (GCM, FoldingError, RootError, bar, classify_folded_root, classify_root,
                                  enumerate_folded_roots, enumerate_roots, filter_height, fold, fold_quiver,
                                  folded_reflect, gcm_from_graph, in_lattice, reflect, tits_pairing,
                                  verify_folding_lemma)


def path(n):
    vs = [str(i) for i in range(1, n + 1)]
    return Graph.from_pairs(vs, [(vs[k], vs[k + 1]) for k in range(n - 1)])


def cycle4():
    return Graph.from_pairs("1234", [("1", "2"), ("2", "3"), ("3", "4"), ("4", "1")])


def d4():
    return Graph.from_pairs("1234", [("1", "2"), ("1", "3"), ("1", "4")])


def central(n, sign):
    """Path of length n folded by reversal; the middle vertex (n odd) gets `sign`."""
    g = path(n)
    pi = {str(i): str(n + 1 - i) for i in range(1, n + 1)}
    sigma = {str((n + 1) // 2): sign} if n % 2 else {}
    return fold(g, FoldingData(pi, sigma))


def chain(s1=1, s3=-1):
    """Folding of  s1 <- o -> s3 : an affine chain of two double edges."""
    q = signed_quiver([("1", s1), ("2", 0), ("3", s3)], [("a", "2", "1"), ("b", "2", "3")])
    return fold_quiver(q)


def rand_vec(rng, n, lo=-3, hi=3):
    return tuple(rng.randint(lo, hi) for _ in range(n))


# -- GCM and pairing ---------------------------------------------------------------------------
def test_gcm_examples():
    assert gcm_from_graph(path(2)).tolist() == [[2, -1], [-1, 2]]
    two = Graph.from_pairs("12", [("1", "2"), ("1", "2")])
    assert gcm_from_graph(two).tolist() == [[2, -2], [-2, 2]]
    assert gcm_from_graph(cycle4()).tolist() == [[2, -1, 0, -1], [-1, 2, -1, 0],
                                                 [0, -1, 2, -1], [-1, 0, -1, 2]]


def test_graph_rejects_loops_and_gcm_rejects_bad_pattern():
    with pytest.raises(GraphError):
        Graph.from_pairs("1", [("1", "1")])
    with pytest.raises(RootError):
        GCM(("a", "b"), ((2, -1), (0, 2)))
    with pytest.raises(RootError):
        GCM(("a",), ((1,),))


def test_tits_pairing_examples():
    g = path(2)
    assert tits_pairing(g, (1, 0), (1, 0)) == 1
    assert tits_pairing(g, (1, 0), (0, 1)) == Fraction(-1, 2)
    c = cycle4()
    for i in range(4):
        e = tuple(int(k == i) for k in range(4))
        assert tits_pairing(c, (1, 1, 1, 1), e) == 0


def test_reflect_examples():
    g = path(2)
    assert reflect(g, "1", (1, 0)) == (-1, 0)
    assert reflect(g, "1", (0, 1)) == (1, 1)
    assert reflect(g, "1", reflect(g, "1", (3, 5))) == (3, 5)


@pytest.mark.parametrize("g", [path(4), d4(), cycle4(), Graph.from_pairs("123", [("1", "2"), ("1", "2"), ("2", "3")])])
def test_reflect_involutive_and_isometric_random(g):
    rng = random.Random(g.n * 11 + len(g.edges))
    for _ in range(200):
        a, b = rand_vec(rng, g.n), rand_vec(rng, g.n)
        i = rng.choice(g.vertices)
        ra, rb = reflect(g, i, a), reflect(g, i, b)
        assert reflect(g, i, ra) == a
        assert tits_pairing(g, ra, rb) == tits_pairing(g, a, b)


# -- classification --------------------------------------------------------------------------
def test_classify_examples():
    assert classify_root(path(3), (0, 1, 0)) == "Real"
    assert classify_root(cycle4(), (1, 1, 1, 1)) == "Imaginary"
    assert classify_root(path(2), (2, 1)) == "NotARoot"
    with pytest.raises(RootError):
        classify_root(path(2), (0, 0))
    with pytest.raises(RootError):
        classify_root(path(2), (1, -1))


def _reachable_reals(g, cap):
    """Positive vectors reachable from a simple root by reflections that stay positive."""
    simples = [tuple(int(k == i) for k in range(g.n)) for i in range(g.n)]
    seen, todo = set(simples), list(simples)
    while todo:
        a = todo.pop()
        for i in g.vertices:
            b = reflect(g, i, a)
            if all(x >= 0 for x in b) and sum(b) <= cap and b not in seen:
                seen.add(b)
                todo.append(b)
    return seen


@pytest.mark.parametrize("name,g", [("A3", path(3)), ("D4", d4()), ("cycle", cycle4())])
def test_classify_matches_brute_force(name, g):
    reals = _reachable_reals(g, 18)
    oracle = graph_roots(g, 6)
    for a in itertools.product(range(7), repeat=g.n):
        if not any(a) or sum(a) > 6:
            continue
        kind = classify_root(g, a)
        assert (kind == "Real") == (a in reals), a
        assert kind == oracle.get(a, "NotARoot"), a


# -- enumeration -----------------------------------------------------------------------------
def test_enumerate_examples():
    a3 = enumerate_roots(path(3), 3)
    assert len(a3) == 6 and set(a3.values()) == {"Real"}
    assert set(enumerate_roots(path(2), 1)) == {(1, 0), (0, 1)}
    c = enumerate_roots(cycle4(), 4)
    assert c[(1, 1, 1, 1)] == "Imaginary"
    assert sorted(k for k, v in c.items() if v == "Imaginary") == [(1, 1, 1, 1)]
    assert len(c) == 13


@pytest.mark.parametrize("g", [path(5), d4(), cycle4(), Graph.from_pairs("12", [("1", "2")] * 2),
                               Graph.from_pairs("12345", [("1", "2"), ("1", "3"), ("1", "4"), ("1", "5")])])
def test_enumerate_matches_oracle(g):
    assert enumerate_roots(g, 10) == graph_roots(g, 10)


@pytest.mark.parametrize("g", [cycle4(), d4(), Graph.from_pairs("12", [("1", "2")] * 3)])
def test_height_truncation_sound(g):
    big = enumerate_roots(g, 12)
    for h in (1, 3, 6, 9):
        assert filter_height(big, h) == enumerate_roots(g, h)


def test_enumerate_rejects_zero_bound():
    with pytest.raises(RootError):
        enumerate_roots(path(2), 0)


# -- folding ---------------------------------------------------------------------------------
def test_fold_example_chain():
    # + <- o -> -  folds to a chain of two double edges
    fs = chain()
    assert [len(o) for o in fs.orbits] == [1, 2, 1]
    assert fs.diagram() == ["2|2* => 1", "3 => 2|2*"]
    assert fs.gcm.tolist() == [[2, -2, 0], [-1, 2, -2], [0, -1, 2]]


def test_fold_a3_to_b2():
    fs = central(3, 1)
    assert fs.gcm.tolist() == [[2, -1], [-2, 2]]
    assert fs.simple == [(1, 0, 1), (0, 1, 0)]


def test_fold_rejects_identity_and_non_automorphism():
    g = path(2)
    with pytest.raises(FoldingError):
        fold(g, FoldingData({"1": "1", "2": "2"}, {"1": 1, "2": 1}))
    with pytest.raises(FoldingError):
        fold(path(3), FoldingData({"1": "2", "2": "1", "3": "3"}, {"3": 1}))


def test_fold_identity_matches_tits_pairing():
    for n in (3, 5, 7):
        for s in (1, -1):
            fs = central(n, s)
            for i, bi in enumerate(fs.simple):
                for j, bj in enumerate(fs.simple):
                    lhs = fs.gcm[i, j]
                    assert lhs == 2 * tits_pairing(fs.graph, bi, bj) / tits_pairing(fs.graph, bi, bi)


def test_bar_examples():
    fs = central(3, -1)
    assert bar(fs, (1, 2, 1)) == (1, 2, 1)
    assert bar(fs, (1, 0, 0)) == (1, 0, 1)
    assert bar(fs, (0, 1, 0)) == (0, 2, 0)
    assert bar(central(3, 1), (0, 1, 0)) == (0, 1, 0)


def test_folded_b2_roots():
    assert set(enumerate_folded_roots(central(3, 1), 4)) == {(0, 1, 0), (1, 1, 1), (1, 0, 1), (1, 2, 1)}


def test_folded_height_one_is_simple_slice():
    fs = central(5, -1)
    one = enumerate_folded_roots(fs, 1)
    assert set(one) == {b for b in fs.simple if sum(b) == 1}


def test_folded_real_norms():
    for fs in (central(3, 1), central(3, -1), central(5, 1), central(5, -1), chain(1, 1), chain(-1, -1)):
        for r, kind in enumerate_folded_roots(fs, 12).items():
            if kind == "Real":
                assert tits_pairing(fs.graph, r, r) in (1, 2, 4)


def test_lattice_stable_under_folded_reflections():
    rng = random.Random(9)
    for fs in (central(5, -1), central(5, 1), chain(1, -1), chain(-1, -1)):
        pts = 0
        while pts < 100:
            a = rand_vec(rng, fs.graph.n, -4, 4)
            if not in_lattice(fs, a):
                continue
            pts += 1
            for o in range(len(fs.orbits)):
                assert in_lattice(fs, folded_reflect(fs, o, a))


def test_classify_folded_rejects_off_lattice():
    fs = central(3, -1)
    assert classify_folded_root(fs, (0, 2, 0)) == "Real"
    with pytest.raises(RootError):
        classify_folded_root(fs, (0, 1, 0))


@pytest.mark.parametrize("n,s", [(3, 1), (3, -1), (5, 1), (5, -1), (7, 1), (7, -1)])
def test_folded_enumeration_matches_oracle(n, s):
    fs = central(n, s)
    assert enumerate_folded_roots(fs, 12) == folded_roots_oracle(fs, 12)


@pytest.mark.parametrize("s1,s3", [(1, 1), (1, -1), (-1, -1)])
def test_folded_enumeration_matches_oracle_affine(s1, s3):
    fs = chain(s1, s3)
    assert enumerate_folded_roots(fs, 14) == folded_roots_oracle(fs, 14)


# -- folding lemma ---------------------------------------------------------------------------
def test_folding_lemma_b2():
    rep = verify_folding_lemma(central(3, 1), 6)
    assert rep.ok and rep.equal


def test_folding_lemma_a5_sign_minus():
    rep = verify_folding_lemma(central(5, -1), 8)
    assert rep.ok


def test_folding_lemma_height_one():
    for fs in (central(3, 1), central(5, -1), chain()):
        assert verify_folding_lemma(fs, 1).equal
