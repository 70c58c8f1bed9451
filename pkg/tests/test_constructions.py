import itertools

import pytest

import oracles
from chromdist import constructions as C
from chromdist import graph as G
from chromdist.graph import GraphError
from chromdist.invariants import (Method, distinguishing_chromatic_index, distinguishing_index,
                                  feasible)
from chromdist.labeling import EdgeLabeling, certify
from chromdist.symmetry import find_preserving_automorphism


@pytest.mark.parametrize("s,t", [(s, t) for s in range(2, 7) for t in range(1, s)])
def test_bipartite_circulant(s, t):
    cert = C.construct_bipartite_labeling(s, t)
    assert cert.k == s and cert.proper and cert.distinguishing
    assert cert.graph == G.complete_bipartite(s, t)


def test_bipartite_circulant_preconditions():
    for s, t in [(3, 3), (2, 3), (1, 0)]:
        with pytest.raises(C.ConstructionError):
            C.construct_bipartite_labeling(s, t)


def test_matrix_round_trip_and_identity_test():
    a = C.circulant_matrix(4, 3)
    assert a.rows == 3 and a.cols == 4 and a.c == 4
    assert a.to_grid()[0] == [1, 2, 3, 4]
    assert C.identity_labeling_test(a) is C.IdentityVerdict.IDENTITY
    # two equal rows can be swapped
    same = C.BipartiteAdjacencyMatrix([[1, 2, 3], [1, 2, 3]])
    assert C.identity_labeling_test(same) is C.IdentityVerdict.NOT_IDENTITY
    lab = same.edge_labeling()
    assert find_preserving_automorphism(same.graph(), lab) is not None


def test_identity_test_agrees_with_automorphism_search():
    for grid in itertools.product(range(1, 4), repeat=6):
        a = C.BipartiteAdjacencyMatrix([grid[:3], grid[3:]])
        verdict = C.identity_labeling_test(a)
        witness = find_preserving_automorphism(a.graph(), a.edge_labeling())
        if verdict is C.IdentityVerdict.IDENTITY:
            assert witness is None
        elif verdict is C.IdentityVerdict.NOT_IDENTITY:
            assert witness is not None


def test_round_robin_is_a_one_factorization():
    for n in range(2, 6):
        factors = C.round_robin_factors(n)
        assert len(factors) == 2 * n - 1
        seen = set()
        for f in factors:
            assert sorted(v for e in f for v in e) == list(range(2 * n))
            seen.update(tuple(sorted(e)) for e in f)
        assert len(seen) == n * (2 * n - 1)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_complete_even(n):
    cert = C.construct_complete_even_labeling(n)
    assert cert.k == 2 * n - 1 and cert.proper and cert.distinguishing


def test_complete_even_k4_is_not_distinguishing():
    with pytest.raises(C.ConstructionError):
        C.construct_complete_even_labeling(2)
    cert = C.construct_complete_even_labeling(2, allow_small=True)
    assert cert.proper and not cert.distinguishing and cert.witness is not None


@pytest.mark.parametrize("n", range(3, 8))
def test_book_labeling(n):
    cert = C.construct_book_labeling(n)
    assert cert.k == n + 1 and cert.proper and cert.distinguishing
    assert not cert.notes


def test_book_two_falls_back_to_search():
    cert = C.construct_book_labeling(2)
    assert cert.proper and cert.distinguishing and cert.k == 4
    assert any("taken from search" in n for n in cert.notes)
    # no proper distinguishing 3-labeling exists at all
    assert oracles.distinguishing_chromatic_index(G.book(2)) == 4


@pytest.mark.parametrize("n", range(4, 8))
def test_even_cycle(n):
    cert = C.construct_even_cycle_labeling(n)
    assert cert.k == 3 and cert.proper and cert.distinguishing


@pytest.mark.parametrize("n", range(2, 7))
def test_even_path(n):
    cert = C.construct_even_path_labeling(n)
    assert cert.k == 3 and cert.proper and cert.distinguishing


@pytest.mark.parametrize("p,q", [(p, q) for q in range(1, 6) for p in range(1, q + 1)
                                 if (p, q) != (1, 1)])
def test_complete_bipartite_formula_matches_search(p, q):
    res = C.d_prime_complete_bipartite(p, q)
    val = distinguishing_index(G.complete_bipartite(p, q)).value
    assert res.lo <= val <= res.hi
    if res.exact:
        assert res.method is Method.CLOSED_FORM
    resolved = C.d_prime_complete_bipartite(p, q, resolve_boundary=True)
    assert resolved.exact and resolved.value == val


def test_complete_bipartite_formula_orientation_and_k11():
    assert C.d_prime_complete_bipartite(5, 2).value == C.d_prime_complete_bipartite(2, 5).value
    with pytest.raises(ValueError):
        C.d_prime_complete_bipartite(1, 1)


def test_friendship_formula():
    vals = [C.d_prime_friendship(n) for n in (2, 3, 4, 5, 10)]
    assert [v.value for v in vals] == [2, 3, 3, 3, 4]
    for n in (2, 3, 4):
        assert distinguishing_index(G.friendship(n)).value == C.d_prime_friendship(n).value
    y = C.friendship_root(4)
    assert abs(y ** 3 - y ** 2 - 8) < 1e-9


def test_star_path_formula():
    assert [C.d_prime_star_path(n, 2).value for n in (2, 3, 4, 8)] == [2, 2, 2, 3]
    for n in (2, 3, 4):
        assert distinguishing_index(G.book(n)).value == C.d_prime_star_path(n, 2).value


def test_chi_prime_d_complete_bipartite():
    for n, m in [(2, 1), (3, 1), (3, 2), (2, 2), (3, 3), (4, 4)]:
        assert C.chi_prime_d_complete_bipartite(n, m) == \
            distinguishing_chromatic_index(G.complete_bipartite(n, m)).value


def test_table_oracle():
    e = C.table1_oracle("cycle:5")
    assert e.row == 9 and e.chi_prime.lo == 3 and e.chi_prime.printed == "2"
    assert C.table1_oracle("cycle:3").row == 1
    assert C.table1_oracle("kst:4,4").chi_prime_d.lo == 5
    assert C.table1_oracle("petersen").d_prime.lo == 3
    t15 = C.table1_oracle("symtree:2,3")
    assert t15.row == 15 and (t15.d_prime.lo, t15.d_prime.hi) == (1, 3)
    with pytest.raises(C.NotInTable):
        C.table1_oracle("path:2")


def test_join_bounds_and_sharpness():
    p3, p5 = G.path(3), G.path(5)
    b = C.join_bounds(p3, p5, 2, 2)
    val = distinguishing_chromatic_index(G.join(p3, p5)).value
    assert val == 7 and b.contains(val)
    assert C.join_bounds(G.path(2), G.path(2)) == C.BoundPair(5, 5)
    assert distinguishing_chromatic_index(G.join(G.path(2), G.path(2))).value == 5
    with pytest.raises(ValueError):
        C.join_bounds(G.cycle(4), G.cycle(4))


def test_join_side_path_small_factor():
    for h in [G.cycle(4), G.path(4), G.complete(3)]:
        for small in [G.Graph(1), G.path(2)]:
            b = C.join_bounds(small, h)
            assert b.contains(distinguishing_chromatic_index(G.join(small, h)).value)


def test_corona_bounds_small_cases():
    for h in [G.path(3), G.cycle(4)]:
        b = C.corona_bounds(G.path(2), h)
        assert b.contains(distinguishing_chromatic_index(G.corona(G.path(2), h)).value)
    b = C.corona_bounds(G.path(3), G.path(3), 2, 2)
    assert b.contains(distinguishing_chromatic_index(G.corona(G.path(3), G.path(3))).value)
    with pytest.raises(GraphError):
        C.corona_bounds(G.path(3), G.path(2), 2, 1)


def test_corona_upper_labeling_large():
    g, h = G.complete(8), G.complete(7)
    lab_g = C.construct_complete_even_labeling(4).labeling
    lab_h = EdgeLabeling(7, distinguishing_chromatic_index(h).certificate.labeling.labels)
    cert = C.corona_upper_labeling(g, h, lab_g, lab_h)
    assert cert.graph.n == 64 and cert.k == 14
    assert cert.proper and cert.distinguishing
    assert C.corona_bounds(g, h, 7, 7) == C.BoundPair(14, 14)


def test_join_upper_labeling():
    g, h = G.cycle(4), G.path(4)
    lg = distinguishing_chromatic_index(g).certificate.labeling
    lh = distinguishing_chromatic_index(h).certificate.labeling
    lb = distinguishing_chromatic_index(G.complete_bipartite(4, 4)).certificate.labeling
    cert = C.join_upper_labeling(g, h, lg, lh, lb)
    assert cert.proper and cert.distinguishing
    assert cert.k <= C.join_bounds(g, h, 4, 3).upper


@pytest.mark.parametrize("g,h", [("path:2", "path:3"), ("complete:3", "path:2"), ("cycle:4", "path:2")])
def test_corona_restriction(g, h):
    assert C.corona_automorphism_restriction_check(G.make_family(g), G.make_family(h))


def test_search_confirms_bipartite_lower_bounds():
    for s, t in [(3, 2), (4, 2), (4, 3), (5, 3)]:
        g = G.complete_bipartite(s, t)
        assert not feasible(g, "edge", s - 1, proper=True)
        assert certify(g, C.construct_bipartite_labeling(s, t).labeling).distinguishing
