from __future__ import annotations

from functools import cmp_to_key
from itertools import combinations, product
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperlag.hypergraph import (
    UniformHypergraph,
    are_equivalent,
    cliques,
    colex_first_m,
    colex_key,
    colex_less,
    colex_rank,
    colex_unrank,
    complement,
    contains_complete_subgraph,
    diff_link,
    dominated,
    equivalent_classes,
    is_left_compressed,
    is_right_compressed,
    left_compress,
    left_compress_steps,
    link,
    max_clique_order,
    pair_link,
    read_graph,
    write_graph,
)
from hyperlag.poset import enumerate_candidates

K = UniformHypergraph.complete


@st.composite
def graphs(draw, max_n=7, rs=(2, 3)):
    r = draw(st.sampled_from(rs))
    n = draw(st.integers(r, max_n))
    pool = list(combinations(range(1, n + 1), r))
    mask = draw(st.lists(st.booleans(), min_size=len(pool), max_size=len(pool)))
    return UniformHypergraph(r, n, [e for e, keep in zip(pool, mask) if keep])


def _colex_cmp(a, b):
    return -1 if colex_less(a, b) else (0 if a == b else 1)


# -- colex order --------------------------------------------------------------


@pytest.mark.parametrize(
    "a,b,expected",
    [((2, 4, 6), (1, 5, 6), True), ((1, 2, 3), (1, 2, 4), True), ((1, 5, 6), (2, 4, 6), False)],
)
def test_colex_less_examples(a, b, expected):
    assert colex_less(a, b) is expected


def test_colex_less_rejects_mixed_arity():
    with pytest.raises(ValueError):
        colex_less((1, 2), (1, 2, 3))


def test_colex_is_strict_total_order_on_triples_of_7():
    T = list(combinations(range(1, 8), 3))
    for a in T:
        assert not colex_less(a, a)
    for a, b in product(T, T):
        if a != b:
            assert colex_less(a, b) != colex_less(b, a)
    for a, b, c in product(T, T, T):
        if colex_less(a, b) and colex_less(b, c):
            assert colex_less(a, c)


def test_colex_key_agrees_with_definition():
    T = list(combinations(range(1, 9), 3))
    assert sorted(T, key=colex_key) == sorted(T, key=cmp_to_key(_colex_cmp))


@pytest.mark.parametrize("r", [1, 2, 3, 4])
def test_rank_unrank_roundtrip(r):
    for k in range(300):
        e = colex_unrank(k, r)
        assert colex_rank(e) == k
        assert list(e) == sorted(set(e))


@pytest.mark.parametrize(
    "r,m,expected",
    [
        (3, 4, [(1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4)]),
        (3, 2, [(1, 2, 3), (1, 2, 4)]),
        (3, 11, sorted(list(combinations(range(1, 6), 3)) + [(1, 2, 6)], key=colex_key)),
    ],
)
def test_colex_first_m_examples(r, m, expected):
    G = colex_first_m(r, m)
    assert list(G.edges) == expected
    assert G.n == max(e[-1] for e in expected)


@pytest.mark.parametrize("r", [2, 3, 4])
def test_colex_first_m_matches_bruteforce_sort(r):
    # sort every r-subset of a large enough ground set with the comparator alone
    universe = sorted(combinations(range(1, 22), r), key=cmp_to_key(_colex_cmp))
    for m in range(0, 201):
        assert list(colex_first_m(r, m).edges) == universe[:m]


def test_colex_first_m_of_binomial_is_complete():
    for r in range(1, 5):
        for t in range(r, 9):
            assert colex_first_m(r, comb(t, r)) == K(t, r)


def test_colex_first_m_zero_and_negative():
    assert colex_first_m(3, 0).m == 0
    with pytest.raises(ValueError):
        colex_first_m(3, -1)


# -- construction and file format --------------------------------------------


def test_constructor_validates():
    with pytest.raises(ValueError):
        UniformHypergraph(3, 4, [(1, 2, 5)])
    with pytest.raises(ValueError):
        UniformHypergraph(3, 4, [(1, 2)])
    with pytest.raises(ValueError):
        UniformHypergraph(3, 4, [(1, 2, 3), (3, 2, 1)])


def test_edges_are_colex_sorted():
    G = UniformHypergraph(3, 5, [(3, 4, 5), (1, 2, 3), (1, 2, 5), (1, 4, 5)])
    assert list(G.edges) == [(1, 2, 3), (1, 2, 5), (1, 4, 5), (3, 4, 5)]


def test_file_roundtrip_is_bit_exact(tmp_path, g6):
    p = tmp_path / "g.json"
    write_graph(g6, p)
    first = p.read_bytes()
    H = read_graph(p)
    assert H == g6
    write_graph(H, tmp_path / "h.json")
    assert (tmp_path / "h.json").read_bytes() == first


@pytest.mark.parametrize(
    "doc",
    ['{"r":3,"n":4}', '{"r":3,"n":4,"edges":[[2,1,3]]}', '{"r":"3","n":4,"edges":[]}', "[]"],
)
def test_malformed_documents_raise(doc):
    with pytest.raises(ValueError):
        UniformHypergraph.loads(doc)


@settings(max_examples=60, deadline=None)
@given(graphs())
def test_dumps_loads_roundtrip(G):
    assert UniformHypergraph.loads(G.dumps()) == G


# -- complement and links ------------------------------------------------------


def test_complement_examples(g6):
    assert complement(K(4, 3)).m == 0
    assert complement(UniformHypergraph(3, 4)) == K(4, 3)
    assert set(complement(g6).edges) == {(3, 4, 5), (3, 4, 6), (3, 5, 6), (4, 5, 6)}


@settings(max_examples=80, deadline=None)
@given(graphs())
def test_complement_is_involution(G):
    assert complement(complement(G)) == G
    assert G.m + complement(G).m == comb(G.n, G.r)


def test_link_examples(g6):
    assert set(link(UniformHypergraph(3, 3, [(1, 2, 3)]), 1)) == {(2, 3)}
    assert set(link(K(4, 3), 4)) == {(1, 2), (1, 3), (2, 3)}
    assert set(link(g6, 6)) == set(combinations(range(1, 6), 2)) - {(3, 4), (3, 5), (4, 5)}


def test_link_size_is_degree(g6):
    for v in g6.vertices:
        assert len(link(g6, v)) == g6.degree(v)


def test_pair_link_examples(g6):
    assert set(pair_link(K(5, 3), 4, 5)) == {(1,), (2,), (3,)}
    assert len(pair_link(UniformHypergraph(3, 4, [(1, 2, 3)]), 1, 4)) == 0
    assert set(pair_link(g6, 5, 6)) == {(1,), (2,)}


def test_link_errors(g6):
    with pytest.raises(ValueError):
        link(g6, 7)
    with pytest.raises(ValueError):
        pair_link(g6, 2, 2)
    with pytest.raises(ValueError):
        pair_link(g6, 0, 2)
    with pytest.raises(ValueError):
        diff_link(g6, 3, 3)


def test_diff_link_examples():
    G = K(4, 3)
    for i, j in combinations(range(1, 5), 2):
        assert len(diff_link(G, i, j)) == 0 and len(diff_link(G, j, i)) == 0
    assert set(diff_link(UniformHypergraph(3, 4, [(1, 2, 4)]), 4, 3)) == {(1, 2)}


def test_left_compressed_candidates_have_empty_reverse_diff_links():
    for G in enumerate_candidates(7):
        for i, j in combinations(G.vertices, 2):
            assert len(diff_link(G, j, i)) == 0


# -- compression ----------------------------------------------------------------


def _bruteforce_left_compressed(G):
    es = G.edge_set
    for e in G.edges:
        for f in product(*(range(1, v + 1) for v in e)):
            if len(set(f)) == len(f) and tuple(sorted(f)) == f and f not in es:
                return False
    return True


def test_is_left_compressed_examples(g6):
    assert is_left_compressed(K(5, 3))
    assert not is_left_compressed(UniformHypergraph(3, 4, [(1, 2, 4)]))
    assert is_left_compressed(g6)


def test_dominated_lists_all_coordinatewise_smaller_tuples():
    e = (2, 4, 6)
    expect = {
        f for f in product(range(1, 3), range(1, 5), range(1, 7)) if f[0] < f[1] < f[2] and f != e
    }
    assert set(dominated(e)) == expect


@settings(max_examples=150, deadline=None)
@given(graphs(max_n=6))
def test_left_compressed_iff_no_reverse_diff_link(G):
    by_links = all(len(diff_link(G, j, i)) == 0 for i, j in combinations(G.vertices, 2))
    assert is_left_compressed(G) == by_links == _bruteforce_left_compressed(G)


@settings(max_examples=100, deadline=None)
@given(graphs(max_n=6))
def test_complement_of_left_compressed_is_right_compressed(G):
    L = left_compress(G)
    assert is_right_compressed(complement(L))


def _terminal_states(G):
    """Every left-compressed graph reachable by some sequence of single
    edge-for-dominated-non-edge replacements."""
    seen, stack, terminal = set(), [G.edge_set], set()
    while stack:
        es = stack.pop()
        if es in seen:
            continue
        seen.add(es)
        moved = False
        for e in es:
            for f in combinations(range(1, G.n + 1), G.r):
                if f not in es and f != e and all(a <= b for a, b in zip(f, e)):
                    stack.append((es - {e}) | {f})
                    moved = True
        if not moved:
            terminal.add(es)
    return terminal


def test_left_compress_examples():
    assert left_compress(K(5, 3)) == K(5, 3)
    assert left_compress(UniformHypergraph(3, 6, [(4, 5, 6)])).edges == ((1, 2, 3),)
    G = UniformHypergraph(3, 4, [(1, 3, 4), (2, 3, 4)])
    out = left_compress(G)
    assert out.edges == ((1, 2, 3), (1, 2, 4))
    ends = _terminal_states(G)
    assert out.edge_set in ends
    assert all(len(es) == 2 for es in ends)


@settings(max_examples=100, deadline=None)
@given(graphs(max_n=6))
def test_left_compress_steps_invariants(G):
    prev = sum(colex_rank(e) for e in G.edges)
    steps = list(left_compress_steps(G))
    assert steps[0] == G
    last = G
    for H in steps[1:]:
        assert H.m == G.m
        cur = sum(colex_rank(e) for e in H.edges)
        assert cur < prev
        prev, last = cur, H
    assert is_left_compressed(last)
    assert left_compress(G) == last


# -- cliques ----------------------------------------------------------------


def _bruteforce_omega(G):
    best = 0
    for t in range(1, G.n + 1):
        if any(all(e in G.edge_set for e in combinations(S, G.r)) for S in combinations(G.vertices, t)):
            best = t
    return best


def test_max_clique_order_examples(g6):
    assert max_clique_order(K(5, 3)) == 5
    assert max_clique_order(g6) == 4
    assert max_clique_order(colex_first_m(3, comb(6, 3))) == 6


def test_edgeless_clique_convention():
    assert max_clique_order(UniformHypergraph(3, 6)) == 2
    assert max_clique_order(UniformHypergraph(3, 1)) == 1
    assert max_clique_order(UniformHypergraph(2, 4)) == 1


@settings(max_examples=100, deadline=None)
@given(graphs(max_n=7))
def test_max_clique_order_matches_bruteforce(G):
    if G.m:
        assert max_clique_order(G) == _bruteforce_omega(G)


def test_contains_complete_subgraph_examples(g6):
    assert contains_complete_subgraph(g6, 5) is False
    assert contains_complete_subgraph(g6, 4) is True
    assert contains_complete_subgraph(K(5, 3), 5) is True
    with pytest.raises(ValueError):
        contains_complete_subgraph(g6, 2)


def test_cliques_lists_complete_subsets(g6):
    assert set(cliques(g6, 4)) == {
        S for S in combinations(range(1, 7), 4) if g6.induced_complete(S)
    }


@settings(max_examples=80, deadline=None)
@given(graphs(max_n=6), st.data())
def test_clique_order_monotone_under_inclusion(G, data):
    sub = [e for e in G.edges if data.draw(st.booleans())]
    H = G.with_edges(sub)
    assert H <= G
    assert max_clique_order(H) <= max_clique_order(G)


# -- equivalence ----------------------------------------------------------------


def _swap_invariant(G, i, j):
    # i ~ j iff the transposition (i j) maps E onto itself
    def swap(v):
        return j if v == i else i if v == j else v

    return {tuple(sorted(map(swap, e))) for e in G.edges} == G.edge_set


def test_equivalent_classes_examples(g6):
    assert equivalent_classes(K(5, 3)) == [(1, 2, 3, 4, 5)]
    assert equivalent_classes(UniformHypergraph(3, 4, [(1, 2, 3)])) == [(1, 2, 3), (4,)]
    # 3 and 4 agree on every pair avoiding both: 12, 15, 16, 25, 26 complete
    # both, 56 completes neither
    assert equivalent_classes(g6) == [(1, 2), (3, 4, 5, 6)]


@settings(max_examples=120, deadline=None)
@given(graphs(max_n=6))
def test_equivalence_matches_transposition_symmetry(G):
    for i, j in combinations(G.vertices, 2):
        assert are_equivalent(G, i, j) == _swap_invariant(G, i, j)
    classes = equivalent_classes(G)
    assert sorted(v for c in classes for v in c) == list(G.vertices)
    for c in classes:
        assert all(are_equivalent(G, a, b) for a, b in combinations(c, 2))
    for c1, c2 in combinations(classes, 2):
        assert not are_equivalent(G, c1[0], c2[0])
