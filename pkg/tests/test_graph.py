import itertools
import json

import networkx as nx
from hypothesis import given, strategies as st

from conftest import GOLDEN_A53
from oddeven.alternating import alt_graph, realize
from oddeven.generators import coxeter_A, cube_arrangement
from oddeven.geometry import Arrangement, Hyperplane, parse_signs
from oddeven.graph import (
    BURNT_UMBER,
    CHARTREUSE,
    Circuit,
    SearchBudget,
    TopeGraph,
    build_graph,
    circuit_to_json,
    color,
    find_hamiltonian,
    graph_to_json,
    has_perfect_matching,
    matching_to_json,
    max_matching,
    oe_invariant,
    sigma,
    signed_oe,
    to_dot,
    verify_circuit,
)
from oddeven.randomgen import random_arrangement

A63 = realize(6, 3, [-2, -1, 0, 1, 2, 3])


def to_nx(g: TopeGraph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(len(g.topes)))
    h.add_edges_from(g.edges)
    return h


def brute_hamiltonian(g: TopeGraph) -> bool:
    n = len(g.topes)
    if n == 2:
        return len(g.edges) == 1
    for rest in itertools.permutations(range(1, n)):
        order = (0,) + rest
        if all(g.has_edge(order[k], order[(k + 1) % n]) for k in range(n)):
            return True
    return False


cube_subsets = st.integers(2, 4).flatmap(
    lambda m: st.sets(st.tuples(*[st.sampled_from((1, -1))] * m), min_size=2, max_size=8)
)


def test_sigma_and_colors():
    assert sigma((1, 1, 1)) == 3
    assert sigma((-1, -1)) == 0
    assert sigma(parse_signs("+-+++")) == 4
    assert color((-1, -1, -1)) == BURNT_UMBER
    assert color((1, -1, -1)) == CHARTREUSE


def test_signed_oe_examples():
    assert signed_oe(build_graph(cube_arrangement(3)).topes) == 0
    assert abs(signed_oe(build_graph(A63).topes)) == 4
    assert signed_oe([]) == 0


def test_oe_invariant_examples():
    assert oe_invariant(A63) == 4
    assert oe_invariant(coxeter_A(2)) == 0
    assert oe_invariant(realize(7, 3, range(7))) == 0


def test_build_graph_examples():
    g = build_graph(coxeter_A(2))
    assert nx.is_isomorphic(to_nx(g), nx.cycle_graph(6))
    assert g.color_counts() == (3, 3)
    q3 = build_graph(cube_arrangement(3))
    assert nx.is_isomorphic(to_nx(q3), nx.hypercube_graph(3))
    one = build_graph(Arrangement(2, (Hyperplane((1, 1)),)))
    assert len(one.topes) == 2 and len(one.edges) == 1


@given(st.integers(0, 10 ** 6), st.integers(1, 6), st.integers(2, 3), st.booleans())
def test_graph_invariants(seed, n, d, central):
    arr = random_arrangement(n, d, seed, central=central)
    g = build_graph(arr)
    assert g.is_connected() and g.is_properly_colored()
    b, c = g.color_counts()
    assert g.oe_invariant() == abs(b - c) == abs(signed_oe(g.topes))
    for a, e in g.edges:
        assert sum(x != y for x, y in zip(g.topes[a], g.topes[e])) == 1


@given(st.integers(0, 10 ** 6), st.integers(1, 6))
def test_antipodal_automorphism(seed, n):
    g = build_graph(random_arrangement(n, 3, seed, central=True))
    anti = {k: g.index[tuple(-v for v in t)] for k, t in enumerate(g.topes)}
    assert {(min(anti[a], anti[b]), max(anti[a], anti[b])) for a, b in g.edges} == set(g.edges)
    same = all(g.colors[k] == g.colors[anti[k]] for k in anti)
    assert same == (n % 2 == 0)


# --- circuits ------------------------------------------------------------------------


def test_search_examples():
    g = build_graph(Arrangement(2, tuple(Hyperplane(v) for v in ((1, 0), (0, 1), (1, 1)))))
    res = find_hamiltonian(g)
    assert res.outcome == "found" and len(res.circuit) == 6
    res = find_hamiltonian(build_graph(cube_arrangement(3)))
    assert res.outcome == "found" and len(res.circuit) == 8
    res = find_hamiltonian(build_graph(A63))
    assert res.outcome == "none" and "4" in res.reason and res.expansions == 0


def test_search_unknown_is_not_none():
    g = TopeGraph.from_topes(itertools.product((1, -1), repeat=6))
    res = find_hamiltonian(g, SearchBudget(max_expansions=3))
    assert res.outcome == "unknown"
    assert find_hamiltonian(g).outcome == "found"


def test_search_exhausts_balanced_non_hamiltonian():
    # connected, balanced, minimum degree 2, yet no Hamiltonian circuit
    topes = ["++++", "+++-", "++--", "+-++", "+-+-", "+---", "-++-", "--+-"]
    g = TopeGraph.from_topes(parse_signs(t) for t in topes)
    assert g.oe_invariant() == 0 and g.is_connected()
    assert brute_hamiltonian(g) is False
    res = find_hamiltonian(g)
    assert res.outcome == "none" and res.expansions > 0


def test_two_separated_topes():
    g = TopeGraph.from_topes([(1, 1), (-1, -1)])
    assert find_hamiltonian(g).outcome == "none"
    assert not verify_circuit(g, Circuit((0, 1)))


@given(cube_subsets)
def test_search_matches_bruteforce(topes):
    g = TopeGraph.from_topes(topes)
    res = find_hamiltonian(g)
    assert res.outcome in ("found", "none")
    assert (res.outcome == "found") == brute_hamiltonian(g)
    if res.circuit is not None:
        assert verify_circuit(g, res.circuit)
        assert g.oe_invariant() == 0


def test_verify_circuit_examples():
    g = alt_graph(5, 3)
    golden = [parse_signs(s) for s in GOLDEN_A53]
    assert verify_circuit(g, Circuit.from_signs(g, golden))
    assert verify_circuit(g, Circuit.from_signs(g, golden[1:] + golden[:1]))
    swapped = list(golden)
    swapped[3], swapped[7] = swapped[7], swapped[3]
    check = verify_circuit(g, Circuit.from_signs(g, swapped))
    assert not check and "not adjacent" in check.reason
    check = verify_circuit(g, Circuit.from_signs(g, golden[:-1] + golden[:1]))
    assert not check and "repeated" in check.reason
    assert not verify_circuit(g, Circuit.from_signs(g, golden[:-1]))


# --- matchings -------------------------------------------------------------------------


def test_matching_examples():
    g = build_graph(coxeter_A(2))
    m = max_matching(g)
    assert len(m) == 3 and m.is_perfect(g) and m.is_valid(g)
    g = build_graph(A63)
    assert g.color_counts() == (14, 18)
    assert not has_perfect_matching(g)
    assert has_perfect_matching(build_graph(Arrangement(1, (Hyperplane((1,)),))))


@given(cube_subsets)
def test_matching_matches_networkx(topes):
    g = TopeGraph.from_topes(topes)
    m = max_matching(g)
    assert m.is_valid(g)
    assert len(m) == len(nx.max_weight_matching(to_nx(g), maxcardinality=True))


@given(cube_subsets, st.randoms(use_true_random=False))
def test_matching_size_relabel_invariant(topes, rnd):
    g = TopeGraph.from_topes(topes)
    perm = list(range(len(next(iter(topes)))))
    rnd.shuffle(perm)
    relabeled = TopeGraph.from_topes(tuple(t[p] for p in perm) for t in topes)
    assert len(max_matching(g)) == len(max_matching(relabeled))


# --- export ------------------------------------------------------------------------------


def test_exports():
    g = build_graph(cube_arrangement(2))
    res = find_hamiltonian(g)
    dot = to_dot(g, res.circuit)
    assert dot.startswith("graph topes {") and '"++"' in dot and "penwidth" in dot
    doc = graph_to_json(g)
    assert doc["topes"] == ["++", "+-", "-+", "--"] and doc["signed_oe"] == 0
    assert circuit_to_json(g, res.circuit)["length"] == 4
    assert matching_to_json(g, max_matching(g))["perfect"] is True
    json.dumps(doc)
