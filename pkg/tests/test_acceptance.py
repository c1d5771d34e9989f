"""End-to-end acceptance checks; each test prints one summary line via conftest."""

import itertools
import random
import time
from math import comb

import pytest

from conftest import GOLDEN_A53
from oddeven.alternating import (
    alt_graph,
    default_alphas,
    enumerate_alt_topes,
    ham_circuit_n_3,
    ham_circuit_n_nminus1,
    realize,
    sign_changes,
)
from oddeven.certify import (
    check_simmons_wetzel,
    check_thm7,
    check_thm9,
    certify_instance,
    small_corpus,
    thm10_bound,
)
from oddeven.generators import (
    coxeter_A,
    cube_arrangement,
    planar_seed_search,
    product_construction,
    sjt_circuit,
    theorem8_assembly,
)
from oddeven.geometry import (
    delete,
    enumerate_topes,
    enumerate_topes_bruteforce,
    intersection_points,
    is_centrally_simple,
    is_simple,
    parse_signs,
    restrict,
)
from oddeven.graph import (
    Circuit,
    SearchBudget,
    TopeGraph,
    build_graph,
    find_hamiltonian,
    max_matching,
    signed_oe,
    verify_circuit,
)
from oddeven.randomgen import random_planar, random_simple_arrangement


def _formula(n, d):
    return 2 * comb(n // 2 - 1, (d - 1) // 2) if n % 2 == 0 and d % 2 == 1 else 0


@pytest.mark.criterion(1, "alternating invariant formula, brute force n <= 14, d <= 7")
def test_criterion_1_invariant_formula():
    t0 = time.perf_counter()
    for n in range(1, 15):
        # brute force: every sign sequence, bucketed by its number of sign changes
        by_changes = [0] * n
        for seq in itertools.product((1, -1), repeat=n):
            by_changes[sign_changes(seq)] += 1 if seq.count(1) % 2 == 0 else -1
        for d in range(1, min(n, 7) + 1):
            inv = abs(sum(by_changes[:d]))
            assert inv == _formula(n, d), (n, d)
    assert time.perf_counter() - t0 < 10


@pytest.mark.criterion(2, "A(n,3) circuits for n = 5..13 and the reference A(5,3) circuit")
def test_criterion_2_circuits_n_3():
    t0 = time.perf_counter()
    for n in (5, 7, 9, 11, 13):
        g = alt_graph(n, 3)
        seq = ham_circuit_n_3(n)
        assert len(seq) == 2 + n * (n - 1)
        check = verify_circuit(g, Circuit.from_signs(g, seq))
        assert check, check.reason
    g = alt_graph(5, 3)
    golden = [parse_signs(s) for s in GOLDEN_A53]
    assert len(golden) == 22
    assert verify_circuit(g, Circuit.from_signs(g, golden))
    built = ham_circuit_n_3(5)
    rotations = [golden[k:] + golden[:k] for k in range(22)]
    rotations += [list(reversed(r)) for r in rotations]
    assert built in rotations
    assert time.perf_counter() - t0 < 5


@pytest.mark.criterion(3, "A(n,n-1) circuits for n = 3..11")
def test_criterion_3_circuits_n_nminus1():
    t0 = time.perf_counter()
    for n in (3, 5, 7, 9, 11):
        g = alt_graph(n, n - 1)
        seq = ham_circuit_n_nminus1(n)
        assert len(seq) == 2 ** n - 2
        check = verify_circuit(g, Circuit.from_signs(g, seq))
        assert check, check.reason
    assert time.perf_counter() - t0 < 10


@pytest.mark.criterion(4, "realized alternating arrangements match the sign-change model")
def test_criterion_4_model_geometry_agreement():
    t0 = time.perf_counter()
    cases = 0
    for n in range(1, 9):
        # d = 1 realizes as n copies of one hyperplane, so only n = 1 is a valid arrangement
        for d in range(1 if n == 1 else 2, min(n, 4) + 1):
            arr = realize(n, d, default_alphas(n))
            g = build_graph(arr)
            model = alt_graph(n, d)
            assert list(g.topes) == enumerate_alt_topes(n, d), (n, d)
            assert g.edges == model.edges, (n, d)
            cases += 1
    assert cases == 19
    assert time.perf_counter() - t0 < 60


@pytest.mark.criterion(5, "product construction multiplies signed invariants and tope counts")
def test_criterion_5_product_identity():
    t0 = time.perf_counter()
    rng = random.Random(2024)
    for pair in range(6):
        factors = [
            random_planar(rng.randint(3, 5), rng.randrange(10 ** 6), degenerate=0.3 * (pair % 2))
            for _ in range(2)
        ]
        tope_sets = [enumerate_topes(f) for f in factors]
        rep = product_construction(factors)
        topes = enumerate_topes(rep.arrangement)
        assert signed_oe(topes) == signed_oe(tope_sets[0]) * signed_oe(tope_sets[1])
        assert signed_oe(topes) == rep.predicted_signed_oe
        assert len(topes) == len(tope_sets[0]) * len(tope_sets[1])
    assert time.perf_counter() - t0 < 60


@pytest.mark.criterion(6, "bounded-tope identities for 25 simple arrangements in R^3")
def test_criterion_6_bounded_identities():
    t0 = time.perf_counter()
    rng = random.Random(99)
    seen_parity = set()
    for k in range(25):
        n = 2 + k % 6
        arr = random_simple_arrangement(n, 3, rng.randrange(10 ** 6))
        cert = check_thm9(arr)
        det = cert.detail
        if n % 2:
            assert det["s_all"] == det["s_directions"] == det["s_bounded"] == 0
        else:
            assert 2 * det["s_bounded"] == -det["s_directions"]
        assert cert.verdict == "certified"
        seen_parity.add(n % 2)
    assert seen_parity == {0, 1}
    assert time.perf_counter() - t0 < 60


@pytest.mark.criterion(7, "ratio bound and circuit / matching contrapositive sweeps over the corpus")
def test_criterion_7_corpus_sweeps():
    t0 = time.perf_counter()
    corpus = small_corpus(seed=0)
    assert len(corpus) > 50
    checked = {"a": 0, "b": 0, "c": 0}
    for name, arr in corpus:
        g = build_graph(arr)
        assert len(g.topes) <= 200
        inv = g.oe_invariant()
        if not arr.central and arr.dim % 2 == 1 and is_simple(arr):
            assert inv <= thm10_bound(arr.n, arr.dim), name
            checked["a"] += 1
        search = find_hamiltonian(g, SearchBudget(200_000))
        if search.outcome == "found":
            assert inv == 0, name
            if arr.central:
                for i in range(arr.n):
                    lhs = abs(signed_oe(enumerate_topes(delete(arr, i))))
                    rhs = len(enumerate_topes(restrict(arr, i)))
                    assert lhs <= rhs, (name, i)
            checked["b"] += 1
        if arr.central and is_centrally_simple(arr) and max_matching(g).is_perfect(g):
            for i in range(arr.n):
                lhs = abs(signed_oe(enumerate_topes(delete(arr, i))))
                rhs = len(enumerate_topes(restrict(arr, i)))
                assert lhs <= 2 * rhs, (name, i)
            checked["c"] += 1
        # the packaged checks must agree: no refutations anywhere
        assert not any(c.is_bug for c in certify_instance(name, arr)), name
    assert min(checked.values()) >= 5, checked
    assert time.perf_counter() - t0 < 300


@pytest.mark.criterion(8, "Simmons-Wetzel inequality on 50 planar arrangements")
def test_criterion_8_simmons_wetzel():
    t0 = time.perf_counter()
    rng = random.Random(7)
    kinds = set()
    done = 0
    while done < 50:
        n = rng.randint(3, 8)
        arr = random_planar(n, rng.randrange(10 ** 6), degenerate=0.0 if done % 2 else 0.6)
        if not intersection_points(arr):
            continue  # all lines parallel: outside the inequality's hypothesis
        cert = check_simmons_wetzel(arr)
        b, c = cert.detail["b"], cert.detail["c"]
        assert max(b, c) <= 2 * min(b, c) - 2 - cert.detail["correction"]
        assert cert.verdict == "certified"
        kinds.add(is_simple(arr))
        done += 1
    assert kinds == {True, False}
    assert time.perf_counter() - t0 < 30


@pytest.mark.criterion(9, "cube and Coxeter generators")
def test_criterion_9_generators():
    t0 = time.perf_counter()
    for n in range(1, 11):
        topes = enumerate_topes(cube_arrangement(n))
        assert len(topes) == 2 ** n
        if n <= 6:
            g = TopeGraph.from_topes(topes) if n > 3 else build_graph(cube_arrangement(n))
            res = find_hamiltonian(g)
            assert res.outcome == "found"
            assert verify_circuit(g, res.circuit)
    fact = 1
    for n in range(1, 5):
        fact *= n + 1
        g = build_graph(coxeter_A(n))
        assert len(g.topes) == fact
        assert g.oe_invariant() == 0
        assert verify_circuit(g, sjt_circuit(n, g))
    assert time.perf_counter() - t0 < 60


@pytest.mark.criterion(10, "seed search + added hyperplane: invariant 0 with a certified obstruction")
def test_criterion_10_theorem8_pipeline():
    t0 = time.perf_counter()
    seed = planar_seed_search(10, budget=1000, seed=1, restarts=3)
    rep = theorem8_assembly(seed, seed=0)
    arr = rep.arrangement
    new = rep.extra["new_index"]
    assert arr.n % 2 == 1
    # independent recount by filtering all sign vectors
    all_topes = enumerate_topes_bruteforce(arr)
    assert signed_oe(all_topes) == 0 == rep.extra["oe_result"]
    lhs = abs(signed_oe(enumerate_topes_bruteforce(delete(arr, new))))
    rhs = len(enumerate_topes_bruteforce(restrict(arr, new)))
    assert (lhs, rhs) == (rep.extra["oe_input"], rep.extra["restricted_topes"])
    cert = check_thm7(arr, new)
    assert (cert.lhs, cert.rhs) == (lhs, rhs)
    if abs(seed.signed_oe) > seed.n_lines:
        assert rep.extra["certificate"]
        assert cert.verdict == "certified"
    else:
        assert rep.extra["certificate"] == (lhs > rhs)
    assert time.perf_counter() - t0 < 120
