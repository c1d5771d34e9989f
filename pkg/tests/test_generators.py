import itertools
import json
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from oddeven.alternating import realize
from oddeven.generators import (
    PlanarSeed,
    coxeter_A,
    coxeter_pairs,
    cube_arrangement,
    cylinder_lift,
    direct_sum,
    integer_planar_score,
    is_generic_addition,
    permutation_tope,
    planar_seed_search,
    planar_topes_simple,
    product_construction,
    sjt_circuit,
    sjt_permutations,
    theorem8_assembly,
    theorem8_input,
)
from oddeven.geometry import (
    Arrangement,
    ArrangementError,
    Hyperplane,
    delete,
    enumerate_topes,
    is_simple,
)
from oddeven.graph import build_graph, signed_oe, verify_circuit
from oddeven.randomgen import random_planar, random_simple_arrangement

int_lines = st.lists(
    st.tuples(st.integers(-6, 6), st.integers(-6, 6), st.integers(-6, 6)).filter(lambda t: t[0] or t[1]),
    min_size=2,
    max_size=6,
    unique=True,
)


def as_arrangement(lines):
    return Arrangement(2, tuple(Hyperplane((a, b), c) for a, b, c in lines), False)


# --- cube and Coxeter ------------------------------------------------------------


def test_cube_examples():
    assert len(enumerate_topes(cube_arrangement(4))) == 16
    assert set(enumerate_topes(cube_arrangement(3))) == set(itertools.product((1, -1), repeat=3))
    with pytest.raises(ValueError):
        cube_arrangement(0)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_coxeter_topes_are_permutations(n):
    arr = coxeter_A(n)
    assert arr.n == len(coxeter_pairs(n)) == n * (n + 1) // 2
    expected = set()
    for perm in itertools.permutations(range(n + 1)):
        # a point whose coordinates are ranked by perm: x_v = position of v, centered
        pos = [F(perm.index(v)) - F(n, 2) for v in range(n + 1)]
        signs = arr.sign_of(tuple(pos[1:]))
        assert signs == permutation_tope(perm)
        expected.add(signs)
    assert set(enumerate_topes(arr)) == expected


def test_coxeter_a2_is_hexagon():
    g = build_graph(coxeter_A(2))
    assert len(g.topes) == 6 and all(len(a) == 2 for a in g.adjacency)


@pytest.mark.parametrize("m", range(1, 7))
def test_sjt_order(m):
    perms = sjt_permutations(m)
    assert len(perms) == len(set(perms)) and set(perms) == set(itertools.permutations(range(m)))
    pairs = list(zip(perms, perms[1:]))
    if m >= 3:
        pairs.append((perms[-1], perms[0]))
    for p, q in pairs:
        diff = [k for k in range(m) if p[k] != q[k]]
        assert len(diff) == 2 and diff[1] == diff[0] + 1


def test_sjt_small_listing():
    assert sjt_permutations(3) == [(0, 1, 2), (0, 2, 1), (2, 0, 1), (2, 1, 0), (1, 2, 0), (1, 0, 2)]


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_sjt_circuit_on_geometry(n):
    g = build_graph(coxeter_A(n)) if n < 5 else None
    c = sjt_circuit(n, g)
    if g is not None:
        assert verify_circuit(g, c)
    assert len(c) == len(set(c.order)) == len(sjt_permutations(n + 1))


# --- product and lift ------------------------------------------------------------


@settings(max_examples=15)
@given(st.lists(st.tuples(st.integers(1, 4), st.integers(0, 10 ** 6), st.booleans()), min_size=1, max_size=3))
def test_product_identity(specs):
    factors = [random_planar(n, seed, degenerate=0.5 * deg) for n, seed, deg in specs]
    rep = product_construction(factors)
    topes = enumerate_topes(rep.arrangement)
    assert signed_oe(topes) == rep.predicted_signed_oe == rep.enumerated_signed_oe()
    assert len(topes) == rep.extra["predicted_topes"]
    assert rep.arrangement.dim == 2 * len(factors)


def test_product_examples():
    # two simple 3-line factors: each has |signed oe| = 1
    t = random_simple_arrangement(3, 2, 5)
    s = signed_oe(enumerate_topes(t))
    assert abs(s) == 1
    rep = product_construction([t, t])
    assert rep.enumerated_signed_oe() == s * s == 1
    doc = rep.to_json()
    assert doc["provenance"]["construction"] == "product" and len(doc["factors"]) == 2
    json.dumps(doc)
    with pytest.raises(ValueError):
        product_construction([])
    assert direct_sum([cube_arrangement(1), cube_arrangement(2)]) == cube_arrangement(3)


@given(st.integers(0, 10 ** 6), st.integers(1, 5), st.integers(1, 2))
def test_cylinder_lift_keeps_topes(seed, n, extra):
    arr = random_simple_arrangement(n, 2, seed)
    lifted = cylinder_lift(arr, extra)
    assert lifted.dim == 2 + extra
    assert enumerate_topes(lifted) == enumerate_topes(arr)


def test_cylinder_lift_rejects_zero():
    with pytest.raises(ValueError):
        cylinder_lift(cube_arrangement(2), 0)


# --- planar seeds ------------------------------------------------------------------


@given(int_lines)
def test_integer_score_matches_enumeration(lines):
    score = integer_planar_score(lines)
    arr = as_arrangement(lines) if len({(a, b, c) for a, b, c in lines}) == len(lines) else None
    try:
        ok = arr is not None and is_simple(arr)
        parallel = any(a1 * b2 == a2 * b1 for (a1, b1, _), (a2, b2, _) in itertools.combinations(lines, 2))
    except ArrangementError:
        ok, parallel = False, True
    if ok and not parallel:
        assert score == signed_oe(enumerate_topes(arr))
        assert planar_topes_simple(arr) == enumerate_topes(arr)
    else:
        assert score is None


def test_planar_topes_simple_rejects_degenerate():
    with pytest.raises(ArrangementError):
        planar_topes_simple(as_arrangement([(1, 0, 0), (0, 1, 0), (1, 1, 0)]))
    with pytest.raises(ArrangementError):
        planar_topes_simple(as_arrangement([(1, 0, 0), (1, 0, 1), (0, 1, 0)]))


def test_seed_search_small():
    seed = planar_seed_search(3, budget=50)
    assert isinstance(seed, PlanarSeed)
    assert abs(seed.signed_oe) == 1 and seed.n_lines == 3 and is_simple(seed.arrangement)
    again = planar_seed_search(3, budget=50)
    assert again.arrangement == seed.arrangement


def test_seed_search_budget_zero_and_errors():
    seed = planar_seed_search(5, budget=0, seed=3)
    assert seed.signed_oe == signed_oe(enumerate_topes(seed.arrangement))
    with pytest.raises(ValueError):
        planar_seed_search(2)
    with pytest.raises(ValueError):
        planar_seed_search(5, budget=-1)
    with pytest.raises(ValueError):
        planar_seed_search(5, restarts=0)


def test_seed_search_improves_on_random_start():
    start = planar_seed_search(7, budget=0, seed=4)
    better = planar_seed_search(7, budget=300, seed=4)
    assert abs(better.signed_oe) >= abs(start.signed_oe)


# --- adding a generic hyperplane ---------------------------------------------------


def test_generic_addition_examples():
    cube = cube_arrangement(3)
    assert is_generic_addition(cube, (1, 2, 3))
    assert not is_generic_addition(cube, (1, 1, 0))  # contains the z axis
    assert not is_generic_addition(cube, (2, 0, 0))
    assert not is_generic_addition(cube, (0, 0, 0))


def test_assembly_invariant_zero_input():
    arr = coxeter_A(3)
    rep = theorem8_assembly(arr, seed=2)
    assert rep.extra["oe_input"] == 0 and rep.extra["certificate"] is False
    assert rep.extra["oe_result"] == 0 == rep.enumerated_signed_oe()
    assert rep.arrangement.n == 7
    assert delete(rep.arrangement, rep.extra["new_index"]) == arr


def test_assembly_from_alternating():
    arr = realize(6, 3, [-2, -1, 0, 1, 2, 3])
    rep = theorem8_assembly(arr)
    assert rep.extra["oe_input"] == 4
    assert rep.extra["oe_result"] == 0
    assert rep.extra["certificate"] == (4 > rep.extra["restricted_topes"])
    json.dumps(rep.to_json())


def test_assembly_input_rules():
    odd_seed = planar_seed_search(3, budget=0)
    lifted = theorem8_input(odd_seed)
    assert lifted.central and lifted.dim == 3 and lifted.n == 4
    assert theorem8_input(random_simple_arrangement(4, 2, 1)).n == 4
    with pytest.raises(ArrangementError):
        theorem8_input(cube_arrangement(3))  # odd number of planes
    with pytest.raises(ArrangementError):
        theorem8_input(cube_arrangement(2))  # even dimension
    with pytest.raises(ArrangementError):
        theorem8_input(Arrangement(1, (Hyperplane((1,)), ), True))
