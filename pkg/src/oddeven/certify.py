"""Executable checks of the odd-even results over concrete arrangements.

Every check returns a :class:`Certificate` carrying both sides of the
inequality or identity it tested. ``refuted-implementation-bug`` means a
proven statement failed on exact data, so something in this package is
wrong; it is never an expected outcome.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import comb
from typing import Callable, Iterable, Optional

from .alternating import default_alphas, enumerate_alt_topes, realize
from .geometry import (
    Arrangement,
    classify_bounded,
    delete,
    direction_topes,
    enumerate_topes,
    homogenize,
    intersection_points,
    is_centrally_simple,
    is_simple,
    restrict,
)
from .graph import (
    Matching,
    SearchBudget,
    SearchResult,
    TopeGraph,
    build_graph,
    find_hamiltonian,
    max_matching,
    signed_oe,
)
from .generators import (
    coxeter_A,
    cube_arrangement,
    direct_sum,
    planar_seed_search,
    theorem8_assembly,
)
from .randomgen import (
    random_arrangement,
    random_centrally_simple,
    random_planar,
    random_simple_arrangement,
)

CERTIFIED = "certified"
NOT_APPLICABLE = "not-applicable"
BUG = "refuted-implementation-bug"

__all__ = [
    "Certificate",
    "HypothesisError",
    "check_thm1",
    "check_thm3",
    "check_thm7",
    "check_thm9",
    "check_thm10_bound",
    "check_thm11",
    "check_simmons_wetzel",
    "random_simple_arrangement",
    "small_corpus",
    "certify_instance",
    "run_harness",
    "format_table",
]


class HypothesisError(ValueError):
    """The arrangement does not satisfy the hypothesis of the requested check."""


@dataclass
class Certificate:
    kind: str
    inputs: dict
    lhs: int
    rhs: int
    verdict: str
    detail: dict = field(default_factory=dict)

    @property
    def certified(self) -> bool:
        return self.verdict == CERTIFIED

    @property
    def is_bug(self) -> bool:
        return self.verdict == BUG

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "inputs": self.inputs,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "verdict": self.verdict,
            "detail": self.detail,
        }


def _inputs(arr: Arrangement, name: Optional[str], i: Optional[int] = None) -> dict:
    out = {"instance": name or f"n={arr.n},d={arr.dim}", "n": arr.n, "dim": arr.dim}
    if i is not None:
        out["hyperplane"] = i
    return out


def _require_central(arr: Arrangement, what: str) -> None:
    if not arr.central:
        raise HypothesisError(f"{what} needs a central arrangement")


def _require_simple_odd(arr: Arrangement, what: str) -> None:
    if arr.central:
        raise HypothesisError(f"{what} needs an affine arrangement")
    if arr.dim % 2 == 0:
        raise HypothesisError(f"{what} needs odd dimension, got {arr.dim}")
    if not is_simple(arr):
        raise HypothesisError(f"{what} needs a simple arrangement")


def _index_check(arr: Arrangement, i: int) -> None:
    if not 0 <= i < arr.n:
        raise HypothesisError(f"hyperplane index {i} out of range for {arr.n} hyperplanes")


# --- Hamiltonian circuits force a zero invariant ----------------------------------


def check_thm1(
    arr: Arrangement,
    budget: SearchBudget = SearchBudget(),
    name: Optional[str] = None,
    graph: Optional[TopeGraph] = None,
    search: Optional[SearchResult] = None,
) -> Certificate:
    """If the search finds a Hamiltonian circuit the invariant must be 0."""
    g = graph if graph is not None else build_graph(arr)
    res = search if search is not None else find_hamiltonian(g, budget)
    inv = g.oe_invariant()
    detail = {"search": res.outcome, "reason": res.reason, "expansions": res.expansions}
    if res.outcome != "found":
        verdict = NOT_APPLICABLE
    else:
        verdict = CERTIFIED if inv == 0 else BUG
    return Certificate("thm1", _inputs(arr, name), inv, 0, verdict, detail)


# --- parity rule for centrally simple arrangements ------------------------------------


def check_thm3(arr: Arrangement, name: Optional[str] = None) -> Certificate:
    """Centrally simple => invariant 0 unless n is even and d is odd."""
    _require_central(arr, "thm3")
    inv = abs(signed_oe(enumerate_topes(arr)))
    simple = is_centrally_simple(arr)
    excluded = arr.n % 2 == 0 and arr.dim % 2 == 1
    detail = {"centrally_simple": simple, "excluded_parity": excluded}
    if not simple or excluded:
        verdict = NOT_APPLICABLE
    else:
        verdict = CERTIFIED if inv == 0 else BUG
    return Certificate("thm3", _inputs(arr, name), inv, 0, verdict, detail)


# --- deletion / restriction certificates ----------------------------------------------


def _deletion_restriction(arr: Arrangement, i: int) -> tuple[int, int]:
    lhs = abs(signed_oe(enumerate_topes(delete(arr, i))))
    rhs = len(enumerate_topes(restrict(arr, i)))
    return lhs, rhs


def check_thm7(
    arr: Arrangement,
    i: int,
    name: Optional[str] = None,
    search: Optional[SearchResult] = None,
    budget: Optional[SearchBudget] = None,
) -> Certificate:
    """oe(A minus H_i) > |T(A restricted to H_i)| rules out Hamiltonian circuits.

    When a search result is supplied (or a budget to run one), a found
    circuit together with the inequality is reported as a bug.
    """
    _require_central(arr, "thm7")
    _index_check(arr, i)
    lhs, rhs = _deletion_restriction(arr, i)
    detail: dict = {}
    if search is None and budget is not None and lhs > rhs:
        search = find_hamiltonian(build_graph(arr), budget)
    if search is not None:
        detail["search"] = search.outcome
    if lhs > rhs:
        verdict = BUG if search is not None and search.outcome == "found" else CERTIFIED
    else:
        verdict = NOT_APPLICABLE
    return Certificate("thm7", _inputs(arr, name, i), lhs, rhs, verdict, detail)


def check_thm11(
    arr: Arrangement,
    i: int,
    name: Optional[str] = None,
    matching: Optional[Matching] = None,
    graph: Optional[TopeGraph] = None,
) -> Certificate:
    """Centrally simple with oe(A minus H_i) > 2 |T(A restricted to H_i)| => no perfect matching."""
    _require_central(arr, "thm11")
    if not is_centrally_simple(arr):
        raise HypothesisError("thm11 needs a centrally simple arrangement")
    _index_check(arr, i)
    lhs, rhs1 = _deletion_restriction(arr, i)
    rhs = 2 * rhs1
    detail: dict = {}
    if lhs > rhs:
        g = graph if graph is not None else build_graph(arr)
        if matching is None:
            matching = max_matching(g)
        perfect = 2 * len(matching) == len(g.topes)
        detail["matching_size"] = len(matching)
        detail["perfect_matching"] = perfect
        verdict = BUG if perfect else CERTIFIED
    else:
        verdict = NOT_APPLICABLE
    return Certificate("thm11", _inputs(arr, name, i), lhs, rhs, verdict, detail)


# --- bounded topes in odd dimension -----------------------------------------------------


def check_thm9(arr: Arrangement, name: Optional[str] = None) -> Certificate:
    """Signed sums over all, bounded and direction topes of a simple arrangement, d odd.

    n odd: all three sums vanish (lhs is the sum of their absolute values).
    n even: 2 s(T_b) = -s(T(A_inf)) (lhs and rhs are the two sides).
    """
    _require_simple_odd(arr, "thm9")
    topes = enumerate_topes(arr)
    bounded, _ = classify_bounded(arr, topes)
    s_all = signed_oe(topes)
    s_b = signed_oe(bounded)
    s_inf = signed_oe(direction_topes(arr))
    detail = {"s_all": s_all, "s_bounded": s_b, "s_directions": s_inf, "bounded": len(bounded)}
    if arr.n % 2 == 1:
        lhs, rhs = abs(s_all) + abs(s_b) + abs(s_inf), 0
    else:
        lhs, rhs = 2 * s_b, -s_inf
    return Certificate("thm9", _inputs(arr, name), lhs, rhs, CERTIFIED if lhs == rhs else BUG, detail)


def thm10_bound(n: int, d: int) -> int:
    """Number of topes of a centrally simple arrangement of n hyperplanes in R^d, d odd."""
    return 2 * sum(comb(n, d - 1 - 2 * k) for k in range((d - 1) // 2 + 1))


def check_thm10_bound(arr: Arrangement, name: Optional[str] = None) -> Certificate:
    _require_simple_odd(arr, "thm10")
    inv = abs(signed_oe(enumerate_topes(arr)))
    bound = thm10_bound(arr.n, arr.dim)
    return Certificate("thm10", _inputs(arr, name), inv, bound, CERTIFIED if inv <= bound else BUG)


# --- line arrangements --------------------------------------------------------------------


def check_simmons_wetzel(arr: Arrangement, name: Optional[str] = None) -> Certificate:
    """max(b, c) <= 2 min(b, c) - 2 - sum over points of (multiplicity - 2)."""
    if arr.dim != 2 or arr.central:
        raise HypothesisError("simmons-wetzel needs an affine planar arrangement")
    if arr.n < 3:
        raise HypothesisError("simmons-wetzel needs at least 3 lines")
    points = intersection_points(arr)
    if not points:
        raise HypothesisError("simmons-wetzel needs at least one intersection point")
    topes = enumerate_topes(arr)
    s = signed_oe(topes)
    b = (len(topes) + abs(s)) // 2
    c = len(topes) - b
    correction = sum(p.multiplicity - 2 for p in points)
    rhs = 2 * c - 2 - correction
    detail = {"b": b, "c": c, "correction": correction, "points": len(points)}
    return Certificate(
        "simmons-wetzel", _inputs(arr, name), b, rhs, CERTIFIED if b <= rhs else BUG, detail
    )


# --- harness ---------------------------------------------------------------------------------


MAX_CORPUS_TOPES = 200


def small_corpus(seed: int = 0, max_topes: int = MAX_CORPUS_TOPES) -> list[tuple[str, Arrangement]]:
    """Deterministic mix of named families and random instances.

    Only instances with at most ``max_topes`` topes are kept.
    """
    out: list[tuple[str, Arrangement]] = []
    for n in range(1, 8):
        out.append((f"cube({n})", cube_arrangement(n)))
    for n in range(1, 5):
        out.append((f"coxeter_A({n})", coxeter_A(n)))
    for n in range(1, 9):
        for d in range(1 if n == 1 else 2, min(n, 4) + 1):
            if len(enumerate_alt_topes(n, d)) <= max_topes:
                out.append((f"A({n},{d})", realize(n, d, default_alphas(n))))
    k = 0
    for d, ns in ((1, range(1, 6)), (2, range(2, 9)), (3, range(2, 8))):
        for n in ns:
            for r in range(2):
                out.append((f"simple(n={n},d={d},#{r})", random_simple_arrangement(n, d, seed * 7919 + k)))
                k += 1
    for n in range(3, 9):
        for r in range(2):
            out.append((f"planar(n={n},#{r})", random_planar(n, seed * 7919 + k, degenerate=0.5)))
            k += 1
    for n in range(2, 9):
        for d in (3, 4):
            out.append((f"central_simple(n={n},d={d})", random_centrally_simple(n, d, seed * 7919 + k)))
            k += 1
    for n in range(3, 7):
        out.append((f"central(n={n},d=3)", random_arrangement(n, 3, seed * 7919 + k, central=True)))
        k += 1
    for n in range(2, 7):
        base = random_simple_arrangement(n, 2, seed * 7919 + k)
        k += 1
        out.append((f"homogenized(n={n})", homogenize(base)))
    out.append(("cube(2)+planar(3)", direct_sum([cube_arrangement(2), random_simple_arrangement(3, 2, seed)])))
    # a strong seed plus a generic plane: invariant 0 but certified non-Hamiltonian
    strong = planar_seed_search(10, budget=1000, seed=1, restarts=3)
    out.append(("theorem8(seed 10 lines)", theorem8_assembly(strong, seed=seed).arrangement))

    kept = []
    for name, arr in out:
        if len(enumerate_topes(arr)) <= max_topes:
            kept.append((name, arr))
    return kept


def _applicable(check: Callable[[], Certificate]) -> Optional[Certificate]:
    try:
        return check()
    except HypothesisError:
        return None


def certify_instance(
    name: str, arr: Arrangement, budget: SearchBudget = SearchBudget(200_000)
) -> list[Certificate]:
    """Run every applicable check on one arrangement, sharing the expensive parts."""
    certs: list[Certificate] = []
    g = build_graph(arr)
    search = find_hamiltonian(g, budget)
    certs.append(check_thm1(arr, name=name, graph=g, search=search))
    if arr.central:
        certs.append(check_thm3(arr, name))
        for i in range(arr.n):
            certs.append(check_thm7(arr, i, name, search=search))
        if is_centrally_simple(arr):
            matching = max_matching(g)
            for i in range(arr.n):
                certs.append(check_thm11(arr, i, name, matching=matching, graph=g))
    else:
        for check in (check_thm9, check_thm10_bound, check_simmons_wetzel):
            c = _applicable(lambda: check(arr, name))
            if c is not None:
                certs.append(c)
    return certs


def run_harness(
    corpus: Optional[Iterable[tuple[str, Arrangement]]] = None,
    seed: int = 0,
    budget: SearchBudget = SearchBudget(200_000),
) -> list[Certificate]:
    corpus = small_corpus(seed) if corpus is None else corpus
    return list(itertools.chain.from_iterable(certify_instance(n, a, budget) for n, a in corpus))


def format_table(certs: Iterable[Certificate]) -> str:
    rows = [("instance", "theorem", "lhs", "rhs", "verdict")]
    for c in certs:
        inst = c.inputs["instance"]
        if "hyperplane" in c.inputs:
            inst += f" H{c.inputs['hyperplane']}"
        rows.append((inst, c.kind, str(c.lhs), str(c.rhs), c.verdict))
    widths = [max(len(r[k]) for r in rows) for k in range(5)]
    return "\n".join("  ".join(v.ljust(w) for v, w in zip(r, widths)).rstrip() for r in rows) + "\n"
