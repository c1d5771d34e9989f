"""Named arrangement families and constructions with large odd-even invariants."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

from .geometry import (
    Arrangement,
    ArrangementError,
    Hyperplane,
    SignVector,
    enumerate_topes,
    homogenize,
    is_simple,
    restrict_with_map,
    sort_topes,
)
from .graph import Circuit, TopeGraph, signed_oe
from .linalg import rank

ZERO, ONE = Fraction(0), Fraction(1)


def _unit(d: int, k: int) -> tuple[Fraction, ...]:
    return tuple(ONE if j == k else ZERO for j in range(d))


# --- cube and Coxeter A_n -----------------------------------------------------


def cube_arrangement(n: int) -> Arrangement:
    """The n coordinate hyperplanes of R^n; topes are the vertices of the n-cube."""
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")
    return Arrangement(n, tuple(Hyperplane(_unit(n, k)) for k in range(n)), True)


def coxeter_pairs(n: int) -> list[tuple[int, int]]:
    return list(itertools.combinations(range(n + 1), 2))


def coxeter_A(n: int) -> Arrangement:
    """Braid arrangement ``x_i = x_j`` (0 <= i < j <= n) on the hyperplane sum(x) = 0.

    Coordinates are x_1..x_n with x_0 = -(x_1 + ... + x_n), so the arrangement
    has full rank n. H_{i,j} has x_i < x_j on its positive side; hyperplanes
    are listed in lexicographic order of (i, j).
    """
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")

    def coord(i):
        # x_i as a linear form in x_1..x_n
        if i == 0:
            return tuple(-ONE for _ in range(n))
        return _unit(n, i - 1)

    hs = []
    for i, j in coxeter_pairs(n):
        hs.append(Hyperplane(tuple(b - a for a, b in zip(coord(i), coord(j)))))
    return Arrangement(n, tuple(hs), True)


def permutation_tope(perm: Sequence[int]) -> SignVector:
    """Tope of coxeter_A(len(perm) - 1) where the values increase along perm."""
    pos = {v: k for k, v in enumerate(perm)}
    return tuple(1 if pos[i] < pos[j] else -1 for i, j in coxeter_pairs(len(perm) - 1))


def sjt_permutations(m: int) -> list[tuple[int, ...]]:
    """Steinhaus-Johnson-Trotter order of the permutations of range(m)."""
    perm = list(range(m))
    dirs = [-1] * m  # direction per value
    out = [tuple(perm)]
    while True:
        mobile = -1
        for k, v in enumerate(perm):
            t = k + dirs[v]
            if 0 <= t < m and perm[t] < v and v > mobile:
                mobile, at = v, k
        if mobile < 0:
            return out
        t = at + dirs[mobile]
        perm[at], perm[t] = perm[t], perm[at]
        for v in range(mobile + 1, m):
            dirs[v] = -dirs[v]
        out.append(tuple(perm))


def sjt_signs(n: int) -> list[SignVector]:
    return [permutation_tope(p) for p in sjt_permutations(n + 1)]


def sjt_circuit(n: int, graph: Optional[TopeGraph] = None) -> Circuit:
    """Adjacent-transposition Hamiltonian circuit of the tope graph of coxeter_A(n)."""
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")
    signs = sjt_signs(n)
    if graph is None:
        graph = TopeGraph.from_topes(signs)
    return Circuit.from_signs(graph, signs)


# --- reports ------------------------------------------------------------------


@dataclass
class ConstructionReport:
    arrangement: Arrangement
    construction: str
    params: dict = field(default_factory=dict)
    predicted_signed_oe: Optional[int] = None
    factors: list = field(default_factory=list)
    extra: dict = field(default_factory=dict)

    def enumerated_signed_oe(self) -> int:
        return signed_oe(enumerate_topes(self.arrangement))

    def to_json(self) -> dict:
        return {
            "provenance": {"construction": self.construction, "params": self.params},
            "n": self.arrangement.n,
            "dim": self.arrangement.dim,
            "predicted_signed_oe": self.predicted_signed_oe,
            "factors": self.factors,
            **self.extra,
        }


def _summary(arr: Arrangement, topes: Optional[list] = None) -> dict:
    topes = enumerate_topes(arr) if topes is None else topes
    return {"n": arr.n, "dim": arr.dim, "topes": len(topes), "signed_oe": signed_oe(topes)}


def direct_sum(factors: Sequence[Arrangement]) -> Arrangement:
    dims = [a.dim for a in factors]
    total = sum(dims)
    hs = []
    start = 0
    for a in factors:
        for h in a.hyperplanes:
            normal = (ZERO,) * start + h.normal + (ZERO,) * (total - start - a.dim)
            hs.append(Hyperplane(normal, h.offset))
        start += a.dim
    return Arrangement(total, tuple(hs), all(a.central for a in factors))


def product_construction(factors: Sequence[Arrangement]) -> ConstructionReport:
    """Direct sum of the factors; topes are tuples of factor topes.

    Since the number of positive sides adds up, the signed invariant of the
    product is the product of the factors' signed invariants.
    """
    if not factors:
        raise ValueError("need at least one factor")
    summaries = [_summary(a) for a in factors]
    predicted = 1
    for s in summaries:
        predicted *= s["signed_oe"]
    arr = direct_sum(factors)
    return ConstructionReport(
        arr,
        "product",
        {"factors": len(factors)},
        predicted,
        summaries,
        {"predicted_topes": _prod(s["topes"] for s in summaries)},
    )


def _prod(xs: Iterable[int]) -> int:
    out = 1
    for x in xs:
        out *= x
    return out


def cylinder_lift(arr: Arrangement, extra: int = 1) -> Arrangement:
    """Inverse image of arr under the projection R^{d + extra} -> R^d."""
    if extra < 1:
        raise ValueError(f"extra must be at least 1, got {extra}")
    d = arr.dim + extra
    hs = tuple(Hyperplane(h.normal + (ZERO,) * extra, h.offset) for h in arr.hyperplanes)
    return Arrangement(d, hs, arr.central)


# --- planar seeds -----------------------------------------------------------------


@dataclass(frozen=True)
class PlanarSeed:
    arrangement: Arrangement
    signed_oe: int
    n_lines: int
    evaluations: int = 0

    def to_json(self) -> dict:
        return {
            "n_lines": self.n_lines,
            "signed_oe": self.signed_oe,
            "evaluations": self.evaluations,
            "arrangement": self.arrangement.to_json(),
        }


def planar_topes_simple(arr: Arrangement) -> list[SignVector]:
    """Regions of a simple line arrangement without parallel lines.

    Every region of such an arrangement has a vertex, so the regions are
    exactly the four quadrants around each intersection point.
    """
    if arr.dim != 2 or arr.central:
        raise ArrangementError("planar_topes_simple needs an affine planar arrangement")
    hs = arr.hyperplanes
    n = len(hs)
    if n < 2:
        return enumerate_topes(arr)
    found = set()
    for i, j in itertools.combinations(range(n), 2):
        (a1, b1), c1 = hs[i].normal, hs[i].offset
        (a2, b2), c2 = hs[j].normal, hs[j].offset
        det = a1 * b2 - a2 * b1
        if det == 0:
            raise ArrangementError(f"lines {i} and {j} are parallel")
        p = ((c1 * b2 - c2 * b1) / det, (a1 * c2 - a2 * c1) / det)
        base = list(arr.sign_of(p))
        if base.count(0) != 2:
            raise ArrangementError(f"three or more lines meet at {p}")
        for si in (1, -1):
            for sj in (1, -1):
                base[i], base[j] = si, sj
                found.add(tuple(base))
    return sort_topes(found)


def _line(rng: random.Random, spread: int) -> tuple[int, int, int]:
    while True:
        a, b = rng.randint(-spread, spread), rng.randint(-spread, spread)
        if a or b:
            return a, b, rng.randint(-spread, spread)


def _lines_arrangement(lines) -> Optional[Arrangement]:
    try:
        return Arrangement(2, tuple(Hyperplane((a, b), c) for a, b, c in lines), False)
    except ArrangementError:
        return None


def _det3(p, q, r) -> int:
    return (
        p[0] * (q[1] * r[2] - q[2] * r[1])
        - p[1] * (q[0] * r[2] - q[2] * r[0])
        + p[2] * (q[0] * r[1] - q[1] * r[0])
    )


def integer_planar_score(lines: Sequence[tuple[int, int, int]]) -> Optional[int]:
    """Signed invariant of the integer lines ``a x + b y = c``, or None if the
    arrangement is not simple (parallel lines or three lines through a point).

    Same vertex argument as :func:`planar_topes_simple`, with every sign
    read off an integer 3x3 determinant.
    """
    n = len(lines)
    found = set()
    for i, j in itertools.combinations(range(n), 2):
        (a1, b1, c1), (a2, b2, c2) = lines[i], lines[j]
        det = a1 * b2 - a2 * b1
        if det == 0:
            return None
        base = []
        for k in range(n):
            if k == i or k == j:
                base.append(0)
                continue
            # a_k.P - c_k at P = H_i cap H_j equals -det3 / det
            v = _det3(lines[i], lines[j], lines[k])
            if v == 0:
                return None
            base.append(1 if (v > 0) != (det > 0) else -1)
        for si in (1, -1):
            for sj in (1, -1):
                base[i], base[j] = si, sj
                found.add(tuple(base))
    return signed_oe(found)


def _score(lines) -> Optional[int]:
    if len(lines) < 2 or len(set(lines)) < len(lines):
        return None
    return integer_planar_score(lines)


def _restart(n_lines: int, budget: int, rng: random.Random, spread: int, step: int):
    """Hill climbing with plateau moves; returns (lines, score, evaluations)."""
    evals = 0
    while True:
        lines = [_line(rng, spread) for _ in range(n_lines)]
        scored = _score(lines)
        evals += 1
        if scored is not None:
            break
    best_lines, best = list(lines), abs(scored)
    cur = best
    for _ in range(budget):
        k = rng.randrange(n_lines)
        cand = list(lines)
        if rng.random() < 0.15:
            cand[k] = _line(rng, spread)
        else:
            a, b, c = cand[k]
            cand[k] = tuple(v + rng.randint(-step, step) for v in (a, b, c))
            if cand[k][0] == cand[k][1] == 0:
                continue
        scored = _score(cand)
        evals += 1
        if scored is None:
            continue
        value = abs(scored)
        if value >= cur:
            lines, cur = cand, value
            if value > best:
                best_lines, best = list(cand), value
    return best_lines, best, evals


def planar_seed_search(
    n_lines: int,
    budget: int = 2000,
    seed: int = 0,
    restarts: int = 1,
    spread: int = 40,
    step: int = 4,
) -> PlanarSeed:
    """Randomized local search for a simple line arrangement with large |signed oe|.

    Each restart draws integer lines with coefficients in [-spread, spread]
    and then perturbs one line at a time, accepting non-worsening moves.
    ``budget`` counts perturbation steps per restart; restarts use their own
    derived seeds and ties keep the earliest restart.
    """
    if n_lines < 3:
        raise ValueError(f"n_lines must be at least 3, got {n_lines}")
    if budget < 0 or restarts < 1:
        raise ValueError("budget must be >= 0 and restarts >= 1")
    best = None
    total = 0
    for r in range(restarts):
        rng = random.Random(f"{seed}:{r}")
        lines, value, evals = _restart(n_lines, budget, rng, spread, step)
        total += evals
        if best is None or value > best[1]:
            best = (lines, value)
    arr = _lines_arrangement(best[0])
    # the reported value comes from the general enumerator, not the fast scorer
    s = signed_oe(enumerate_topes(arr))
    assert abs(s) == best[1], "fast planar scorer disagrees with enumeration"
    return PlanarSeed(arr, s, n_lines, total)


# --- adding a generic hyperplane ------------------------------------------------


def is_generic_addition(arr: Arrangement, normal: Sequence[Fraction]) -> bool:
    """True if the central hyperplane with this normal contains no pairwise
    intersection of hyperplanes of arr and coincides with none of them."""
    normal = tuple(normal)
    if not any(normal):
        return False
    normals = [h.normal for h in arr.hyperplanes]
    for a in normals:
        if rank([a, normal]) < 2:
            return False
    for a, b in itertools.combinations(normals, 2):
        if rank([a, b, normal]) < 3:
            return False
    return True


def theorem8_input(source: Union[PlanarSeed, Arrangement]) -> Arrangement:
    """Central arrangement with an even number of hyperplanes in odd dimension.

    A planar seed (or any affine arrangement) is homogenized; when it has an
    odd number of lines the plane z = 0 is added to fix the parity.
    """
    arr = source.arrangement if isinstance(source, PlanarSeed) else source
    if not arr.central:
        arr = homogenize(arr, with_base=arr.n % 2 == 1)
    if arr.dim % 2 == 0:
        raise ArrangementError(f"input dimension must be odd, got {arr.dim}")
    if arr.n % 2 == 1:
        raise ArrangementError(f"input must have an even number of hyperplanes, got {arr.n}")
    if arr.dim < 3:
        raise ArrangementError("input dimension must be at least 3")
    return arr


def theorem8_assembly(
    source: Union[PlanarSeed, Arrangement], seed: int = 0, max_tries: int = 1000
) -> ConstructionReport:
    """Append a generic central hyperplane H* to an even central arrangement.

    The result has an odd number of hyperplanes, hence invariant zero; its
    deletion of H* is the input. ``certificate`` records whether the input's
    invariant exceeds the number of topes of the restriction to H*, which
    rules out a Hamiltonian circuit of the result.
    """
    arr = theorem8_input(source)
    d = arr.dim
    rng = random.Random(seed)
    for _ in range(max_tries):
        normal = tuple(Fraction(rng.randint(-9, 9)) for _ in range(d))
        if not is_generic_addition(arr, normal):
            continue
        result = Arrangement(d, arr.hyperplanes + (Hyperplane(normal),), True)
        res = restrict_with_map(result, arr.n)
        images = [res.index_map[j] for j in range(arr.n)]
        if any(m is None for m in images) or len({m[0] for m in images}) != arr.n:
            continue
        break
    else:
        raise ArrangementError(f"no generic hyperplane found in {max_tries} tries")

    input_topes = enumerate_topes(arr)
    oe_input = abs(signed_oe(input_topes))
    oe_result = abs(signed_oe(enumerate_topes(result)))
    restricted = len(enumerate_topes(res.arrangement))
    return ConstructionReport(
        result,
        "theorem8",
        {"seed": seed},
        0,
        [_summary(arr, input_topes)],
        {
            "new_index": arr.n,
            "oe_input": oe_input,
            "oe_result": oe_result,
            "restricted_topes": restricted,
            "certificate": oe_input > restricted,
        },
    )
