"""Hyperplane arrangements with exact rational data.

Topes are encoded as sign vectors: tuples over {+1, -1}, one entry per
hyperplane in arrangement order. Every geometric predicate is decided by
exact rational linear programming (see :mod:`oddeven.lp`).
"""

from __future__ import annotations

import itertools
import json
import random
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional, Sequence

from .linalg import dot, nullspace, rank, solve_particular
from .lp import strict_point, strictly_feasible, weak_feasible

SignVector = tuple[int, ...]


class ArrangementError(ValueError):
    pass


def parse_rational(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ArrangementError(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ArrangementError(f"not a rational: {value!r}") from exc
    raise ArrangementError(f"not a rational: {value!r} (use a 'p/q' string)")


def format_rational(q: Fraction) -> str:
    return str(q)


def sign_string(s: Sequence[int]) -> str:
    return "".join("+" if v > 0 else "-" for v in s)


def parse_signs(text: str) -> SignVector:
    table = {"+": 1, "-": -1, "−": -1}
    try:
        return tuple(table[ch] for ch in text.strip())
    except KeyError as exc:
        raise ArrangementError(f"bad sign string {text!r}") from exc


def canonical_key(s: Sequence[int]) -> tuple[int, ...]:
    """Lexicographic order with +1 before -1."""
    return tuple(0 if v > 0 else 1 for v in s)


def sort_topes(topes: Iterable[SignVector]) -> list[SignVector]:
    return sorted(topes, key=canonical_key)


def flip(s: SignVector, i: int) -> SignVector:
    return s[:i] + (-s[i],) + s[i + 1:]


@dataclass(frozen=True)
class Hyperplane:
    """``{x : normal . x = offset}``; the positive side is ``normal . x > offset``."""

    normal: tuple[Fraction, ...]
    offset: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "normal", tuple(parse_rational(v) for v in self.normal))
        object.__setattr__(self, "offset", parse_rational(self.offset))
        if self.normal and not any(self.normal):
            raise ArrangementError("hyperplane normal must be nonzero")

    @property
    def dim(self) -> int:
        return len(self.normal)

    def value(self, x: Sequence[Fraction]) -> Fraction:
        return dot(self.normal, x) - self.offset

    def side(self, x: Sequence[Fraction]) -> int:
        v = self.value(x)
        return (v > 0) - (v < 0)

    def unoriented_key(self) -> tuple[Fraction, ...]:
        """Identical for two hyperplanes iff they are the same point set."""
        coeffs = self.normal + (self.offset,)
        lead = next(v for v in coeffs if v != 0)
        return tuple(v / lead for v in coeffs)

    def to_json(self) -> dict:
        return {
            "normal": [format_rational(v) for v in self.normal],
            "offset": format_rational(self.offset),
        }


@dataclass(frozen=True)
class Arrangement:
    dim: int
    hyperplanes: tuple[Hyperplane, ...] = ()
    central: bool = True

    def __post_init__(self):
        hs = tuple(
            h if isinstance(h, Hyperplane) else Hyperplane(*h) for h in self.hyperplanes
        )
        object.__setattr__(self, "hyperplanes", hs)
        if self.dim < 0 or (self.dim == 0 and hs):
            raise ArrangementError(f"invalid dimension {self.dim}")
        seen: dict[tuple, int] = {}
        for i, h in enumerate(hs):
            if h.dim != self.dim:
                raise ArrangementError(
                    f"hyperplane {i} has normal of length {h.dim}, expected {self.dim}"
                )
            if self.central and h.offset != 0:
                raise ArrangementError(f"hyperplane {i} has nonzero offset in a central arrangement")
            key = h.unoriented_key()
            if key in seen:
                raise ArrangementError(f"hyperplanes {seen[key]} and {i} coincide")
            seen[key] = i

    @property
    def n(self) -> int:
        return len(self.hyperplanes)

    def __len__(self) -> int:
        return len(self.hyperplanes)

    def sign_of(self, x: Sequence[Fraction]) -> tuple[int, ...]:
        """Sign vector of a point (entries may be 0 if x lies on a hyperplane)."""
        return tuple(h.side(x) for h in self.hyperplanes)

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "central": self.central,
            "hyperplanes": [h.to_json() for h in self.hyperplanes],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)

    @classmethod
    def from_json(cls, data: dict) -> "Arrangement":
        try:
            dim = data["dim"]
            central = data.get("central", True)
            raw = data["hyperplanes"]
        except (KeyError, TypeError) as exc:
            raise ArrangementError(f"malformed arrangement JSON: missing {exc}") from exc
        if not isinstance(dim, int) or isinstance(dim, bool):
            raise ArrangementError("'dim' must be an integer")
        hs = []
        for i, h in enumerate(raw):
            try:
                hs.append(Hyperplane(tuple(h["normal"]), h.get("offset", "0")))
            except (KeyError, TypeError) as exc:
                raise ArrangementError(f"malformed hyperplane {i}") from exc
        return cls(dim, tuple(hs), bool(central))

    @classmethod
    def loads(cls, text: str) -> "Arrangement":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ArrangementError(
                f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"
            ) from exc
        return cls.from_json(data)


def _check_signs(arr: Arrangement, s: Sequence[int]) -> SignVector:
    if len(s) != arr.n:
        raise ArrangementError(f"sign vector has length {len(s)}, arrangement has {arr.n} hyperplanes")
    if any(v not in (1, -1) for v in s):
        raise ArrangementError("sign vector entries must be +1 or -1")
    return tuple(s)


def _tope_rows(arr: Arrangement, s: SignVector):
    return [
        (tuple(v * sg for v in h.normal), h.offset * sg)
        for h, sg in zip(arr.hyperplanes, s)
    ]


def feasible_tope(arr: Arrangement, s: Sequence[int]) -> bool:
    """True iff the open cell with sign vector ``s`` is nonempty."""
    s = _check_signs(arr, s)
    return strictly_feasible(_tope_rows(arr, s), arr.dim)


def tope_point(arr: Arrangement, s: Sequence[int]) -> Optional[tuple[Fraction, ...]]:
    """An exact interior point of the tope, or None if ``s`` is not a tope."""
    s = _check_signs(arr, s)
    return strict_point(_tope_rows(arr, s), arr.dim)


@lru_cache(maxsize=256)
def _frames(arr: Arrangement):
    """For each hyperplane i, the other hyperplanes written in coordinates of H_i.

    H_i is parametrised as ``x = p0 + B y``; entry ``[i][j]`` is
    ``(a_j B, b_j - a_j . p0)`` so that ``a_j . x > b_j`` iff
    ``(a_j B) . y > b_j - a_j . p0``.
    """
    out = []
    for h in arr.hyperplanes:
        p0 = solve_particular([h.normal], [h.offset], arr.dim)
        B = nullspace([h.normal], arr.dim)
        rows = []
        for g in arr.hyperplanes:
            coeffs = tuple(dot(g.normal, b) for b in B)
            rows.append((coeffs, g.offset - dot(g.normal, p0)))
        out.append((p0, tuple(B), tuple(rows)))
    return tuple(out)


def _facet_feasible(arr: Arrangement, s: SignVector, i: int) -> bool:
    """Is ``{a_i.x = b_i} and strict s_j-sides for j != i`` solvable?"""
    _, B, rows = _frames(arr)[i]
    system = [
        (tuple(v * s[j] for v in g), h * s[j])
        for j, (g, h) in enumerate(rows)
        if j != i
    ]
    return strictly_feasible(system, len(B))


def are_adjacent(arr: Arrangement, s: Sequence[int], t: Sequence[int]) -> bool:
    """Facet adjacency of two topes."""
    s = _check_signs(arr, s)
    t = _check_signs(arr, t)
    for name, v in (("first", s), ("second", t)):
        if not feasible_tope(arr, v):
            raise ArrangementError(f"{name} sign vector {sign_string(v)} is not a tope")
    diff = [k for k in range(arr.n) if s[k] != t[k]]
    if len(diff) != 1:
        return False
    return _facet_feasible(arr, s, diff[0])


def generic_point(arr: Arrangement, seed: int = 0, retries: int = 64) -> tuple[Fraction, ...]:
    """A rational point on no hyperplane."""
    rng = random.Random(seed)
    for _ in range(retries):
        p = tuple(Fraction(rng.randint(-50, 50), rng.randint(1, 7)) for _ in range(arr.dim))
        if all(h.value(p) != 0 for h in arr.hyperplanes):
            return p
    # deterministic fallback: points on the moment curve; a hyperplane holds at
    # most dim - 1 of them, so one of the first n*(dim-1)+1 works
    for k in itertools.count(1):
        p = tuple(Fraction(k) ** (j + 1) for j in range(arr.dim))
        if all(h.value(p) != 0 for h in arr.hyperplanes):
            return p
    raise AssertionError("unreachable")


def explore(arr: Arrangement, seed: int = 0) -> tuple[list[SignVector], set[tuple[int, int]]]:
    """Breadth-first search over facets from a generic seed tope.

    Returns the topes in canonical order and the facet edges as index pairs.
    """
    if arr.dim == 0:
        return [()], set()
    start = arr.sign_of(generic_point(arr, seed))
    seen = {start}
    queue = deque([start])
    edges: set[frozenset] = set()
    while queue:
        s = queue.popleft()
        for i in range(arr.n):
            t = flip(s, i)
            if t in seen:
                # both are topes and differ only on H_i: they share the facet
                edges.add(frozenset((s, t)))
                continue
            if _facet_feasible(arr, s, i):
                seen.add(t)
                queue.append(t)
                edges.add(frozenset((s, t)))
    topes = sort_topes(seen)
    index = {t: k for k, t in enumerate(topes)}
    pairs = set()
    for e in edges:
        a, b = (index[v] for v in e)
        pairs.add((min(a, b), max(a, b)))
    return topes, pairs


def enumerate_topes(arr: Arrangement, seed: int = 0) -> list[SignVector]:
    return explore(arr, seed)[0]


def enumerate_topes_bruteforce(arr: Arrangement) -> list[SignVector]:
    """Filter all 2^n sign vectors through :func:`feasible_tope`."""
    return sort_topes(
        s for s in itertools.product((1, -1), repeat=arr.n) if feasible_tope(arr, s)
    )


def _check_index(arr: Arrangement, i: int) -> None:
    if not 0 <= i < arr.n:
        raise ArrangementError(f"hyperplane index {i} out of range for {arr.n} hyperplanes")


def delete(arr: Arrangement, i: int) -> Arrangement:
    _check_index(arr, i)
    hs = arr.hyperplanes[:i] + arr.hyperplanes[i + 1:]
    return Arrangement(arr.dim, hs, arr.central)


@dataclass(frozen=True)
class Restriction:
    arrangement: Arrangement
    # original index -> (restricted index, orientation +1/-1), None if parallel to H
    index_map: dict = field(default_factory=dict)


def restrict_with_map(arr: Arrangement, i: int) -> Restriction:
    """Restriction to H_i in exact coordinates of H_i, merging coincident images."""
    _check_index(arr, i)
    p0, B, rows = _frames(arr)[i]
    hs: list[Hyperplane] = []
    keys: dict[tuple, int] = {}
    index_map: dict[int, Optional[tuple[int, int]]] = {}
    for j, (g, h) in enumerate(rows):
        if j == i:
            continue
        if not any(g):
            index_map[j] = None  # parallel to H_i: misses it entirely
            continue
        cand = Hyperplane(g, h)
        key = cand.unoriented_key()
        if key in keys:
            k = keys[key]
            same = next(a for a in hs[k].normal if a) / next(a for a in g if a)
            index_map[j] = (k, 1 if same > 0 else -1)
            continue
        keys[key] = len(hs)
        index_map[j] = (len(hs), 1)
        hs.append(cand)
    return Restriction(Arrangement(arr.dim - 1, tuple(hs), arr.central), index_map)


def restrict(arr: Arrangement, i: int) -> Arrangement:
    return restrict_with_map(arr, i).arrangement


def homogenize(arr: Arrangement, with_base: bool = False) -> Arrangement:
    """``a.x = b`` becomes ``a.x - b z = 0`` in ``R^{d+1}``; ``z = 1`` recovers arr.

    With ``with_base`` the hyperplane ``z = 0`` (positive side ``z > 0``) is
    appended, so that every tope of arr appears together with its reflection.
    """
    if arr.central:
        raise ArrangementError("homogenize expects an affine arrangement")
    hs = [Hyperplane(h.normal + (-h.offset,)) for h in arr.hyperplanes]
    if with_base:
        hs.append(Hyperplane((Fraction(0),) * arr.dim + (Fraction(1),)))
    return Arrangement(arr.dim + 1, tuple(hs), True)


def dehomogenize(arr: Arrangement) -> Arrangement:
    """Slice a central arrangement with ``x_d = 1``."""
    if not arr.central:
        raise ArrangementError("dehomogenize expects a central arrangement")
    if arr.dim < 2:
        raise ArrangementError("dehomogenize needs dimension at least 2")
    hs = []
    for i, h in enumerate(arr.hyperplanes):
        if not any(h.normal[:-1]):
            raise ArrangementError(f"hyperplane {i} is parallel to the slice x_{arr.dim} = 1")
        hs.append(Hyperplane(h.normal[:-1], -h.normal[-1]))
    return Arrangement(arr.dim - 1, tuple(hs), False)


def direction_arrangement(arr: Arrangement) -> Arrangement:
    """Translate every hyperplane through the origin."""
    hs = tuple(Hyperplane(h.normal) for h in arr.hyperplanes)
    try:
        return Arrangement(arr.dim, hs, True)
    except ArrangementError as exc:
        raise ArrangementError(f"duplicate directions: {exc}") from exc


def direction_topes(arr: Arrangement) -> list[SignVector]:
    """Topes of the direction arrangement as sign vectors over all n hyperplanes.

    Parallel hyperplanes share a direction (e.g. points on a line); they are
    merged for enumeration and expanded again with their orientations.
    """
    reps: list[Hyperplane] = []
    where: list[tuple[int, int]] = []
    keys: dict[tuple, int] = {}
    for h in arr.hyperplanes:
        key = Hyperplane(h.normal).unoriented_key()
        if key not in keys:
            keys[key] = len(reps)
            reps.append(Hyperplane(h.normal))
        k = keys[key]
        lead = next(a for a in reps[k].normal if a) / next(a for a in h.normal if a)
        where.append((k, 1 if lead > 0 else -1))
    merged = Arrangement(arr.dim, tuple(reps), True)
    return sort_topes(
        tuple(t[k] * o for k, o in where) for t in enumerate_topes(merged)
    )


def is_bounded_tope(arr: Arrangement, s: Sequence[int]) -> bool:
    """Bounded iff the recession cone ``{x : s_i a_i.x >= 0}`` is ``{0}``."""
    s = _check_signs(arr, s)
    d = arr.dim
    cone = [tuple(v * sg for v in h.normal) for h, sg in zip(arr.hyperplanes, s)]
    for j in range(d):
        for sigma in (1, -1):
            # substitute x_j = sigma, keep the other coordinates
            rows = [
                (g[:j] + g[j + 1:], -g[j] * sigma)
                for g in cone
            ]
            if weak_feasible(rows, (), d - 1):
                return False
    return True


def classify_bounded(arr: Arrangement, topes: Optional[list[SignVector]] = None):
    """Split the topes into ``(bounded, unbounded)``, both in canonical order."""
    if topes is None:
        topes = enumerate_topes(arr)
    bounded, unbounded = [], []
    for s in topes:
        (bounded if is_bounded_tope(arr, s) else unbounded).append(s)
    return bounded, unbounded


def rank_of(arr: Arrangement) -> int:
    """Rank of the normals (the rank of a central arrangement)."""
    return rank([h.normal for h in arr.hyperplanes]) if arr.n else 0


def is_centrally_simple(arr: Arrangement) -> bool:
    """Every ``k <= d`` normals are linearly independent."""
    k = min(arr.n, arr.dim)
    normals = [h.normal for h in arr.hyperplanes]
    return all(rank(sub) == k for sub in itertools.combinations(normals, k))


def is_simple(arr: Arrangement) -> bool:
    """Affine general position: k <= d hyperplanes meet in dimension d - k, d + 1 never meet."""
    if not is_centrally_simple(arr):
        return False
    d = arr.dim
    if arr.n <= d:
        return True
    aug = [h.normal + (h.offset,) for h in arr.hyperplanes]
    return all(rank(sub) == d + 1 for sub in itertools.combinations(aug, d + 1))


@dataclass(frozen=True)
class IntersectionPoint:
    point: tuple[Fraction, Fraction]
    multiplicity: int
    lines: tuple[int, ...]


def intersection_points(arr: Arrangement) -> list[IntersectionPoint]:
    """Distinct pairwise intersection points of a planar arrangement."""
    if arr.dim != 2:
        raise ArrangementError("intersection_points needs a planar (d = 2) arrangement")
    found: dict[tuple[Fraction, Fraction], set[int]] = {}
    hs = arr.hyperplanes
    for i, j in itertools.combinations(range(len(hs)), 2):
        (a1, b1), c1 = hs[i].normal, hs[i].offset
        (a2, b2), c2 = hs[j].normal, hs[j].offset
        det = a1 * b2 - a2 * b1
        if det == 0:
            continue
        p = ((c1 * b2 - c2 * b1) / det, (a1 * c2 - a2 * c1) / det)
        found.setdefault(p, set()).update((i, j))
    return [
        IntersectionPoint(p, len(lines), tuple(sorted(lines)))
        for p, lines in sorted(found.items())
    ]
