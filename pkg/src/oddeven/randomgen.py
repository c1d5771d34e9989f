"""Deterministic random arrangements for tests, harnesses and seed search."""

from __future__ import annotations

import random
from fractions import Fraction

from .geometry import Arrangement, ArrangementError, Hyperplane, is_centrally_simple, is_simple

MAX_TRIES = 1000


def _coeff(rng: random.Random, spread: int = 9) -> Fraction:
    return Fraction(rng.randint(-spread, spread), rng.randint(1, 3))


def _random_hyperplane(rng: random.Random, d: int, central: bool) -> Hyperplane:
    while True:
        normal = tuple(_coeff(rng) for _ in range(d))
        if any(normal):
            break
    offset = Fraction(0) if central else _coeff(rng)
    return Hyperplane(normal, offset)


def random_arrangement(n: int, d: int, seed: int, central: bool = False) -> Arrangement:
    """n distinct random hyperplanes (no general-position requirement)."""
    rng = random.Random(seed)
    for _ in range(MAX_TRIES):
        try:
            return Arrangement(d, tuple(_random_hyperplane(rng, d, central) for _ in range(n)), central)
        except ArrangementError:
            continue
    raise ArrangementError(f"could not sample {n} distinct hyperplanes in R^{d}")


def random_simple_arrangement(n: int, d: int, seed: int) -> Arrangement:
    """Random affine arrangement in general position; deterministic in seed."""
    if n < 0 or d < 1:
        raise ValueError(f"need n >= 0 and d >= 1, got n={n}, d={d}")
    rng = random.Random(seed)
    for _ in range(MAX_TRIES):
        try:
            arr = Arrangement(d, tuple(_random_hyperplane(rng, d, False) for _ in range(n)), False)
        except ArrangementError:
            continue
        if is_simple(arr):
            return arr
    raise ArrangementError(f"no simple arrangement of {n} hyperplanes in R^{d} after {MAX_TRIES} tries")


def random_centrally_simple(n: int, d: int, seed: int) -> Arrangement:
    """Random central arrangement in linear general position."""
    rng = random.Random(seed)
    for _ in range(MAX_TRIES):
        try:
            arr = Arrangement(d, tuple(_random_hyperplane(rng, d, True) for _ in range(n)), True)
        except ArrangementError:
            continue
        if is_centrally_simple(arr):
            return arr
    raise ArrangementError(f"no centrally simple arrangement of {n} hyperplanes in R^{d}")


def random_planar(n: int, seed: int, degenerate: float = 0.0) -> Arrangement:
    """Random line arrangement; with ``degenerate > 0`` some lines are forced
    through an existing intersection point or parallel to an existing line."""
    rng = random.Random(seed)
    for _ in range(MAX_TRIES):
        lines: list[Hyperplane] = []
        while len(lines) < n:
            roll = rng.random()
            if len(lines) >= 2 and roll < degenerate / 2:
                # through the intersection of two earlier lines (if any)
                h1, h2 = rng.sample(lines, 2)
                (a1, b1), (a2, b2) = h1.normal, h2.normal
                det = a1 * b2 - a2 * b1
                if det == 0:
                    continue
                px = (h1.offset * b2 - h2.offset * b1) / det
                py = (a1 * h2.offset - a2 * h1.offset) / det
                normal = (_coeff(rng), _coeff(rng))
                if not any(normal):
                    continue
                cand = Hyperplane(normal, normal[0] * px + normal[1] * py)
            elif lines and roll < degenerate:
                base = rng.choice(lines)
                cand = Hyperplane(base.normal, base.offset + rng.randint(1, 5) * rng.choice((1, -1)))
            else:
                cand = _random_hyperplane(rng, 2, False)
            keys = {h.unoriented_key() for h in lines}
            if cand.unoriented_key() not in keys:
                lines.append(cand)
        return Arrangement(2, tuple(lines), False)
    raise AssertionError("unreachable")
