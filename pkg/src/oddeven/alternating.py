"""Alternating arrangements A(n, d) as a pure sign-sequence model.

A sign sequence of length n is a tope of A(n, d) iff it has at most d - 1
sign changes; two topes are adjacent iff they differ in one position.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import comb
from typing import Sequence

from .geometry import Arrangement, ArrangementError, Hyperplane, SignVector, parse_rational, sort_topes
from .graph import TopeGraph

AltTope = SignVector


def _check_nd(n: int, d: int) -> None:
    if not (isinstance(n, int) and isinstance(d, int)) or not 1 <= d <= n:
        raise ValueError(f"need 1 <= d <= n, got n={n}, d={d}")


def sign_changes(seq: Sequence[int]) -> int:
    return sum(1 for a, b in zip(seq, seq[1:]) if a != b)


def is_alt_tope(seq: Sequence[int], d: int) -> bool:
    if len(seq) == 0:
        raise ValueError("empty sign sequence")
    return sign_changes(seq) <= d - 1


def enumerate_alt_topes(n: int, d: int) -> list[AltTope]:
    """All length-n sequences with at most d - 1 sign changes, canonical order."""
    _check_nd(n, d)
    out = []
    for first in (1, -1):
        for k in range(min(d - 1, n - 1) + 1):
            for cuts in itertools.combinations(range(1, n), k):
                seq = []
                sign = first
                prev = 0
                for c in cuts + (n,):
                    seq.extend([sign] * (c - prev))
                    sign = -sign
                    prev = c
                out.append(tuple(seq))
    return sort_topes(out)


def alt_adjacent(s: Sequence[int], t: Sequence[int], d: int | None = None) -> bool:
    return len(s) == len(t) and sum(1 for a, b in zip(s, t) if a != b) == 1


def alt_graph(n: int, d: int) -> TopeGraph:
    return TopeGraph.from_topes(enumerate_alt_topes(n, d))


def oe_formula(n: int, d: int) -> int:
    """Closed form for the odd-even invariant of A(n, d)."""
    _check_nd(n, d)
    if n % 2 == 0 and d % 2 == 1:
        return 2 * comb(n // 2 - 1, (d - 1) // 2)
    return 0


def realize(n: int, d: int, alphas: Sequence) -> Arrangement:
    """Central arrangement of the hyperplanes ``sum_k x_k alpha_i^k = 0``.

    A point x is read as the polynomial with coefficient vector x; its sign
    vector is the sign pattern of that polynomial at the alphas.
    """
    _check_nd(n, d)
    alphas = [parse_rational(a) for a in alphas]
    if len(alphas) != n:
        raise ArrangementError(f"need {n} alphas, got {len(alphas)}")
    if any(a >= b for a, b in zip(alphas, alphas[1:])):
        raise ArrangementError("alphas must be strictly increasing")
    hs = tuple(Hyperplane(tuple(a ** k for k in range(d))) for a in alphas)
    return Arrangement(d, hs, True)


def default_alphas(n: int) -> list[Fraction]:
    """Integers centered on zero, e.g. -2..2 for n = 5."""
    return [Fraction(k - (n - 1) // 2) for k in range(n)]


# --- circuit for A(n, 3) ------------------------------------------------


def _arc(n: int, j: int, k: int) -> AltTope:
    """Tope whose minus positions are the j consecutive integers mod n from k (1-based)."""
    minus = {((k - 1 + m) % n) + 1 for m in range(j)}
    return tuple(-1 if i in minus else 1 for i in range(1, n + 1))


def ham_circuit_n_3(n: int) -> list[AltTope]:
    """Hamiltonian circuit of A(n, 3), n odd, length 2 + n(n - 1).

    The sets S_{j,k} are laid out in an n x (n-1) array: S_{j,k} sits in
    column j and row k + j // 4 (mod n). Starting from the all-plus tope the
    circuit zig-zags down column pair (1, 2), up pair (3, 4), and so on,
    skipping row n; after the last column it visits the all-minus tope and
    returns along row n to the start.
    """
    if n % 2 == 0 or n < 3:
        raise ValueError(f"n must be odd and at least 3, got {n}")

    def cell(row: int, col: int) -> AltTope:
        k = (row - col // 4 - 1) % n + 1
        return _arc(n, col, k)

    out = [tuple([1] * n)]
    for p in range((n - 1) // 2):
        y = 2 * p + 1
        rows = range(1, n) if p % 2 == 0 else range(n - 1, 0, -1)
        for x in rows:
            out.append(cell(x, y))
            out.append(cell(x, y + 1))
    out.append(tuple([-1] * n))
    for col in range(n - 1, 0, -1):
        out.append(cell(n, col))
    return out


# --- circuit for A(n, n - 1) ------------------------------------------------


def _gray_cycle(m: int) -> list[tuple[int, ...]]:
    """Reflected binary Gray code of order m as +/- tuples ('+' for bit 0)."""
    codes = [(i ^ (i >> 1)) for i in range(2 ** m)]
    return [tuple(-1 if (c >> (m - 1 - b)) & 1 else 1 for b in range(m)) for c in codes]


def ham_circuit_n_nminus1(n: int) -> list[AltTope]:
    """Hamiltonian circuit of A(n, n - 1), n odd, length 2^n - 2.

    Built from a Gray-code circuit v_0..v_N of the (n-2)-cube rotated so that
    v_0 = +-+-...-+; every v_k is extended by the four suffixes except that
    v_0 skips '-+' and its complement v_M skips '+-' (the two alternating
    sequences that are not topes).
    """
    if n % 2 == 0 or n < 3:
        raise ValueError(f"n must be odd and at least 3, got {n}")
    m = n - 2
    v0 = tuple(1 if b % 2 == 0 else -1 for b in range(m))
    cycle = _gray_cycle(m)
    at = cycle.index(v0)
    v = cycle[at:] + cycle[:at]
    N = len(v) - 1
    M = v.index(tuple(-x for x in v0))
    assert M % 2 == 1 and 0 < M <= N and (M < N or n == 3)

    P, Mi = 1, -1
    pp, pm, mm, mp = (P, P), (P, Mi), (Mi, Mi), (Mi, P)

    def ext(k, suffixes):
        return [v[k] + s for s in suffixes]

    out = ext(0, [pp, pm, mm])
    if M > 1:
        out += ext(1, [mm, pm, pp, mp])
    for k in range(2, M):
        out += ext(k, [mp, pp, pm, mm] if k % 2 == 0 else [mm, pm, pp, mp])
    out += ext(M, [mm, mp, pp])
    if M + 1 <= N:
        out += ext(M + 1, [pp, pm, mm, mp])
    for k in range(M + 2, N + 1):
        out += ext(k, [mp, mm, pm, pp] if k % 2 == 1 else [pp, pm, mm, mp])
    return out


def circuit_strings(seq: Sequence[Sequence[int]]) -> list[str]:
    return ["".join("+" if v > 0 else "-" for v in s) for s in seq]
