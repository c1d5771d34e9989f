"""Exact rational linear programming.

A dense two-phase simplex with Bland's rule on an integer-preserving
tableau, which is enough for the small systems produced by tope
feasibility tests (a handful of variables, a few dozen constraints).
Inputs and outputs are :class:`fractions.Fraction`; nothing here ever
touches floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Optional, Sequence

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class LPResult:
    status: str  # "optimal" | "infeasible" | "unbounded"
    x: Optional[tuple[Fraction, ...]] = None
    value: Optional[Fraction] = None


def _scale_to_int(values: Sequence[Fraction]) -> tuple[list[int], int]:
    """Multiply by the positive lcm of denominators; returns (ints, multiplier)."""
    m = 1
    for v in values:
        m = lcm(m, Fraction(v).denominator)
    return [int(Fraction(v) * m) for v in values], m


class _Tableau:
    """Integer-preserving tableau: the true entry is ``M[i][j] / D`` with ``D > 0``.

    Pivoting uses the fraction-free update
    ``M'[i][j] = (M[i][j] * p - M[i][c] * M[r][j]) / D`` whose division is exact.
    """

    def __init__(self, rows: list[list[int]], obj: list[int], basis: list[int]):
        self.M = rows
        self.obj = obj
        self.basis = basis
        self.D = 1

    def pivot(self, r: int, c: int) -> None:
        M, D = self.M, self.D
        prow = M[r]
        p = prow[c]
        nz = [(j, v) for j, v in enumerate(prow) if v]
        for i, row in enumerate(M):
            if i == r:
                continue
            f = row[c]
            if f:
                for j in range(len(row)):
                    row[j] *= p
                for j, v in nz:
                    row[j] -= f * v
                for j in range(len(row)):
                    row[j] //= D
            elif p != D:
                for j in range(len(row)):
                    row[j] = row[j] * p // D
        row = self.obj
        f = row[c]
        if f:
            for j in range(len(row)):
                row[j] *= p
            for j, v in nz:
                row[j] -= f * v
            for j in range(len(row)):
                row[j] //= D
        elif p != D:
            for j in range(len(row)):
                row[j] = row[j] * p // D
        self.D = p
        self.basis[r] = c
        if p < 0:
            for row in M:
                for j in range(len(row)):
                    row[j] = -row[j]
            for j in range(len(self.obj)):
                self.obj[j] = -self.obj[j]
            self.D = -p

    def run(self, allowed: int) -> str:
        """Maximise; columns ``>= allowed`` may not enter (Bland's rule)."""
        M, basis = self.M, self.basis
        while True:
            obj = self.obj
            enter = next((j for j in range(allowed) if obj[j] < 0), -1)
            if enter < 0:
                return "optimal"
            leave = -1
            for i, row in enumerate(M):
                a = row[enter]
                if a > 0:
                    if leave < 0:
                        leave = i
                        continue
                    lhs = row[-1] * M[leave][enter]
                    rhs = M[leave][-1] * a
                    if lhs < rhs or (lhs == rhs and basis[i] < basis[leave]):
                        leave = i
            if leave < 0:
                return "unbounded"
            self.pivot(leave, enter)


def linprog_std(
    c: Sequence[Fraction],
    A_ub: Sequence[Sequence[Fraction]] = (),
    b_ub: Sequence[Fraction] = (),
    A_eq: Sequence[Sequence[Fraction]] = (),
    b_eq: Sequence[Fraction] = (),
) -> LPResult:
    """Maximise ``c.x`` subject to ``A_ub x <= b_ub``, ``A_eq x = b_eq``, ``x >= 0``."""
    nv = len(c)
    n_slack = len(A_ub)
    raw: list[tuple[list[int], bool]] = []  # (coefficients + rhs, needs artificial)
    for a, b in zip(A_ub, b_ub):
        ints, _ = _scale_to_int(list(a) + [b])
        raw.append((ints, ints[-1] < 0))
    for a, b in zip(A_eq, b_eq):
        ints, _ = _scale_to_int(list(a) + [b])
        raw.append((ints, True))

    n_art = sum(1 for _, art in raw if art)
    main = nv + n_slack
    width = main + n_art
    rows: list[list[int]] = []
    basis: list[int] = []
    a_col = main
    for k, (ints, art) in enumerate(raw):
        row = [0] * (width + 1)
        row[:nv] = ints[:nv]
        row[-1] = ints[-1]
        if k < n_slack:
            row[nv + k] = 1
        if row[-1] < 0:
            row = [-v for v in row]
        if art:
            row[a_col] = 1
            basis.append(a_col)
            a_col += 1
        else:
            basis.append(nv + k)
        rows.append(row)

    tab = _Tableau(rows, [0] * (width + 1), basis)
    if n_art:
        # phase 1: maximise -sum(artificials)
        obj = [0] * main + [1] * n_art + [0]
        for i, b in enumerate(basis):
            if b >= main:
                obj = [o - v for o, v in zip(obj, rows[i])]
        tab.obj = obj
        tab.run(width)
        if tab.obj[-1] < 0:
            return LPResult("infeasible")
        # drive zero-level artificials out of the basis, drop redundant rows
        i = 0
        while i < len(tab.M):
            if tab.basis[i] >= main:
                col = next((j for j in range(main) if tab.M[i][j] != 0), -1)
                if col < 0:
                    del tab.M[i]
                    del tab.basis[i]
                    continue
                tab.pivot(i, col)
            i += 1
        tab.M = [row[:main] + [row[-1]] for row in tab.M]

    cint, cscale = _scale_to_int(c)
    D = tab.D
    obj = [-v * D for v in cint] + [0] * (main - nv) + [0]
    for i, b in enumerate(tab.basis):
        cb = cint[b] if b < nv else 0
        if cb:
            obj = [o + cb * v for o, v in zip(obj, tab.M[i])]
    tab.obj = obj
    if tab.run(main) == "unbounded":
        return LPResult("unbounded")
    D = tab.D
    x = [ZERO] * main
    for i, b in enumerate(tab.basis):
        x[b] = Fraction(tab.M[i][-1], D)
    return LPResult("optimal", tuple(x[:nv]), Fraction(tab.obj[-1], D * cscale))


def linprog(
    c: Sequence[Fraction],
    A_ub: Sequence[Sequence[Fraction]] = (),
    b_ub: Sequence[Fraction] = (),
    A_eq: Sequence[Sequence[Fraction]] = (),
    b_eq: Sequence[Fraction] = (),
) -> LPResult:
    """Like :func:`linprog_std` but with every variable free."""
    n = len(c)

    def split(a):
        return list(a) + [-v for v in a]

    res = linprog_std(
        split(c),
        [split(a) for a in A_ub],
        b_ub,
        [split(a) for a in A_eq],
        b_eq,
    )
    if res.status != "optimal":
        return res
    x = tuple(res.x[k] - res.x[n + k] for k in range(n))
    return LPResult("optimal", x, res.value)


def strict_point(rows: Sequence[tuple[Sequence[Fraction], Fraction]], dim: int):
    """Return a rational ``x`` with ``g.x > h`` for every ``(g, h)`` in rows, or None.

    Decided by maximising a common slack ``t`` (capped at 1): the strict
    system is solvable iff the optimum is positive.
    """
    if not rows:
        return tuple([ZERO] * dim)
    if dim == 0:
        return () if all(h < 0 for _, h in rows) else None
    # variables (x_1..x_dim, t); -g.x + t <= -h ; t <= 1
    A = [[-Fraction(v) for v in g] + [ONE] for g, _ in rows]
    b = [-Fraction(h) for _, h in rows]
    A.append([ZERO] * dim + [ONE])
    b.append(ONE)
    res = linprog([ZERO] * dim + [ONE], A, b)
    if res.status != "optimal" or res.value <= 0:
        return None
    return res.x[:dim]


def strictly_feasible(rows: Sequence[tuple[Sequence[Fraction], Fraction]], dim: int) -> bool:
    """Decide ``g.x > h`` for all rows without producing a witness.

    Solves the dual of the slack LP used by :func:`strict_point`:
    minimise ``sum(-h_j y_j) + y_0`` over ``y >= 0`` with ``sum(y_j g_j) = 0``
    and ``sum(y_j) + y_0 = 1``. Same optimum, but only ``dim + 1`` rows.
    """
    if not rows:
        return True
    if dim == 0:
        return all(h < 0 for _, h in rows)
    m = len(rows)
    c = [Fraction(h) for _, h in rows] + [-ONE]
    A_eq = [[Fraction(g[k]) for g, _ in rows] + [ZERO] for k in range(dim)]
    A_eq.append([ONE] * (m + 1))
    b_eq = [ZERO] * dim + [ONE]
    res = linprog_std(c, (), (), A_eq, b_eq)
    return res.value < 0


def weak_feasible(
    ge_rows: Sequence[tuple[Sequence[Fraction], Fraction]],
    eq_rows: Sequence[tuple[Sequence[Fraction], Fraction]] = (),
    dim: int = 0,
) -> bool:
    """True iff ``g.x >= h`` for all ge_rows and ``e.x = f`` for all eq_rows is solvable."""
    if dim == 0:
        return all(h <= 0 for _, h in ge_rows) and all(f == 0 for _, f in eq_rows)
    A = [[-Fraction(v) for v in g] for g, _ in ge_rows]
    b = [-Fraction(h) for _, h in ge_rows]
    res = linprog(
        [ZERO] * dim, A, b, [list(e) for e, _ in eq_rows], [f for _, f in eq_rows]
    )
    return res.status == "optimal"
