"""Tope graphs: 2-coloring, odd-even invariants, Hamiltonian circuits, matchings."""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Optional, Sequence

from .geometry import Arrangement, SignVector, explore, sign_string, sort_topes

BURNT_UMBER = "burnt-umber"
CHARTREUSE = "chartreuse"

_DOT_FILL = {BURNT_UMBER: "#8a3324", CHARTREUSE: "#7fff00"}


def sigma(s: Sequence[int]) -> int:
    """Number of hyperplanes having the tope on their positive side."""
    return sum(1 for v in s if v > 0)


def color(s: Sequence[int]) -> str:
    return BURNT_UMBER if sigma(s) % 2 == 0 else CHARTREUSE


def signed_oe(topes: Iterable[Sequence[int]]) -> int:
    return sum(1 if sigma(s) % 2 == 0 else -1 for s in topes)


@dataclass(frozen=True)
class TopeGraph:
    topes: tuple[SignVector, ...]
    edges: frozenset[tuple[int, int]]

    @classmethod
    def from_topes(cls, topes: Iterable[SignVector]) -> "TopeGraph":
        """Graph joining topes at Hamming distance one (facet adjacency for
        arrangements of distinct hyperplanes)."""
        ordered = tuple(sort_topes(topes))
        index = {t: k for k, t in enumerate(ordered)}
        edges = set()
        for k, t in enumerate(ordered):
            for i in range(len(t)):
                other = index.get(t[:i] + (-t[i],) + t[i + 1:])
                if other is not None and other > k:
                    edges.add((k, other))
        return cls(ordered, frozenset(edges))

    def __len__(self) -> int:
        return len(self.topes)

    @cached_property
    def index(self) -> dict[SignVector, int]:
        return {t: k for k, t in enumerate(self.topes)}

    @cached_property
    def colors(self) -> tuple[str, ...]:
        return tuple(color(t) for t in self.topes)

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        adj: list[list[int]] = [[] for _ in self.topes]
        for a, b in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        return tuple(tuple(sorted(x)) for x in adj)

    def has_edge(self, a: int, b: int) -> bool:
        return (min(a, b), max(a, b)) in self.edges

    def degree(self, k: int) -> int:
        return len(self.adjacency[k])

    def color_counts(self) -> tuple[int, int]:
        """(burnt umber, chartreuse)."""
        b = sum(1 for c in self.colors if c == BURNT_UMBER)
        return b, len(self.topes) - b

    def signed_oe(self) -> int:
        b, c = self.color_counts()
        return b - c

    def oe_invariant(self) -> int:
        return abs(self.signed_oe())

    def is_properly_colored(self) -> bool:
        cs = self.colors
        return all(cs[a] != cs[b] for a, b in self.edges)

    def is_connected(self) -> bool:
        if not self.topes:
            return True
        seen = {0}
        queue = deque([0])
        while queue:
            for w in self.adjacency[queue.popleft()]:
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        return len(seen) == len(self.topes)


def build_graph(arr: Arrangement, seed: int = 0) -> TopeGraph:
    topes, edges = explore(arr, seed)
    g = TopeGraph(tuple(topes), frozenset(edges))
    assert g.is_properly_colored(), "tope graph edge joins equal colors"
    return g


def oe_invariant(arr: Arrangement) -> int:
    return abs(signed_oe(explore(arr)[0]))


# --- Hamiltonian circuits -------------------------------------------------


@dataclass(frozen=True)
class Circuit:
    order: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.order)

    def signs(self, g: TopeGraph) -> list[SignVector]:
        return [g.topes[k] for k in self.order]

    @classmethod
    def from_signs(cls, g: TopeGraph, seq: Iterable[Sequence[int]]) -> "Circuit":
        return cls(tuple(g.index[tuple(s)] for s in seq))


@dataclass(frozen=True)
class SearchBudget:
    max_expansions: int = 10_000_000


@dataclass
class SearchResult:
    outcome: str  # "found" | "none" | "unknown"
    circuit: Optional[Circuit] = None
    expansions: int = 0
    reason: str = ""


@dataclass(frozen=True)
class CircuitCheck:
    ok: bool
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


def verify_circuit(g: TopeGraph, c: Circuit) -> CircuitCheck:
    order = c.order
    n = len(g.topes)
    if len(order) != n:
        return CircuitCheck(False, f"circuit has {len(order)} entries, graph has {n} topes")
    if n < 2:
        return CircuitCheck(False, "graphs with fewer than two topes have no circuit")
    seen = set()
    for pos, k in enumerate(order):
        if not 0 <= k < n:
            return CircuitCheck(False, f"position {pos}: index {k} out of range")
        if k in seen:
            return CircuitCheck(False, f"position {pos}: tope {sign_string(g.topes[k])} repeated")
        seen.add(k)
    for pos in range(n):
        a, b = order[pos], order[(pos + 1) % n]
        if not g.has_edge(a, b):
            return CircuitCheck(
                False,
                f"positions {pos},{(pos + 1) % n}: {sign_string(g.topes[a])} and "
                f"{sign_string(g.topes[b])} are not adjacent",
            )
    return CircuitCheck(True)


def find_hamiltonian(g: TopeGraph, budget: SearchBudget = SearchBudget()) -> SearchResult:
    """Exact backtracking search for a Hamiltonian circuit.

    Branches on the lowest-index admissible neighbor. ``none`` is only
    reported when the search space is exhausted (or a pruning rule rules out
    every circuit); running out of budget gives ``unknown``.
    """
    n = len(g.topes)
    adj = g.adjacency
    inv = g.oe_invariant()
    if inv != 0:
        return SearchResult("none", reason=f"odd-even invariant {inv} != 0")
    if n == 2:
        if g.has_edge(0, 1):
            return SearchResult("found", Circuit((0, 1)), reason="single edge")
        return SearchResult("none", reason="two non-adjacent topes")
    if n < 2:
        return SearchResult("none", reason="fewer than two topes")
    low = [k for k in range(n) if len(adj[k]) < 2]
    if low:
        return SearchResult("none", reason=f"tope {sign_string(g.topes[low[0]])} has degree < 2")

    is_bu = [c == BURNT_UMBER for c in g.colors]
    start = 0
    visited = [False] * n
    visited[start] = True
    path = [start]
    remaining = {BURNT_UMBER: 0, CHARTREUSE: 0}
    for k in range(1, n):
        remaining[g.colors[k]] += 1
    expansions = 0

    def candidates(cur: int) -> list[int]:
        """Admissible next vertices, or [] if the partial path is dead."""
        left = n - len(path)
        if left == 0:
            return []
        if not any(not visited[w] for w in adj[start]):
            return []
        # colors along the rest of the circuit must alternate
        k_same = remaining[g.colors[cur]]
        k_other = left - k_same
        if k_other != (left + 1) // 2 or k_same != left // 2:
            return []
        forced = []
        for u in range(n):
            if visited[u]:
                continue
            avail = 0
            via_cur = False
            for w in adj[u]:
                if not visited[w] or w == start:
                    avail += 1
                elif w == cur:
                    avail += 1
                    via_cur = True
            if avail < 2:
                return []
            if via_cur and avail == 2:
                forced.append(u)
        if len(forced) > 1:
            return []
        # unvisited vertices must stay reachable from cur
        seen = {cur}
        queue = deque([cur])
        while queue:
            for w in adj[queue.popleft()]:
                if not visited[w] and w not in seen:
                    seen.add(w)
                    queue.append(w)
        if len(seen) - 1 != left:
            return []
        if forced:
            return forced
        return [w for w in adj[cur] if not visited[w]]

    stack = [iter(candidates(start))]
    while stack:
        nxt = next(stack[-1], None)
        if nxt is None:
            stack.pop()
            if len(path) > 1:
                last = path.pop()
                visited[last] = False
                remaining[g.colors[last]] += 1
            continue
        expansions += 1
        if expansions > budget.max_expansions:
            return SearchResult("unknown", expansions=expansions, reason="budget exceeded")
        path.append(nxt)
        visited[nxt] = True
        remaining[g.colors[nxt]] -= 1
        if len(path) == n:
            if g.has_edge(nxt, start):
                circuit = Circuit(tuple(path))
                assert verify_circuit(g, circuit)
                assert is_bu.count(True) * 2 == n
                return SearchResult("found", circuit, expansions)
            path.pop()
            visited[nxt] = False
            remaining[g.colors[nxt]] += 1
            continue
        stack.append(iter(candidates(nxt)))
    return SearchResult("none", expansions=expansions, reason="search space exhausted")


# --- matchings -------------------------------------------------------------


@dataclass(frozen=True)
class Matching:
    pairs: frozenset[tuple[int, int]]

    def __len__(self) -> int:
        return len(self.pairs)

    def is_valid(self, g: TopeGraph) -> bool:
        used: set[int] = set()
        for a, b in self.pairs:
            if not g.has_edge(a, b) or a in used or b in used:
                return False
            used.update((a, b))
        return True

    def is_perfect(self, g: TopeGraph) -> bool:
        return 2 * len(self.pairs) == len(g.topes)


def max_matching(g: TopeGraph) -> Matching:
    """Maximum-cardinality matching by augmenting paths between the color classes."""
    left = [k for k, c in enumerate(g.colors) if c == BURNT_UMBER]
    adj = g.adjacency
    match_of: dict[int, int] = {}  # right vertex -> left vertex
    mate: dict[int, int] = {}  # left vertex -> right vertex
    for root in left:
        # breadth-first search for an augmenting path from a free left vertex
        parent: dict[int, int] = {}  # right vertex -> left vertex it was reached from
        queue = deque([root])
        free_right = None
        while queue and free_right is None:
            u = queue.popleft()
            for r in adj[u]:
                if r in parent:
                    continue
                parent[r] = u
                if r not in match_of:
                    free_right = r
                    break
                queue.append(match_of[r])
        if free_right is None:
            continue
        r = free_right
        while True:
            u = parent[r]
            prev = mate.get(u)
            match_of[r] = u
            mate[u] = r
            if u == root:
                break
            r = prev
    return Matching(frozenset((min(u, r), max(u, r)) for u, r in mate.items()))


def has_perfect_matching(g: TopeGraph) -> bool:
    return max_matching(g).is_perfect(g)


# --- export ----------------------------------------------------------------


def to_dot(g: TopeGraph, circuit: Optional[Circuit] = None, name: str = "topes") -> str:
    on_circuit = set()
    if circuit is not None:
        k = len(circuit.order)
        on_circuit = {
            (min(a, b), max(a, b))
            for a, b in zip(circuit.order, circuit.order[1:] + circuit.order[:1])
        } if k > 1 else set()
    lines = [f"graph {name} {{", "  node [style=filled, shape=box, fontname=monospace];"]
    for k, (t, c) in enumerate(zip(g.topes, g.colors)):
        font = "white" if c == BURNT_UMBER else "black"
        lines.append(
            f'  {k} [label="{sign_string(t)}", fillcolor="{_DOT_FILL[c]}", fontcolor={font}];'
        )
    for a, b in sorted(g.edges):
        attr = " [penwidth=3, color=red]" if (a, b) in on_circuit else ""
        lines.append(f"  {a} -- {b}{attr};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def graph_to_json(g: TopeGraph) -> dict:
    b, c = g.color_counts()
    return {
        "topes": [sign_string(t) for t in g.topes],
        "colors": list(g.colors),
        "edges": [list(e) for e in sorted(g.edges)],
        "burnt_umber": b,
        "chartreuse": c,
        "signed_oe": b - c,
    }


def circuit_to_json(g: TopeGraph, c: Circuit) -> dict:
    return {
        "length": len(c.order),
        "indices": list(c.order),
        "topes": [sign_string(g.topes[k]) for k in c.order],
    }


def matching_to_json(g: TopeGraph, m: Matching) -> dict:
    return {
        "size": len(m),
        "perfect": m.is_perfect(g),
        "pairs": [list(p) for p in sorted(m.pairs)],
        "pair_topes": [[sign_string(g.topes[a]), sign_string(g.topes[b])] for a, b in sorted(m.pairs)],
    }


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False)
