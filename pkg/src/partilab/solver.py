"""Exact decision procedures for the colouring problems, with certificates.

Colour convention: RED vertices must induce a triangle-free graph, BLUE
vertices a disjoint union of cliques.  Encodings use variable ``v + 1`` for
vertex ``v`` with *true* meaning RED (for the (1,2) encoding, true means
"in the clique").
"""

from __future__ import annotations

import enum
from collections.abc import Mapping, Sequence
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .graph import (
    Graph,
    bits,
    complement,
    enumerate_induced_p3,
    enumerate_triangles,
    induced_subgraph,
    is_bipartite,
    is_clique,
    is_independent,
    mask_of,
)
from .sat import CnfFormula, SolveStats, dpll


class Color(enum.Enum):
    RED = "R"
    BLUE = "B"

    def __str__(self) -> str:
        return self.value


RED, BLUE = Color.RED, Color.BLUE


class SolverError(ValueError):
    pass


class SizeMismatch(SolverError):
    pass


class TooLarge(SolverError):
    pass


class NotACograph(SolverError):
    pass


@dataclass(frozen=True)
class Partition:
    colors: tuple[Color, ...]

    @classmethod
    def from_red(cls, n: int, red: Sequence[int]) -> "Partition":
        red_set = set(red)
        return cls(tuple(RED if v in red_set else BLUE for v in range(n)))

    @property
    def red(self) -> list[int]:
        return [v for v, c in enumerate(self.colors) if c is RED]

    @property
    def blue(self) -> list[int]:
        return [v for v, c in enumerate(self.colors) if c is BLUE]

    def __len__(self) -> int:
        return len(self.colors)

    def __str__(self) -> str:
        return "".join(c.value for c in self.colors)


@dataclass(frozen=True)
class Violation:
    kind: str  # "triangle" (red side) or "p3" (blue side) or "edge" (independent side)
    vertices: tuple[int, ...]


def encode_partition(g: Graph) -> tuple[CnfFormula, list[int]]:
    clauses = [(-(u + 1), -(v + 1), -(w + 1)) for u, v, w in enumerate_triangles(g)]
    clauses += [(u + 1, v + 1, w + 1) for u, v, w in enumerate_induced_p3(g)]
    return CnfFormula(g.n, tuple(clauses)), [v + 1 for v in range(g.n)]


def _assumption_lits(n: int, force: Mapping[int, Color] | None) -> list[int]:
    lits = []
    for v, c in sorted((force or {}).items()):
        if not 0 <= v < n:
            raise SolverError(f"forced vertex {v} outside 0..{n - 1}")
        lits.append(v + 1 if c is RED else -(v + 1))
    return lits


def solve_partition(g: Graph, force: Mapping[int, Color] | None = None) -> tuple[Partition | None, SolveStats]:
    f, _ = encode_partition(g)
    res = dpll(f, _assumption_lits(g.n, force))
    if res.model is None:
        return None, res.stats
    p = Partition(tuple(RED if x else BLUE for x in res.model))
    ok, why = verify_partition(g, p)
    assert ok, f"solver certificate failed verification: {why}"
    return p, res.stats


def decide_partition(g: Graph, force: Mapping[int, Color] | None = None) -> Partition | None:
    """A valid partition respecting ``force``, or None if none exists."""
    return solve_partition(g, force)[0]


def verify_partition(g: Graph, p: Partition) -> tuple[bool, Violation | None]:
    if len(p) != g.n:
        raise SizeMismatch(f"partition covers {len(p)} vertices, graph has {g.n}")
    adj = g.adj
    red = mask_of(p.red)
    blue = g.full_mask & ~red
    for u in bits(red):
        ru = adj[u] & red
        for v in bits(ru >> (u + 1) << (u + 1)):
            common = ru & adj[v] & ~((1 << (v + 1)) - 1)
            if common:
                return False, Violation("triangle", (u, v, bits(common)[0]))
    for v in bits(blue):
        nb = bits(adj[v] & blue)
        for i, u in enumerate(nb):
            for w in nb[i + 1:]:
                if not adj[u] >> w & 1:
                    return False, Violation("p3", (u, v, w))
    return True, None


# ---------------------------------------------------------------- oracle

MAX_BRUTE_N = 22
_CHUNK = 1 << 16


def brute_force_partition(g: Graph) -> Partition | None:
    """First valid colouring in lexicographic order (RED before BLUE).

    Kept independent of the CNF route: obstructions come from a plain scan
    of all vertex triples of the adjacency matrix.
    """
    n = g.n
    if n > MAX_BRUTE_N:
        raise TooLarge(f"brute force limited to {MAX_BRUTE_N} vertices, got {n}")
    if n == 0:
        return Partition(())
    a = [[g.adjacent(u, v) for v in range(n)] for u in range(n)]
    tri, p3 = [], []
    for u, v, w in combinations(range(n), 3):
        e = a[u][v] + a[u][w] + a[v][w]
        if e == 3:
            tri.append((1 << u) | (1 << v) | (1 << w))
        elif e == 2:
            p3.append((1 << u) | (1 << v) | (1 << w))
    tri_arr = np.array(tri, dtype=np.int64)
    p3_arr = np.array(p3, dtype=np.int64)
    full = (1 << n) - 1
    total = 1 << n
    for start in range(0, total, _CHUNK):
        codes = np.arange(start, min(total, start + _CHUNK), dtype=np.int64)
        # Colouring vector position v is code bit n-1-v; a set bit means BLUE.
        blue = np.zeros_like(codes)
        for v in range(n):
            blue |= ((codes >> (n - 1 - v)) & 1) << v
        red = full ^ blue
        bad = np.zeros(codes.shape, dtype=bool)
        for t in tri_arr:
            bad |= (red & t) == t
        for t in p3_arr:
            bad |= (blue & t) == t
        good = np.flatnonzero(~bad)
        if good.size:
            code = int(codes[good[0]])
            return Partition(tuple(BLUE if code >> (n - 1 - v) & 1 else RED for v in range(n)))
    return None


# ---------------------------------------------------------------- monopolar


def decide_monopolar(g: Graph) -> Partition | None:
    """RED = independent set, BLUE = disjoint union of cliques."""
    clauses = [(-(u + 1), -(v + 1)) for u, v in g.edges]
    clauses += [(u + 1, v + 1, w + 1) for u, v, w in enumerate_induced_p3(g)]
    res = dpll(CnfFormula(g.n, tuple(clauses)))
    if res.model is None:
        return None
    p = Partition(tuple(RED if x else BLUE for x in res.model))
    ok, why = verify_monopolar(g, p)
    assert ok, f"monopolar certificate failed verification: {why}"
    return p


def verify_monopolar(g: Graph, p: Partition) -> tuple[bool, Violation | None]:
    if len(p) != g.n:
        raise SizeMismatch(f"partition covers {len(p)} vertices, graph has {g.n}")
    red = mask_of(p.red)
    for u in p.red:
        if g.adj[u] & red:
            return False, Violation("edge", (u, bits(g.adj[u] & red)[0]))
    ok, why = verify_partition(induced_subgraph(g, p.blue), Partition((BLUE,) * len(p.blue)))
    if not ok:
        blue = p.blue
        return False, Violation("p3", tuple(blue[i] for i in why.vertices))
    return True, None


# ---------------------------------------------------------------- (1,2) and (2,1)


def _require_cograph(g: Graph) -> None:
    from .cotree import P4Witness, cotree_of

    if isinstance(cotree_of(g), P4Witness):
        raise NotACograph("input graph contains an induced P4")


def decide_12_cograph(g: Graph) -> list[int] | None:
    """A clique whose removal leaves a bipartite graph, or None.

    The rest only has to be triangle-free in the encoding; on cographs that
    already forces bipartiteness because there are no odd holes.
    """
    _require_cograph(g)
    clauses = []
    for u in range(g.n):
        non = ~g.adj[u] & g.full_mask & ~((1 << (u + 1)) - 1)
        clauses.extend((-(u + 1), -(v + 1)) for v in bits(non))
    clauses += [(u + 1, v + 1, w + 1) for u, v, w in enumerate_triangles(g)]
    res = dpll(CnfFormula(g.n, tuple(clauses)))
    if res.model is None:
        return None
    clique = [v for v in range(g.n) if res.model[v]]
    assert verify_12(g, clique), "(1,2) certificate failed verification"
    return clique


def decide_21_cograph(g: Graph) -> list[int] | None:
    """An independent set whose removal leaves a co-bipartite graph, or None."""
    return decide_12_cograph(complement(g))


def verify_12(g: Graph, clique: Sequence[int]) -> bool:
    rest = [v for v in range(g.n) if v not in set(clique)]
    return is_clique(g, clique) and is_bipartite(induced_subgraph(g, rest))


def verify_21(g: Graph, independent: Sequence[int]) -> bool:
    rest = [v for v in range(g.n) if v not in set(independent)]
    return is_independent(g, independent) and is_bipartite(induced_subgraph(complement(g), rest))
