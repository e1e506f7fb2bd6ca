"""Immutable simple undirected graphs and the basic algebra over them.

Vertices are the dense ids ``0..n-1``.  Adjacency is stored as one Python
int bitmask per vertex, which keeps the hot loops (triangle scans, induced
path extension, embedding search) on cheap bitwise operations.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Sequence
from itertools import combinations


class GraphError(ValueError):
    """Base class for malformed graph input."""


class OutOfRange(GraphError):
    pass


class SelfLoop(GraphError):
    pass


class DuplicateEdge(GraphError):
    pass


class LoopCreated(GraphError):
    """Two adjacent vertices were asked to be merged."""


class EdgeListError(GraphError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class Graph:
    __slots__ = ("n", "adj", "_edges")

    def __init__(self, n: int, adj: Sequence[int]):
        # Trusted constructor: ``adj`` must already be symmetric and loop-free.
        # Use make_graph() for validated construction from an edge list.
        self.n = n
        self.adj = tuple(adj)
        self._edges: tuple[tuple[int, int], ...] | None = None

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        if self._edges is None:
            out = []
            for u in range(self.n):
                rest = self.adj[u] >> (u + 1)
                v = u + 1
                while rest:
                    if rest & 1:
                        out.append((u, v))
                    rest >>= 1
                    v += 1
            self._edges = tuple(out)
        return self._edges

    @property
    def m(self) -> int:
        return sum(a.bit_count() for a in self.adj) // 2

    def adjacent(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        return bits(self.adj[v])

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def degrees(self) -> list[int]:
        return [a.bit_count() for a in self.adj]

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.adj == other.adj

    def __hash__(self) -> int:
        return hash((self.n, self.adj))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def bits(mask: int) -> list[int]:
    """Indices of the set bits of ``mask``, ascending."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def make_graph(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    if n < 0:
        raise OutOfRange(f"negative vertex count {n}")
    adj = [0] * n
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise OutOfRange(f"edge ({u}, {v}) outside 0..{n - 1}")
        if u == v:
            raise SelfLoop(f"self-loop at {u}")
        if adj[u] >> v & 1:
            raise DuplicateEdge(f"duplicate edge ({u}, {v})")
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return Graph(n, adj)


def empty_graph(n: int) -> Graph:
    return Graph(n, [0] * n)


def complete_graph(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph(n, [full & ~(1 << v) for v in range(n)])


def path_graph(n: int) -> Graph:
    return make_graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise OutOfRange(f"a cycle needs at least 3 vertices, got {n}")
    return make_graph(n, [(i, (i + 1) % n) for i in range(n)])


def disjoint_union(g: Graph, h: Graph) -> Graph:
    shift = g.n
    return Graph(g.n + h.n, list(g.adj) + [a << shift for a in h.adj])


def join(g: Graph, h: Graph) -> Graph:
    shift = g.n
    h_all = ((1 << h.n) - 1) << shift
    g_all = (1 << g.n) - 1
    adj = [a | h_all for a in g.adj] + [(a << shift) | g_all for a in h.adj]
    return Graph(g.n + h.n, adj)


def complement(g: Graph) -> Graph:
    full = g.full_mask
    return Graph(g.n, [~a & full & ~(1 << v) for v, a in enumerate(g.adj)])


def _check_vertices(g: Graph, s: Iterable[int]) -> list[int]:
    s = list(s)
    for v in s:
        if not 0 <= v < g.n:
            raise OutOfRange(f"vertex {v} outside 0..{g.n - 1}")
    if len(set(s)) != len(s):
        raise GraphError("repeated vertex in vertex set")
    return s


def induced_subgraph(g: Graph, s: Iterable[int]) -> Graph:
    """Subgraph on ``s``; new id ``i`` is ``s[i]``."""
    s = _check_vertices(g, s)
    pos = {v: i for i, v in enumerate(s)}
    adj = []
    for v in s:
        a = 0
        for w in bits(g.adj[v]):
            i = pos.get(w)
            if i is not None:
                a |= 1 << i
        adj.append(a)
    return Graph(len(s), adj)


def delete_vertex(g: Graph, v: int) -> Graph:
    return induced_subgraph(g, [u for u in range(g.n) if u != v])


def identify_vertices(g: Graph, classes: Iterable[Iterable[int]]) -> tuple[Graph, list[int]]:
    """Merge each class into a single vertex.

    New ids follow the order of each class's smallest old id, so vertices
    that are not merged keep their relative order.  Returns the merged graph
    and the old->new id map.
    """
    rep = list(range(g.n))
    seen: set[int] = set()
    for cls in classes:
        cls = _check_vertices(g, cls)
        if seen.intersection(cls):
            raise GraphError("identification classes overlap")
        seen.update(cls)
        cm = mask_of(cls)
        for v in cls:
            if g.adj[v] & cm:
                raise LoopCreated(f"merging adjacent vertices in class {sorted(cls)}")
        low = min(cls)
        for v in cls:
            rep[v] = low
    reps = sorted(set(rep))
    new_id = {r: i for i, r in enumerate(reps)}
    mapping = [new_id[rep[v]] for v in range(g.n)]
    adj = [0] * len(reps)
    for u, v in g.edges:
        a, b = mapping[u], mapping[v]
        adj[a] |= 1 << b
        adj[b] |= 1 << a
    return Graph(len(reps), adj), mapping


# ---------------------------------------------------------------- enumerators


def enumerate_triangles(g: Graph) -> list[tuple[int, int, int]]:
    out = []
    adj = g.adj
    for u in range(g.n):
        higher = adj[u] >> (u + 1) << (u + 1)
        for v in bits(higher):
            for w in bits(higher & adj[v] & ~((1 << (v + 1)) - 1)):
                out.append((u, v, w))
    return out


def enumerate_induced_p3(g: Graph) -> list[tuple[int, int, int]]:
    """Triples ``(u, v, w)`` with centre ``v``, ``u < w`` and ``uw`` absent."""
    out = []
    adj = g.adj
    for v in range(g.n):
        nb = bits(adj[v])
        for i, u in enumerate(nb):
            non = ~adj[u]
            for w in nb[i + 1:]:
                if non >> w & 1:
                    out.append((u, v, w))
    out.sort()
    return out


def find_induced_cycles_up_to(g: Graph, max_len: int, min_len: int = 4) -> list[tuple[int, ...]]:
    """All chordless cycles with ``min_len <= length <= max_len``.

    Each cycle is reported once, rotated to start at its smallest vertex and
    oriented so that the second vertex is smaller than the last.
    """
    if max_len < 4:
        raise ValueError("max_len must be at least 4")
    min_len = max(min_len, 4)
    adj = g.adj
    out: list[tuple[int, ...]] = []

    def extend(path: list[int], blocked: int, allowed: int, s_nbrs: int) -> None:
        t = path[-1]
        k = len(path)
        cand = adj[t] & allowed & ~blocked
        while cand:
            low = cand & -cand
            cand ^= low
            w = low.bit_length() - 1
            if s_nbrs >> w & 1:
                if k >= 3 and k + 1 >= min_len and path[1] < w:
                    out.append(tuple(path) + (w,))
                continue
            if k + 1 < max_len:
                nb = blocked | adj[t] | (1 << t)
                path.append(w)
                extend(path, nb, allowed, s_nbrs)
                path.pop()

    for s in range(g.n):
        allowed = g.full_mask & ~((1 << (s + 1)) - 1)
        s_nbrs = adj[s] & allowed
        for a in bits(s_nbrs):
            # The second vertex may not be adjacent to a later path vertex
            # except the next one; s's other neighbours may only close.
            extend([s, a], 0, allowed, s_nbrs & ~(1 << a))
    out.sort(key=lambda c: (len(c), c))
    return out


def induced_paths(g: Graph, s: int, t: int) -> Iterator[tuple[int, ...]]:
    """Every chordless path from ``s`` to ``t``."""
    adj = g.adj

    def extend(path: list[int], blocked: int) -> Iterator[tuple[int, ...]]:
        last = path[-1]
        if adj[last] >> t & 1:
            yield tuple(path) + (t,)
            return
        nb = blocked | adj[last] | (1 << last)
        for w in bits(adj[last] & ~blocked):
            path.append(w)
            yield from extend(path, nb)
            path.pop()

    if s == t:
        yield (s,)
        return
    yield from extend([s], 1 << s)


# ---------------------------------------------------------------- predicates


def is_clique(g: Graph, s: Iterable[int] | None = None) -> bool:
    vs = range(g.n) if s is None else list(s)
    m = mask_of(vs)
    return all((g.adj[v] | (1 << v)) & m == m for v in vs)


def is_independent(g: Graph, s: Iterable[int] | None = None) -> bool:
    vs = range(g.n) if s is None else list(s)
    m = mask_of(vs)
    return all(g.adj[v] & m == 0 for v in vs)


def is_triangle_free(g: Graph) -> bool:
    adj = g.adj
    for u, v in g.edges:
        if adj[u] & adj[v]:
            return False
    return True


def is_cluster(g: Graph) -> bool:
    """True iff there is no induced P3, i.e. every component is a clique."""
    adj = g.adj
    for v in range(g.n):
        closed = adj[v] | (1 << v)
        for u in bits(adj[v]):
            if (adj[u] | (1 << u)) != closed:
                return False
    return True


def two_coloring(g: Graph) -> list[int] | None:
    color = [-1] * g.n
    for s in range(g.n):
        if color[s] != -1:
            continue
        color[s] = 0
        stack = [s]
        while stack:
            v = stack.pop()
            for w in bits(g.adj[v]):
                if color[w] == -1:
                    color[w] = 1 - color[v]
                    stack.append(w)
                elif color[w] == color[v]:
                    return None
    return color


def is_bipartite(g: Graph) -> bool:
    return two_coloring(g) is not None


def components(g: Graph) -> list[list[int]]:
    """Connected components, each sorted, ordered by smallest vertex."""
    return _components(g.adj, g.full_mask)


def _components(adj: Sequence[int], within: int) -> list[list[int]]:
    comps = []
    left = within
    while left:
        low = left & -left
        comp = low
        frontier = low
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= adj[v]
            nxt &= within & ~comp
            comp |= nxt
            frontier = nxt
        left &= ~comp
        comps.append(bits(comp))
    return comps


def co_components(g: Graph) -> list[list[int]]:
    return components(complement(g))


def is_connected(g: Graph) -> bool:
    return g.n <= 1 or len(components(g)) == 1


def co_connected(g: Graph) -> bool:
    return g.n <= 1 or len(co_components(g)) == 1


# Small forbidden patterns identified by (edge count, sorted degrees); on four
# or five vertices these signatures pin down the isomorphism type exactly.
_2K2 = (2, (1, 1, 1, 1))
_C4 = (4, (2, 2, 2, 2))
_P4 = (3, (1, 1, 2, 2))
_C5 = (5, (2, 2, 2, 2, 2))


def _signature(g: Graph, s: tuple[int, ...]) -> tuple[int, tuple[int, ...]]:
    m = mask_of(s)
    degs = sorted((g.adj[v] & m).bit_count() for v in s)
    return sum(degs) // 2, tuple(degs)


def _find_small(g: Graph, size: int, forbidden: set) -> tuple[int, ...] | None:
    for s in combinations(range(g.n), size):
        if _signature(g, s) in forbidden:
            return s
    return None


def is_split(g: Graph) -> bool:
    """Split iff {2K2, C4, C5}-free."""
    return _find_small(g, 4, {_2K2, _C4}) is None and _find_small(g, 5, {_C5}) is None


def is_threshold(g: Graph) -> bool:
    """Threshold iff {2K2, C4, P4}-free."""
    return _find_small(g, 4, {_2K2, _C4, _P4}) is None


# ---------------------------------------------------------------- edge lists


def write_edge_list(g: Graph) -> str:
    lines = [f"p graph {g.n} {g.m}"]
    lines.extend(f"e {u + 1} {v + 1}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


def read_edge_list(text: str) -> Graph:
    n = None
    declared_m = None
    edges: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if n is not None:
                raise EdgeListError("second header line", lineno)
            if len(parts) != 4 or parts[1] != "graph":
                raise EdgeListError("expected 'p graph <n> <m>'", lineno)
            try:
                n, declared_m = int(parts[2]), int(parts[3])
            except ValueError:
                raise EdgeListError("non-integer header field", lineno) from None
        elif parts[0] == "e":
            if n is None:
                raise EdgeListError("edge before header", lineno)
            if len(parts) != 3:
                raise EdgeListError("expected 'e <u> <v>'", lineno)
            try:
                u, v = int(parts[1]) - 1, int(parts[2]) - 1
            except ValueError:
                raise EdgeListError("non-integer vertex id", lineno) from None
            edges.append((u, v))
        else:
            raise EdgeListError(f"unknown line type {parts[0]!r}", lineno)
    if n is None:
        raise EdgeListError("missing 'p graph' header")
    try:
        g = make_graph(n, edges)
    except GraphError as exc:
        raise EdgeListError(str(exc)) from None
    if g.m != declared_m:
        raise EdgeListError(f"header declares {declared_m} edges, found {g.m}")
    return g
