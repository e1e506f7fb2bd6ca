"""Cograph recognition with cotree / induced-P4 witnesses, and generators."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .graph import Graph, _components, bits


@dataclass(frozen=True)
class Leaf:
    vertex: int


@dataclass(frozen=True)
class Union:
    children: tuple


@dataclass(frozen=True)
class Join:
    children: tuple


Cotree = Leaf | Union | Join


@dataclass(frozen=True)
class P4Witness:
    vertices: tuple[int, int, int, int]


def leaves(t: Cotree) -> list[int]:
    if isinstance(t, Leaf):
        return [t.vertex]
    out = []
    for c in t.children:
        out.extend(leaves(c))
    return out


def _find_p4(g: Graph, within: int) -> tuple[int, int, int, int] | None:
    adj = g.adj
    for b in bits(within):
        for c in bits(adj[b] & within):
            if c < b:
                continue
            ends_b = adj[b] & within & ~adj[c] & ~(1 << c)
            ends_c = adj[c] & within & ~adj[b] & ~(1 << b)
            for a in bits(ends_b):
                far = ends_c & ~adj[a]
                if far:
                    d = bits(far)[0]
                    return (a, b, c, d) if a < d else (d, c, b, a)
    return None


def cotree_of(g: Graph) -> Cotree | P4Witness:
    """Cotree of ``g`` or a witness that ``g`` has an induced P4."""
    if g.n == 0:
        raise ValueError("the empty graph has no cotree")
    full = g.full_mask
    co_adj = [~a & full & ~(1 << v) for v, a in enumerate(g.adj)]

    def build(within: int) -> Cotree | P4Witness:
        if within & (within - 1) == 0:
            return Leaf(within.bit_length() - 1)
        parts = _components(g.adj, within)
        node = Union
        if len(parts) == 1:
            parts = _components(co_adj, within)
            node = Join
        if len(parts) == 1:
            return P4Witness(_find_p4(g, within))
        children = []
        for part in parts:
            sub = build(sum(1 << v for v in part))
            if isinstance(sub, P4Witness):
                return sub
            children.append(sub)
        return node(tuple(children))

    return build(full)


def is_cograph(g: Graph) -> bool:
    return g.n == 0 or not isinstance(cotree_of(g), P4Witness)


def cotree_to_graph(t: Cotree) -> Graph:
    vs = leaves(t)
    n = len(vs)
    if sorted(vs) != list(range(n)):
        raise ValueError("cotree leaves must be exactly 0..n-1")
    adj = [0] * n

    def walk(node: Cotree) -> int:
        if isinstance(node, Leaf):
            return 1 << node.vertex
        masks = [walk(c) for c in node.children]
        total = 0
        for m in masks:
            total |= m
        if isinstance(node, Join):
            for m in masks:
                for v in bits(m):
                    adj[v] |= total & ~m
        return total

    walk(t)
    return Graph(n, adj)


def _random_composition(n: int, rng: random.Random) -> list[int]:
    # Uniform over compositions of n with at least two parts: a non-empty
    # subset of the n-1 gaps between units marks the cuts.
    cuts = rng.randrange(1, 1 << (n - 1))
    parts, size = [], 1
    for gap in range(n - 1):
        if cuts >> gap & 1:
            parts.append(size)
            size = 1
        else:
            size += 1
    parts.append(size)
    return parts


def random_cotree(n: int, seed: int) -> Cotree:
    if n < 1:
        raise ValueError("n must be at least 1")
    rng = random.Random(seed)
    labels = list(range(n))
    rng.shuffle(labels)
    it = iter(labels)

    def build(size: int, join: bool) -> Cotree:
        if size == 1:
            return Leaf(next(it))
        kids = tuple(build(s, not join) for s in _random_composition(size, rng))
        return Join(kids) if join else Union(kids)

    return build(n, rng.random() < 0.5)


def random_cograph(n: int, seed: int) -> Graph:
    return cotree_to_graph(random_cotree(n, seed))


def random_threshold(n: int, seed: int) -> Graph:
    """Threshold graph built by adding isolated or dominating vertices."""
    rng = random.Random(seed)
    adj = [0] * n
    for v in range(1, n):
        if rng.random() < 0.5:
            for u in range(v):
                adj[u] |= 1 << v
            adj[v] = (1 << v) - 1
    order = list(range(n))
    rng.shuffle(order)
    new = [0] * n
    for v in range(n):
        for u in bits(adj[v]):
            new[order[v]] |= 1 << order[u]
    return Graph(n, new)
