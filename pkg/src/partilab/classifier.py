"""Induced-subgraph search and the forbidden-subgraph recognizers for cographs."""

from __future__ import annotations

from dataclasses import dataclass

from .catalog import B_NAMES, CO_I_NAMES, H_NAMES, I_NAMES, J_NAMES, R_NAMES, named
from .cotree import P4Witness, cotree_of
from .graph import Graph, enumerate_induced_p3, enumerate_triangles, is_connected
from .solver import NotACograph

# Embedding[i] is the host vertex playing pattern vertex i.
Embedding = tuple[int, ...]


class NotConnected(ValueError):
    pass


class PremiseNotMet(ValueError):
    pass


def is_embedding(host: Graph, pattern: Graph, emb: Embedding) -> bool:
    if len(emb) != pattern.n or len(set(emb)) != pattern.n:
        return False
    if any(not 0 <= h < host.n for h in emb):
        return False
    for i in range(pattern.n):
        for j in range(i + 1, pattern.n):
            if pattern.adjacent(i, j) != host.adjacent(emb[i], emb[j]):
                return False
    return True


def _search_order(pattern: Graph) -> list[int]:
    # Greedy: next vertex has most neighbours among those placed, then the
    # highest degree; keeps the candidate masks tight early.
    order: list[int] = []
    placed = 0
    left = set(range(pattern.n))
    while left:
        v = max(left, key=lambda u: ((pattern.adj[u] & placed).bit_count(), pattern.degree(u), -u))
        order.append(v)
        placed |= 1 << v
        left.remove(v)
    return order


def contains_induced(host: Graph, pattern: Graph) -> Embedding | None:
    """An induced copy of ``pattern`` in ``host``, or None."""
    k = pattern.n
    if k > host.n:
        return None
    if k == 0:
        return ()
    order = _search_order(pattern)
    hdeg = host.degrees()
    full = host.full_mask
    hadj = host.adj
    padj = pattern.adj
    # Forward checking: every unplaced pattern vertex keeps a candidate mask.
    # Degree and co-degree filters both prune.
    hco = [host.n - 1 - d for d in hdeg]
    pdeg = pattern.degrees()
    start = [
        sum(1 << v for v in range(host.n) if hdeg[v] >= pdeg[p] and hco[v] >= k - 1 - pdeg[p])
        for p in range(k)
    ]
    if not all(start):
        return None
    image = [-1] * k

    def place(i: int, dom: list[int]) -> bool:
        if i == k:
            return True
        p = order[i]
        cand = dom[p]
        rest = order[i + 1:]
        while cand:
            low = cand & -cand
            cand ^= low
            h = low.bit_length() - 1
            nb, non = hadj[h], full & ~hadj[h] & ~low
            nxt = dom[:]
            for q in rest:
                nxt[q] &= nb if padj[p] >> q & 1 else non
                if not nxt[q]:
                    break
            else:
                image[p] = h
                if place(i + 1, nxt):
                    return True
        return False

    if not place(0, start):
        return None
    emb = tuple(image)
    assert is_embedding(host, pattern, emb), "embedding search returned a non-embedding"
    return emb


def is_isomorphic(g: Graph, h: Graph) -> bool:
    return g.n == h.n and g.m == h.m and contains_induced(g, h) is not None


@dataclass(frozen=True)
class ClassReport:
    label: str
    verdict: bool
    pattern: str | None = None
    witness: Embedding | None = None

    def line(self) -> str:
        if self.verdict:
            return f"{self.label} yes"
        return f"{self.label} no {self.pattern} " + " ".join(str(v + 1) for v in self.witness)


def _require(g: Graph, connected: bool) -> None:
    if g.n and isinstance(cotree_of(g), P4Witness):
        raise NotACograph("input graph contains an induced P4")
    if connected and not is_connected(g):
        raise NotConnected("recognizer is stated for connected cographs")


def _sized(names: list[str]) -> list[tuple[str, Graph]]:
    # Smallest patterns first so negative witnesses stay small.
    pats = [(name, named(name)) for name in names]
    return sorted(pats, key=lambda p: (p[1].n, p[1].m))


_PATTERNS: dict[str, list[tuple[str, Graph]]] = {}


def _patterns(key: str, names: list[str]) -> list[tuple[str, Graph]]:
    if key not in _PATTERNS:
        _PATTERNS[key] = _sized(names)
    return _PATTERNS[key]


def _scan(label: str, g: Graph, key: str, names: list[str]) -> ClassReport:
    for name, pat in _patterns(key, names):
        emb = contains_induced(g, pat)
        if emb is not None:
            return ClassReport(label, False, name, emb)
    return ClassReport(label, True)


def is_partitionable_cograph(g: Graph) -> ClassReport:
    _require(g, connected=False)
    return _scan("partitionable", g, "H", H_NAMES)


def is_bi_threshold_cc(g: Graph) -> ClassReport:
    _require(g, connected=True)
    return _scan("bi-threshold", g, "B", B_NAMES)


def is_monopolar_cc(g: Graph) -> ClassReport:
    _require(g, connected=True)
    return _scan("monopolar", g, "J", J_NAMES)


def is_mns_cc(g: Graph) -> ClassReport:
    _require(g, connected=True)
    return _scan("monopolar-nearly-split", g, "R", R_NAMES)


def is_12_cograph_fbs(g: Graph) -> ClassReport:
    _require(g, connected=False)
    return _scan("(1,2)", g, "I", I_NAMES)


def is_21_cograph_fbs(g: Graph) -> ClassReport:
    _require(g, connected=False)
    return _scan("(2,1)", g, "coI", CO_I_NAMES)


def classify(g: Graph) -> list[ClassReport]:
    """Every recognizer whose precondition ``g`` meets."""
    _require(g, connected=False)
    out = [is_partitionable_cograph(g), is_12_cograph_fbs(g), is_21_cograph_fbs(g)]
    if g.n and is_connected(g):
        out += [is_bi_threshold_cc(g), is_monopolar_cc(g), is_mns_cc(g)]
    return out


# ---------------------------------------------------------------- lemma witnesses

LEMMA_TARGETS = {
    1: ["F1", "F2", "F3"],
    2: ["Q1", "Q2"],
    3: ["S1", "S2", "S3", "S4"],
    4: ["W1", "W2", "W3", "W4"],
}


def lemma_premise(g: Graph, lemma: int) -> bool:
    has_p3 = bool(enumerate_induced_p3(g))
    if lemma == 1:
        return has_p3 and bool(enumerate_triangles(g))
    cograph = g.n == 0 or not isinstance(cotree_of(g), P4Witness)
    if not (cograph and has_p3):
        return False
    if lemma == 2:
        return contains_induced(g, named("2K2")) is not None
    if lemma == 3:
        return (
            contains_induced(g, named("C4")) is None
            and contains_induced(g, named("2K2")) is not None
            and bool(enumerate_triangles(g))
        )
    if lemma == 4:
        return contains_induced(g, named("2K3")) is not None
    raise ValueError(f"no lemma {lemma}")


def lemma_witness(g: Graph, lemma: int) -> tuple[str, Embedding]:
    """Name and embedding of one of the lemma's target graphs in ``g``."""
    if lemma not in LEMMA_TARGETS:
        raise ValueError(f"no lemma {lemma}")
    if not lemma_premise(g, lemma):
        raise PremiseNotMet(f"graph does not meet the premise of lemma {lemma}")
    for name, pat in _patterns(f"L{lemma}", LEMMA_TARGETS[lemma]):
        emb = contains_induced(g, pat)
        if emb is not None:
            return name, emb
    raise AssertionError(f"lemma {lemma} premise holds but no target embeds")


def greedy_minimal(g: Graph, keep) -> list[int]:
    """Delete vertices while ``keep`` stays true; returns the surviving ids."""
    from .graph import induced_subgraph

    alive = list(range(g.n))
    changed = True
    while changed:
        changed = False
        for v in list(alive):
            trial = [u for u in alive if u != v]
            if keep(induced_subgraph(g, trial)):
                alive = trial
                changed = True
    return alive

