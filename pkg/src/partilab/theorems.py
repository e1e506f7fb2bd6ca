"""Seeded equivalence suites: forbidden-subgraph recognizers against solvers.

Each suite returns a summary line and a pass flag; the CLI and the
acceptance tests both drive these.
"""

from __future__ import annotations

import random

from . import classifier as cl
from .catalog import H_NAMES, catalog_names, named
from .cotree import random_cograph, random_threshold
from .graph import (
    Graph,
    complement,
    delete_vertex,
    disjoint_union,
    induced_subgraph,
    is_bipartite,
    is_connected,
    is_threshold,
    join,
    make_graph,
)
from .solver import (
    brute_force_partition,
    decide_12_cograph,
    decide_21_cograph,
    decide_monopolar,
    decide_partition,
)


def random_graph(n: int, p: float, rng: random.Random) -> Graph:
    return make_graph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])


def random_connected_cograph(n: int, rng: random.Random) -> Graph:
    while True:
        g = random_cograph(n, rng.getrandbits(32))
        if is_connected(g):
            return g


def random_quasi_threshold(n: int, rng: random.Random) -> Graph:
    """C4-free cograph: unions of parts, each part a dominating vertex over a smaller one."""
    if n == 1:
        return make_graph(1, [])
    if rng.random() < 0.5:
        k = rng.randrange(1, n)
        return disjoint_union(random_quasi_threshold(k, rng), random_quasi_threshold(n - k, rng))
    return join(make_graph(1, []), random_quasi_threshold(n - 1, rng))


def _sample(make, premise, count: int, rng: random.Random, tries: int = 200000):
    out = []
    for _ in range(tries):
        g = make(rng)
        if premise(g):
            out.append(g)
            if len(out) == count:
                return out
    raise RuntimeError(f"only {len(out)} of {count} samples met the premise")


# ---------------------------------------------------------------- suites


def h_list_suite() -> tuple[str, bool]:
    bad = []
    for name in H_NAMES:
        g = named(name)
        if decide_partition(g) is not None or brute_force_partition(g) is not None:
            bad.append(name)
            continue
        if any(decide_partition(delete_vertex(g, v)) is None for v in range(g.n)):
            bad.append(name + "-v")
    return f"H-list minimal obstructions: {len(H_NAMES) - len(bad)}/{len(H_NAMES)} {' '.join(bad)}".rstrip(), not bad


def cograph_suite(count: int, seed: int, max_n: int = 18) -> tuple[str, bool]:
    rng = random.Random(seed)
    agree = 0
    for _ in range(count):
        g = random_cograph(rng.randint(1, max_n), rng.getrandbits(32))
        agree += cl.is_partitionable_cograph(g).verdict == (decide_partition(g) is not None)
    return f"partitionable cographs vs solver: {agree}/{count}", agree == count


def subclass_suite(count: int, seed: int, max_n: int = 14) -> list[tuple[str, bool]]:
    rng = random.Random(seed)
    hits = dict.fromkeys(["bi-threshold", "monopolar", "monopolar-nearly-split", "(1,2)", "(2,1)"], 0)
    for _ in range(count):
        g = random_connected_cograph(rng.randint(2, max_n), rng)
        mono = decide_monopolar(g) is not None
        one_two = decide_12_cograph(g) is not None
        hits["bi-threshold"] += cl.is_bi_threshold_cc(g).verdict == (is_bipartite(g) or is_threshold(g))
        hits["monopolar"] += cl.is_monopolar_cc(g).verdict == mono
        hits["monopolar-nearly-split"] += cl.is_mns_cc(g).verdict == (mono or one_two)
        hits["(1,2)"] += cl.is_12_cograph_fbs(g).verdict == one_two
        hits["(2,1)"] += cl.is_21_cograph_fbs(g).verdict == (decide_21_cograph(g) is not None)
    return [(f"{k} vs oracle: {v}/{count}", v == count) for k, v in hits.items()]


LEMMA_SAMPLERS = {
    1: lambda rng: random_graph(rng.randint(4, 10), rng.uniform(0.2, 0.7), rng),
    2: lambda rng: random_cograph(rng.randint(5, 12), rng.getrandbits(32)),
    3: lambda rng: random_quasi_threshold(rng.randint(5, 12), rng),
    4: lambda rng: random_cograph(rng.randint(7, 14), rng.getrandbits(32)),
}


def lemma_suite(lemma: int, count: int, seed: int) -> tuple[str, bool]:
    rng = random.Random(seed)
    graphs = _sample(LEMMA_SAMPLERS[lemma], lambda g: cl.lemma_premise(g, lemma), count, rng)
    good = 0
    for g in graphs:
        name, emb = cl.lemma_witness(g, lemma)
        good += cl.is_embedding(g, named(name), emb)
    return f"lemma {lemma} witnesses: {good}/{count}", good == count


def threshold_join_suite(count: int, seed: int, max_n: int = 8) -> tuple[str, bool]:
    rng = random.Random(seed)
    good = 0
    for _ in range(count):
        g = random_threshold(rng.randint(1, max_n), rng.getrandbits(32))
        h = random_threshold(rng.randint(1, max_n), rng.getrandbits(32))
        good += decide_partition(join(g, h)) is not None
    return f"threshold joins partitionable: {good}/{count}", good == count


def minimal_connected_suite(count: int, seed: int, max_n: int = 16) -> tuple[str, bool]:
    """Greedy vertex-minimal in-partitionable subgraphs of cographs are connected."""
    rng = random.Random(seed)
    found = good = 0
    for _ in range(count):
        g = random_cograph(rng.randint(6, max_n), rng.getrandbits(32))
        if decide_partition(g) is not None:
            continue
        found += 1
        keep = cl.greedy_minimal(g, lambda h: decide_partition(h) is None)
        good += is_connected(induced_subgraph(g, keep))
    return f"minimal obstructions connected: {good}/{found}", good == found


def oracle_suite(count: int, seed: int, max_n: int = 14) -> tuple[str, bool]:
    rng = random.Random(seed)
    graphs = [random_graph(rng.randint(1, max_n), rng.choice((0.1, 0.3, 0.5, 0.7, 0.9)), rng) for _ in range(count)]
    small = [named(n) for n in catalog_names()]
    graphs += [g for g in small if g.n <= max(max_n, 14)]
    graphs += [complement(g) for g in small if g.n <= max(max_n, 14)]
    agree = sum((decide_partition(g) is None) == (brute_force_partition(g) is None) for g in graphs)
    return f"solver vs brute force: {agree}/{len(graphs)}", agree == len(graphs)


def run_all(seeds: int, seed: int = 0, max_oracle_n: int = 14):
    yield h_list_suite()
    yield cograph_suite(seeds, seed)
    yield from subclass_suite(seeds, seed + 1, max_oracle_n)
    for lemma in (1, 2, 3, 4):
        yield lemma_suite(lemma, seeds, seed + 1 + lemma)
    yield threshold_join_suite(seeds, seed + 6)
    yield minimal_connected_suite(seeds, seed + 7)
    yield oracle_suite(seeds, seed + 8, max_oracle_n)
