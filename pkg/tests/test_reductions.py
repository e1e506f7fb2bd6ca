import itertools
import random

import pytest

from partilab.catalog import LITERAL_GADGET, PROPAGATOR_GADGET, DashedSkeleton
from partilab.classifier import is_isomorphic
from partilab.graph import make_graph
from partilab.reductions import (
    BLUE_BASES,
    RED_BASES,
    DuplicateVariableInClause,
    InvalidInstance,
    NegativeLiteralIn1in3,
    NegatorInstance,
    NotThreeSat,
    OneInThreeInstance,
    TooLarge,
    UnknownKind,
    VariantMismatch,
    brute_force_1in3,
    build_ladder,
    check_structure,
    endpoint_pattern_table,
    expand_dashed,
    gadget_graph,
    instantiate_negator,
    parse_1in3,
    parse_variant,
    reduce_1in3,
    reduce_3sat,
    verify_negator,
    verify_reduction,
)
from partilab.sat import CnfFormula, parse_dimacs
from partilab.solver import BLUE, RED, decide_partition

ALL_CLAUSES = [tuple(s * (i + 1) for i, s in enumerate(signs)) for signs in itertools.product((1, -1), repeat=3)]


def test_octahedron_negator():
    neg = instantiate_negator("octahedron")
    assert neg.graph.n == 6 and neg.graph.adjacent(neg.x, neg.y)


def test_strong_negator_sizes():
    assert instantiate_negator("strong_triangle(p62)").graph.n == 22
    assert instantiate_negator("strong_square", "sun").graph.n == 28
    assert instantiate_negator("strong-tri").kind == "strong_triangle(p62)"
    with pytest.raises(UnknownKind):
        instantiate_negator("strong_triangle(sun)")
    with pytest.raises(UnknownKind):
        instantiate_negator("hexagon")


def test_expand_single_splice_is_base():
    sk = DashedSkeleton(2, (), ((0, 1, "b"),), (0, 1))
    base = instantiate_negator("p62")
    g, mapping = expand_dashed(sk, {"b": base})
    assert is_isomorphic(g, base.graph)
    assert mapping == [0, 1] and g.adjacent(0, 1) == base.graph.adjacent(base.x, base.y)


def test_expand_without_dashed_edges():
    sk = DashedSkeleton(4, ((0, 1), (1, 2), (2, 3)), (), ())
    g, mapping = expand_dashed(sk, {})
    assert g == make_graph(4, [(0, 1), (1, 2), (2, 3)])
    assert mapping == [0, 1, 2, 3]
    with pytest.raises(UnknownKind):
        expand_dashed(DashedSkeleton(2, (), ((0, 1, "z"),), ()), {})


@pytest.mark.parametrize("base", BLUE_BASES)
def test_blue_negators(base):
    assert verify_negator(instantiate_negator(base), BLUE).passed


@pytest.mark.parametrize("base", RED_BASES)
def test_red_negators(base):
    assert verify_negator(instantiate_negator(base), RED).passed


@pytest.mark.parametrize("kind", ["strong_triangle(p62)", "strong_square(sun)"])
def test_strong_negators_both_colours(kind):
    neg = instantiate_negator(kind)
    assert verify_negator(neg, RED).passed and verify_negator(neg, BLUE).passed


def test_k2_is_not_a_blue_negator():
    r = verify_negator(NegatorInstance(make_graph(2, [(0, 1)]), 0, 1, "K2"), BLUE)
    assert not r.both_forbidden and not r.passed


def test_ladder_sizes():
    assert build_ladder(1).graph.n == 8
    assert build_ladder(2).graph.n == 28
    with pytest.raises(Exception):
        build_ladder(0)


@pytest.mark.parametrize("kind", ["sun", "bullfree", "strong_triangle(p62)"])
def test_ladder_rigid(kind):
    lad = build_ladder(3, kind)
    xs = [x for x, _ in lad.rungs]
    ys = [y for _, y in lad.rungs]
    for a, b in itertools.combinations(xs + ys, 2):
        same = (a in xs) == (b in xs)
        # same side must share a colour, opposite sides must differ
        for ca, cb in ((RED, BLUE), (BLUE, RED)) if same else ((RED, RED), (BLUE, BLUE)):
            assert decide_partition(lad.graph, {a: ca, b: cb}) is None
    assert decide_partition(lad.graph, {xs[0]: RED}) is not None
    assert decide_partition(lad.graph, {xs[0]: BLUE}) is not None


def test_reduce_k4free_single_clause():
    out = reduce_3sat(CnfFormula.of(3, [(1, 2, 3)]), "k4free")
    assert out.graph.n == 24
    assert len(out.tacs) == 3 and len(out.clauses) == 1
    a, b, c = out.clauses[1]
    assert out.graph.adjacent(a, b) and out.graph.adjacent(b, c) and not out.graph.adjacent(a, c)


def test_reduce_unsat_k4free():
    f = CnfFormula.of(3, ALL_CLAUSES)
    out = reduce_3sat(f, "k4free")
    assert decide_partition(out.graph) is None


def test_reduce_rejects():
    with pytest.raises(DuplicateVariableInClause):
        reduce_3sat(CnfFormula.of(2, [(1, -1, 2)]))
    with pytest.raises(DuplicateVariableInClause):
        reduce_3sat(parse_dimacs("p cnf 2 1\n1 -1 2 0\n"))
    with pytest.raises(NotThreeSat):
        reduce_3sat(CnfFormula.of(3, [(1, 2)]))
    with pytest.raises(VariantMismatch):
        reduce_3sat(CnfFormula.of(3, [(1, 2, 3)]), "perfect")


def test_parse_variant():
    assert parse_variant("planar-shape") == ("planar_shape", None)
    assert parse_variant("holes:6") == ("holes", 6)
    for bad in ("holes:4", "weird", "holes"):
        with pytest.raises(ValueError):
            parse_variant(bad)


def test_holes_rungs():
    out = reduce_3sat(CnfFormula.of(3, [(1, 2, 3), (-1, 2, -3)]), "holes:5")
    assert all(len(r) == 10 for r in out.tacs.values())
    assert [j for j, _, _ in out.tacs[1]][:5] == [1, 2, 3, 4, 5]


def test_verify_reduction_examples():
    assert verify_reduction(CnfFormula.of(3, [(1, 2, 3)]), "generic").agree
    r = verify_reduction(CnfFormula.of(3, ALL_CLAUSES), "bullfree")
    assert r.agree and not r.formula_satisfiable and not r.graph_partitionable
    r = verify_reduction(OneInThreeInstance(3, ((1, 2, 3),)), "perfect")
    assert r.agree and r.formula_satisfiable and r.lifted_partition_valid
    with pytest.raises(TooLarge):
        verify_reduction(CnfFormula.of(9, [(1, 2, 9)]))


def test_1in3_instances():
    inst = OneInThreeInstance(4, ((1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4)))
    assert brute_force_1in3(inst) is None
    assert decide_partition(reduce_1in3(inst).graph) is None
    with pytest.raises(InvalidInstance):
        OneInThreeInstance(3, ((1, 1, 2),))
    with pytest.raises(InvalidInstance):
        OneInThreeInstance(2, ((1, 2, 3),))


def test_parse_1in3():
    assert parse_1in3("p cnf 3 1\n1 2 3 0\n").clauses == ((1, 2, 3),)
    with pytest.raises(NegativeLiteralIn1in3):
        parse_1in3("p cnf 3 1\n1 -2 3 0\n")


def test_gadget_endpoint_patterns():
    g, ends = gadget_graph("literal")
    table = endpoint_pattern_table(g, ends)
    assert {p for p, ok in table.items() if ok} == {"RBB", "BRB", "BBR", "BBB"}
    g, ends = gadget_graph("propagator")
    table = endpoint_pattern_table(g, ends)
    assert {p for p, ok in table.items() if ok} == {"RRB", "RBR", "BRR", "BBB"}
    assert LITERAL_GADGET.endpoints and PROPAGATOR_GADGET.endpoints


def test_lifted_partition_is_valid():
    f = CnfFormula.of(4, [(1, -2, 3), (-1, 2, 4), (2, 3, -4)])
    r = verify_reduction(f, "generic")
    assert r.agree and r.lifted_partition_valid


def test_sidecar_format():
    out = reduce_3sat(CnfFormula.of(3, [(1, -2, 3)]), "k4free")
    lines = out.sidecar().splitlines()
    assert lines[0] == "c variant k4free negator sun"
    assert lines[1].startswith("var 1 rung 1 x ")
    assert lines[-1].startswith("clause 1 stc ")
    ids = [int(t) for t in lines[-1].split()[3:]]
    assert all(1 <= v <= out.graph.n for v in ids)


def test_check_structure_k4free_bullfree():
    f = CnfFormula.of(3, [(1, 2, 3), (-1, -2, 3)])
    assert check_structure(reduce_3sat(f, "k4free"), "k4free").passed
    assert check_structure(reduce_3sat(f, "bullfree")).passed
    with pytest.raises(VariantMismatch):
        check_structure(reduce_3sat(f, "k4free"), "bullfree")


def test_check_structure_holes5():
    out = reduce_3sat(CnfFormula.of(3, [(1, 2, 3), (-1, 2, -3)]), "holes:5")
    r = check_structure(out)
    assert r.passed, r.checks


def test_sun_has_five_holes():
    # the sun-based holes output is not hole-free, so the default differs
    out = reduce_3sat(CnfFormula.of(3, [(1, 2, 3)]), "holes:5", negator="sun")
    assert not check_structure(out).passed


def test_check_structure_perfect():
    out = reduce_1in3(OneInThreeInstance(3, ((1, 2, 3),)))
    r = check_structure(out)
    assert r.passed, r.checks


def test_random_1in3_agree():
    rng = random.Random(3)
    for _ in range(5):
        n = rng.randint(3, 4)
        clauses = tuple(tuple(rng.sample(range(1, n + 1), 3)) for _ in range(rng.randint(1, 2)))
        inst = OneInThreeInstance(n, clauses)
        assert verify_reduction(inst, "perfect").agree
