import itertools

import pytest
from hypothesis import given, settings, strategies as st

from partilab.sat import CnfFormula, DimacsError, brute_force_sat, dpll, parse_dimacs, write_dimacs


def test_dpll_examples():
    assert dpll(CnfFormula.of(1, [[1], [-1]])).model is None
    res = dpll(CnfFormula.of(2, [[1, 2]]), [-1])
    assert res.model == [False, True]


def test_empty_clause_unsat():
    assert not dpll(CnfFormula.of(2, [[1, 2], []])).sat


def test_free_variables_default_true():
    assert dpll(CnfFormula.of(3, [[-2]])).model == [True, False, True]


def test_contradictory_assumptions():
    assert dpll(CnfFormula.of(1, []), [1, -1]).model is None


def test_deterministic_first_branch():
    # lowest variable, true phase first
    res = dpll(CnfFormula.of(3, [[1, 2, 3], [-1, -2, -3]]))
    assert res.model == [True, True, False]
    assert res.stats.decisions >= 1


def test_literal_range_checked():
    with pytest.raises(ValueError):
        CnfFormula.of(2, [[3]])
    with pytest.raises(ValueError):
        dpll(CnfFormula.of(2, []), [5])


clause = st.lists(st.integers(1, 6).flatmap(lambda v: st.sampled_from([v, -v])), min_size=1, max_size=3)


@settings(max_examples=400, deadline=None)
@given(st.lists(clause, max_size=25), st.lists(st.integers(1, 6).flatmap(lambda v: st.sampled_from([v, -v])), max_size=3))
def test_dpll_matches_brute_force(clauses, assumptions):
    f = CnfFormula.of(6, clauses)
    res = dpll(f, assumptions)
    units = [[l] for l in assumptions]
    ref = brute_force_sat(CnfFormula.of(6, clauses + units))
    assert res.sat == (ref is not None)
    if res.sat:
        assert f.evaluate(res.model)
        assert all(res.model[abs(l) - 1] == (l > 0) for l in assumptions)


def test_dpll_exhaustive_tiny():
    lits = [1, -1, 2, -2]
    clauses = [c for k in (1, 2) for c in itertools.combinations(lits, k)]
    for chosen in itertools.combinations(clauses, 3):
        f = CnfFormula.of(2, chosen)
        assert dpll(f).sat == (brute_force_sat(f) is not None)


def test_parse_dimacs_examples():
    f = parse_dimacs("p cnf 3 1\n1 2 3 0\n")
    assert f.clauses == ((1, 2, 3),)
    assert parse_dimacs("c hi\np cnf 2 1\n1 -1 0\n").clauses == ((1, -1),)
    f = parse_dimacs("p cnf 3 2\n1 2\n3 0 -1 0\n")
    assert f.clauses == ((1, 2, 3), (-1,))


@pytest.mark.parametrize("text,line", [
    ("1 2 0\n", 1),
    ("p cnf 2 1\n1 3 0\n", 2),
    ("p cnf 2 1\n1 x 0\n", 2),
    ("p dnf 2 1\n", 1),
    ("p cnf 2 1\np cnf 2 1\n", 2),
])
def test_parse_dimacs_errors_carry_line(text, line):
    with pytest.raises(DimacsError) as info:
        parse_dimacs(text)
    assert info.value.line == line


@pytest.mark.parametrize("text", ["", "p cnf 2 2\n1 0\n", "p cnf 2 1\n1 2\n"])
def test_parse_dimacs_structure_errors(text):
    with pytest.raises(DimacsError):
        parse_dimacs(text)


def test_dimacs_roundtrip():
    f = CnfFormula.of(4, [[1, -2], [3], [-4, 2, 1]])
    assert parse_dimacs(write_dimacs(f, ["note"])) == f
