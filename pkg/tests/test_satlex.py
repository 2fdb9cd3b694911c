import itertools

import pytest
from hypothesis import given

from lfcolor.satlex import (CnfFormula, DimacsError, WidthError, decide_odd_min_sat, from_binary_assignment,
                            iter_assignments, lf_sat_assignment, normalize_to_3cnf, parity, parse_dimacs,
                            satisfies, satisfies_binary, satisfying_assignments, to_binary_assignment)
from lfcolor.model import UsageError
from conftest import formulas


def test_parse_examples():
    f = parse_dimacs("p cnf 2 1\n1 2 0")
    assert f.n == 2 and f.clauses == ((1, 2),) and f.decision == 2
    g = parse_dimacs("c comment\np cnf 1 2\n1 0\n-1 0\n")
    assert g.clauses == ((1,), (-1,))


@pytest.mark.parametrize("text,line", [
    ("p cnf 2 1\n5 0", 2),
    ("p cnf x 1\n1 0", 1),
    ("1 2 0", 1),
    ("p cnf 2 1\n1 a 0", 2),
])
def test_parse_errors_carry_line(text, line):
    with pytest.raises(DimacsError) as ei:
        parse_dimacs(text)
    assert ei.value.line == line


def test_parse_clause_count_mismatch():
    with pytest.raises(DimacsError):
        parse_dimacs("p cnf 2 2\n1 0")


def test_round_trip_dimacs():
    f = CnfFormula(3, ((1, -2, 3), (-3,)))
    assert parse_dimacs(f.to_dimacs()) == f
    assert CnfFormula.from_dict(f.to_dict()) == f


def test_normalize_examples():
    assert normalize_to_3cnf(CnfFormula(1, ((1,),))).clauses == ((1, 1, 1),)
    assert normalize_to_3cnf(CnfFormula(3, ((1, -2, 3),))).clauses == ((1, -2, 3),)
    with pytest.raises(WidthError):
        normalize_to_3cnf(CnfFormula(4, ((1, 2, 3, 4),)))


@given(formulas(max_n=6, width=3, exact=False))
def test_normalize_preserves_solutions(f):
    g = normalize_to_3cnf(f)
    assert g.n == f.n and g.decision_index == f.decision_index
    assert all(len(c) == 3 for c in g.clauses)
    assert satisfying_assignments(g) == satisfying_assignments(f)


@given(formulas(max_n=5, width=6, exact=False))
def test_split_mode_preserves_projection_and_decision(f):
    g = normalize_to_3cnf(f, split=True)
    assert all(len(c) == 3 for c in g.clauses)
    assert g.decision == f.n or f.n == g.n
    proj = sorted({a[:f.n] for a in satisfying_assignments(g)})
    assert proj == satisfying_assignments(f)


def test_satisfies_examples():
    assert satisfies(CnfFormula(2, ((1, 2, 2),)), "12")
    assert not satisfies(CnfFormula(1, ((-1, -1, -1),)), "1")
    assert satisfies(CnfFormula(0, ()), "")
    with pytest.raises(UsageError):
        satisfies(CnfFormula(2, ()), "1")
    with pytest.raises(UsageError):
        satisfies(CnfFormula(1, ()), "0")


def test_lf_examples():
    assert lf_sat_assignment(CnfFormula(1, ((1, 1, 1),))) == "1"
    f = CnfFormula(2, ((-1, -1, -1), (1, 2, 2)))
    assert lf_sat_assignment(f) == "21"
    assert lf_sat_assignment(CnfFormula(1, ((1,), (-1,)))) is None


def test_decide_examples():
    assert decide_odd_min_sat(CnfFormula(2, ((-1, -1, -1), (1, 2, 2))))
    assert not decide_odd_min_sat(CnfFormula(2, ((-2, -2, -2),)))
    assert not decide_odd_min_sat(CnfFormula(1, ((1,), (-1,))))
    assert not decide_odd_min_sat(CnfFormula(1, ((),)))


def test_decision_index_is_used():
    f = CnfFormula(2, ((-2,),), decision_index=1)
    assert decide_odd_min_sat(f)  # min assignment "12" sets x1 true


@given(formulas(max_n=8, max_z=10))
def test_lf_equals_enumeration_minimum(f):
    sols = satisfying_assignments(f)
    assert lf_sat_assignment(f) == (sols[0] if sols else None)
    expected = bool(sols) and sols[0][f.n - 1] == "1"
    assert decide_odd_min_sat(f) == expected


@given(formulas(max_n=7, max_z=8))
def test_prefixes_are_least_extendable(f):
    sols = satisfying_assignments(f)
    a = lf_sat_assignment(f)
    if a is None:
        return
    for i in range(f.n + 1):
        extendable = sorted({s[:i] for s in sols})
        assert extendable[0] == a[:i]


def test_iter_assignments_order():
    assert list(iter_assignments(2)) == ["11", "12", "21", "22"]


def test_parity_and_encodings():
    assert parity("21") == 1 and parity("12") == 0 and parity("") == 0 and parity("10") == 0
    assert to_binary_assignment("1212") == "1010"
    assert from_binary_assignment("1010") == "1212"
    clauses = ((1, -2),)
    for a in ("".join(t) for t in itertools.product("12", repeat=2)):
        assert satisfies(CnfFormula(2, clauses), a) == satisfies_binary(clauses, to_binary_assignment(a))


def test_formula_validation():
    with pytest.raises(UsageError):
        CnfFormula(1, ((2,),))
    with pytest.raises(UsageError):
        CnfFormula(1, ((0,),))
    with pytest.raises(UsageError):
        CnfFormula(2, (), decision_index=3)
    assert str(CnfFormula(2, ((1, -2),))) == "(x1 | ~x2)"
