import threading

import pytest
from hypothesis import given, strategies as st

from assprimes import groebner
from assprimes.groebner import (BudgetExceeded, PolyIdeal, buchberger, clear_cache, eliminate,
                                ideal, ideal_member, normal_form, s_polynomial)
from assprimes.poly import GF, GREVLEX, LEX, Monomial, P, Polynomial

from oracles import evaluate, poly_of


def basis_strs(I):
    return [g.to_str(I.order) for g in buchberger(I)]


@pytest.mark.parametrize("gens, expected", [
    (["x^2", "x*y"], ["x^2", "x*y"]),
    (["x+y", "x-y"], ["x", "y"]),
    (["1"], ["1"]),
    (["x^2 - y", "x*y - 1"], ["x^2 - y", "x*y - 1", "y^2 - x"]),
])
def test_buchberger_examples(gens, expected):
    assert basis_strs(ideal(*gens)) == expected


@pytest.mark.parametrize("p, gens, expected", [
    ("x^2", ["x"], "0"),
    ("y", ["x"], "y"),
    ("x*y + y^2", ["x"], "y^2"),
])
def test_normal_form_examples(p, gens, expected):
    assert str(normal_form(P(p), buchberger(ideal(*gens)))) == expected


@pytest.mark.parametrize("p, gens, expected", [
    ("x+y", ["x", "y"], True),
    ("1", ["x", "y"], False),
    ("x", ["x^2"], False),
    ("x^3 - x*y", ["x^2 - y"], True),
])
def test_ideal_member_examples(p, gens, expected):
    assert ideal_member(P(p), ideal(*gens)) is expected


T = ("t", None)


def test_eliminate_rabinowitsch_line():
    I = ideal("t*x - 1", "t*y")
    E = eliminate(I, {T})
    assert E == ideal("y")
    # y = x*(t*y) - y*(t*x - 1) certifies y in I
    assert P("x") * P("t*y") - P("y") * P("t*x - 1") == P("y")
    # the projection of the zero set is {(a, 0) : a != 0}; every eliminant vanishes there
    for g in E.generators:
        for a in range(1, 6):
            assert evaluate(poly_of(g, ("x", "y")), (a, 0)) == 0


def test_eliminate_parametrized_diagonal():
    E = eliminate(ideal("x - t", "y - t"), {T})
    assert E == ideal("x - y")
    assert P("x - t") - P("y - t") == P("x - y")
    for g in E.generators:
        for s in range(-3, 4):
            assert evaluate(poly_of(g, ("x", "y")), (s, s)) == 0


def test_eliminate_absent_variable():
    assert eliminate(ideal("x"), {("y", None)}) == ideal("x")


def test_basis_is_reduced_and_monic():
    G = buchberger(ideal("x^3 - 2*x*y", "x^2*y - 2*y^2 + x"))
    lms = G.leading_monomials()
    for g, lm in zip(G, lms):
        assert g.terms[lm] == 1
        for other in lms:
            if other != lm:
                assert not any(other.divides(m) for m in g.terms)


def test_lex_basis_differs_from_grevlex():
    gens = ["x^2 - y", "x*y - 1"]
    assert basis_strs(ideal(*gens, order=LEX)) == ["x - y^2", "y^3 - 1"]
    assert ideal(*gens, order=LEX) == ideal(*gens)


def test_gf_basis():
    F = GF(5)
    I = ideal("x + 2*y", "x - 3*y", domain=F)
    # over GF(5) these generate the same line, so no y appears on its own
    assert [g.to_str() for g in I.basis()] == ["x + 2*y"]
    assert ideal("x + 2*y", "x - 3*y").basis().elements == (P("x"), P("y"))


def test_budget_exceeded():
    with pytest.raises(BudgetExceeded):
        buchberger(ideal("x^3 - y*z", "y^3 - x*z", "z^3 - x*y", "x*y*z - 1"), budget=2)


def test_budget_setting_used():
    groebner.settings.budget = 1
    clear_cache()
    with pytest.raises(BudgetExceeded):
        ideal("x^2 - y^3", "x*y - z^2", "y^2 - x*z").basis()


def test_cache_thread_safety():
    clear_cache()
    gens = ["x^2 - y*z", "y^2 - x*z", "z^2 - x*y"]
    out, errors = [], []

    def work():
        try:
            out.append(tuple(ideal(*gens).basis().elements))
        except Exception as exc:  # pragma: no cover - reported below
            errors.append(exc)

    threads = [threading.Thread(target=work) for _ in range(8)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert not errors
    assert len(set(out)) == 1


def test_cache_can_be_disabled():
    groebner.settings.cache = False
    a = ideal("x^2 - y", "x*y - 1").basis().elements
    groebner.settings.cache = True
    assert a == ideal("x^2 - y", "x*y - 1").basis().elements


# random ideals: <= 3 vars, <= 3 generators, degree <= 3

VARS = [("x", None), ("y", None), ("z", None)]

terms = st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3)).filter(
    lambda e: sum(e) <= 3)
polys = st.dictionaries(terms, st.integers(-3, 3).filter(bool), min_size=1, max_size=3).map(
    lambda d: Polynomial({Monomial(zip(VARS, e)): c for e, c in d.items()}))
gen_lists = st.lists(polys.filter(lambda p: not p.is_zero()), min_size=1, max_size=3)


@given(gen_lists)
def test_generators_reduce_to_zero(gens):
    G = buchberger(PolyIdeal(gens))
    for g in gens:
        assert normal_form(g, G).is_zero()


@given(gen_lists)
def test_s_polynomials_reduce_to_zero(gens):
    G = buchberger(PolyIdeal(gens))
    for a in G:
        for b in G:
            if a is not b:
                assert normal_form(s_polynomial(a, b), G).is_zero()


@given(gen_lists, polys, polys)
def test_normal_form_ignores_ideal_multiples(gens, p, q):
    G = buchberger(PolyIdeal(gens))
    for g in G:
        assert normal_form(p + q * g, G) == normal_form(p, G)


@given(gen_lists, st.randoms(use_true_random=False))
def test_basis_independent_of_generator_order(gens, rnd):
    shuffled = list(gens)
    rnd.shuffle(shuffled)
    assert buchberger(PolyIdeal(gens)).elements == buchberger(PolyIdeal(shuffled)).elements


@given(gen_lists)
def test_gf_bases_are_groebner(gens):
    F = GF(7)
    gens = [Polynomial(g.terms, F) for g in gens]
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return
    G = buchberger(PolyIdeal(gens, GREVLEX, F))
    for g in gens:
        assert normal_form(g, G).is_zero()
