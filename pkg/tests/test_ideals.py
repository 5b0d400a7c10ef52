import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from assprimes.groebner import PolyIdeal, ideal
from assprimes.ideals import (DecompositionError, IdealError, MonomialIdeal, PrimaryComponent,
                              as_monomial_ideal, complement_of_monomial_prime, extended,
                              finitely_generated, ideal_contains, ideal_quotient, in_radical,
                              intersect, is_primary_monomial, meets_monomial_prime,
                              minimal_primes_monomial, normalize_decomposition, one_set,
                              parse_ideal, powers_of, primary_decompose_monomial,
                              prime_avoidance_witness, quotient_by_element, radical_monomial,
                              s_component, same_ideal, saturate, saturate_rabinowitsch)
from assprimes.poly import Monomial, P, Polynomial

import oracles as orc
from conftest import monomial_gens

M = MonomialIdeal.parse


def mono(text):
    return next(iter(P(text).terms))


# ---------------------------------------------------------------- examples


def test_parse_and_print():
    assert str(M("(x*y, x^2, x^3*y)")) == "(x^2, x*y)"
    assert str(M("(0)")) == "(0)"
    assert M("(x, 1)").is_unit()
    assert isinstance(parse_ideal("(x + y, x*y)"), PolyIdeal)
    assert isinstance(parse_ideal("(x^2, x*y)"), MonomialIdeal)


def test_quotient_examples():
    I = M("(x^2, x*y)")
    q = ideal_quotient(I, M("(x)"))
    assert q == M("(x, y)")
    # oracle: monomials m of degree <= 4 with m*x in I
    assert orc.quotient_members(orc.gens_of(I), (1, 0, 0, 0), 4, 4) == \
        orc.members(orc.gens_of(q), 4, 4)
    assert ideal_quotient(I, M("(1)")) == I
    q2 = ideal_quotient(M("(x)"), M("(y)"))
    assert q2 == M("(x)")
    assert orc.quotient_members([(1, 0, 0, 0)], (0, 1, 0, 0), 4, 4) == \
        orc.members(orc.gens_of(q2), 4, 4)


def test_quotient_of_polynomial_ideal():
    q = ideal_quotient(ideal("x*y", "x*z"), ideal("y + z"))
    assert q == ideal("x")


@pytest.mark.parametrize("I, f, expected", [
    ("(x)", "x + y", "(x)"),
    ("(y)", "x + y", "(y)"),
    ("(x, y)", "x + y", "(1)"),
    ("(x^2)", "x", "(1)"),
    ("(x^2*y, y^3)", "y", "(1)"),
    ("(x^2*y, x*z)", "x", "(y, z)"),
])
def test_saturate_examples(I, f, expected):
    assert same_ideal(saturate(parse_ideal(I), P(f)), parse_ideal(expected))


def test_intersect_examples():
    assert intersect(M("(x)"), M("(y)")) == M("(x*y)")
    cap = intersect(M("(x)"), M("(x^2, y)"))
    assert cap == M("(x^2, x*y)")
    # lcm-pair oracle plus two-sided membership
    a, b = orc.gens_of(M("(x)")), orc.gens_of(M("(x^2, y)"))
    assert orc.members(a, 4, 4) & orc.members(b, 4, 4) == orc.members(orc.gens_of(cap), 4, 4)
    assert intersect(M("(x^2, y)"), M("(1)")) == M("(x^2, y)")
    assert intersect(ideal("x + y"), ideal("x - y")) == ideal("x^2 - y^2")


def test_s_component_examples():
    I = M("(x^2, x*y)")
    assert s_component(I, complement_of_monomial_prime(M("(x, y)"))) == I
    assert s_component(I, complement_of_monomial_prime(M("(x)"))) == M("(x)")
    assert s_component(I, one_set()) == I
    # oracle for complement of (x): saturate by y, by definition
    assert orc.saturation_members(orc.gens_of(I), 1, 4, 4) == orc.members([(1, 0, 0, 0)], 4, 4)


def test_s_component_finitely_generated_is_product_saturation():
    I = M("(x^2*y*z, x*y^3)")
    S = finitely_generated([P("y"), P("z")])
    assert s_component(I, S) == saturate(I, P("y*z")) == M("(x)")


def test_complement_of_prime_needs_monomial_data():
    from assprimes.ideals import UnsupportedSpec
    with pytest.raises(UnsupportedSpec):
        s_component(ideal("x + y^2"), complement_of_monomial_prime(M("(x)")))


def test_radical_examples():
    I = M("(x^2, y^3)")
    assert radical_monomial(I) == M("(x, y)")
    assert orc.radical_members(orc.gens_of(I), 4, 4) == orc.members(orc.gens_of(M("(x, y)")), 4, 4)
    assert radical_monomial(M("(x*y)")) == M("(x*y)")
    assert radical_monomial(M("(1)")) == M("(1)")


@pytest.mark.parametrize("I, expected", [
    ("(x*y, x*z)", ["(x)", "(y, z)"]),
    ("(x^2, x*y)", ["(x)"]),
    ("(x)", ["(x)"]),
    ("(x*y, y*z, z*w)", ["(w, y)", "(x, z)", "(y, z)"]),
])
def test_minimal_primes_examples(I, expected):
    got = minimal_primes_monomial(M(I))
    assert sorted(map(str, got)) == sorted(expected)
    oracle = orc.minimal_primes(orc.gens_of(M(I)), 4)
    assert {orc.vars_of_prime(p) for p in got} == oracle


def test_minimal_primes_of_unit_raises():
    with pytest.raises(IdealError):
        minimal_primes_monomial(M("(1)"))


@pytest.mark.parametrize("I, prime", [
    ("(x^2, x*y, y^3)", "(x, y)"),
    ("(x*y)", None),
    ("(x^3)", "(x)"),
])
def test_is_primary_examples(I, prime):
    got = is_primary_monomial(M(I))
    assert (None if got is None else str(got)) == prime
    assert orc.is_primary(orc.gens_of(M(I)), 4) == (prime is not None)


def test_is_primary_rejects_unit():
    with pytest.raises(IdealError):
        is_primary_monomial(M("(1)"))


def test_decompose_examples():
    rep = primary_decompose_monomial(M("(x^2, x*y)"))
    assert str(rep) == "(x) ∩ (x^2, y)"
    assert [str(p) for p in rep.primes] == ["(x)", "(x, y)"]
    rep = primary_decompose_monomial(M("(x*y, x*z, y*z)"))
    assert sorted(str(c) for c in rep.components) == ["(x, y)", "(x, z)", "(y, z)"]
    # exhaustive membership oracle on degree <= 3
    gens = orc.gens_of(M("(x*y, x*z, y*z)"))
    inter = set.intersection(*[set(orc.members(orc.gens_of(c.component), 4, 3))
                               for c in rep.components])
    assert inter == set(orc.members(gens, 4, 3))
    I = M("(x^2, x*y, y^3)")
    assert [c.component for c in primary_decompose_monomial(I).components] == [I]
    assert rep.verify()


def test_decompose_unit_raises():
    with pytest.raises(IdealError):
        primary_decompose_monomial(M("(1)"))


def test_report_certificates():
    rep = primary_decompose_monomial(M("(x^2, x*y)"))
    c = rep.certificates
    assert c["intersection"]["equal"]
    assert c["distinct_primes"]
    assert all(p["ok"] for p in c["primary"])
    # irredundancy witnesses lie in the other components but not in this one
    for comp, w in zip(rep.components, c["irredundancy"]):
        assert w["witness"] is not None
        assert not comp.component.contains(mono(w["witness"]))


def _pc(text):
    I = M(text)
    return PrimaryComponent(I, is_primary_monomial(I))


def test_normalize_merges_equal_primes_first():
    rep = normalize_decomposition([_pc("(x)"), _pc("(x^2, y)"), _pc("(x, y^2)")],
                                  M("(x^2, x*y)"))
    # (x^2, y) and (x, y^2) share the prime (x, y) and are merged before any removal
    assert [str(c) for c in rep.components] == ["(x)", "(x^2, x*y, y^2)"]
    assert rep.verify()


def test_normalize_drops_redundant_component():
    rep = normalize_decomposition([_pc("(x)"), _pc("(x^2, y)"), _pc("(x^2, y, z)")],
                                  M("(x^2, x*y)"))
    assert rep.verify()
    assert [str(c) for c in rep.components] == ["(x)", "(x^2, y)"]


def test_normalize_same_prime_collapses():
    rep = normalize_decomposition([_pc("(x^2, y)"), _pc("(x, y^2)")], M("(x^2, x*y, y^2)"))
    assert [str(c) for c in rep.components] == ["(x^2, x*y, y^2)"]


def test_normalize_fixpoint():
    rep = primary_decompose_monomial(M("(x^2, x*y)"))
    again = normalize_decomposition(list(rep.components), rep.ideal)
    assert again.components == rep.components


def test_normalize_rejects_non_decomposition():
    with pytest.raises(DecompositionError):
        normalize_decomposition([_pc("(x)")], M("(x^2, x*y)"))


def test_prime_avoidance_examples():
    r = prime_avoidance_witness(M("(x, y)"), [M("(x)")])
    assert str(r.witness) == "y"
    r = prime_avoidance_witness(M("(x)"), [M("(x, y)")])
    assert r.contained and r.index == 0
    r = prime_avoidance_witness(ideal("x + y"), [M("(x)"), M("(y)")])
    assert r.witness == P("x + y")
    assert not M("(x)").contains(r.witness) and not M("(y)").contains(r.witness)


def test_prime_avoidance_monomial_union():
    primes = [M("(x)"), M("(y)"), M("(z)")]
    r = prime_avoidance_witness(M("(x*y, y*z, x*z)"), primes)
    assert not r.contained
    assert all(not p.contains(r.witness) for p in primes)
    assert M("(x*y, y*z, x*z)").contains(r.witness)


def test_in_radical():
    assert in_radical(P("x + y"), ideal("x^2", "y^3"))
    assert not in_radical(P("x"), ideal("x*y"))
    assert in_radical(P("x*y"), M("(x^2*y)"))


# ------------------------------------------------- fast paths vs Rabinowitsch

def _var(i):
    return Polynomial.var(orc.NAMES[i])


@settings(max_examples=30)
@given(monomial_gens(3, 3, 3), st.integers(0, 2))
def test_monomial_saturation_matches_rabinowitsch(gens, v):
    I = orc.make_ideal(gens)
    fast = saturate(I, _var(v))
    slow = as_monomial_ideal(saturate_rabinowitsch(I, _var(v)))
    assert fast == slow
    assert orc.saturation_members(gens, v, 3, orc.max_degree(gens) + 1) == \
        orc.members(orc.gens_of(fast), 3, orc.max_degree(gens) + 1)


@settings(max_examples=30)
@given(monomial_gens(3, 3, 3), monomial_gens(3, 3, 3))
def test_monomial_intersection_matches_elimination(a, b):
    A, B = orc.make_ideal(a), orc.make_ideal(b)
    fast = intersect(A, B)
    slow = as_monomial_ideal(intersect(A.to_poly(), B.to_poly()))
    assert fast == slow
    d = orc.max_degree(a) + orc.max_degree(b)
    assert orc.members(a, 3, d) & orc.members(b, 3, d) == orc.members(orc.gens_of(fast), 3, d)


@settings(max_examples=30)
@given(monomial_gens(3, 3, 3), st.tuples(*[st.integers(0, 2)] * 3))
def test_monomial_quotient_matches_generic(gens, m):
    I = orc.make_ideal(gens)
    f = Polynomial.monomial(orc.from_exps(m))
    fast = quotient_by_element(I, f)
    slow = as_monomial_ideal(quotient_by_element(I.to_poly(), f))
    assert fast == slow
    d = orc.max_degree(gens) + 1
    assert orc.quotient_members(gens, m + (0,), 4, d) == orc.members(orc.gens_of(fast), 4, d)


# ---------------------------------------------------------- S-component laws

def mult_sets(n=3):
    var_subsets = st.frozensets(st.integers(0, n - 1), min_size=1).map(
        lambda s: frozenset(orc.var(orc.NAMES[i]) for i in s))
    monos = st.tuples(*[st.integers(0, 2)] * n).filter(any).map(
        lambda e: Polynomial.monomial(orc.from_exps(e)))
    base = st.one_of(
        monos.map(powers_of),
        st.lists(monos, min_size=1, max_size=2).map(finitely_generated),
        var_subsets.map(complement_of_monomial_prime),
    )
    return st.one_of(base, st.tuples(base, monos).map(lambda t: extended(*t)))


@given(monomial_gens(), mult_sets())
def test_s_component_contains_and_idempotent(gens, S):
    N = orc.make_ideal(gens)
    SN = s_component(N, S)
    assert ideal_contains(SN, N)
    assert s_component(SN, S) == SN


@given(monomial_gens(), mult_sets(), st.tuples(*[st.integers(0, 2)] * 3).filter(any))
def test_s_component_larger_set(gens, S, a):
    N = orc.make_ideal(gens)
    T = extended(S, Polynomial.monomial(orc.from_exps(a)))
    TN = s_component(N, T)
    assert s_component(TN, S) == TN
    assert s_component(s_component(N, S), T) == TN
    assert ideal_contains(TN, s_component(N, S))


@given(monomial_gens(), monomial_gens(), mult_sets())
def test_s_component_monotone_meet_and_sum(a, b, S):
    N, Nt = orc.make_ideal(a), orc.make_ideal(b)
    SN, SNt = s_component(N, S), s_component(Nt, S)
    assert ideal_contains(s_component(N + Nt, S), SN)
    assert s_component(intersect(N, Nt), S) == intersect(SN, SNt)
    assert ideal_contains(s_component(N + Nt, S), SN + SNt)


# --------------------------------------------- decompositions and S-components

def _filtered(rep, S):
    keep = [c.component for c in rep.components if not meets_monomial_prime(S, c.prime.variables)]
    if not keep:
        return MonomialIdeal([Monomial()])
    out = keep[0]
    for c in keep[1:]:
        out = intersect(out, c)
    return out


def _prime_sets(n):
    vs = st.frozensets(st.integers(0, n - 1), min_size=1)
    return st.one_of(
        vs.map(lambda s: complement_of_monomial_prime(orc.var(orc.NAMES[i]) for i in s)),
        st.integers(0, n - 1).map(lambda i: powers_of(_var(i))),
    )


@given(monomial_gens(3, 4, 4), _prime_sets(3))
def test_decomposition_filters_s_component(gens, S):
    N = orc.make_ideal(gens)
    rep = primary_decompose_monomial(N)
    assert s_component(N, S) == _filtered(rep, S)


@given(monomial_gens(3, 4, 4), _prime_sets(3))
def test_primary_components_up_down(gens, S):
    rep = primary_decompose_monomial(orc.make_ideal(gens))
    for c in rep.components:
        got = s_component(c.component, S)
        if meets_monomial_prime(S, c.prime.variables):
            assert got.is_unit()
        else:
            assert got == c.component


@given(monomial_gens(3, 4, 4))
def test_report_verifies_and_is_normal(gens):
    I = orc.make_ideal(gens)
    rep = primary_decompose_monomial(I)
    assert rep.verify() and rep.normalized
    assert len(set(rep.primes)) == len(rep.primes)
    for c in rep.components:
        assert orc.is_primary(orc.gens_of(c.component), 4)


@given(monomial_gens(3, 4, 4), st.integers(0, 10_000))
def test_minimal_components_independent_of_split_order(gens, seed):
    I = orc.make_ideal(gens)
    minimal = set(minimal_primes_monomial(I))
    base = {c.prime: c.component for c in primary_decompose_monomial(I).components}
    other = primary_decompose_monomial(I, rng=random.Random(seed))
    got = {c.prime: c.component for c in other.components}
    for p in minimal:
        assert base[p] == got[p]
    assert set(base) == set(got)


@settings(max_examples=15)
@given(monomial_gens(3, 3, 3))
def test_associated_primes_characterized_by_extension(gens):
    N = orc.make_ideal(gens)
    rep = primary_decompose_monomial(N)
    assoc = set(rep.primes)
    for p in assoc:
        C = complement_of_monomial_prime(p)
        base = s_component(N, C)
        for a in p.generators:
            assert not ideal_contains(base, s_component(N, extended(C, a)))
    # non-associated primes containing the radical: extension by an avoiding element
    rad = radical_monomial(N)
    for r in range(1, 4):
        for vs in itertools.combinations(range(3), r):
            p = MonomialIdeal.generated_by_vars(orc.var(orc.NAMES[i]) for i in vs)
            if p in assoc or not ideal_contains(p, rad):
                continue
            below = [q for q in assoc if ideal_contains(p, q)]
            if below:
                a = prime_avoidance_witness(p, below).witness
            else:
                a = p.generators[0]
            C = complement_of_monomial_prime(p)
            assert same_ideal(s_component(N, extended(C, a)), s_component(N, C))
