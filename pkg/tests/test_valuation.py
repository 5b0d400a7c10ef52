import itertools
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from assprimes.valuation import (QGROUP, CutIdeal, CutModule, GroupMismatch, ValElement,
                                 ValuationError, Zlex, ass0_witness, ass0_witness_exists,
                                 cut_classify, cut_indecomposable, cut_is_prime, cut_member,
                                 cut_ops, maximal_ideal, module_annihilator, parse_cut,
                                 parse_group, prime_cuts, quot_mod_ring, quotient_by_element,
                                 val_annihilator, val_ass, val_ass0, val_ass1, val_is_coprimary,
                                 val_is_nilpotent_for, val_is_zero_divisor)

Z2 = Zlex(2)
Z1 = Zlex(1)


def v(group, value):
    return ValElement(group, value)


# ------------------------------------------------------------- oracles

def predicate(cut: CutIdeal):
    """Membership of a finite value, written out per cut shape."""
    if cut.is_zero():
        return lambda val: False
    text = str(cut)
    if text == "(1)":
        return lambda val: True
    if cut.group.kind == "Q":
        g, opn = cut.key
        return (lambda val: val > g) if opn else (lambda val: val >= g)
    if cut.is_limit():
        j = cut.depth
        pre = tuple(int(x) for x in cut.key[:j])
        return lambda val: val[:j] >= pre
    return lambda val: val >= tuple(cut.key)


def zlex_values(lo, hi):
    return list(itertools.product(range(lo, hi + 1), repeat=2))


def quotient_oracle_zlex(I, J, rs, ss):
    """{r >= 0 in rs : r + s in I for every s in J among ss}."""
    inI, inJ = predicate(I), predicate(J)
    Js = [s for s in ss if s >= (0, 0) and inJ(s)]
    return {r for r in rs if r >= (0, 0) and all(inI((r[0] + s[0], r[1] + s[1])) for s in Js)}


ZCUTS = ([CutIdeal.closed(Z2, a) for a in zlex_values(0, 2) if a > (0, 0)]
         + [CutIdeal.closed(Z2, a) for a in [(1, -2), (2, -1)]]
         + [CutIdeal.limit(Z2, (1,)), CutIdeal.limit(Z2, (2,)), CutIdeal.zero(Z2),
            CutIdeal.unit(Z2)])


@pytest.mark.parametrize("I, J", list(itertools.product(ZCUTS, ZCUTS)),
                         ids=lambda c: str(c))
def test_zlex_quotient_matches_box_oracle(I, J):
    rs = zlex_values(-4, 4)
    ss = zlex_values(-12, 12)
    Q = cut_ops(I, J, "quotient")
    if J.is_zero():
        assert Q.is_unit()
        return
    expected = quotient_oracle_zlex(I, J, rs, ss)
    got = {r for r in rs if r >= (0, 0) and cut_member(v(Z2, r), Q)}
    assert got == expected


def test_principal_quotient_example():
    """(closed (1,0) : value (0,1)) over the box {-2..2}^2."""
    I = CutIdeal.closed(Z2, (1, 0))
    Q = quotient_by_element(I, v(Z2, (0, 1)))
    assert str(Q) == "cut>=((1,-1))"
    box = zlex_values(-2, 2)
    expected = {r for r in box if r >= (0, 0) and (r[0], r[1] + 1) >= (1, 0)}
    assert {r for r in box if r >= (0, 0) and cut_member(v(Z2, r), Q)} == expected


QGRID = [Fraction(k, 12) for k in range(0, 61)]
QCUTS = ([CutIdeal.closed(QGROUP, g) for g in (Fraction(1, 3), 1, Fraction(5, 2))]
         + [CutIdeal.open(QGROUP, g) for g in (0, Fraction(1, 2), 2)]
         + [CutIdeal.zero(QGROUP)])


@pytest.mark.parametrize("I, J", list(itertools.product(QCUTS, QCUTS)), ids=lambda c: str(c))
def test_q_quotient_matches_grid_oracle(I, J):
    Q = cut_ops(I, J, "quotient")
    if J.is_zero():
        assert Q.is_unit()
        return
    inI, inJ = predicate(I), predicate(J)
    eps = [Fraction(1, 10**6), Fraction(1, 1000)]
    ss = [s for s in QGRID + [g + e for g in QGRID for e in eps] if inJ(s)]
    expected = {r for r in QGRID if all(inI(r + s) for s in ss)}
    assert {r for r in QGRID if cut_member(v(QGROUP, r), Q)} == expected


# ----------------------------------------------------------- examples

@pytest.mark.parametrize("group, value, cut, expected", [
    (Z2, (1, -1), CutIdeal.closed(Z2, (1, 0)), False),
    (Z2, (1, 0), CutIdeal.closed(Z2, (1, 0)), True),
    (QGROUP, Fraction(1, 3), CutIdeal.closed(QGROUP, 1), False),
    (QGROUP, 1, CutIdeal.open(QGROUP, 1), False),
    (Z2, (1, -7), CutIdeal.limit(Z2, (1,)), True),
    (Z2, (0, 99), CutIdeal.limit(Z2, (1,)), False),
])
def test_cut_member_examples(group, value, cut, expected):
    assert cut_member(v(group, value), cut) is expected


def test_group_mismatch():
    with pytest.raises(GroupMismatch):
        cut_member(v(QGROUP, 1), CutIdeal.closed(Z2, (1, 0)))
    with pytest.raises(GroupMismatch):
        v(Z2, (1, 2, 3))


def test_cut_ops_examples():
    I = CutIdeal.closed(Z2, (1, 0))
    assert cut_ops(I, I, "quotient").is_unit()
    a, b = CutIdeal.closed(QGROUP, 1), CutIdeal.closed(QGROUP, 2)
    assert cut_ops(a, b, "intersect") == b
    assert cut_ops(a, b, "sum") == a
    assert cut_ops(a, b, "product") == CutIdeal.closed(QGROUP, 3)
    assert cut_ops(a, CutIdeal.open(QGROUP, 1), "product") == CutIdeal.open(QGROUP, 2)
    with pytest.raises(ValuationError):
        cut_ops(a, b, "union")


@pytest.mark.parametrize("cut, kind, prime", [
    (CutIdeal.open(QGROUP, 0), "prime", "cut>(0)"),
    (CutIdeal.closed(QGROUP, 1), "primary", "cut>(0)"),
    (CutIdeal.closed(Z2, (1, 0)), "neither", None),
    (CutIdeal.closed(Z2, (0, 3)), "primary", "cut>=((0,1))"),
    (CutIdeal.limit(Z2, (1,)), "prime", "cut>=((1,-inf))"),
    (CutIdeal.limit(Z2, (2,)), "primary", "cut>=((1,-inf))"),
])
def test_cut_classify_examples(cut, kind, prime):
    c = cut_classify(cut)
    assert c.kind == kind
    assert (None if c.prime is None else str(c.prime)) == prime


def test_cut_classify_rejects_zero_and_unit():
    for c in (CutIdeal.zero(QGROUP), CutIdeal.unit(QGROUP)):
        with pytest.raises(ValuationError):
            cut_classify(c)


def test_prime_chain_rank_two():
    primes = prime_cuts(Z2)
    assert [str(p) for p in primes] == ["(0)", "cut>=((1,-inf))", "cut>=((0,1))"]
    assert all(cut_is_prime(p) for p in primes)
    assert not cut_is_prime(CutIdeal.closed(Z2, (1, 0)))


@pytest.mark.parametrize("cut", [CutIdeal.closed(Z2, (1, 0)), CutIdeal.closed(QGROUP, 1),
                                 CutIdeal.open(QGROUP, 0)])
def test_cut_indecomposable(cut):
    ok, cert = cut_indecomposable(cut, samples=50, seed=3)
    assert ok and cert.holds and len(cert.pairs) > 10
    for a, b, m in cert.pairs:
        assert m in (a, b) and m != cut


@pytest.mark.parametrize("text, group", [
    ("cut>=((1,0))", "Zlex(2)"), ("cut>(0)", "Q"), ("cut>=((1,-inf))", "Zlex(2)"),
    ("cut>=(5/2)", "Q"), ("(0)", "Q"), ("(1)", "Zlex(2)"),
])
def test_cut_literal_roundtrip(text, group):
    g = parse_group(group)
    assert str(parse_cut(text, g)) == text


def test_bad_literals():
    with pytest.raises(ValuationError):
        parse_group("R")
    with pytest.raises(ValuationError):
        parse_cut("cut=>(1)", QGROUP)


# ------------------------------------------------------------- modules

def test_val_module_examples():
    M = CutModule(QGROUP, "quotient", CutIdeal.closed(QGROUP, 1))
    P = maximal_ideal(QGROUP)
    assert not ass0_witness_exists(M, P)
    assert val_is_coprimary(M) == P
    assert val_ass(M) == [P] and val_ass1(M) == [P] and val_ass0(M) == []
    D = quot_mod_ring(Z1)
    assert val_is_coprimary(D) == maximal_ideal(Z1) == CutIdeal.closed(Z1, 1)
    assert val_annihilator(v(Z1, -3), D) == CutIdeal.closed(Z1, 3)


def test_open_cut_has_annihilator_witness():
    M = CutModule(QGROUP, "quotient", CutIdeal.open(QGROUP, 1))
    x = ass0_witness(M, maximal_ideal(QGROUP))
    assert x is not None and val_annihilator(x, M) == maximal_ideal(QGROUP)


@pytest.mark.parametrize("n", range(1, 7))
def test_annihilator_duality(n):
    D = quot_mod_ring(Z1)
    x = v(Z1, -n)
    pi = v(Z1, 1)
    ann = val_annihilator(x, D)
    assert ann == CutIdeal.closed(Z1, n)
    # every element of Ann(x) kills x; the generator of value n is the extreme case
    assert D.is_zero_element(v(Z1, n) * x)
    bigger = cut_ops(ann, CutIdeal.principal(pi), "quotient")
    assert bigger.key < ann.key
    assert D.is_zero_element(v(Z1, n - 1) * (pi * x))
    assert not D.is_zero_element(v(Z1, n - 1) * x)


def test_quot_mod_ring_example_end_to_end():
    D = quot_mod_ring(Z1)
    assert module_annihilator(D).is_zero()
    assert cut_is_prime(module_annihilator(D))
    assert val_ass(D) == [maximal_ideal(Z1)]
    assert CutIdeal.zero(Z1) not in val_ass(D)


def test_valuation_q_example_end_to_end():
    a = CutIdeal.closed(QGROUP, 1)
    M = CutModule(QGROUP, "quotient", a)
    P = maximal_ideal(QGROUP)
    assert cut_classify(a).kind == "primary" and cut_classify(a).prime == P
    assert not ass0_witness_exists(M, P)
    assert val_ass0(M) == []
    assert val_ass(M) == val_ass1(M) == [P]


def test_rank_two_example_end_to_end():
    I = CutIdeal.closed(Z2, (1, 0))
    M = CutModule(Z2, "quotient", I)
    pi2 = v(Z2, (0, 1))
    ok, _ = cut_indecomposable(I)
    assert ok
    w = v(Z2, (1, -1))
    assert not cut_member(w, I) and cut_member(pi2 * w, I)
    assert val_is_zero_divisor(pi2, M)
    assert not val_is_nilpotent_for(pi2, M)
    for i in range(1, 65):
        assert (pi2 ** i).value < (1, 0)
        assert not M.is_zero_element(pi2 ** i)
    assert val_is_coprimary(M) is None


# ---------------------------------------------------------- properties

zcut = st.one_of(
    st.tuples(st.integers(0, 3), st.integers(-3, 3)).map(lambda a: CutIdeal.closed(Z2, a)),
    st.integers(1, 3).map(lambda j: CutIdeal.limit(Z2, (j,))),
    st.just(CutIdeal.zero(Z2)),
)
qcut = st.one_of(
    st.fractions(0, 5, max_denominator=6).map(lambda g: CutIdeal.closed(QGROUP, g)),
    st.fractions(0, 5, max_denominator=6).map(lambda g: CutIdeal.open(QGROUP, g)),
    st.just(CutIdeal.zero(QGROUP)),
)


@given(st.one_of(st.tuples(zcut, zcut), st.tuples(qcut, qcut)))
def test_cut_lattice_is_a_chain(pair):
    a, b = pair
    m, s = cut_ops(a, b, "intersect"), cut_ops(a, b, "sum")
    assert {m, s} == {a, b} or a == b == m == s


@given(st.tuples(zcut, zcut))
def test_quotient_is_largest_multiplier(pair):
    I, J = pair
    Q = cut_ops(I, J, "quotient")
    # Q * J lies in I
    assert cut_ops(Q, J, "product").key >= I.key


@given(st.fractions(Fraction(1, 8), 5, max_denominator=8))
def test_nilpotence_over_q_is_exact(g):
    M = CutModule(QGROUP, "quotient", CutIdeal.closed(QGROUP, g))
    assert val_is_nilpotent_for(v(QGROUP, Fraction(1, 97)), M)
    assert not val_is_nilpotent_for(v(QGROUP, 0), M)
