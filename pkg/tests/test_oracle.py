"""Decategorified oracle: frozen values and trace axioms."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hbhomology.braid import ClassicalBraidWord, embed_classical, parse_braid
from hbhomology.invariant import hhh_euler
from hbhomology.oracle import (
    AQC,
    VZD,
    HeckeElement,
    LaurentSeries2,
    LPoly,
    braid_hecke,
    circle_series,
    core_element,
    expand,
    handlebody_homfly_decat,
    hecke_vs_skein,
    homfly_skein,
    jones_ocneanu_trace,
    separation_target,
    standard_rank,
)

Q = ("q",)


def qpoly(d):
    return LPoly(Q, {(k,): v for k, v in d.items()})


def vzd(d):
    return LPoly(VZD, d)


def aqc(d):
    return LPoly(AQC, d)


# -- frozen skein values -------------------------------------------------------

FROZEN_SKEIN = {
    "unknot": (ClassicalBraidWord(1), vzd({(0, 0, 0): 1})),
    "unlink": (ClassicalBraidWord(2), vzd({(0, 0, 1): 1})),
    "hopf": (ClassicalBraidWord(2, ((1, 1),) * 2), vzd({(2, 0, 1): 1, (1, 1, 0): 1})),
    "trefoil": (ClassicalBraidWord(2, ((1, 1),) * 3), vzd({(3, 1, 1): 1, (2, 2, 0): 1, (2, 0, 0): 1})),
    "figure_eight": (
        ClassicalBraidWord(3, ((1, 1), (2, -1)) * 2),
        vzd({(1, 1, 1): -1, (-1, 3, 1): 1, (-2, 2, 0): -1, (-2, 0, 0): 1}),
    ),
}


@pytest.mark.parametrize("name", sorted(FROZEN_SKEIN))
def test_skein_frozen(name):
    cw, expected = FROZEN_SKEIN[name]
    assert homfly_skein(cw) == expected


def test_skein_relation_on_trefoil_triple():
    pos = homfly_skein(ClassicalBraidWord(2, ((1, 1),) * 3))
    unknot = homfly_skein(ClassicalBraidWord(2, ((1, 1),)))
    hopf = homfly_skein(ClassicalBraidWord(2, ((1, 1),) * 2))
    # v^-1 P(L+) - v P(L-) = z P(L0) at the top crossing of s1^3
    lhs = LPoly.mono(VZD, v=-1) * pos - LPoly.mono(VZD, v=1) * unknot
    assert lhs == LPoly.mono(VZD, z=1) * hopf
    assert pos != homfly_skein(ClassicalBraidWord(2, ((1, -1),) * 3))


# -- Hecke algebra ---------------------------------------------------------------


def test_quadratic_relation():
    T = HeckeElement.generator(1, 2)
    one = HeckeElement.one(2)
    # (T - q)(T + q^-1) = 0
    assert T * T == T * qpoly({1: 1, -1: -1}) + one
    assert T * HeckeElement.generator(1, 2, -1) == one
    assert HeckeElement.generator(1, 2, -1) * T == one


def test_braid_relation():
    s1, s2 = HeckeElement.generator(1, 3), HeckeElement.generator(2, 3)
    assert s1 * s2 * s1 == s2 * s1 * s2


def test_trace_values():
    assert jones_ocneanu_trace(HeckeElement.one(1)) == aqc({(0, 0, 0): 1})
    assert jones_ocneanu_trace(HeckeElement.one(3), normalized=False) == aqc({(0, 0, 3): 1})
    # positive kink -q^-1
    assert jones_ocneanu_trace(HeckeElement.generator(1, 2)) == aqc({(0, -1, 0): -1})


def test_negative_kink_expands_to_a_q_minus_three():
    val = jones_ocneanu_trace(HeckeElement.generator(1, 2, -1), window=(-20, 20))
    assert val.coeffs == {(2, -3): 1}


def test_circle_series():
    s = circle_series((-4, 4))
    assert s.coeffs == {(0, 0): 1, (0, 2): 1, (0, 4): 1, (2, -2): 1, (2, 0): 1, (2, 2): 1, (2, 4): 1}


def _random_element(rng, n, length):
    x = HeckeElement.one(n)
    for _ in range(length):
        x = x * HeckeElement.generator(rng.randint(1, n - 1), n, rng.choice((1, -1)))
    return x * qpoly({rng.randint(-2, 2): rng.choice((1, -1, 2))})


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_trace_is_central(seed):
    rng = random.Random(seed)
    x, y = _random_element(rng, 3, 3), _random_element(rng, 3, 3)
    assert jones_ocneanu_trace(x * y) == jones_ocneanu_trace(y * x)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_trace_markov_property(seed):
    rng = random.Random(seed)
    x = _random_element(rng, 3, 4)
    big = HeckeElement(4, {w + (3,): c for w, c in x.terms.items()})
    base = jones_ocneanu_trace(x, normalized=False)
    # adding a free strand multiplies by c, T_3 multiplies by -q^-1
    assert jones_ocneanu_trace(big, normalized=False) == base * LPoly.mono(AQC, c=1)
    assert jones_ocneanu_trace(big * HeckeElement.generator(3, 4), normalized=False) == base * LPoly.mono(AQC, -1, q=-1)


def test_core_element_ranks():
    assert standard_rank(core_element(2)) == qpoly({1: 1, -1: 1})
    assert standard_rank(core_element(3)) == qpoly({3: 1, 1: 2, -1: 2, -3: 1})


def test_hecke_trace_matches_skein_on_random_braids():
    rng = random.Random(11)
    for _ in range(40):
        n = rng.randint(1, 4)
        length = rng.randint(0, 6) if n > 1 else 0
        cw = ClassicalBraidWord(n, tuple((rng.randint(1, n - 1), rng.choice((1, -1))) for _ in range(length)))
        lhs, rhs = hecke_vs_skein(cw)
        assert lhs == rhs, cw


# -- series arithmetic --------------------------------------------------------


def test_series_division_and_units():
    U = LaurentSeries2((-10, 30), circle_series((-10, 30)).coeffs)
    prod = U.shifted(a2=2, q=-3, sign=-1)
    assert prod.unit_to(U) == (-1, 2, -3)
    X = LaurentSeries2((-10, 10), {(0, 0): 1, (2, 4): 3})
    quotient = (X * U).divide(U)
    assert quotient.agrees(X, (-10, 10))
    with pytest.raises(ArithmeticError):
        X.divide(LaurentSeries2((-10, 10), {(0, 0): 2}))


def test_expand_circle_power():
    c = aqc({(0, 0, 1): 1})
    assert expand(c, (-6, 6)).coeffs == circle_series((-6, 6)).coeffs


def test_separation_target_shape():
    assert separation_target().coeffs == {(0, 2): -1, (0, -2): -1, (2, -2): -1, (-2, 2): -1}


# -- handlebody values, cross-checked against the chain-level Euler characteristic

FROZEN_DECAT = {
    ("t1", 1, 1): {(1, 0): 1, (3, 0): 4, (5, 0): 3, (3, -4): 1, (5, -4): 1, (1, -2): 1, (3, -2): 2, (5, -2): 2},
    ("s1 s1 s1", 0, 2): {(3, -4): 1, (5, -4): 1, (1, -2): 1, (3, -2): 2, (5, -2): 1, (1, 0): 1, (3, 0): 3, (5, 0): 1},
}


@pytest.mark.parametrize("key", sorted(FROZEN_DECAT))
def test_decat_frozen(key):
    text, g, n = key
    beta = parse_braid(text, g, n)
    assert handlebody_homfly_decat(beta, window=(-8, 0)).coeffs == FROZEN_DECAT[key]


@pytest.mark.parametrize("text,g,n,window", [("t1", 1, 1, (-8, 0)), ("s1 s1 s1", 0, 2, (-6, 0)), ("t1 s1", 1, 2, (-8, -2)), ("t2", 2, 1, (-10, -4))])
def test_decat_matches_chain_euler(text, g, n, window):
    beta = parse_braid(text, g, n)
    assert hhh_euler(beta, window=window) == handlebody_homfly_decat(beta, window=window).coeffs


def test_decat_rejects_colored_core():
    with pytest.raises(ValueError):
        handlebody_homfly_decat(parse_braid("t1", 1, 1), M=2)


def test_tau_orders_differ_in_handlebody_but_not_classically():
    a, b = parse_braid("t2 t1", 2, 1), parse_braid("t1 t2", 2, 1)
    W = (-10, 0)
    assert handlebody_homfly_decat(a, window=W) != handlebody_homfly_decat(b, window=W)
    assert homfly_skein(embed_classical(a)) == homfly_skein(embed_classical(b))
    assert jones_ocneanu_trace(braid_hecke(embed_classical(a))) == jones_ocneanu_trace(braid_hecke(embed_classical(b)))
