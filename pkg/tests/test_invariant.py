import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hbhomology.braid import BraidWord, Coloring, parse_braid
from hbhomology.invariant import (
    NormalizationShift,
    NotDivisible,
    TriGradedSeries,
    hhh,
    hhh_euler,
    reduced_series,
    unknot_series,
)
from series_forms import circle_form

keys = st.tuples(st.integers(-6, 6), st.integers(-6, 6), st.integers(-10, 10))


@settings(max_examples=50)
@given(st.dictionaries(keys, st.integers(1, 9), max_size=8))
def test_json_round_trip(entries):
    S = TriGradedSeries((-10, 10), entries)
    back = TriGradedSeries.from_json(S.to_json())
    assert back == S
    assert back.to_json() == S.to_json()


def test_validation():
    with pytest.raises(ValueError):
        TriGradedSeries((0, 4), {(0, 0, 2): -1})
    with pytest.raises(ValueError):
        TriGradedSeries((0, 4), {(0, 0, 5): 1})
    assert TriGradedSeries((0, 4), {(0, 0, 2): 0}).entries == {}


def test_shift_and_restrict():
    S = TriGradedSeries((0, 4), {(0, 0, 0): 1, (2, 2, 4): 3})
    T = S.shifted((2, -2, 1))
    assert T.window == (1, 5)
    assert T.entries == {(2, -2, 1): 1, (4, 0, 5): 3}
    assert T.restrict((1, 3)).entries == {(2, -2, 1): 1}
    assert S.agrees(TriGradedSeries((0, 2), {(0, 0, 0): 1}))


def test_euler_folds_t_with_sign():
    S = TriGradedSeries((0, 2), {(0, 0, 0): 2, (0, 2, 0): 1, (2, 4, 2): 5})
    assert S.euler() == {(0, 0): 1, (2, 2): 5}
    with pytest.raises(ValueError):
        TriGradedSeries((0, 2), {(0, 0, 0): 1, (0, 1, 0): 1}).euler()


def test_pretty():
    S = TriGradedSeries((0, 2), {(0, 0, 0): 1, (2, -2, 2): 2})
    assert S.pretty() == "1 + 2a^{1}t^{-1}q^{2}"
    assert TriGradedSeries((0, 0)).pretty() == "0"


def test_normalization_shift_values():
    unknot = NormalizationShift.of(BraidWord(0, 1), Coloring(1, (1,)))
    assert unknot.monomial == (-1, -1, 2)
    assert NormalizationShift.of(BraidWord(0, 1), Coloring(1, (2,))).monomial == (-2, -2, 6)
    trefoil = NormalizationShift.of(parse_braid("s1 s1 s1", 0, 2), Coloring(1, (1, 1)))
    assert trefoil.monomial == (1, -5, 1)
    assert unknot.euler_sign == -1
    assert NormalizationShift(0, -2, 0).euler_sign == -1
    assert NormalizationShift(0, -4, 0).euler_sign == 1


def test_unknot_series():
    U = unknot_series((0, 6))
    # (a^-1/2 t^-1/2 q^2 + a^1/2 t^-1/2) / (1 - q^2)
    expected = {(-1, -1, q): 1 for q in (2, 4, 6)} | {(1, -1, q): 1 for q in (0, 2, 4, 6)}
    assert U.entries == expected


def test_stabilized_unknot_equals_unknot():
    W = (0, 6)
    assert hhh(parse_braid("s1", 0, 2), window=W).entries == unknot_series(W).entries
    assert hhh(parse_braid("s1^-1", 0, 2), window=W).entries == unknot_series(W).entries


def test_reidemeister_two():
    W = (-2, 4)
    assert hhh(parse_braid("s1 s1^-1", 0, 2), window=W).entries == hhh(BraidWord(0, 2), window=W).entries


def test_reduced_unknot_is_one():
    R = reduced_series(unknot_series((0, 8)))
    assert R.entries == {(0, 0, 0): 1}


def test_reduced_trefoil():
    R = reduced_series(hhh(parse_braid("s1 s1 s1", 0, 2), window=(-6, 4)))
    assert R.entries == {(2, 2, -4): 1, (4, -2, -4): 1, (2, -2, 0): 1}


def test_reduced_rejects_non_multiple():
    with pytest.raises(NotDivisible) as err:
        reduced_series(TriGradedSeries((0, 4), {(1, -1, 0): 1, (1, -1, 2): 2}))
    assert err.value.degree == 2


def test_colored_unknot_is_shifted_circle():
    W = (0, 8)
    S = hhh(BraidWord(0, 1), Coloring(1, (2,)), window=W)
    raw = circle_form((2,), (W[0] - 6, W[1] - 6))
    assert S.entries == {(2 * a - 2, -2, q + 6): v for (a, q), v in raw.items()}


@pytest.mark.parametrize("text,g,n,window", [("t1", 1, 1, (-6, 0)), ("s1 s1 s1", 0, 2, (-6, 0)), ("t1^-1 s1", 1, 2, (-4, 2))])
def test_euler_of_homology_matches_chains(text, g, n, window):
    beta = parse_braid(text, g, n)
    assert hhh(beta, window=window).euler() == hhh_euler(beta, window=window)
