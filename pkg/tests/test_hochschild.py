import pytest

from hbhomology.complexes import BimoduleComplex, Crossing, crossing_complex
from hbhomology.hochschild import (
    KoszulFactor,
    TracedComplex,
    full_trace,
    hh,
    partial_trace,
    traced_euler,
    traced_series,
    vertex_slide_check,
    vertex_slide_sides,
)
from hbhomology.webs import Layer, Web, WebBimodule, WebError, identity_web, merge_web, split_merge_web
from series_forms import circle_form, monomial_times, skein_one_form

W = (-16, 8)


@pytest.mark.parametrize("comp", [(1,), (2,), (1, 1), (2, 1), (3,)])
def test_hh_of_polynomial_ring(comp):
    assert hh(WebBimodule(identity_web(comp)), W) == circle_form(comp, W)


def test_koszul_factor_degrees():
    assert [KoszulFactor(0, j).qshift for j in (1, 2, 3)] == [2, 4, 6]


@pytest.mark.parametrize("sign", [1, -1])
def test_kink(sign):
    T = full_trace(crossing_complex(1, 1, sign))
    got = traced_series(T, W)
    circle = circle_form((1,), (W[0] - 4, W[1] + 4))
    if sign > 0:
        expected = {(a, 1, q): v for (a, q), v in monomial_times(circle, q=-1, window=W).items()}
    else:
        expected = {(a, 0, q): v for (a, q), v in monomial_times(circle, a=1, q=-3, window=W).items()}
    assert got == expected


@pytest.mark.parametrize("k,l", [(1, 1), (2, 1), (1, 2)])
def test_merge_split_trace(k, l):
    assert hh(WebBimodule(split_merge_web(k, l)), W) == skein_one_form(k, l, W)


def test_partial_then_full_agree_on_identity():
    # closing one strand of (1,1) and then the other is the full trace
    B = WebBimodule(identity_web((1, 1)))
    T1 = TracedComplex(B, [1])
    assert T1.positions == (1,)
    full = full_trace(B)
    assert traced_series(full, W) == {(a, 0, q): v for (a, q), v in circle_form((1, 1), W).items()}


def test_partial_trace_closes_last_strand():
    T = partial_trace(crossing_complex(1, 1, 1))
    assert T.positions == (1,)
    assert T.max_a == 1


def test_unbalanced_strand_rejected():
    with pytest.raises(WebError):
        TracedComplex(WebBimodule(merge_web((1, 1), 0)))
    with pytest.raises(WebError):
        hh(WebBimodule(merge_web((1, 1), 0)))


@pytest.mark.parametrize("sign", [1, -1])
def test_slices_are_complexes(sign):
    C = BimoduleComplex((2, 1), [Crossing(0, 0, 1, 2, sign), Crossing(1, 0, 2, 1, sign)])
    T = full_trace(C)
    for a in range(T.max_a + 1):
        for q in range(-10, 2):
            assert T.check_d_squared(a, q)


def test_euler_from_chains_matches_homology():
    T = full_trace(BimoduleComplex((1, 2), [Crossing(0, 0, 2, 1, -1), Crossing(1, 0, 1, 2, -1)]))
    series = traced_series(T, (-10, 0))
    chi = {}
    for (a, t, q), v in series.items():
        chi[(a, q)] = chi.get((a, q), 0) + (-1) ** t * v
    assert {k: v for k, v in chi.items() if v} == traced_euler(T, (-10, 0))


VERTEX_WEBS = [
    ((1, 1), (Layer("merge", 0, 1, 1, "m"),)),
    ((2, 1), (Layer("merge", 0, 2, 1, "m"),)),
    ((1, 1, 1), (Layer("merge", 1, 1, 1, "m"),)),
    ((1, 2), (Layer("merge", 0, 1, 2, "m"),)),
    ((1, 1), (Layer("merge", 0, 1, 1, "m"), Layer("split", 0, 1, 1, "s"), Layer("merge", 0, 1, 1, "m2"))),
]


@pytest.mark.parametrize("comp,layers", VERTEX_WEBS)
def test_vertex_slide(comp, layers):
    B = WebBimodule(Web(comp, layers))
    lhs, rhs, shift = vertex_slide_sides(B)
    k, l = comp[-2], comp[-1]
    assert shift == 2 * k * l
    assert vertex_slide_check(B, (-10, 4))
    assert any(lhs.hh_dims(a, q) for a in range(lhs.max_a + 1) for q in range(-10, 4))


def test_vertex_slide_needs_a_merge_shape():
    with pytest.raises(WebError):
        vertex_slide_sides(WebBimodule(identity_web((1, 1))))
