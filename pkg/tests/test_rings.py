import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hbhomology.rings import (
    InvariantRing,
    Poly,
    act,
    comultiply_map,
    composition_length,
    demazure,
    demazure_relative,
    demazure_word,
    frobenius_element,
    longest_element,
    orbit_sum,
    perm_length,
    reduced_word,
    relative_element,
    to_elementary,
    trace_map,
    transposition,
)

N = 4


def polys(nvars=N, max_exp=3, max_terms=5):
    mono = st.tuples(*[st.integers(0, max_exp)] * nvars)
    return st.dictionaries(mono, st.integers(-4, 4), max_size=max_terms).map(lambda d: Poly(d, nvars))


def symmetrize(f, comp):
    """Sum of f over the Young subgroup of comp (an invariant of comp)."""
    n = f.nvars
    ring = InvariantRing(tuple(comp))
    out = Poly(nvars=n)
    gens = [transposition(i, n) for i in sorted(_simple(comp))]
    seen = {tuple(range(n))}
    frontier = [tuple(range(n))]
    while frontier:
        w = frontier.pop()
        for s in gens:
            u = tuple(w[s[i]] for i in range(n))
            if u not in seen:
                seen.add(u)
                frontier.append(u)
    for w in seen:
        out = out + act(w, f)
    assert ring.contains(out)
    return out


def _simple(comp):
    out, start = set(), 0
    for k in comp:
        out |= set(range(start + 1, start + k))
        start += k
    return out


@settings(max_examples=100)
@given(polys(), st.integers(1, N - 1))
def test_demazure_nilpotent(f, i):
    assert demazure(i, demazure(i, f)).is_zero()


@settings(max_examples=100)
@given(polys(), st.integers(1, N - 2))
def test_demazure_braid_relation(f, i):
    assert demazure_word((i, i + 1, i), f) == demazure_word((i + 1, i, i + 1), f)


@settings(max_examples=100)
@given(polys())
def test_demazure_far_commutation(f):
    assert demazure_word((1, 3), f) == demazure_word((3, 1), f)


@settings(max_examples=100)
@given(polys(max_terms=3), polys(max_terms=3), st.integers(1, N - 1))
def test_demazure_leibniz(f, g, i):
    s = transposition(i, N)
    assert demazure(i, f * g) == demazure(i, f) * g + act(s, f) * demazure(i, g)


@settings(max_examples=100)
@given(polys(), st.integers(1, N - 1))
def test_demazure_output_invariant(f, i):
    assert act(transposition(i, N), demazure(i, f)) == demazure(i, f)


def test_demazure_values():
    x1, x2 = Poly.var(1, 2), Poly.var(2, 2)
    assert demazure(1, x1) == Poly.const(1, 2)
    assert demazure(1, x1 * x1) == x1 + x2
    assert demazure(1, x2 ** 3) == -(x1 * x1 + x1 * x2 + x2 * x2)


@pytest.mark.parametrize("I,J", [((1, 1, 1), (3,)), ((1, 1, 1, 1), (4,)), ((1, 2), (3,)), ((1, 1, 2), (2, 2)), ((2, 1, 1), (4,))])
def test_relative_trace_word_independent(I, J):
    w = relative_element(I, J)
    assert perm_length(w) == composition_length(J) - composition_length(I)
    words = _reduced_words(w)
    assert len(words) >= 1
    n = sum(I)
    f = symmetrize(Poly({tuple(range(n - 1, -1, -1)): 1, (0,) * (n - 1) + (2,): 3}, n), I)
    vals = {demazure_relative(I, J, f, word=wd) for wd in words}
    assert len(vals) == 1
    assert InvariantRing(J).contains(vals.pop())


def _reduced_words(w):
    n = len(w)
    length = perm_length(w)
    out = []
    for word in itertools.product(range(1, n), repeat=length):
        u = tuple(range(n))
        for i in word:
            u = tuple(u[j] for j in transposition(i, n))
        if u == w:
            out.append(word)
    return out


def test_relative_trace_rejects_bad_word():
    with pytest.raises(ValueError):
        demazure_relative((1, 1), (2,), Poly.var(1, 2), word=(1, 1))
    with pytest.raises(ValueError):
        demazure_relative((2,), (1, 1), Poly.var(1, 2))


@pytest.mark.parametrize("comp,qmax", [((2,), 12), ((2, 1), 10), ((1, 2), 10), ((3,), 12)])
def test_invariant_basis_dimensions(comp, qmax):
    ring = InvariantRing(comp)
    gd = ring.graded_dimension(qmax)
    for d in range(0, qmax + 1, 2):
        assert len(ring.basis(d)) == gd.get(d, 0)


@settings(max_examples=50)
@given(polys(nvars=3, max_exp=3, max_terms=3))
def test_to_elementary_round_trip(f):
    comp = (2, 1)
    g = symmetrize(f, comp)
    gens = InvariantRing(comp).generators()
    back = Poly(nvars=3)
    for slots, c in to_elementary(g, comp).items():
        term = Poly.const(c, 3)
        for (_, _, e), k in zip(gens, slots):
            term = term * e ** k
        back = back + term
    assert back == g


def test_to_elementary_rejects_non_invariant():
    with pytest.raises(ValueError):
        to_elementary(Poly.var(1, 2), (2,))


FROB_CASES = [((1, 1), (2,)), ((1, 1, 1), (3,)), ((2, 1), (3,)), ((1, 2), (3,)), ((1, 1, 1), (2, 1))]


@pytest.mark.parametrize("I,J", FROB_CASES)
def test_frobenius_dual_bases(I, J):
    pairs = frobenius_element(I, J)
    n = sum(I)
    for i, (a, _) in enumerate(pairs):
        for j, (_, b) in enumerate(pairs):
            assert demazure_relative(I, J, a * b) == Poly.const(1 if i == j else 0, n)
    top = 2 * (composition_length(J) - composition_length(I))
    assert all(a.qdegree() + b.qdegree() == top for a, b in pairs if a and b)


@pytest.mark.parametrize("I,J", FROB_CASES)
def test_frobenius_counit_law(I, J):
    # (trace (x) id) o Delta = id: sum_i trace(f a_i) a_i* = f for f in R^I
    n = sum(I)
    delta, tr = comultiply_map(I, J), trace_map(I, J)
    samples = [Poly.const(1, n)] + [symmetrize(Poly({e: 1}, n), I) for e in itertools.product(range(3), repeat=n)][:12]
    for f in samples:
        total = Poly(nvars=n)
        for left, right in delta.apply(f):
            total = total + tr.apply(left) * right
        assert total == f


@pytest.mark.parametrize("I,J", FROB_CASES)
def test_frobenius_unit_law(I, J):
    # sum_i a_i trace(a_i* g) = g as well (the element is symmetric)
    n = sum(I)
    pairs = frobenius_element(I, J)
    for e in [(0,) * n, (1,) + (0,) * (n - 1), (2,) + (1,) * (n - 1)]:
        g = symmetrize(Poly({e: 1}, n), I)
        total = Poly(nvars=n)
        for a, b in pairs:
            total = total + a * demazure_relative(I, J, b * g)
        assert total == g


def test_frobenius_rank_matches_index():
    assert len(frobenius_element((1, 1, 1), (3,))) == 6
    assert len(frobenius_element((2, 1), (3,))) == 3
    assert len(frobenius_element((1, 1), (2,))) == 2


def test_longest_element_and_reduced_word():
    w = longest_element((3,))
    assert w == (2, 1, 0)
    assert len(reduced_word(w)) == 3
    assert orbit_sum((1, 0), (2,)) == Poly.var(1, 2) + Poly.var(2, 2)
