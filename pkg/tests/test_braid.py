import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hbhomology.braid import (
    SIGMA,
    TAU,
    BraidParseError,
    BraidWord,
    ClassicalBraidWord,
    Coloring,
    Letter,
    balanced,
    classical_equal,
    embed_classical,
    markov_conjugate,
    parse_braid,
    relations,
    stabilize,
    writhe_stats,
)


@st.composite
def words(draw, max_genus=3, max_strands=4, max_len=8):
    g = draw(st.integers(0, max_genus))
    n = draw(st.integers(1, max_strands))
    pool = [(SIGMA, i) for i in range(1, n)] + [(TAU, j) for j in range(1, g + 1)]
    if not pool:
        return BraidWord(g, n)
    picks = draw(st.lists(st.sampled_from(pool), max_size=max_len))
    exps = draw(st.lists(st.sampled_from((1, -1)), min_size=len(picks), max_size=len(picks)))
    return BraidWord(g, n, tuple(Letter(k, i, e) for (k, i), e in zip(picks, exps)))


def test_parse_basic():
    b = parse_braid("t2 s1^-1  t1^-1", 2, 2)
    assert b.letters == (Letter(TAU, 2), Letter(SIGMA, 1, -1), Letter(TAU, 1, -1))
    assert str(b) == "t2 s1^-1 t1^-1"
    assert parse_braid("", 1, 1) == BraidWord(1, 1)


@pytest.mark.parametrize(
    "text,g,n,column",
    [("s1 x2", 0, 2, 3), ("s1 s2", 0, 2, 3), ("t3", 2, 1, 0), ("s1^2", 0, 2, 0), ("s0", 0, 3, 0)],
)
def test_parse_errors_point_at_token(text, g, n, column):
    with pytest.raises(BraidParseError) as info:
        parse_braid(text, g, n)
    assert info.value.column == column
    lines = info.value.caret().splitlines()
    assert lines[0] == text
    assert lines[1].index("^") == column


@given(words())
def test_json_round_trip(b):
    assert BraidWord.from_json(b.to_json()) == b


@given(words())
def test_text_round_trip(b):
    assert parse_braid(str(b), b.genus, b.strands) == b


@given(words())
def test_inverse_is_literal(b):
    cw, ci = embed_classical(b), embed_classical(b.inverse())
    assert ci.letters == tuple((i, -e) for i, e in reversed(cw.letters))
    assert classical_equal(ClassicalBraidWord(cw.strands, cw.letters + ci.letters), ClassicalBraidWord(cw.strands))


@given(words())
def test_core_strands_return_home(b):
    # core strands wind around but never braid among themselves
    perm = embed_classical(b).permutation()
    assert all(perm[p] == p for p in range(b.genus))


@pytest.mark.parametrize("g,n", [(0, 3), (1, 2), (2, 2), (3, 3), (2, 1)])
def test_relations_hold_classically(g, n):
    for lhs, rhs in relations(g, n):
        assert classical_equal(embed_classical(lhs), embed_classical(rhs)), (lhs, rhs)


def test_tau_words_differ():
    a = embed_classical(parse_braid("t2 t1", 2, 1))
    b = embed_classical(parse_braid("t1 t2", 2, 1))
    assert not classical_equal(a, b)
    assert classical_equal(a, a)


def test_tau_image_shape():
    cw = embed_classical(parse_braid("t1", 2, 1))
    assert cw.letters == ((2, 1), (1, 1), (1, 1), (2, -1))


def test_markov_moves():
    beta = parse_braid("t1 s1", 1, 2)
    s = parse_braid("s1", 1, 2)
    assert str(markov_conjugate(beta, s)) == "s1 t1 s1 s1^-1"
    with pytest.raises(ValueError):
        markov_conjugate(beta, parse_braid("t1", 1, 2))
    st_ = stabilize(beta, -1)
    assert st_.strands == 3 and st_.letters[-1] == Letter(SIGMA, 2, -1)
    with pytest.raises(ValueError):
        stabilize(beta, 2)


def test_writhe_and_balance():
    assert writhe_stats(parse_braid("s1 s1 s1", 0, 2), Coloring(1, (1, 1))) == (3, 3)
    assert writhe_stats(parse_braid("s1 s1", 0, 2), Coloring(1, (2, 2))) == (4, 8)
    # tau crossings between core (color 1) and link strand (color 1) count
    assert writhe_stats(parse_braid("t1", 1, 1), Coloring(1, (1,))) == (2, 2)
    assert writhe_stats(parse_braid("t1", 1, 1), Coloring(2, (1,))) == (0, 0)
    assert not balanced(parse_braid("s1", 0, 2), Coloring(1, (1, 2)))
    assert balanced(parse_braid("s1 s1", 0, 2), Coloring(1, (1, 2)))


def test_bad_words_rejected():
    with pytest.raises(ValueError):
        BraidWord(1, 2, (Letter(TAU, 2),))
    with pytest.raises(ValueError):
        BraidWord(0, 2, (Letter(SIGMA, 1, 2),))
    with pytest.raises(ValueError):
        Coloring(0, (1,))


@settings(max_examples=50)
@given(words(max_genus=2, max_strands=3, max_len=5))
def test_free_reduce_preserves_braid(b):
    doubled = b * b.inverse()
    assert doubled.free_reduce().letters == ()
    assert classical_equal(embed_classical(b.free_reduce()), embed_classical(b))
