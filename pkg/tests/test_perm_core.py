import random

import pytest
from hypothesis import given, strategies as st

from parabundle.perm_core import (
    Permutation, all_permutations, compose, from_one_line, from_word, identity,
    inverse, left_descents, length, rank_matrix, reduced_word, right_descents,
    simple_reflection, support,
)

from oracles import naive_inverse, right_stripping_word, word_lengths

P = Permutation.parse


def perms(max_n=8):
    return st.integers(1, max_n).flatmap(
        lambda n: st.permutations(range(1, n + 1)).map(lambda a: Permutation(tuple(a)))
    )


def test_from_one_line():
    assert from_one_line([4, 3, 6, 1, 2, 5]).images == (4, 3, 6, 1, 2, 5)
    assert from_one_line([1]) == identity(1)


@pytest.mark.parametrize("bad", [[2, 2, 1], [0, 1], [1, 3], []])
def test_from_one_line_rejects(bad):
    with pytest.raises(ValueError):
        from_one_line(bad)


def test_identity():
    assert str(identity(3)) == "123"
    assert str(identity(1)) == "1"
    with pytest.raises(ValueError):
        identity(0)


def test_text_forms():
    assert P("10,3,1,2,4,5,6,7,8,9").n == 10
    assert str(P("10,3,1,2,4,5,6,7,8,9")) == "10,3,1,2,4,5,6,7,8,9"
    assert str(P("1,3,2")) == "132"
    with pytest.raises(ValueError):
        P("12x")


def test_compose_convention():
    # w = v u with v = 145236, u = 321645 must give back 541623
    assert compose(P("145236"), P("321645")) == P("541623")
    assert compose(P("2413"), P("2143")) == P("4231")
    with pytest.raises(ValueError):
        compose(P("21"), P("123"))


def test_inverse():
    assert inverse(P("436125")).images == naive_inverse((4, 3, 6, 1, 2, 5))
    assert inverse(identity(5)) == identity(5)


def test_group_laws_random():
    rng = random.Random(20261015)
    for _ in range(10_000):
        n = rng.randint(1, 8)
        x, y, z = (Permutation(tuple(rng.sample(range(1, n + 1), n))) for _ in range(3))
        assert compose(compose(x, y), z) == compose(x, compose(y, z))
        assert compose(identity(n), x) == x == compose(x, identity(n))
        assert compose(x, inverse(x)) == identity(n)
        assert inverse(inverse(x)) == x


def test_length():
    assert length(identity(6)) == 0
    assert length(P("654321")) == 15
    assert length(P("436125")) == 8


@pytest.mark.parametrize("n", range(1, 7))
def test_length_is_word_length(n):
    lengths = word_lengths(n)
    for w in all_permutations(n):
        assert length(w) == lengths[w.images] == length(inverse(w))
        for i in range(1, n):
            assert abs(length(compose(w, simple_reflection(i, n))) - length(w)) == 1


def test_descents():
    w = P("436125")
    assert right_descents(w) == {1, 3}
    assert left_descents(w) == {2, 3, 5}
    assert right_descents(identity(4)) == left_descents(identity(4)) == set()
    assert right_descents(P("4321")) == {1, 2, 3}


@pytest.mark.parametrize("n", range(1, 7))
def test_left_descents_are_inverse_right_descents(n):
    for w in all_permutations(n):
        assert left_descents(w) == right_descents(inverse(w))


def test_support_examples():
    assert support(P("3412")) == {1, 2, 3}
    assert support(identity(5)) == set()
    assert support(P("213465")) == {1, 5}
    assert support(identity(1)) == set()


def test_reduced_word_examples():
    assert reduced_word(identity(4)) == []
    assert reduced_word(P("21")) == [1]
    word = reduced_word(P("4231"))
    assert len(word) == 5
    assert set(word) == support(P("4231")) == {1, 2, 3}
    assert from_word(word, 4) == P("4231")


@pytest.mark.parametrize("n", range(1, 7))
def test_support_matches_both_reduced_words(n):
    for w in all_permutations(n):
        left = reduced_word(w)
        right = right_stripping_word(w.images)
        assert from_word(left, n) == w == from_word(right, n)
        assert len(left) == length(w) == len(right)
        assert support(w) == set(left) == set(right)


def test_rank_matrix():
    m = rank_matrix(identity(4))
    assert all(m[i, j] == min(i, j) for i in range(1, 5) for j in range(1, 5))
    assert rank_matrix(P("4231"))[2, 2] == 1
    with pytest.raises(IndexError):
        m[0, 1]


@pytest.mark.parametrize("n", range(1, 7))
def test_rank_matrix_invariants(n):
    for w in all_permutations(n):
        m = rank_matrix(w)
        assert m[n, n] == n
        for i in range(1, n + 1):
            assert m[n, i] == i
            for j in range(1, n + 1):
                assert 0 <= m[i, j] <= min(i, j)
                assert m[i, j] == sum(1 for k in range(1, j + 1) if w(k) <= i)
                if i < n:
                    assert m[i, j] <= m[i + 1, j]
                if j < n:
                    assert m[i, j] <= m[i, j + 1]


@given(perms())
def test_word_round_trip(w):
    assert from_word(reduced_word(w), w.n) == w
    assert Permutation.parse(str(w)) == w
