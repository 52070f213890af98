from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cantor_waring.cantor import (
    apply_word,
    apply_word_closed_form,
    as_word,
    basic_interval,
    children,
    is_left_endpoint,
    iter_level_intervals,
    iter_words,
    level_intervals,
    level_lefts,
    make_params,
    s2k_chain,
    scaled_level_lefts,
    word_of_left,
)
from cantor_waring.errors import DomainError, InvalidParameterError, ResourceLimitError
from cantor_waring.exact import Interval

from _oracles import level_lefts as oracle_lefts

F = Fraction
alphas = st.sampled_from([F(3), F(4), F(5), F(5, 2), F(11, 10), F(7, 3)])
words = st.text(alphabet="01", max_size=10)


def test_params():
    assert make_params(3).r == F(1, 3)
    assert make_params(4).r == F(3, 8)
    assert make_params("5/2").r == F(3, 10)
    for bad in (1, F(1, 2), 0):
        with pytest.raises(InvalidParameterError):
            make_params(bad)


def test_word_examples():
    p = make_params(3)
    assert apply_word(p, "01", 1) == F(1, 3)
    assert apply_word(p, "", F(1, 2)) == F(1, 2)
    assert basic_interval(p, "11").interval() == Interval(F(8, 9), F(1))
    with pytest.raises(DomainError):
        apply_word(p, "0", F(3, 2))
    with pytest.raises(InvalidParameterError):
        as_word("012")
    assert as_word([1, 0]) == "10"


def test_children_example():
    p = make_params(3)
    left, right = children(p, basic_interval(p, "1"))
    assert left.interval() == Interval(F(2, 3), F(7, 9))
    assert right.interval() == Interval(F(8, 9), F(1))


def test_children_general_r():
    p = make_params(4)
    left, right = children(p, basic_interval(p, "0"))
    assert right.left == p.r - p.r**2
    assert right.right == p.r


def test_level_enumeration():
    p = make_params(3)
    assert [b.left for b in level_intervals(p, 2)] == [0, F(2, 9), F(2, 3), F(8, 9)]
    assert level_intervals(p, 0)[0].interval() == Interval(F(0), F(1))
    with pytest.raises(ResourceLimitError):
        level_intervals(p, 21)
    assert len(level_intervals(p, 3, limit=3)) == 8
    with pytest.raises(ResourceLimitError):
        list(iter_level_intervals(p, 4, limit=3))


def test_s2k_chain():
    assert s2k_chain(4) == ["0000", "0011", "1111"]
    assert s2k_chain(2) == ["00", "11"]
    for bad in (3, 0):
        with pytest.raises(InvalidParameterError):
            s2k_chain(bad)


def test_basic_interval_wire():
    p = make_params(3)
    b = basic_interval(p, "101")
    assert b.to_wire() == {"left": "20/27", "level": 3}
    assert type(b).from_wire(p, b.to_wire()) == b


@given(alphas, words, st.fractions(min_value=0, max_value=1, max_denominator=50))
def test_closed_form_agrees(alpha, w, x):
    p = make_params(alpha)
    assert apply_word(p, w, x) == apply_word_closed_form(p, w, x)


@given(alphas, st.integers(min_value=0, max_value=7))
def test_levels_against_oracle(alpha, n):
    p = make_params(alpha)
    assert level_lefts(p, n) == oracle_lefts(p.r, n)
    assert [b.left for b in iter_level_intervals(p, n)] == level_lefts(p, n)
    den, nums, width = scaled_level_lefts(p, n)
    assert [F(u, den) for u in nums] == level_lefts(p, n)
    assert F(width, den) == p.r**n


@given(alphas, words)
def test_word_of_left_inverts(alpha, w):
    p = make_params(alpha)
    u = apply_word(p, w, 0)
    assert word_of_left(p, u, len(w)) == w
    assert is_left_endpoint(p, u, len(w))


@given(alphas, st.integers(min_value=0, max_value=5), st.fractions(min_value=0, max_value=1, max_denominator=200))
def test_left_endpoint_membership(alpha, n, u):
    p = make_params(alpha)
    assert is_left_endpoint(p, u, n) == (u in set(level_lefts(p, n)))


@given(alphas, words)
def test_basic_interval_nesting(alpha, w):
    p = make_params(alpha)
    b = basic_interval(p, w)
    assert b.width == p.r ** len(w)
    for child, d in zip(children(p, b), "01"):
        assert child == basic_interval(p, w + d)
        assert b.interval().contains_interval(child.interval())


def test_dictionary_order_is_interval_order():
    for r_alpha in (F(3), F(5, 2)):
        p = make_params(r_alpha)
        ws = list(iter_words(5))
        ivs = [basic_interval(p, w) for w in ws]
        for a, b in zip(ivs, ivs[1:]):
            assert a.right < b.left
