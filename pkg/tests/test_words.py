from itertools import product

import pytest
from hypothesis import given, strategies as st

from morphrec.errors import DomainError
from morphrec.words import (
    are_conjugate,
    commute,
    is_factor,
    minimal_period,
    power_prefix,
    power_suffix,
    primitive_root,
)

words = st.text(alphabet="ab", max_size=12)
nonempty_words = st.text(alphabet="abc", min_size=1, max_size=12)


def brute_period(w):
    for p in range(1, len(w) + 1):
        if all(w[i] == w[i + p] for i in range(len(w) - p)):
            return p


def brute_conjugate(u, v):
    return len(u) == len(v) and any(u[i:] + u[:i] == v for i in range(max(len(u), 1)))


@pytest.mark.parametrize("w,p", [("abab", 2), ("a", 1), ("aab", 3)])
def test_minimal_period_examples(w, p):
    assert minimal_period(w) == p
    assert brute_period(w) == p


@pytest.mark.parametrize("w,r", [("abab", "ab"), ("aba", "aba"), ("aaaaaa", "a")])
def test_primitive_root_examples(w, r):
    assert primitive_root(w) == r


def test_empty_word_is_a_domain_error():
    with pytest.raises(DomainError):
        minimal_period("")
    with pytest.raises(DomainError):
        primitive_root("")


@pytest.mark.parametrize("u,v,expected", [("ab", "abab", True), ("ab", "ba", False), ("", "ab", True)])
def test_commute_examples(u, v, expected):
    assert commute(u, v) is expected


@pytest.mark.parametrize("u,v,expected", [("ab", "ba", True), ("ab", "ab", True), ("aab", "abb", False)])
def test_conjugate_examples(u, v, expected):
    assert are_conjugate(u, v) is expected
    assert brute_conjugate(u, v) is expected


def test_words_on_tuples():
    assert primitive_root((0, 1, 0, 1)) == (0, 1)
    assert are_conjugate((0, 1), (1, 0))


@given(nonempty_words)
def test_minimal_period_matches_brute_force(w):
    assert minimal_period(w) == brute_period(w)


@given(nonempty_words)
def test_primitive_root_idempotent(w):
    r = primitive_root(w)
    assert primitive_root(r) == r
    assert len(w) % len(r) == 0
    assert r * (len(w) // len(r)) == w


@given(nonempty_words)
def test_period_dividing_length_gives_root_power(w):
    p = minimal_period(w)
    if len(w) % p == 0:
        r = primitive_root(w)
        assert r * (len(w) // len(r)) == w


@given(st.text(alphabet="ab", min_size=1, max_size=8), st.text(alphabet="ab", min_size=1, max_size=8))
def test_commute_iff_same_root(u, v):
    assert commute(u, v) == (primitive_root(u) == primitive_root(v))


@given(words, words)
def test_is_factor_matches_builtin(x, w):
    assert is_factor(x, w) == (x in w)


def test_conjugacy_is_an_equivalence_on_length_classes():
    for n in range(1, 6):
        ws = ["".join(t) for t in product("ab", repeat=n)]
        for u in ws:
            assert are_conjugate(u, u)
            for v in ws:
                assert are_conjugate(u, v) == are_conjugate(v, u) == brute_conjugate(u, v)
        sample = ws[:: max(1, len(ws) // 6)]
        for u in sample:
            for v in sample:
                for w in sample:
                    if are_conjugate(u, v) and are_conjugate(v, w):
                        assert are_conjugate(u, w)


def test_power_windows():
    assert power_prefix("ab", 5) == "ababa"
    assert power_suffix("ab", 5) == "babab"
    assert power_suffix("abc", 0) == ""
