import pytest
from hypothesis import given, settings, strategies as st

from morphrec.errors import DomainError, MorphismSyntaxError
from morphrec.morphism import (
    Morphism,
    apply,
    compose,
    ell,
    erasable_letters,
    erasable_words,
    growing_letters,
    identity,
    incidence_matrix,
    incidence_rank,
    is_left_marked,
    is_periodic_morphism,
    is_right_marked,
    parse_morphism,
    periodic_root,
    power,
)
from morphrec.words import factors, minimal_period

FIB = Morphism.from_dict({"a": "ab", "b": "a"})
TM = Morphism.from_dict({"a": "ab", "b": "ba"})


def endomorphisms(letters="abc", max_len=3, min_len=0):
    return st.lists(
        st.text(alphabet=letters, min_size=min_len, max_size=max_len),
        min_size=len(letters),
        max_size=len(letters),
    ).map(lambda imgs: Morphism(tuple(letters), tuple(imgs)))


def test_parse_fibonacci():
    sigma = parse_morphism("a -> ab\nb -> a\n")
    assert sigma.source == ("a", "b")
    assert sigma.target == ("a", "b")
    assert sigma.images == ("ab", "a")


def test_parse_empty_image_and_comments():
    sigma = parse_morphism("# header\n\na ->   # nothing\n")
    assert sigma.as_dict() == {"a": ""}


def test_parse_undeclared_image_letter_goes_to_target_only():
    sigma = parse_morphism("a -> ab\nb -> cb\n")
    assert sigma.source == ("a", "b")
    assert sigma.target == ("a", "b", "c")
    assert not sigma.is_endomorphism


@pytest.mark.parametrize(
    "text,line",
    [("a -> ab\na -> b", 2), ("a = b", 1), ("ab -> a", 1), ("\n\nx y", 3)],
)
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(MorphismSyntaxError) as exc:
        parse_morphism(text)
    assert exc.value.lineno == line
    assert str(exc.value).startswith(f"line {line}:")


def test_parse_rejects_empty_file():
    with pytest.raises(MorphismSyntaxError):
        parse_morphism("# only a comment\n")


def test_apply():
    assert apply(FIB, "ab") == "aba"
    assert apply(FIB, "") == ""
    assert apply(TM, "ab") == "abba"
    with pytest.raises(DomainError):
        apply(FIB, "c")


def test_compose_examples():
    alpha = Morphism.from_dict({"u": "ab", "v": "c"})
    beta = Morphism.from_dict({"a": "u", "b": "uv", "c": "vv"})
    assert compose(alpha, beta).as_dict() == {"a": "ab", "b": "abc", "c": "cc"}
    assert compose(identity("ab"), FIB) == FIB
    letters = compose(Morphism.from_dict({"b": "c"}), Morphism.from_dict({"a": "b"}))
    assert letters.as_dict() == {"a": "c"}
    with pytest.raises(DomainError):
        compose(Morphism.from_dict({"x": "a"}), FIB)


def test_ell():
    assert ell(FIB) == 1
    assert ell(Morphism.from_dict({"a": "b", "b": "a"})) == 0
    assert ell(Morphism.from_dict({"a": ""})) == -1


def test_incidence_rank():
    assert incidence_rank(TM) == (1, False)
    assert incidence_rank(FIB) == (2, True)
    assert incidence_rank(Morphism.from_dict({"a": "", "b": ""}))[0] == 0


def test_erasable_letters():
    assert erasable_letters(Morphism.from_dict({"a": "b", "b": ""})) == {"a", "b"}
    assert erasable_letters(FIB) == set()
    assert erasable_letters(Morphism.from_dict({"a": "ab", "b": ""})) == {"b"}
    with pytest.raises(DomainError):
        erasable_letters(Morphism.from_dict({"a": "b"}))


def test_erasable_words():
    assert erasable_words(Morphism.from_dict({"a": "b", "b": ""})) == {"", "a", "b"}
    assert erasable_words(FIB) == {""}
    assert erasable_words(Morphism.from_dict({"a": "ab", "b": ""})) == {"", "b"}


def test_erasable_words_with_straddling_runs():
    # σ²(a) = c·dab·cb: the run "cd" straddles two image boundaries
    sigma = Morphism.from_dict({"a": "dab", "b": "cb", "c": "", "d": "c"})
    assert erasable_words(sigma) == brute_erasable_words(sigma, 8)


def brute_erasable_words(sigma, steps, limit=4000):
    erasable = erasable_letters(sigma)
    found = {""}
    for a in sigma.source:
        w = a
        for _ in range(steps + 1):
            for f in factors(w) if len(w) < 200 else ():
                if all(c in erasable for c in f):
                    found.add(f)
            if len(w) >= 200:
                # long words: scan maximal erasable runs only
                run = ""
                for c in w + "\0":
                    if c in erasable:
                        run += c
                    else:
                        found |= factors(run)
                        run = ""
            w = apply(sigma, w)
            if len(w) > limit:
                break
    return found


@settings(max_examples=150, deadline=None)
@given(endomorphisms("abc", max_len=3))
def test_erasable_words_contain_brute_force(sigma):
    ours = erasable_words(sigma)
    assert brute_erasable_words(sigma, 8) <= ours


@settings(max_examples=150, deadline=None)
@given(endomorphisms("abcd", max_len=2))
def test_erasable_letters_closed_form(sigma):
    expected = {a for a in sigma.source if power(sigma, len(sigma.source), a) == ""}
    assert erasable_letters(sigma) == expected


def lengths(sigma, n):
    """|σᵏ(a)| for k = 0..n, via the incidence matrix (exact integers)."""
    m = incidence_matrix(sigma)
    idx = {b: j for j, b in enumerate(sigma.source)}
    out = {a: [] for a in sigma.source}
    vec = {a: [1 if b == a else 0 for b in sigma.source] for a in sigma.source}
    for _ in range(n + 1):
        for a in sigma.source:
            out[a].append(sum(vec[a]))
        new = {}
        for a in sigma.source:
            row = [0] * len(sigma.source)
            for i, count in enumerate(vec[a]):
                if count:
                    for j, x in enumerate(m[i]):
                        row[idx[sigma.target[j]]] += count * x
            new[a] = row
        vec = new
    return out


def brute_growing(sigma):
    ls = lengths(sigma, 200)
    return {a for a in sigma.source if max(ls[a][100:]) > max(ls[a][:51])}


def test_growing_letters_examples():
    # c ↦ cd, d ↦ c is the Fibonacci morphism on {c, d}, so c and d grow.
    sigma = Morphism.from_dict({"a": "bac", "b": "bb", "c": "cd", "d": "c"})
    assert growing_letters(sigma) == {"a", "b", "c", "d"}
    assert growing_letters(sigma) == brute_growing(sigma)
    assert growing_letters(FIB) == {"a", "b"}
    assert growing_letters(Morphism.from_dict({"a": "a"})) == set()


def test_growing_letters_bounded_cases():
    sigma = Morphism.from_dict({"a": "bc", "b": "c", "c": "b", "d": "dd"})
    assert growing_letters(sigma) == {"d"}
    # a cycle that leaks into a bounded letter still grows linearly
    sigma = Morphism.from_dict({"a": "ab", "b": "b"})
    assert growing_letters(sigma) == {"a"}
    sigma = Morphism.from_dict({"a": "eae", "b": "b", "e": ""})
    assert growing_letters(sigma) == set()


@settings(max_examples=200, deadline=None)
@given(endomorphisms("abcd", max_len=3))
def test_growing_letters_match_length_oracle(sigma):
    assert growing_letters(sigma) == brute_growing(sigma)


def test_periodic_examples():
    assert periodic_root(Morphism.from_dict({"a": "ab", "b": "abab"})) == "ab"
    assert not is_periodic_morphism(FIB)
    assert periodic_root(Morphism.from_dict({"a": "aa", "b": "aaa"})) == "a"
    assert periodic_root(Morphism.from_dict({"a": "", "b": ""})) == ""


@settings(max_examples=100, deadline=None)
@given(st.text(alphabet="ab", min_size=1, max_size=3), st.lists(st.integers(0, 3), min_size=2, max_size=3), st.lists(st.integers(0, 2), max_size=6))
def test_periodic_images_have_bounded_periods(root, exps, word):
    letters = "abc"[: len(exps)]
    sigma = Morphism(tuple(letters), tuple(root * k for k in exps))
    r = periodic_root(sigma)
    assert r is not None
    x = apply(sigma, "".join(letters[i % len(letters)] for i in word))
    if x and r:
        assert minimal_period(x[: 6 * len(r)]) <= len(r)


def test_marked():
    assert is_left_marked(TM) and is_right_marked(TM)
    assert not is_left_marked(FIB)
    assert not is_left_marked(Morphism.from_dict({"a": "ab", "b": ""}))
    assert is_right_marked(Morphism.from_dict({"a": "ab", "b": "a"}))


@settings(max_examples=150, deadline=None)
@given(endomorphisms("ab", max_len=3), endomorphisms("ab", max_len=3), st.text(alphabet="ab", max_size=6))
def test_composition_laws(alpha, beta, w):
    sigma = compose(alpha, beta)
    assert apply(sigma, w) == apply(alpha, apply(beta, w))
    # M(α∘β) = M(β)·M(α), with columns over the shared alphabet order
    def matrix(m, cols):
        return [[img.count(c) for c in cols] for img in m.images]
    mb, ma, ms = matrix(beta, "ab"), matrix(alpha, "ab"), matrix(sigma, "ab")
    prod = [[sum(mb[i][k] * ma[k][j] for k in range(2)) for j in range(2)] for i in range(2)]
    assert prod == ms


@given(endomorphisms("abc", max_len=4))
def test_incidence_row_sums(sigma):
    for row, img in zip(incidence_matrix(sigma), sigma.images):
        assert sum(row) == len(img)
