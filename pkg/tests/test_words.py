import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from geoproj.words import (
    COMMUTATOR_SUBWORD,
    NIELSEN_MAPS,
    OTHER,
    POSITIVE_SPECIAL,
    CyclicWord,
    Letter,
    TrivialWord,
    apply_elementary,
    cyclic_reduce,
    cyclic_words,
    elementary_automorphisms,
    equivalent,
    exponent_sum,
    forbidden_subword_scan,
    gap_form_classify,
    inverse,
    is_cyclically_reduced,
    is_mixed_sign,
    is_positive,
    is_reduced,
    letters,
    multiply,
    nielsen_change_of_basis,
    orbit,
    parse_word,
    power,
    reduce,
    reduced_words,
    reduced_words_upto,
    root,
    substitute,
)

raw_words = st.text(alphabet="xXyY", max_size=14)
words = raw_words.map(reduce)
nonempty = words.filter(bool)


# Reduction -----------------------------------------------------------------

def test_reduce_examples():
    assert reduce("xXy") == "y"
    assert reduce("xyYX") == ""
    assert reduce("xyYxX") == "x"
    assert reduce("") == ""


def test_parse_word():
    assert parse_word(" xyYx ") == "xx"
    with pytest.raises(ValueError):
        parse_word("xz")


def test_letters():
    assert letters("xY") == [Letter("x", 1), Letter("y", -1)]
    assert Letter.from_char("Y").char == "Y"


@given(raw_words)
def test_reduce_is_idempotent_and_reduced(w):
    r = reduce(w)
    assert reduce(r) == r
    assert is_reduced(r)


@given(words)
def test_inverse_cancels(w):
    assert multiply(w, inverse(w)) == ""
    assert inverse(inverse(w)) == w


@given(raw_words, raw_words, raw_words)
def test_multiplication_is_associative(a, b, c):
    assert multiply(multiply(a, b), c) == multiply(a, multiply(b, c))


@given(words, st.integers(-3, 3))
def test_power_exponent_sum(w, n):
    assert exponent_sum(power(w, n)) == tuple(n * e for e in exponent_sum(w))


# Cyclic words ----------------------------------------------------------------

def test_cyclic_reduce_examples():
    assert cyclic_reduce("xyX") == (CyclicWord("y"), "x")
    # x (xyx) x^-1 reduces to xxy, already cyclically reduced: a rotation of xyx
    u, c = cyclic_reduce("x" + "xyx" + "X")
    assert u == CyclicWord("xyx")
    assert multiply(c, u.letters, inverse(c)) == reduce("xxyxX")
    with pytest.raises(TrivialWord):
        cyclic_reduce("xX")


@given(nonempty)
def test_cyclic_reduce_conjugates_back(w):
    u, c = cyclic_reduce(w)
    assert is_cyclically_reduced(u.letters)
    assert multiply(c, u.letters, inverse(c)) == w


def _conjugates(w: str, radius: int) -> set[str]:
    return {multiply(g, w, inverse(g)) for g in reduced_words_upto(radius)}


def test_cyclic_word_equality_is_conjugacy():
    # brute force: conjugacy by short conjugators agrees with rotation classes
    classes = [c.letters for n in range(1, 5) for c in cyclic_words(n)]
    for u in classes:
        conj = _conjugates(u, 4)
        for v in classes:
            assert (CyclicWord(u) == CyclicWord(v)) == (v in conj)


def test_cyclic_word_rejects_non_cyclically_reduced():
    with pytest.raises(ValueError):
        CyclicWord("xyX")
    assert CyclicWord("xy") == CyclicWord("yx")
    assert hash(CyclicWord("xy")) == hash(CyclicWord("yx"))
    assert CyclicWord("xy") != CyclicWord("YX")


def test_cyclic_words_enumeration():
    for n in range(1, 6):
        brute = {CyclicWord(w).canonical for w in reduced_words(n) if is_cyclically_reduced(w)}
        found = cyclic_words(n)
        assert len(found) == len(brute)
        assert {c.canonical for c in found} == brute


def test_reduced_word_counts_and_order():
    for n in range(1, 7):
        ws = list(reduced_words(n))
        assert len(ws) == 4 * 3 ** (n - 1)
        assert len(set(ws)) == len(ws)
        assert all(is_reduced(w) for w in ws)
    order = {ch: k for k, ch in enumerate("xXyY")}
    ws = list(reduced_words(3))
    assert ws == sorted(ws, key=lambda w: [order[c] for c in w])


def test_root():
    assert root("xyxy") == ("xy", 2)
    assert root("xyx") == ("xyx", 1)
    assert root("xxx") == ("x", 3)


def test_sign_predicates():
    assert is_positive("xxy")
    assert not is_positive("xY")
    assert is_mixed_sign("xyX")
    assert not is_mixed_sign("xY")


# Elementary automorphisms -------------------------------------------------

def test_eight_elementary_maps_form_a_group():
    maps = elementary_automorphisms()
    tables = {tuple(sorted(e.letter_map().items())) for e in maps}
    assert len(tables) == 8
    for a, b in itertools.product(maps, repeat=2):
        assert a.compose(b) in maps
        for w in ("xyXY", "xxY", "yxYYx"):
            assert apply_elementary(a.compose(b), w) == apply_elementary(a, apply_elementary(b, w))


@given(words)
def test_elementary_maps_preserve_reduced_length(w):
    for e in elementary_automorphisms():
        image = apply_elementary(e, w)
        assert len(image) == len(w)
        assert is_reduced(image)


def test_equivalent_and_orbit():
    assert equivalent("xy", "yx")
    assert equivalent("xy", "XY")
    assert not equivalent("xy", "xx")
    assert "YX" in orbit("xy", with_inverse=False)
    assert orbit("x") == {"x", "X", "y", "Y"}


# Gap words ------------------------------------------------------------------

@pytest.mark.parametrize(
    "word, kind",
    [
        ("yxy", POSITIVE_SPECIAL),
        ("yxxyxy", POSITIVE_SPECIAL),
        ("xyx", POSITIVE_SPECIAL),
        ("xxyxyxx", POSITIVE_SPECIAL),
        ("xy", COMMUTATOR_SUBWORD),
        ("yXY", COMMUTATOR_SUBWORD),
        ("XYxyX", COMMUTATOR_SUBWORD),
        ("", COMMUTATOR_SUBWORD),
        ("xxyy", OTHER),
        ("xYY", OTHER),
    ],
)
def test_gap_form_classify(word, kind):
    assert gap_form_classify(word) == kind


def test_forbidden_subword_scan_examples():
    assert forbidden_subword_scan("yxYx") == ["YXYinvX"]
    assert forbidden_subword_scan("xyXy") == ["YXYinvX"]  # image under the swap
    assert forbidden_subword_scan("yxYY") == ["YXYinvYinv"]
    assert forbidden_subword_scan("yxxY") == ["YXkYinv(2)"]
    assert forbidden_subword_scan("yxxxY") == ["YXkYinv(3)"]
    assert forbidden_subword_scan("xxyy") == ["X2andY2"]
    assert forbidden_subword_scan("xyxy") == []


@given(words)
def test_forbidden_scan_is_invariant_under_elementary_maps(w):
    found = forbidden_subword_scan(w)
    for e in elementary_automorphisms():
        assert forbidden_subword_scan(apply_elementary(e, w)) == found
    assert forbidden_subword_scan(inverse(w)) == found


# Nielsen maps ---------------------------------------------------------------

def test_nielsen_example():
    assert nielsen_change_of_basis(CyclicWord("xy"), "x_to_xY") == CyclicWord("x")
    assert nielsen_change_of_basis("xY", "x_to_xy") == CyclicWord("x")


INVERSE_PAIRS = [("x_to_xy", "x_to_xY"), ("x_to_yx", "x_to_Yx"), ("y_to_yx", "y_to_yX"), ("y_to_xy", "y_to_Xy")]


@pytest.mark.parametrize("f, g", INVERSE_PAIRS)
@given(w=words)
def test_nielsen_maps_are_automorphisms(f, g, w):
    fx, fy = NIELSEN_MAPS[f]
    gx, gy = NIELSEN_MAPS[g]
    assert substitute(substitute(w, fx, fy), gx, gy) == w
    assert substitute(substitute(w, gx, gy), fx, fy) == w
