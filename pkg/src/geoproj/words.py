"""Reduced words in the free group on x, y.

Words are plain strings over ``x X y Y`` where the capital letter is the
inverse, so ``"xyXY"`` is the commutator x y x^-1 y^-1.  Letters are stored
one per character with no run-length encoding, which keeps subword scans
trivial.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterator, NamedTuple

ALPHABET = "xXyY"
_INVERSE = str.maketrans("xXyY", "XxYy")


class TrivialWord(ValueError):
    pass


class Letter(NamedTuple):
    generator: str  # "x" or "y"
    sign: int  # +1 or -1

    @property
    def char(self) -> str:
        return self.generator if self.sign > 0 else self.generator.upper()

    @classmethod
    def from_char(cls, ch: str) -> Letter:
        return cls(ch.lower(), 1 if ch.islower() else -1)


def parse_word(text: str) -> str:
    """Validate and reduce a word written over x, X, y, Y."""
    text = text.strip()
    bad = set(text) - set(ALPHABET)
    if bad:
        raise ValueError(f"invalid letters {sorted(bad)} in word {text!r}")
    return reduce(text)


def letters(w: str) -> list[Letter]:
    return [Letter.from_char(ch) for ch in w]


def inverse(w: str) -> str:
    return w[::-1].translate(_INVERSE)


def reduce(w: str) -> str:
    out: list[str] = []
    for ch in w:
        if out and out[-1] == ch.swapcase():
            out.pop()
        else:
            out.append(ch)
    return "".join(out)


def multiply(*words: str) -> str:
    return reduce("".join(words))


def is_reduced(w: str) -> bool:
    return all(a != b.swapcase() for a, b in zip(w, w[1:]))


def is_cyclically_reduced(w: str) -> bool:
    return is_reduced(w) and (len(w) < 2 or w[0] != w[-1].swapcase())


def power(w: str, n: int) -> str:
    if n < 0:
        return reduce(inverse(w) * -n)
    return reduce(w * n)


@dataclass(frozen=True)
class CyclicWord:
    """A cyclically reduced word up to rotation.

    ``letters`` keeps the rotation it was built with; equality and hashing
    use the lexicographically least rotation.
    """

    letters: str

    def __post_init__(self):
        if not is_cyclically_reduced(self.letters):
            raise ValueError(f"{self.letters!r} is not cyclically reduced")

    @property
    def canonical(self) -> str:
        w = self.letters
        return min((w[i:] + w[:i] for i in range(len(w))), default="")

    def rotations(self) -> list[str]:
        w = self.letters
        return [w[i:] + w[:i] for i in range(len(w))] or [""]

    def __len__(self) -> int:
        return len(self.letters)

    def __eq__(self, other):
        if not isinstance(other, CyclicWord):
            return NotImplemented
        return self.canonical == other.canonical

    def __hash__(self):
        return hash(self.canonical)

    def __str__(self) -> str:
        return self.letters


def cyclic_reduce(w: str) -> tuple[CyclicWord, str]:
    """Return (u, c) with w = c u c^-1 and u cyclically reduced."""
    w = reduce(w)
    if not w:
        raise TrivialWord("the trivial word has no cyclic reduction")
    k = 0
    while len(w) - 2 * k >= 2 and w[k] == w[len(w) - 1 - k].swapcase():
        k += 1
    return CyclicWord(w[k : len(w) - k]), w[:k]


def root(u: str) -> tuple[str, int]:
    """Primitive root of a cyclically reduced word: u = r^k."""
    n = len(u)
    for d in range(1, n + 1):
        if n % d == 0 and u[:d] * (n // d) == u:
            return u[:d], n // d
    return u, 1


def is_positive(w: str) -> bool:
    return all(ch.islower() for ch in w)


def is_mixed_sign(w: str) -> bool:
    return ("x" in w and "X" in w) or ("y" in w and "Y" in w)


def exponent_sum(w: str) -> tuple[int, int]:
    """Image in the abelianisation Z^2."""
    return (w.count("x") - w.count("X"), w.count("y") - w.count("Y"))


@dataclass(frozen=True)
class Elementary:
    """Letter-wise automorphism: optional swap of x and y, then inversions.

    The eight such maps form a group isomorphic to the dihedral group of
    order 8.
    """

    swap: bool = False
    invert_x: bool = False
    invert_y: bool = False

    def letter_map(self) -> dict[str, str]:
        table = {}
        for ch in ALPHABET:
            gen, up = ch.lower(), ch.isupper()
            if self.swap:
                gen = "y" if gen == "x" else "x"
            if (gen == "x" and self.invert_x) or (gen == "y" and self.invert_y):
                up = not up
            table[ch] = gen.upper() if up else gen
        return table

    def __call__(self, w: str) -> str:
        return apply_elementary(self, w)

    def compose(self, other: Elementary) -> Elementary:
        """self after other."""
        mine, theirs = self.letter_map(), other.letter_map()
        combined = {ch: mine[theirs[ch]] for ch in ALPHABET}
        for e in elementary_automorphisms():
            if e.letter_map() == combined:
                return e
        raise AssertionError("elementary maps are not closed under composition")


def elementary_automorphisms() -> list[Elementary]:
    return [Elementary(s, a, b) for s, a, b in itertools.product((False, True), repeat=3)]


def apply_elementary(e: Elementary, w: str) -> str:
    table = e.letter_map()
    return reduce("".join(table[ch] for ch in w))


def equivalent(w1: str, w2: str) -> bool:
    return any(apply_elementary(e, w1) == w2 for e in elementary_automorphisms())


def orbit(w: str, with_inverse: bool = True) -> set[str]:
    """All words equivalent to w (and to w^-1 when ``with_inverse``)."""
    seeds = [w, inverse(w)] if with_inverse else [w]
    return {apply_elementary(e, s) for s in seeds for e in elementary_automorphisms()}


# Gap-word shapes -----------------------------------------------------------

POSITIVE_SPECIAL = "PositiveSpecial"
COMMUTATOR_SUBWORD = "CommutatorSubword"
OTHER = "Other"

_Y_FRAMED = re.compile(r"y(?:x+y)+")
_X_FRAMED = re.compile(r"x+(?:yx+)+")


def is_commutator_subword(v: str) -> bool:
    if not v:
        return True
    n = len(v) // 4 + 2
    return v in "xyXY" * n


def gap_form_classify(v: str) -> str:
    """Classify a gap word as one of the two positive shapes, a commutator subword, or other.

    The positive shapes are ``y x^d1 y ... y x^dr y`` (r >= 1) and
    ``x^d1 y ... y x^dr`` (r >= 2), all exponents at least one.
    """
    if _Y_FRAMED.fullmatch(v) or _X_FRAMED.fullmatch(v):
        return POSITIVE_SPECIAL
    if is_commutator_subword(v):
        return COMMUTATOR_SUBWORD
    return OTHER


YXYINV_X = "YXYinvX"
YXYINV_YINV = "YXYinvYinv"
YXK_YINV = "YXkYinv"
X2_AND_Y2 = "X2andY2"


def _contains_any(v: str, words: set[str]) -> bool:
    return any(p in v for p in words)


def forbidden_subword_scan(v: str) -> list[str]:
    """Report which forbidden gap-word patterns v contains, up to equivalence.

    ``yxy^-1x``, ``yxy^-1y^-1`` and ``y x^k y^-1`` (k > 1) are matched against
    their full elementary orbit together with inverses; the last one is
    reported as ``"YXkYinv(k)"``.  ``X2andY2`` means v contains a square of
    each generator (any signs).
    """
    found = []
    if _contains_any(v, orbit("yxYx")):
        found.append(YXYINV_X)
    if _contains_any(v, orbit("yxYY")):
        found.append(YXYINV_YINV)
    for k in range(2, max(2, len(v) - 1)):
        if _contains_any(v, orbit("y" + "x" * k + "Y")):
            found.append(f"{YXK_YINV}({k})")
    if _contains_any(v, {"xx", "XX"}) and _contains_any(v, {"yy", "YY"}):
        found.append(X2_AND_Y2)
    return found


# Nielsen maps --------------------------------------------------------------

NIELSEN_MAPS: dict[str, tuple[str, str]] = {
    "identity": ("x", "y"),
    "x_to_xy": ("xy", "y"),
    "x_to_yx": ("yx", "y"),
    "x_to_xY": ("xY", "y"),
    "x_to_Yx": ("Yx", "y"),
    "y_to_yx": ("x", "yx"),
    "y_to_xy": ("x", "xy"),
    "y_to_yX": ("x", "yX"),
    "y_to_Xy": ("x", "Xy"),
}


def substitute(w: str, x_image: str, y_image: str) -> str:
    table = {"x": x_image, "X": inverse(x_image), "y": y_image, "Y": inverse(y_image)}
    return reduce("".join(table[ch] for ch in w))


def nielsen_change_of_basis(w: CyclicWord | str, which: str) -> CyclicWord:
    """Rewrite a cyclic word under one of the catalogued Nielsen maps and cyclically reduce."""
    x_image, y_image = NIELSEN_MAPS[which]
    word = w.letters if isinstance(w, CyclicWord) else w
    image = substitute(word, x_image, y_image)
    if not image:
        return CyclicWord("")
    return cyclic_reduce(image)[0]


# Enumeration ---------------------------------------------------------------

def reduced_words(length: int) -> Iterator[str]:
    """All reduced words of exactly the given length, in shortlex order."""
    if length == 0:
        yield ""
        return
    stack = [(ch,) for ch in reversed(ALPHABET)]
    # depth-first with a fixed letter order gives lexicographic output
    while stack:
        prefix = stack.pop()
        if len(prefix) == length:
            yield "".join(prefix)
            continue
        last = prefix[-1]
        for ch in reversed(ALPHABET):
            if ch != last.swapcase():
                stack.append(prefix + (ch,))


def reduced_words_upto(max_length: int) -> Iterator[str]:
    for n in range(max_length + 1):
        yield from reduced_words(n)


def cyclic_words(length: int) -> list[CyclicWord]:
    """Conjugacy classes of cyclically reduced words of the given length (one per class)."""
    seen: dict[str, CyclicWord] = {}
    for w in reduced_words(length):
        if is_cyclically_reduced(w):
            c = CyclicWord(w)
            seen.setdefault(c.canonical, CyclicWord(c.canonical))
    return list(seen.values())
