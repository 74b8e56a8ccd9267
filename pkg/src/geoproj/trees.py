"""Axes of free-group elements in the 4-valent tree of F(x, y).

Vertices of the tree are reduced words; v is joined to v s for each letter
s.  The axis of a nontrivial element is computed as an explicit vertex path
inside a ball around the identity, and overlaps between two axes are found
by intersecting those paths.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

from .words import CyclicWord, TrivialWord, cyclic_reduce, inverse, multiply, reduce, root


class SameAxis(ValueError):
    pass


class TruncatedOverlap(RuntimeError):
    pass


def _step(v: str, ch: str) -> str:
    if v and v[-1] == ch.swapcase():
        return v[:-1]
    return v + ch


@dataclass(frozen=True)
class AxisPath:
    """A window of an axis, listed in the translation direction.

    ``vertices[k]`` sits at position ``first + k``; the letter read from
    position n to n + 1 is ``word[n % len(word)]``.
    """

    element: str
    word: str  # cyclically reduced core read along the axis
    conjugator: str
    first: int
    vertices: tuple[str, ...]

    @property
    def translation_length(self) -> int:
        return len(self.word)

    def letter(self, n: int) -> str:
        return self.word[n % len(self.word)]

    def read(self, start: int, count: int) -> str:
        return "".join(self.letter(n) for n in range(start, start + count))

    def index(self) -> dict[str, int]:
        return {v: self.first + k for k, v in enumerate(self.vertices)}


def axis_path(alpha: str, radius: int) -> AxisPath:
    """Vertices of the axis of alpha whose word length is at most ``radius``."""
    alpha = reduce(alpha)
    if not alpha:
        raise TrivialWord("the identity has no axis")
    core, c = cyclic_reduce(alpha)
    u = core.letters
    L = len(u)
    span = radius + len(c)
    forward = [c]
    v = c
    for n in range(span):
        v = _step(v, u[n % L])
        forward.append(v)
    backward = []
    v = c
    for n in range(0, -span, -1):
        v = _step(v, u[(n - 1) % L].swapcase())
        backward.append(v)
    ordered = backward[::-1] + forward
    positions = range(-span, span + 1)
    kept = [(n, v) for n, v in zip(positions, ordered) if len(v) <= radius]
    if not kept:
        return AxisPath(alpha, u, c, 0, ())
    return AxisPath(alpha, u, c, kept[0][0], tuple(v for _, v in kept))


def root_element(alpha: str) -> str:
    """Generator of the maximal cyclic subgroup containing alpha."""
    core, c = cyclic_reduce(alpha)
    r, _ = root(core.letters)
    return multiply(c, r, inverse(c))


def same_axis(alpha: str, beta: str) -> bool:
    ra, rb = root_element(alpha), root_element(beta)
    return ra == rb or ra == inverse(rb)


def axis_vertices(alpha: str, radius: int) -> set[str]:
    return set(axis_path(alpha, radius).vertices)


@dataclass(frozen=True)
class AxisOverlap:
    length: int
    orientation_agrees: bool | None  # None when there is no shared edge
    overlap_word: str
    gap_word_l: str
    gap_word_m: str
    shared_vertices: int

    @property
    def meets(self) -> bool:
        return self.shared_vertices > 0


def axes_overlap(alpha: str, beta: str, radius: int | None = None) -> AxisOverlap:
    """Intersection of the axes A of alpha and B of beta.

    Orientations follow the translation directions.  The gap word of l is
    read along A right after the overlap, the gap word of m along B right
    after the overlap in B's own direction.
    """
    alpha, beta = reduce(alpha), reduce(beta)
    if same_axis(alpha, beta):
        raise SameAxis(f"axes of {alpha} and {beta} coincide")
    if radius is None:
        radius = 2 * (len(alpha) + len(beta)) + 2
    while True:
        a_path = axis_path(alpha, radius)
        b_path = axis_path(beta, radius)
        a_index = a_path.index()
        shared = sorted(
            (a_index[v], n) for v, n in b_path.index().items() if v in a_index
        )
        if not _touches_edge(shared, a_path, b_path):
            break
        radius *= 2
    La, Lb = a_path.translation_length, b_path.translation_length
    if not shared:
        return AxisOverlap(0, None, "", a_path.word, b_path.word, 0)
    length = len(shared) - 1
    a0, a1 = shared[0][0], shared[-1][0]
    b_positions = [n for _, n in shared]
    b0, b1 = min(b_positions), max(b_positions)
    agrees = None if length == 0 else shared[1][1] > shared[0][1]
    return AxisOverlap(
        length=length,
        orientation_agrees=agrees,
        overlap_word=a_path.read(a0, length),
        gap_word_l=a_path.read(a1, max(La - length, 0)),
        gap_word_m=b_path.read(b1, max(Lb - length, 0)),
        shared_vertices=len(shared),
    )


def _touches_edge(shared, a_path: AxisPath, b_path: AxisPath) -> bool:
    if not shared:
        return False
    a_lo, a_hi = a_path.first, a_path.first + len(a_path.vertices) - 1
    b_lo, b_hi = b_path.first, b_path.first + len(b_path.vertices) - 1
    a_ends = {shared[0][0], shared[-1][0]}
    b_ends = {n for _, n in shared}
    return bool(a_ends & {a_lo, a_hi}) or bool({min(b_ends), max(b_ends)} & {b_lo, b_hi})


def axis_overlap(alpha: str, g: str, radius: int | None = None) -> AxisOverlap:
    """Overlap of the axis A of alpha with the axis g A of g alpha g^-1."""
    alpha, g = reduce(alpha), reduce(g)
    if not alpha:
        raise TrivialWord("the identity has no axis")
    conj = multiply(g, alpha, inverse(g))
    if conj == alpha:
        raise SameAxis(f"{g} commutes with {alpha}")
    if radius is None:
        radius = 2 * len(g) + 2 * len(alpha) + 2
    return axes_overlap(alpha, conj, radius)


@dataclass(frozen=True)
class LemmaReport:
    alpha: str
    g: str
    L_alpha: int
    overlap_len: int
    directions_agree: bool | None
    bound: str  # "part1" or "part2"
    rhs: float
    holds: bool
    stated_form_holds: bool

    def to_dict(self) -> dict:
        d = asdict(self)
        return {k: d[k] for k in ("alpha", "g", "L_alpha", "overlap_len", "directions_agree", "bound", "holds")}


def check_lemma_bounds(alpha: str, g: str) -> LemmaReport:
    """Check the overlap bound for A and g A.

    With disagreeing directions on a shared edge the bound is
    2 * overlap <= L - 2 (stated form: overlap < (L - 1) / 2); otherwise
    overlap <= L - 2 (stated form: overlap < L - 1).
    """
    alpha, g = reduce(alpha), reduce(g)
    L = len(cyclic_reduce(alpha)[0])
    if L < 2:
        raise ValueError(f"need L(alpha) >= 2, got {L} for {alpha!r}")
    ov = axis_overlap(alpha, g)
    n = ov.length
    if n >= 1 and ov.orientation_agrees is False:
        return LemmaReport(alpha, g, L, n, False, "part1", (L - 2) / 2, 2 * n <= L - 2, n < (L - 1) / 2)
    return LemmaReport(alpha, g, L, n, ov.orientation_agrees, "part2", L - 2, n <= L - 2, n < L - 1)


def aligned_conjugator(w1: str, i: int, w2: str, j: int) -> str:
    """Element h with h B = A aligned so that position j of B's unwrapping meets position i of A's.

    A and B are the axes of the cyclically reduced words w1 and w2 through the
    identity vertex.
    """
    return multiply(_prefix(w1, i), inverse(_prefix(w2, j)))


def _prefix(w: str, n: int) -> str:
    L = len(w)
    if n >= 0:
        return reduce("".join(w[k % L] for k in range(n)))
    return reduce("".join(w[k % L].swapcase() for k in range(-1, n - 1, -1)))


def sweep_lemma(max_alpha: int = 6, max_g: int = 4, min_alpha: int = 2):
    """Run check_lemma_bounds over all cyclically reduced alpha and reduced g.

    Yields LemmaReport for every pair with distinct axes.
    """
    from .words import is_cyclically_reduced, reduced_words, reduced_words_upto

    gs = list(reduced_words_upto(max_g))
    for L in range(min_alpha, max_alpha + 1):
        for alpha in reduced_words(L):
            if not is_cyclically_reduced(alpha):
                continue
            for g in gs:
                try:
                    yield check_lemma_bounds(alpha, g)
                except SameAxis:
                    continue


__all__ = [
    "AxisOverlap",
    "AxisPath",
    "CyclicWord",
    "LemmaReport",
    "SameAxis",
    "aligned_conjugator",
    "axes_overlap",
    "axis_overlap",
    "axis_path",
    "axis_vertices",
    "check_lemma_bounds",
    "root_element",
    "same_axis",
    "sweep_lemma",
]
