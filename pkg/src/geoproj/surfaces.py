"""The two cusped surfaces with free fundamental group of rank two.

Both representations have integer matrices, so words are evaluated exactly
in floating point until entries pass ``MAX_ENTRY``.
"""

from __future__ import annotations

import math
from fractions import Fraction
from dataclasses import dataclass
from enum import Enum

from .hyperbolic import (
    EPS,
    Geodesic,
    Isometry,
    Kind,
    Relation,
    SharedEndpoint,
    axis,
    classify,
    coordinate,
    crossing_angle,
    crossing_test,
    intersection_point,
    points_equal,
    translation_length,
)
from .words import CyclicWord, TrivialWord, cyclic_reduce, inverse, reduce, reduced_words_upto

# products of entries must stay below 2**53 for the determinant to survive
MAX_ENTRY = 1e7


class ConditioningError(ArithmeticError):
    pass


class PeripheralWord(ValueError):
    pass


class SurfaceKind(str, Enum):
    SPHERE = "ThreePuncturedSphere"
    TORUS = "OncePuncturedTorus"


@dataclass(frozen=True)
class SurfaceRep:
    kind: SurfaceKind
    gen_x: Isometry
    gen_y: Isometry

    def __post_init__(self):
        x, y = self.gen_x, self.gen_y
        if self.kind is SurfaceKind.SPHERE:
            traces = [x.trace, y.trace, (x @ y).trace]
            if not all(math.isclose(abs(t), 2.0, abs_tol=1e-12) for t in traces):
                raise ValueError(f"cusp loops must be parabolic, traces {traces}")
        else:
            t = (x @ y @ x.inverse() @ y.inverse()).trace
            if not math.isclose(t, -2.0, abs_tol=1e-12):
                raise ValueError(f"commutator trace must be -2, got {t}")

    @property
    def name(self) -> str:
        return "sphere" if self.kind is SurfaceKind.SPHERE else "torus"

    def generator(self, ch: str) -> Isometry:
        g = self.gen_x if ch.lower() == "x" else self.gen_y
        return g.inverse() if ch.isupper() else g


def rep_three_punctured_sphere() -> SurfaceRep:
    return SurfaceRep(
        SurfaceKind.SPHERE,
        Isometry(1.0, 2.0, 0.0, 1.0),
        Isometry(1.0, 0.0, -2.0, 1.0),
    )


def rep_once_punctured_torus() -> SurfaceRep:
    return SurfaceRep(
        SurfaceKind.TORUS,
        Isometry(1.0, 1.0, 1.0, 2.0),
        Isometry(1.0, -1.0, -1.0, 2.0),
    )


def get_rep(name: str) -> SurfaceRep:
    """Look up a representation by its short name, "sphere" or "torus"."""
    if name == "sphere":
        return rep_three_punctured_sphere()
    if name == "torus":
        return rep_once_punctured_torus()
    raise ValueError(f"unknown surface {name!r}")


def _letters(w) -> str:
    return w.letters if isinstance(w, CyclicWord) else w


def word_to_isometry(rep: SurfaceRep, w) -> Isometry:
    m = Isometry.identity()
    for ch in _letters(w):
        m = m @ rep.generator(ch)
        if m.max_entry() > MAX_ENTRY:
            raise ConditioningError(f"matrix entries of {_letters(w)!r} exceed {MAX_ENTRY:g}")
    return m


def word_to_int_matrix(rep: SurfaceRep, w) -> tuple[int, int, int, int]:
    """Exact product of the integer generator matrices (no size limit)."""
    gens = {}
    for ch in "xXyY":
        m = rep.generator(ch)
        gens[ch] = tuple(int(round(v)) for v in (m.a, m.b, m.c, m.d))
    a, b, c, d = 1, 0, 0, 1
    for ch in _letters(w):
        e, f, g, h = gens[ch]
        a, b, c, d = a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h
    return a, b, c, d


def exact_projection_length(A, B) -> tuple[Relation, float]:
    """Relation and projection length between the axes of two integer matrices.

    With traceless parts normalised to unit vectors, their inner product
    kappa is cos(angle) for crossing axes and +-cosh(distance) for disjoint
    ones.  1 - kappa^2 is formed exactly from integer traces, which keeps
    the length accurate when the axes nearly share an endpoint.
    """
    tA, tB = A[0] + A[3], B[0] + B[3]
    AB = (A[0] * B[0] + A[1] * B[2], A[2] * B[1] + A[3] * B[3])
    tAB = AB[0] + AB[1]
    den = (tA * tA - 4) * (tB * tB - 4)
    if den <= 0:
        raise ValueError("both matrices must be hyperbolic")
    num = (2 * tAB - tA * tB) ** 2
    k = math.sqrt(num / den)
    if num < den:
        one_minus = Fraction(den - num, den)
        return Relation.CROSSING, 2.0 * math.log1p(k) - math.log(one_minus)
    if num == den:
        return Relation.SHARED_ENDPOINT, math.inf
    s = math.sqrt(Fraction(num - den, den))
    return Relation.DISJOINT, 2.0 * math.log((k + s + 1.0) / (s + s * s / (k + 1.0)))


def geodesic_length(rep: SurfaceRep, w) -> float:
    """Length of the closed geodesic in the free homotopy class of w."""
    word = reduce(_letters(w))
    if not word:
        raise TrivialWord("the trivial word has no geodesic")
    m = word_to_isometry(rep, word)
    kind = classify(m)
    if kind is not Kind.HYPERBOLIC:
        raise PeripheralWord(f"{word!r} is {kind.value} in the {rep.name} representation")
    return translation_length(m)


def is_peripheral(rep: SurfaceRep, w) -> bool:
    return classify(word_to_isometry(rep, _letters(w))) is not Kind.HYPERBOLIC


@dataclass(frozen=True)
class Lift:
    g: str
    line: Geodesic
    rel_to_base: Relation

    def to_dict(self, angle: float | None = None) -> dict:
        d = {"g": self.g, "endpoints": [self.line.p, self.line.q], "relation": self.rel_to_base.value}
        if angle is not None:
            d["angle"] = angle
        return d


def base_axis(rep: SurfaceRep, gamma) -> Geodesic:
    word = _letters(gamma)
    geodesic_length(rep, word)  # raises on peripheral words
    return axis(word_to_isometry(rep, word))


def _chart_pair(base: Geodesic, line: Geodesic) -> tuple[float, float]:
    a, b = base.chart(line.p), base.chart(line.q)
    return (a, b) if a <= b else (b, a)


def enumerate_lifts(rep: SurfaceRep, gamma, radius: int, eps: float = EPS) -> list[Lift]:
    """Translates g . axis(gamma) for reduced |g| <= radius, other than the axis itself.

    Duplicates are removed by comparing endpoints in the chart where the
    base axis is (0, inf); the first g in shortlex order is kept.
    """
    base = base_axis(rep, gamma)
    return translates(rep, gamma, radius, base, eps)


def translates(rep: SurfaceRep, word, radius: int, base: Geodesic, eps: float = EPS) -> list[Lift]:
    """Distinct lines g . axis(word), |g| <= radius, tagged relative to ``base``.

    Lines equal to ``base`` are dropped.  A line sharing exactly one endpoint
    with ``base`` cannot occur for a discrete faithful representation, so
    it raises SharedEndpoint.
    """
    word = _letters(word)
    own = axis(word_to_isometry(rep, word))
    seen: list[tuple[float, float]] = []
    out: list[Lift] = []
    for g in reduced_words_upto(radius):
        line = own.moved(word_to_isometry(rep, g)) if g else own
        if line.same_line(base, eps):
            continue
        key = _chart_pair(base, line)
        if any(points_equal(key[0], k[0], eps) and points_equal(key[1], k[1], eps) for k in seen):
            continue
        rel = crossing_test(base, line, eps)
        if rel is Relation.SHARED_ENDPOINT:
            raise SharedEndpoint(f"translate of the axis of {word!r} by {g!r} shares an endpoint with {base}")
        seen.append(key)
        out.append(Lift(g, line, rel))
    return out


@dataclass(frozen=True)
class SelfIntersection:
    g: str
    angle: float
    point: complex
    coords: tuple[float, float]  # positions of the double point along the closed geodesic

    def to_dict(self) -> dict:
        return {"g": self.g, "angle": self.angle, "coords": list(self.coords)}


def _circle_close(s: float, t: float, period: float, tol: float) -> bool:
    d = abs(s - t) % period
    return min(d, period - d) < tol


def self_intersections(rep: SurfaceRep, gamma, radius: int, eps: float = EPS) -> list[SelfIntersection]:
    """Double points of the closed geodesic, one per point, from crossing lifts.

    A crossing lift m = g . l meets the base axis l at P; the double point is
    recorded by the unordered pair of arc-length positions of P and g^-1 P
    along l, taken modulo l(gamma).
    """
    word = _letters(gamma)
    base = base_axis(rep, word)
    period = geodesic_length(rep, word)
    found: list[SelfIntersection] = []
    for lift in enumerate_lifts(rep, word, radius, eps):
        if lift.rel_to_base is not Relation.CROSSING:
            continue
        P = intersection_point(base, lift.line, eps)
        back = word_to_isometry(rep, inverse(lift.g))
        s = coordinate(base, P) % period
        t = coordinate(base, back(P)) % period
        pair = (min(s, t), max(s, t))
        tol = 1e-7 * max(1.0, period)
        if any(
            (_circle_close(pair[0], f.coords[0], period, tol) and _circle_close(pair[1], f.coords[1], period, tol))
            or (_circle_close(pair[0], f.coords[1], period, tol) and _circle_close(pair[1], f.coords[0], period, tol))
            for f in found
        ):
            continue
        found.append(SelfIntersection(lift.g, crossing_angle(base, lift.line, eps), P, pair))
    return found


def self_intersection_angles(rep: SurfaceRep, gamma, radius: int, eps: float = EPS) -> list[tuple[str, float]]:
    """Angle between the forward tangents at each self-intersection."""
    return [(f.g, f.angle) for f in self_intersections(rep, gamma, radius, eps)]


def non_peripheral_classes(rep: SurfaceRep, max_length: int, min_length: int = 1) -> list[CyclicWord]:
    """One cyclic word per conjugacy class that is hyperbolic under rep."""
    from .words import cyclic_words

    out = []
    for n in range(min_length, max_length + 1):
        for c in cyclic_words(n):
            if not is_peripheral(rep, c):
                out.append(c)
    return out


__all__ = [
    "ConditioningError",
    "Lift",
    "MAX_ENTRY",
    "PeripheralWord",
    "SelfIntersection",
    "SurfaceKind",
    "SurfaceRep",
    "base_axis",
    "cyclic_reduce",
    "enumerate_lifts",
    "exact_projection_length",
    "geodesic_length",
    "get_rep",
    "is_peripheral",
    "non_peripheral_classes",
    "rep_once_punctured_torus",
    "rep_three_punctured_sphere",
    "self_intersection_angles",
    "self_intersections",
    "translates",
    "word_to_int_matrix",
    "word_to_isometry",
]
