"""Numerical checks of the projection bounds and their corollaries.

Every check returns a list of BoundReport rows.  A row asserts
``lhs < rhs``; ``margin = rhs - lhs`` and the row holds iff the margin is
positive.  Margins within ``SUSPICIOUS`` of zero are flagged for review but
still decided by sign.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

from scipy.optimize import bisect

from .hyperbolic import (
    EPS,
    Relation,
    angle_of_parallelism,
    bisectors,
    crossing_test,
    intersection_point,
    point_distance,
    projection_interval,
    side,
    translation_length,
)
from .surfaces import (
    SurfaceRep,
    base_axis,
    enumerate_lifts,
    geodesic_length,
    get_rep,
    non_peripheral_classes,
    rep_three_punctured_sphere,
    exact_projection_length,
    self_intersections,
    translates,
    word_to_int_matrix,
    word_to_isometry,
)
from .trees import aligned_conjugator, axes_overlap, root_element
from .words import CyclicWord, cyclic_reduce, inverse, multiply, power, reduce

SUSPICIOUS = 1e-12

SCOPE_NOTE = (
    "Checks run on the three-punctured sphere and once-punctured torus "
    "representations only; other hyperbolic surfaces are not sampled."
)


class NoSelfIntersections(ValueError):
    pass


class NoPolygonsFound(ValueError):
    pass


@dataclass(frozen=True)
class BoundReport:
    claim: str
    instance: str
    lhs: float
    rhs: float
    margin: float = field(init=False)
    holds: bool = field(init=False)
    asserted: bool = True  # False for informational table rows

    def __post_init__(self):
        object.__setattr__(self, "margin", self.rhs - self.lhs)
        object.__setattr__(self, "holds", self.margin > 0)

    @property
    def suspicious(self) -> bool:
        return abs(self.margin) < SUSPICIOUS

    def row(self) -> dict:
        return {
            "claim": self.claim,
            "instance": self.instance,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "margin": self.margin,
            "holds": self.holds,
        }


def _name(w) -> str:
    return w.letters if isinstance(w, CyclicWord) else w


def _inst(rep: SurfaceRep, w, **extra) -> str:
    parts = [f"{rep.name}:{_name(w)}"] + [f"{k}={v}" for k, v in extra.items()]
    return " ".join(parts)


def all_hold(reports) -> bool:
    return all(r.holds for r in reports if r.asserted)


def min_margin(reports) -> float:
    margins = [r.margin for r in reports if r.asserted]
    return min(margins) if margins else math.inf


# Single closed geodesic ----------------------------------------------------

def check_theorem1(rep: SurfaceRep, gamma, radius: int = 4, eps: float = EPS) -> list[BoundReport]:
    """Projection of every other lift onto the base axis is shorter than l(gamma).

    Oppositely oriented lifts (disjoint, or crossing with a reversed
    projection) are also checked against l(gamma)/2.
    """
    l = geodesic_length(rep, gamma)
    base = base_axis(rep, gamma)
    out = []
    for lift in enumerate_lifts(rep, gamma, radius, eps):
        proj = projection_interval(lift.line, base, eps)
        inst = _inst(rep, gamma, g=lift.g, rel=lift.rel_to_base.value)
        out.append(BoundReport("theorem1", inst, proj.length, l))
        if not proj.orientation_agrees:
            claim = "half_disjoint_opposite" if lift.rel_to_base is Relation.DISJOINT else "half_crossing_opposite"
            out.append(BoundReport(claim, inst, proj.length, l / 2))
    return out


def check_bisector_lemmas(rep: SurfaceRep, gamma, radius: int = 4, eps: float = EPS, slack: float = 1e-9) -> list[BoundReport]:
    """Bisector projections: at most l for disjoint lifts, sum at most 2l when crossing.

    These bounds are not strict, so ``slack`` is added to the right side.
    """
    l = geodesic_length(rep, gamma)
    base = base_axis(rep, gamma)
    out = []
    for lift in enumerate_lifts(rep, gamma, radius, eps):
        inst = _inst(rep, gamma, g=lift.g, rel=lift.rel_to_base.value)
        lengths = [projection_interval(b, base, eps).length for b in bisectors(base, lift.line, eps)]
        if lift.rel_to_base is Relation.DISJOINT:
            out.append(BoundReport("bisector_disjoint", inst, lengths[0], l + slack))
        else:
            out.append(BoundReport("bisector_crossing_sum", inst, sum(lengths), 2 * l + slack))
    return out


def check_angle_corollary(rep: SurfaceRep, gamma, radius: int = 4, eps: float = EPS) -> list[BoundReport]:
    """Self-intersection angles lie strictly between Pi(l/2) and pi - Pi(l/4)."""
    l = geodesic_length(rep, gamma)
    points = self_intersections(rep, gamma, radius, eps)
    if not points:
        raise NoSelfIntersections(f"{_name(gamma)!r} has no self-intersections within radius {radius}")
    out = []
    lo, hi = angle_of_parallelism(l / 2), math.pi - angle_of_parallelism(l / 4)
    for p in points:
        inst = _inst(rep, gamma, g=p.g)
        out.append(BoundReport("angle_lower", inst, lo, p.angle))
        out.append(BoundReport("angle_upper", inst, p.angle, hi))
    return out


@dataclass(frozen=True)
class Polygon:
    lines: tuple  # Lift-like objects with .g and .line, in cyclic order
    vertices: tuple[complex, ...]  # vertices[i] = lines[i] ∩ lines[i + 1]

    @property
    def n(self) -> int:
        return len(self.lines)

    def side_length(self, i: int) -> float:
        return point_distance(self.vertices[i - 1], self.vertices[i])


def _convex_polygon(lines, eps: float = EPS) -> Polygon | None:
    n = len(lines)
    verts = []
    for i in range(n):
        a, b = lines[i].line, lines[(i + 1) % n].line
        if crossing_test(a, b, eps) is not Relation.CROSSING:
            return None
        verts.append(intersection_point(a, b, eps))
    for i, j in itertools.combinations(range(n), 2):
        if point_distance(verts[i], verts[j]) < 1e-9:
            return None  # concurrent lines
    for i in range(n):
        others = [verts[k] for k in range(n) if k not in (i, (i - 1) % n)]
        signs = {side(lines[i].line, z) for z in others}
        if len(signs) != 1 or 0 in signs:
            return None
    return Polygon(tuple(lines), tuple(verts))


class _BaseLine:
    g = ""

    def __init__(self, line):
        self.line = line


def find_polygons(rep: SurfaceRep, gamma, radius: int = 4, n_max: int = 4, eps: float = EPS) -> list[Polygon]:
    """Convex n-gons (3 <= n <= n_max) with sides on lifts, one side on the base axis.

    Any polygon of lifts can be moved by a deck transformation so that one
    side lies on the base axis, so this loses nothing up to the radius cut.
    """
    base = _BaseLine(base_axis(rep, gamma))
    lifts = enumerate_lifts(rep, gamma, radius, eps)
    crossing = [m for m in lifts if m.rel_to_base is Relation.CROSSING]
    found = []
    for n in range(3, n_max + 1):
        for a, b in itertools.combinations(crossing, 2):
            # base, a, middle..., b in cyclic order
            for middle in itertools.permutations(lifts, n - 3):
                if any(m is a or m is b for m in middle):
                    continue
                poly = _convex_polygon((base, a, *middle, b), eps)
                if poly is not None:
                    found.append(poly)
    return _dedup_polygons(found)


def _dedup_polygons(polys: list[Polygon]) -> list[Polygon]:
    out: list[Polygon] = []
    keys: list[list[complex]] = []
    for p in polys:
        vs = list(p.vertices)
        if any(
            len(k) == len(vs) and all(min(point_distance(v, w) for w in k) < 1e-9 for v in vs) for k in keys
        ):
            continue
        keys.append(vs)
        out.append(p)
    return out


def check_polygon_corollary(rep: SurfaceRep, gamma, radius: int = 4, n_max: int = 4, eps: float = EPS) -> list[BoundReport]:
    """Sides of an n-gon of lifts are shorter than (n - 2) l(gamma).

    Each side is also compared with the projection bound it comes from: half
    the projections of the two neighbouring lines plus the full projections
    of the others.
    """
    l = geodesic_length(rep, gamma)
    polys = find_polygons(rep, gamma, radius, n_max, eps)
    if not polys:
        raise NoPolygonsFound(f"no polygons of lifts of {_name(gamma)!r} within radius {radius}")
    out = []
    for poly in polys:
        n = poly.n
        gs = ",".join(m.g or "1" for m in poly.lines)
        for i in range(n):
            host = poly.lines[i].line
            s = point_distance(poly.vertices[i - 1], poly.vertices[i])
            inst = _inst(rep, gamma, n=n, lines=gs, side=i)
            out.append(BoundReport("polygon_side", inst, s, (n - 2) * l))
            prev_i, next_i = (i - 1) % n, (i + 1) % n
            bound = 0.0
            for k in range(n):
                if k == i:
                    continue
                length = projection_interval(poly.lines[k].line, host, eps).length
                bound += length / 2 if k in (prev_i, next_i) else length
            out.append(BoundReport("polygon_projection_sum", inst, s, bound))
    return out


# Two closed geodesics ------------------------------------------------------

def same_class_up_to_inverse(u: str, v: str) -> bool:
    cu, _ = cyclic_reduce(u)
    cv, _ = cyclic_reduce(v)
    return cu == cv or cu == cyclic_reduce(inverse(v))[0]


def check_theorem2(rep: SurfaceRep, gamma, delta, radius: int = 3, eps: float = EPS) -> list[BoundReport]:
    """Projections between lifts of two distinct closed geodesics are shorter than l(gamma) + l(delta).

    Crossing pairs are also checked for the bisector bound and for the
    length drop of the cut-and-paste curve.
    """
    u, v = reduce(_name(gamma)), reduce(_name(delta))
    if same_class_up_to_inverse(u, v):
        raise ValueError("gamma and delta must be distinct classes; use check_theorem1")
    lg, ld = geodesic_length(rep, u), geodesic_length(rep, v)
    total = lg + ld
    base = base_axis(rep, u)
    a = root_element(u)
    a_len = translation_length(word_to_isometry(rep, a))
    out = []
    for m in translates(rep, v, radius, base, eps):
        inst = _inst(rep, u, delta=v, g=m.g or "1", rel=m.rel_to_base.value)
        out.append(BoundReport("theorem2", inst, projection_interval(m.line, base, eps).length, total))
        out.append(BoundReport("theorem2", inst + " reverse", projection_interval(base, m.line, eps).length, total))
        if m.rel_to_base is not Relation.CROSSING:
            continue
        for k, bis in enumerate(bisectors(base, m.line, eps)):
            out.append(
                BoundReport("theorem2_bisector", f"{inst} bisector={k}", projection_interval(bis, m.line, eps).length, total)
            )
        b = multiply(m.g, root_element(v), inverse(m.g))
        ab = word_to_isometry(rep, multiply(a, b))
        b_len = translation_length(word_to_isometry(rep, b))
        out.append(BoundReport("cut_and_paste", inst, translation_length(ab), a_len + b_len))
    return out


# Corpus --------------------------------------------------------------------

def default_corpus(max_length: int = 6, reps: tuple[str, ...] = ("sphere", "torus")):
    """(rep, class) pairs for every non-peripheral cyclic word up to max_length."""
    out = []
    for name in reps:
        rep = get_rep(name)
        out.extend((rep, c) for c in non_peripheral_classes(rep, max_length))
    return out


def is_primitive_class(c: CyclicWord) -> bool:
    from .words import root

    return root(c.letters)[1] == 1


def theorem2_corpus(max_length: int = 4, reps: tuple[str, ...] = ("sphere", "torus")):
    """Pairs of distinct primitive classes, up to inverse and order, per rep."""
    out = []
    for name in reps:
        rep = get_rep(name)
        classes = []
        for c in non_peripheral_classes(rep, max_length):
            if not is_primitive_class(c):
                continue
            if any(same_class_up_to_inverse(c.letters, d.letters) for d in classes):
                continue
            classes.append(c)
        out.extend((rep, c, d) for c, d in itertools.combinations(classes, 2))
    return out


# Sharpness -----------------------------------------------------------------

SHARPNESS_KINDS = ("crossing", "disjoint", "two")


def sharpness_words(kind: str, n: int) -> tuple[str, str, str]:
    """(gamma, delta, overlap) for the n-th member of a sharpness family.

    The families are written in the basis x, Y of the sphere
    representation, where xY is hyperbolic.  delta equals gamma for the
    one-geodesic families.
    """
    xY = "xY"
    if kind == "crossing":
        g = power(xY, n) + "x"
        return g, g, power(xY, n - 1) + "x"
    if kind == "disjoint":
        g = "x" + power(xY, n) + "Y"
        return g, g, power(xY, n - 1)
    if kind == "two":
        return power(xY, n) + "x", power(xY, n + 2) + "x", power(xY, n) + "x" + power(xY, n)
    raise ValueError(f"unknown family {kind!r}")


def sharpness_floor(kind: str, n: int) -> float:
    if kind == "crossing":
        return (2 * n - 2) / (2 * n + 1)
    if kind == "disjoint":
        return (2 * n - 3) / (2 * n + 2)
    if kind == "two":
        return (4 * n + 1) / (4 * n + 6)
    raise ValueError(f"unknown family {kind!r}")


def _occurrences(w: str, sub: str) -> list[int]:
    unwrapped = w * (len(sub) // len(w) + 2)
    return [i for i in range(len(w)) if unwrapped.startswith(sub, i)]


def sharpness_pair(kind: str, n: int) -> tuple[str, str, str, int]:
    """Conjugator h whose translate of the delta axis overlaps the gamma axis in the family's word.

    Returns (gamma, delta, h, overlap length in the tree).
    """
    gamma, delta, sub = sharpness_words(kind, n)
    for i in _occurrences(gamma, sub):
        for j in _occurrences(delta, sub):
            if gamma == delta and i == j:
                continue
            h = aligned_conjugator(gamma, i, delta, j)
            ov = axes_overlap(gamma, multiply(h, delta, inverse(h)))
            if ov.length >= len(sub):
                return gamma, delta, h, ov.length
    raise LookupError(f"no alignment realising {sub!r} for {kind} n={n}")


@dataclass(frozen=True)
class SharpnessRow:
    kind: str
    n: int
    gamma: str
    delta: str
    g: str
    overlap: int
    projection: float
    denominator: float
    ratio: float
    floor: float


def sharpness_scan(kind: str, n_max: int = 12, n_min: int = 2) -> list[SharpnessRow]:
    """Projection ratios along a sharpness family.

    Lengths come from exact integer traces, so no conditioning cap applies;
    the floating-point endpoint route loses the lift within a few steps
    because its endpoints converge to those of the axis of xY.
    """
    rep = rep_three_punctured_sphere()
    rows = []
    for n in range(n_min, n_max + 1):
        gamma, delta, h, overlap = sharpness_pair(kind, n)
        A = word_to_int_matrix(rep, gamma)
        B = word_to_int_matrix(rep, multiply(h, delta, inverse(h)))
        _, proj = exact_projection_length(A, B)
        denom = _exact_length(A)
        if kind == "two":
            denom += _exact_length(word_to_int_matrix(rep, delta))
        rows.append(SharpnessRow(kind, n, gamma, delta, h, overlap, proj, denom, proj / denom, sharpness_floor(kind, n)))
    return rows


def _exact_length(A) -> float:
    t = abs(A[0] + A[3])
    # 2 arccosh(t/2) = 2 log((t + sqrt(t^2 - 4)) / 2)
    return 2.0 * math.log((t + math.sqrt(t * t - 4)) / 2.0)


def sharpness_reports(rows: list[SharpnessRow]) -> list[BoundReport]:
    out = []
    for r in rows:
        inst = f"{r.kind} n={r.n} g={r.g}"
        out.append(BoundReport("sharpness_floor", inst, r.floor, r.ratio))
        out.append(BoundReport("sharpness_below_one", inst, r.ratio, 1.0))
    return out


# Comparison with the trace bound -----------------------------------------

def gilman_bound(L: float) -> float:
    """Lower bound for sin(phi) from sin(phi) sinh^2(L/2) > 1."""
    return 1.0 / math.sinh(L / 2) ** 2


def projection_bound(L: float) -> float:
    """Lower bound for sin(phi) from the projection bound: sech(L/2)."""
    return 1.0 / math.cosh(L / 2)


def gilman_crossover(lo: float = 1.0, hi: float = 4.0, xtol: float = 1e-14) -> float:
    return bisect(lambda L: gilman_bound(L) - projection_bound(L), lo, hi, xtol=xtol)


GILMAN_EXACT = 2.0 * math.acosh((1.0 + math.sqrt(5.0)) / 2.0)


def gilman_compare(L_grid) -> tuple[list[tuple[float, float, float, float]], float]:
    """Rows (L, g_G, g_P, g_P / g_G) and the crossover length."""
    rows = [(L, gilman_bound(L), projection_bound(L), projection_bound(L) / gilman_bound(L)) for L in L_grid]
    return rows, gilman_crossover()


def gilman_reports(L_grid) -> list[BoundReport]:
    rows, root = gilman_compare(L_grid)
    out = [BoundReport("gilman_table", f"L={L:g}", gG, gP, asserted=False) for L, gG, gP, _ in rows]
    out.append(BoundReport("gilman_crossover_low", "crossover", 2.0, root))
    out.append(BoundReport("gilman_crossover_high", "crossover", root, 2.3))
    out.append(BoundReport("gilman_crossover_exact", "crossover", abs(root - GILMAN_EXACT), 1e-9))
    out.append(BoundReport("gilman_ratio_at_10", "L=10", 10.0, projection_bound(10.0) / gilman_bound(10.0)))
    return out


# Gap function --------------------------------------------------------------

QUADRILATERAL_STATED = 3.72488
QUADRILATERAL_COMPUTED = 2.0 * math.acosh(3.0)


def gap_ratio(l: float, c: float) -> float:
    """Pi((l - c) / 2) / Pi(l / 2) written with arctangents."""
    return math.atan(math.exp(-l / 2 + c / 2)) / math.atan(math.exp(-l / 2))


def gap_function_scan(c: float, l_grid) -> list[tuple[float, float]]:
    if c <= 0:
        raise ValueError("c must be positive")
    return [(l, gap_ratio(l, c)) for l in l_grid]


def gap_reports(c: float, l_grid) -> list[BoundReport]:
    rows = gap_function_scan(c, l_grid)
    out = [BoundReport("gapfn_table", f"c={c:g} l={l:g}", 1.0, R, asserted=False) for l, R in rows]
    out.append(BoundReport("gapfn_above_one", f"c={c:g}", 1.0, min(R for _, R in rows)))
    steps = [b[1] - a[1] for a, b in zip(rows, rows[1:])]
    out.append(BoundReport("gapfn_increasing", f"c={c:g}", 0.0, min(steps)))
    for l in (QUADRILATERAL_COMPUTED, QUADRILATERAL_STATED):
        # both candidates for the minimal non-simple length are reported, neither asserted
        out.append(BoundReport("gapfn_at_quadrilateral", f"c={c:g} l={l:.6f}", 2.0, gap_ratio(l, c), asserted=False))
    return out


def linspace(lo: float, hi: float, n: int) -> list[float]:
    step = (hi - lo) / (n - 1)
    return [lo + k * step for k in range(n)]


__all__ = [
    "BoundReport",
    "GILMAN_EXACT",
    "NoPolygonsFound",
    "NoSelfIntersections",
    "Polygon",
    "SCOPE_NOTE",
    "SharpnessRow",
    "all_hold",
    "check_angle_corollary",
    "check_bisector_lemmas",
    "check_polygon_corollary",
    "check_theorem1",
    "check_theorem2",
    "default_corpus",
    "find_polygons",
    "gap_function_scan",
    "gap_ratio",
    "gap_reports",
    "gilman_compare",
    "gilman_crossover",
    "gilman_reports",
    "min_margin",
    "sharpness_floor",
    "sharpness_pair",
    "sharpness_reports",
    "sharpness_scan",
    "sharpness_words",
    "theorem2_corpus",
]
