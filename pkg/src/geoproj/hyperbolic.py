"""Points, geodesics and isometries of the upper half-plane.

Boundary points are plain floats, with ``math.inf`` standing for the point
at infinity (``-inf`` is folded into ``inf``).  Interior points are complex
numbers with positive imaginary part.  Most geodesic computations go through
a normalizing isometry that sends a geodesic to the imaginary axis, which
keeps the point at infinity from needing special cases.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from functools import cached_property

INF = math.inf
EPS = 1e-9
EPS_TRACE = 1e-9
POLE_RTOL = 1e-14


class NotHyperbolic(ValueError):
    pass


class NotCrossing(ValueError):
    pass


class NotDisjoint(ValueError):
    pass


class SharedEndpoint(ValueError):
    pass


class DegenerateFoot(ValueError):
    pass


class Kind(str, Enum):
    IDENTITY = "identity"
    ELLIPTIC = "elliptic"
    PARABOLIC = "parabolic"
    HYPERBOLIC = "hyperbolic"


class Relation(str, Enum):
    CROSSING = "crossing"
    DISJOINT = "disjoint"
    SHARED_ENDPOINT = "shared_endpoint"


def points_equal(p: float, q: float, eps: float = EPS) -> bool:
    """Compare boundary points; exact at infinity, tolerant elsewhere."""
    if math.isinf(p) or math.isinf(q):
        return math.isinf(p) and math.isinf(q)
    return math.isclose(p, q, rel_tol=eps, abs_tol=eps)


@dataclass(frozen=True, eq=False)
class Isometry:
    """An element of SL(2, R) acting by Mobius maps.

    The raw matrix is kept (traces keep their sign, which the surface
    representations rely on), while ``==`` compares up to sign.
    """

    a: float
    b: float
    c: float
    d: float

    def __post_init__(self):
        det = self.a * self.d - self.b * self.c
        if det <= 0:
            raise ValueError(f"determinant must be positive, got {det}")
        if abs(det - 1.0) > 1e-12:
            s = math.sqrt(det)
            for name in "abcd":
                object.__setattr__(self, name, getattr(self, name) / s)

    @classmethod
    def identity(cls) -> Isometry:
        return cls(1.0, 0.0, 0.0, 1.0)

    @classmethod
    def from_matrix(cls, m) -> Isometry:
        (a, b), (c, d) = m
        return cls(float(a), float(b), float(c), float(d))

    @property
    def det(self) -> float:
        return self.a * self.d - self.b * self.c

    @property
    def trace(self) -> float:
        return self.a + self.d

    def matrix(self) -> tuple[tuple[float, float], tuple[float, float]]:
        return ((self.a, self.b), (self.c, self.d))

    def max_entry(self) -> float:
        return max(abs(self.a), abs(self.b), abs(self.c), abs(self.d))

    def __matmul__(self, other: Isometry) -> Isometry:
        return Isometry(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self) -> Isometry:
        return Isometry(self.d, -self.b, -self.c, self.a)

    def canonical(self) -> tuple[float, float, float, float]:
        """Projective representative with a > 0, or b > 0 when a == 0."""
        entries = (self.a, self.b, self.c, self.d)
        lead = self.a if self.a != 0 else self.b
        if lead < 0:
            entries = tuple(-e for e in entries)
        return entries

    def equals(self, other: Isometry, eps: float = EPS) -> bool:
        mine = (self.a, self.b, self.c, self.d)
        theirs = (other.a, other.b, other.c, other.d)
        return any(
            all(math.isclose(s * u, v, rel_tol=eps, abs_tol=eps) for u, v in zip(mine, theirs))
            for s in (1.0, -1.0)
        )

    def __eq__(self, other):
        if not isinstance(other, Isometry):
            return NotImplemented
        return self.equals(other)

    __hash__ = None

    def __call__(self, z):
        return apply(self, z)


def apply(iso: Isometry, z):
    """Mobius action on a boundary float (inf allowed) or an interior complex point."""
    if isinstance(z, complex):
        return (iso.a * z + iso.b) / (iso.c * z + iso.d)
    if math.isinf(z):
        u, v = iso.a, iso.c
    else:
        u, v = iso.a * z + iso.b, iso.c * z + iso.d
    # (u : v) is projective; past ~1e14 relative the quotient carries no digits
    if abs(v) <= POLE_RTOL * abs(u):
        return INF
    return u / v


def classify(iso: Isometry, eps: float = EPS_TRACE) -> Kind:
    if iso.equals(Isometry.identity(), eps):
        return Kind.IDENTITY
    t = abs(iso.trace)
    if t < 2 - eps:
        return Kind.ELLIPTIC
    if t > 2 + eps:
        return Kind.HYPERBOLIC
    return Kind.PARABOLIC


def translation_length(iso: Isometry, eps: float = EPS_TRACE) -> float:
    if classify(iso, eps) is not Kind.HYPERBOLIC:
        raise NotHyperbolic(f"trace {iso.trace!r} is not hyperbolic")
    return 2.0 * math.acosh(abs(iso.trace) / 2.0)


def fixed_points(iso: Isometry) -> tuple[float, float]:
    """Return (repelling, attracting) fixed points of a hyperbolic isometry."""
    if classify(iso) is not Kind.HYPERBOLIC:
        raise NotHyperbolic(f"trace {iso.trace!r} is not hyperbolic")
    a, b, c, d = iso.a, iso.b, iso.c, iso.d
    disc = math.sqrt((a + d) ** 2 - 4.0)
    if c == 0:
        # z -> (a z + b) / d fixes infinity and b / (d - a)
        finite = b / (d - a)
        return (finite, INF) if abs(a) > abs(d) else (INF, finite)
    # roots of c t^2 + (d - a) t - b = 0 without cancellation
    lin = d - a
    q = -0.5 * (lin + math.copysign(disc, lin))
    r0, r1 = q / c, -b / q
    # attracting fixed point: |derivative| = 1 / (c t + d)^2 < 1
    if abs(c * r0 + d) > abs(c * r1 + d):
        return r1, r0
    return r0, r1


def axis(iso: Isometry) -> Geodesic:
    rep, att = fixed_points(iso)
    return Geodesic(rep, att)


@dataclass(frozen=True)
class Geodesic:
    """Oriented geodesic line from boundary point ``p`` to ``q``."""

    p: float
    q: float

    def __post_init__(self):
        for v in (self.p, self.q):
            if math.isnan(v):
                raise ValueError("endpoint is NaN")
        if math.isinf(self.p) and self.p < 0:
            object.__setattr__(self, "p", INF)
        if math.isinf(self.q) and self.q < 0:
            object.__setattr__(self, "q", INF)
        if points_equal(self.p, self.q):
            raise ValueError(f"degenerate geodesic ({self.p}, {self.q})")

    def reversed(self) -> Geodesic:
        return Geodesic(self.q, self.p)

    def moved(self, iso: Isometry) -> Geodesic:
        return Geodesic(apply(iso, self.p), apply(iso, self.q))

    def same_line(self, other: Geodesic, eps: float = EPS) -> bool:
        """True when the unoriented lines coincide."""
        return (points_equal(self.p, other.p, eps) and points_equal(self.q, other.q, eps)) or (
            points_equal(self.p, other.q, eps) and points_equal(self.q, other.p, eps)
        )

    @cached_property
    def normalizer(self) -> Isometry:
        """Isometry sending p -> 0, q -> inf and the foot of i to i.

        Arc-length coordinates on this geodesic are ``log|normalizer(z)|``,
        so the basepoint is the foot of the perpendicular from i.
        """
        p, q = self.p, self.q
        if math.isinf(q):
            t0 = Isometry(1.0, -p, 0.0, 1.0)
        elif math.isinf(p):
            t0 = Isometry(0.0, -1.0, 1.0, -q)
        elif p > q:
            t0 = Isometry(1.0, -p, 1.0, -q)
        else:
            t0 = Isometry(-1.0, p, 1.0, -q)
        s = abs(apply(t0, 1j))
        r = math.sqrt(s)
        return Isometry(1.0 / r, 0.0, 0.0, r) @ t0

    def chart(self, z):
        """Image of z under the normalizer (geodesic becomes the imaginary axis)."""
        return apply(self.normalizer, z)

    def point_at(self, t: float) -> complex:
        """Interior point at arc-length coordinate t."""
        return apply(self.normalizer.inverse(), complex(0.0, math.exp(t)))


@dataclass(frozen=True)
class ProjectionInterval:
    host: Geodesic
    lo: float
    hi: float
    orientation_agrees: bool

    @property
    def length(self) -> float:
        return self.hi - self.lo


def crossing_test(l: Geodesic, m: Geodesic, eps: float = EPS) -> Relation:
    for u in (l.p, l.q):
        for v in (m.p, m.q):
            if points_equal(u, v, eps):
                return Relation.SHARED_ENDPOINT
    lo, hi = min(l.p, l.q), max(l.p, l.q)
    inside_p = lo < m.p < hi
    inside_q = lo < m.q < hi
    return Relation.CROSSING if inside_p != inside_q else Relation.DISJOINT


def _chart_endpoints(l: Geodesic, m: Geodesic) -> tuple[float, float]:
    a, b = l.chart(m.p), l.chart(m.q)
    if math.isinf(a) or math.isinf(b) or a == 0 or b == 0:
        raise SharedEndpoint(f"{l} and {m} share an endpoint")
    return a, b


def crossing_angle(l: Geodesic, m: Geodesic, eps: float = EPS) -> float:
    """Angle in (0, pi) between the forward tangents of l and m at l ∩ m."""
    if crossing_test(l, m, eps) is not Relation.CROSSING:
        raise NotCrossing(f"{l} and {m} do not cross")
    a, b = _chart_endpoints(l, m)
    # l is the upward imaginary axis; m is the semicircle over [a, b]
    cos_phi = (a + b) / (b - a)
    return math.acos(max(-1.0, min(1.0, cos_phi)))


def intersection_point(l: Geodesic, m: Geodesic, eps: float = EPS) -> complex:
    if crossing_test(l, m, eps) is not Relation.CROSSING:
        raise NotCrossing(f"{l} and {m} do not cross")
    a, b = _chart_endpoints(l, m)
    return apply(l.normalizer.inverse(), complex(0.0, math.sqrt(-a * b)))


def distance(l: Geodesic, m: Geodesic, eps: float = EPS) -> float:
    """Length of the common perpendicular of two disjoint geodesics."""
    if crossing_test(l, m, eps) is not Relation.DISJOINT:
        raise NotDisjoint(f"{l} and {m} are not disjoint")
    a, b = _chart_endpoints(l, m)
    # inversive distance between the imaginary axis and the circle over [a, b]
    return math.acosh(abs(a + b) / abs(b - a))


def point_distance(z: complex, w: complex) -> float:
    return 2.0 * math.asinh(abs(z - w) / (2.0 * math.sqrt(z.imag * w.imag)))


def coordinate(m: Geodesic, z) -> float:
    """Arc-length coordinate on m of the foot of z (boundary or interior)."""
    if not isinstance(z, complex) and (points_equal(z, m.p) or points_equal(z, m.q)):
        raise DegenerateFoot(f"{z} is an endpoint of {m}")
    w = m.chart(z)
    if not isinstance(w, complex) and (w == 0 or math.isinf(w)):
        raise DegenerateFoot(f"{z} is an endpoint of {m}")
    return math.log(abs(w))


def foot(p: float, m: Geodesic) -> float:
    """Coordinate on m of the foot of the perpendicular from boundary point p."""
    return coordinate(m, p)


def side(m: Geodesic, z) -> int:
    """+1 or -1 for the side of m containing z (0 if z lies on m)."""
    w = m.chart(z)
    x = w.real if isinstance(w, complex) else w
    if isinstance(w, complex) and abs(x) <= 1e-12 * abs(w):
        return 0
    return 1 if x > 0 else -1


def projection_interval(l: Geodesic, m: Geodesic, eps: float = EPS) -> ProjectionInterval:
    """Orthogonal projection of l onto m, with l's induced orientation."""
    if crossing_test(l, m, eps) is Relation.SHARED_ENDPOINT:
        raise SharedEndpoint(f"{l} and {m} share an endpoint")
    t_p, t_q = foot(l.p, m), foot(l.q, m)
    return ProjectionInterval(m, min(t_p, t_q), max(t_p, t_q), t_q > t_p)


def projection_length_closed_form(relation: str, value: float) -> float:
    """Projection length from the crossing angle or the distance.

    ``relation`` is "crossing" (value = angle in (0, pi)) or "disjoint"
    (value = distance > 0).
    """
    relation = Relation(relation)
    if relation is Relation.CROSSING:
        if not 0.0 < value < math.pi:
            raise ValueError(f"angle {value} outside (0, pi)")
        return 2.0 * math.atanh(abs(math.cos(value)))
    if relation is Relation.DISJOINT:
        if not value > 0.0:
            raise ValueError(f"distance {value} must be positive")
        return 4.0 * math.atanh(math.exp(-value))
    raise ValueError(f"no closed form for {relation}")


def angle_of_parallelism(a: float) -> float:
    if not a > 0:
        raise ValueError(f"angle of parallelism needs a > 0, got {a}")
    return 2.0 * math.atan(math.exp(-a))


def reflect(g: Geodesic, z):
    """Reflection in g, applied to a boundary float or an interior complex point."""
    t = g.normalizer
    w = apply(t, z)
    if isinstance(w, complex):
        w = complex(-w.real, w.imag)
    elif not math.isinf(w):
        w = -w
    return apply(t.inverse(), w)


def _boundary_at_angle(beta: float) -> float:
    """tan(beta) as a boundary point, with a vertical tangent read as infinity."""
    c = math.cos(beta)
    if abs(c) < 1e-15:
        return INF
    return math.sin(beta) / c


def bisectors(l: Geodesic, m: Geodesic, eps: float = EPS) -> list[Geodesic]:
    """Geodesics whose reflection swaps l and m (one if disjoint, two if crossing)."""
    rel = crossing_test(l, m, eps)
    if rel is Relation.SHARED_ENDPOINT:
        raise SharedEndpoint(f"{l} and {m} share an endpoint")
    back = l.normalizer.inverse()
    a, b = _chart_endpoints(l, m)
    if rel is Relation.DISJOINT:
        # the circle |z| = sqrt(ab) is the common perpendicular; send it to the
        # imaginary axis, where l and m become concentric semicircles
        r = math.sqrt(a * b)
        perp = Geodesic(-r, r)
        n = perp.normalizer
        rho_l = abs(apply(n, 0.0))
        rho_m = abs(apply(n, a))
        s = math.sqrt(rho_l * rho_m)
        n_inv = n.inverse()
        ends = [apply(back, apply(n_inv, e)) for e in (-s, s)]
        return [Geodesic(*ends)]
    # crossing: scale so that l ∩ m = i, then m has centre c = tan(psi)
    h = math.sqrt(-a * b)
    centre = (a + b) / (2.0 * h)
    psi = math.atan(centre)
    out = []
    for theta in ((math.pi / 2 + psi) / 2, (math.pi / 2 + psi) / 2 + math.pi / 2):
        ends = (
            h * _boundary_at_angle(theta / 2 + math.pi / 4),
            h * _boundary_at_angle(theta / 2 - math.pi / 4),
        )
        out.append(Geodesic(*(apply(back, e) for e in ends)))
    return out


def random_isometry(rng, scale: float = 2.0) -> Isometry:
    """A random SL(2, R) element: rotation, dilation, translation."""
    theta = rng.uniform(0, math.pi)
    k = math.exp(rng.uniform(-scale, scale))
    t = rng.uniform(-scale, scale)
    rot = Isometry(math.cos(theta), math.sin(theta), -math.sin(theta), math.cos(theta))
    dil = Isometry(math.sqrt(k), 0.0, 0.0, 1.0 / math.sqrt(k))
    tr = Isometry(1.0, t, 0.0, 1.0)
    return tr @ dil @ rot
