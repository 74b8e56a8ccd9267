import json
import math
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from geoproj.hyperbolic import Isometry, Kind, Relation, classify, projection_interval
from geoproj.surfaces import (
    ConditioningError,
    PeripheralWord,
    SurfaceKind,
    SurfaceRep,
    base_axis,
    enumerate_lifts,
    exact_projection_length,
    geodesic_length,
    non_peripheral_classes,
    rep_once_punctured_torus,
    rep_three_punctured_sphere,
    self_intersection_angles,
    self_intersections,
    word_to_int_matrix,
    word_to_isometry,
)
from geoproj.words import CyclicWord, cyclic_words, inverse, multiply, reduce, reduced_words_upto

SPHERE = rep_three_punctured_sphere()
TORUS = rep_once_punctured_torus()

words = st.text(alphabet="xXyY", max_size=8).map(reduce)


def test_sphere_generators_and_traces():
    x, y = SPHERE.gen_x, SPHERE.gen_y
    assert x.matrix() == ((1, 2), (0, 1)) and y.matrix() == ((1, 0), (-2, 1))
    assert (x @ y).matrix() == ((-3, 2), (-2, 1))
    assert (x @ y).trace == -2
    assert word_to_isometry(SPHERE, "xY").matrix() == ((5, 2), (2, 1))


def test_torus_commutator():
    c = word_to_isometry(TORUS, "xyXY")
    assert c.matrix() == ((-1, 0), (-6, -1))
    assert c.trace == -2
    assert geodesic_length(TORUS, "x") == pytest.approx(2 * math.acosh(1.5), abs=1e-12)


def test_invalid_representations_are_rejected():
    with pytest.raises(ValueError):
        SurfaceRep(SurfaceKind.SPHERE, TORUS.gen_x, TORUS.gen_y)
    with pytest.raises(ValueError):
        SurfaceRep(SurfaceKind.TORUS, SPHERE.gen_x, SPHERE.gen_y)


def test_word_to_isometry_basics():
    assert word_to_isometry(SPHERE, "") == Isometry.identity()
    assert word_to_isometry(SPHERE, "x") == SPHERE.gen_x
    assert word_to_isometry(SPHERE, "Y") == SPHERE.gen_y.inverse()
    with pytest.raises(ConditioningError):
        word_to_isometry(SPHERE, "xY" * 20)


def test_homomorphism_on_random_pairs():
    rng = random.Random(7)
    alphabet = "xXyY"
    for _ in range(1000):
        u = "".join(rng.choice(alphabet) for _ in range(rng.randint(0, 6)))
        v = "".join(rng.choice(alphabet) for _ in range(rng.randint(0, 6)))
        for rep in (SPHERE, TORUS):
            lhs = word_to_isometry(rep, u + v)
            rhs = word_to_isometry(rep, u) @ word_to_isometry(rep, v)
            scale = max(1.0, lhs.max_entry())
            assert all(abs(a - b) <= 1e-9 * scale for a, b in zip(lhs.matrix()[0] + lhs.matrix()[1], rhs.matrix()[0] + rhs.matrix()[1]))


@given(words)
def test_integer_and_float_products_agree(w):
    a, b, c, d = word_to_int_matrix(SPHERE, w)
    assert word_to_isometry(SPHERE, w).matrix() == ((a, b), (c, d))


def test_geodesic_length_examples():
    assert geodesic_length(SPHERE, "xY") == pytest.approx(2 * math.acosh(3), abs=1e-12)
    # (xy)x has trace -6 and the same length
    assert word_to_isometry(SPHERE, "xyx").matrix() == ((-3, -4), (-2, -3))
    assert geodesic_length(SPHERE, "xyx") == pytest.approx(2 * math.acosh(3), abs=1e-12)
    for w in ("x", "y", "xy", "XY", "xx"):
        with pytest.raises(PeripheralWord):
            geodesic_length(SPHERE, w)
    with pytest.raises(PeripheralWord):
        geodesic_length(TORUS, "xyXY")


@given(words.filter(bool))
def test_length_is_conjugation_invariant(w):
    cw = reduce(w)
    rotations = {cw[i:] + cw[:i] for i in range(len(cw))}
    kinds = {classify(word_to_isometry(TORUS, r)) for r in rotations}
    if Kind.HYPERBOLIC not in kinds:
        return
    lengths = [geodesic_length(TORUS, r) for r in rotations if classify(word_to_isometry(TORUS, r)) is Kind.HYPERBOLIC]
    assert max(lengths) - min(lengths) < 1e-9


def test_only_cusp_classes_are_peripheral():
    # torus: everything up to length 6 is hyperbolic except the commutator class
    for n in range(1, 7):
        for c in cyclic_words(n):
            kind = classify(word_to_isometry(TORUS, c))
            assert kind in (Kind.HYPERBOLIC, Kind.PARABOLIC)
            if kind is Kind.PARABOLIC:
                assert c in (CyclicWord("xyXY"), CyclicWord("yxYX"))
    # sphere: the peripheral classes are powers of x, y and xy
    cusps = {CyclicWord(w) for k in range(1, 7) for w in ("x" * k, "X" * k, "y" * k, "Y" * k)}
    cusps |= {CyclicWord("xy" * k) for k in range(1, 4)} | {CyclicWord("YX" * k) for k in range(1, 4)}
    for n in range(1, 7):
        for c in cyclic_words(n):
            kind = classify(word_to_isometry(SPHERE, c))
            assert kind in (Kind.HYPERBOLIC, Kind.PARABOLIC)
            assert (kind is Kind.PARABOLIC) == (c in cusps)


def test_non_peripheral_classes():
    assert CyclicWord("xyXY") not in non_peripheral_classes(TORUS, 4)
    assert CyclicWord("xY") in non_peripheral_classes(SPHERE, 2)


# Lifts ---------------------------------------------------------------------

def coset_count(gamma: str, radius: int) -> int:
    """Distinct lifts from group theory: g and h give the same line iff h^-1 g commutes with gamma."""
    reps: list[str] = []
    for g in reduced_words_upto(radius):
        if multiply(g, gamma, inverse(g)) == gamma:
            continue
        if any(multiply(inverse(h), g, gamma, inverse(g), h) == gamma for h in reps):
            continue
        reps.append(g)
    return len(reps)


def test_radius_zero_has_no_lifts():
    assert enumerate_lifts(SPHERE, "xY", 0) == []


@pytest.mark.parametrize("rep", [SPHERE, TORUS], ids=["sphere", "torus"])
@pytest.mark.parametrize("gamma", ["xY", "xxY", "xyxY", "xyXXY"])
def test_lift_count_matches_cosets(rep, gamma):
    try:
        geodesic_length(rep, gamma)
    except PeripheralWord:
        pytest.skip("peripheral")
    for radius in (1, 2, 3):
        assert len(enumerate_lifts(rep, gamma, radius)) == coset_count(gamma, radius)


def test_figure_eight_radius_one():
    lifts = enumerate_lifts(SPHERE, "xY", 1)
    assert [m.g for m in lifts] == ["x", "X", "y"]  # Y fixes the axis up to the translation xY
    assert all(m.rel_to_base is Relation.CROSSING for m in lifts)


@pytest.mark.parametrize("rep", [SPHERE, TORUS], ids=["sphere", "torus"])
def test_lifts_are_translates_without_shared_endpoints(rep):
    for c in non_peripheral_classes(rep, 4):
        base = base_axis(rep, c)
        lifts = enumerate_lifts(rep, c, 3)
        for m in lifts:
            assert m.rel_to_base is not Relation.SHARED_ENDPOINT
            assert m.line.same_line(base.moved(word_to_isometry(rep, m.g)))
            assert not m.line.same_line(base)
        # discreteness smoke test: no two lifts share an endpoint
        ends = sorted(e for m in lifts for e in (m.line.p, m.line.q) if math.isfinite(e))
        assert all(b - a > 1e-9 * max(1.0, abs(a)) for a, b in zip(ends, ends[1:]))


def test_lift_json():
    m = enumerate_lifts(SPHERE, "xY", 1)[0]
    d = json.loads(json.dumps(m.to_dict(angle=1.0)))
    assert set(d) == {"g", "endpoints", "relation", "angle"}
    assert d["relation"] == "crossing"


def test_exact_projection_agrees_with_geometry():
    for rep in (SPHERE, TORUS):
        for c in non_peripheral_classes(rep, 4):
            base = base_axis(rep, c)
            A = word_to_int_matrix(rep, c)
            for m in enumerate_lifts(rep, c, 2):
                B = word_to_int_matrix(rep, multiply(m.g, c.letters, inverse(m.g)))
                rel, length = exact_projection_length(A, B)
                assert rel is m.rel_to_base
                assert length == pytest.approx(projection_interval(m.line, base).length, abs=1e-8)


# Self-intersections ------------------------------------------------------

def test_simple_curves_have_no_self_intersections():
    for w in ("x", "y", "xy", "xxy", "xY"):
        assert self_intersection_angles(TORUS, w, 4) == []


def test_torus_non_primitive_homology_class_is_not_simple():
    assert self_intersection_angles(TORUS, "xxyy", 3)


@pytest.mark.parametrize("radius", [2, 3, 4])
def test_figure_eight_has_one_double_point(radius):
    pts = self_intersection_angles(SPHERE, "xY", radius)
    assert len(pts) == 1
    assert pts[0][1] == pytest.approx(math.pi / 2, abs=1e-12)


def test_angles_in_range():
    for rep in (SPHERE, TORUS):
        for c in non_peripheral_classes(rep, 5):
            for p in self_intersections(rep, c, 3):
                assert 0 < p.angle < math.pi
                assert 0 <= p.coords[0] <= p.coords[1] < geodesic_length(rep, c) + 1e-12
