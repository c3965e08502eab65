import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from affprob.convex import (
    ID_I,
    INTERVAL,
    SQUARE,
    AffineEndoI,
    AffineMap,
    ConvexSpace,
    Leaf,
    Node,
    Simplex,
    SimplexPoint,
    apply_affine,
    barycentric_to_free,
    check_axioms,
    constant_map,
    evaluate_free,
    free_to_barycentric,
    identity_map,
    pair_map,
    projection,
    projection_mix,
)
from affprob.generators import compositions, random_affine_map, random_simplex_point
from affprob.numeric import HALF, ONE, ZERO, cvx_combine, unit_grid

F = Fraction


def grid_points(n, den):
    return [SimplexPoint(tuple(F(c, den) for c in comp)) for comp in compositions(den, n)]


# -- axioms ---------------------------------------------------------------------


def test_interval_satisfies_axioms():
    grid = unit_grid(4)
    triples = [(a, b, c) for a in grid for b in grid for c in grid[::2]]
    assert check_axioms(INTERVAL, triples, grid).passed


def test_simplex_satisfies_axioms():
    pts = grid_points(3, 3)
    triples = [(a, b, c) for a in pts[::2] for b in pts[::3] for c in pts[::4]]
    assert check_axioms(Simplex(3), triples, unit_grid(3)).passed


class Reversed(ConvexSpace):
    """``a +_r b := (1-r) a + r b``."""

    def combine(self, a, b, r):
        return (1 - r) * a + r * b


def test_reversed_combine_fails_first_axiom_with_witness():
    grid = unit_grid(3)
    report = check_axioms(Reversed(), [(a, b, ZERO) for a in grid for b in grid], grid)
    assert 1 in report.failed()
    w = report[1].witness
    assert w["r"] == 0 and w["a1"] != w["a2"]


def test_axiom_four_accepts_any_weight_when_both_are_one():
    # p = q = 1 leaves r unconstrained, so no sample can fail on that pair
    report = check_axioms(INTERVAL, [(ZERO, ONE, HALF)], [ONE])
    assert report.passed


# -- free and barycentric forms ------------------------------------------------------


def test_free_to_barycentric_examples():
    assert free_to_barycentric(Node(Leaf(0), Leaf(1), HALF)).coords == (HALF, HALF)
    nested = Node(Node(Leaf(0), Leaf(1), HALF), Leaf(2), F(1, 3))
    assert free_to_barycentric(nested).coords == (F(1, 6), F(1, 6), F(2, 3))
    assert free_to_barycentric(Node(Leaf(0), Leaf(1), ONE)).coords == (ONE, ZERO)


def test_barycentric_to_free_examples():
    assert barycentric_to_free(SimplexPoint((ONE, ZERO))) == Leaf(0)
    assert barycentric_to_free(SimplexPoint((HALF, HALF))) == Node(Leaf(0), Leaf(1), HALF)
    p = SimplexPoint((F(1, 6), F(1, 6), F(2, 3)))
    assert barycentric_to_free(p) == Node(Node(Leaf(0), Leaf(1), HALF), Leaf(2), F(1, 3))


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_round_trip_on_grid(n):
    for den in range(1, 7):
        for p in grid_points(n, den):
            assert free_to_barycentric(barycentric_to_free(p), n) == p


def test_simplex_point_text_form():
    assert str(SimplexPoint((F(1, 6), F(1, 6), F(2, 3)))) == "p: 1/6 1/6 2/3"
    with pytest.raises(ValueError):
        SimplexPoint((HALF, HALF, HALF))


def test_free_form_evaluates_in_any_space():
    form = Node(Node(Leaf(0), Leaf(1), HALF), Leaf(2), F(1, 3))
    # in I with generators 0, 1/2, 1: 1/6*0 + 1/6*1/2 + 2/3*1
    assert evaluate_free(form, INTERVAL, [ZERO, HALF, ONE]) == F(1, 12) + F(2, 3)


# -- affine maps -------------------------------------------------------------------------


def test_apply_affine_examples():
    p = SimplexPoint((F(1, 3), F(2, 3)))
    k = AffineMap(Simplex(2), INTERVAL, (F(1, 4), F(3, 4)))
    assert apply_affine(k, p) == F(7, 12)
    assert apply_affine(identity_map(Simplex(3)), SimplexPoint((F(1, 2), F(1, 4), F(1, 4)))) == SimplexPoint(
        (F(1, 2), F(1, 4), F(1, 4))
    )
    c = constant_map(Simplex(3), Simplex(2), SimplexPoint((ONE, ZERO)))
    for q in grid_points(3, 3):
        assert apply_affine(c, q) == SimplexPoint((ONE, ZERO))


def test_apply_affine_dimension_mismatch():
    k = AffineMap(Simplex(2), INTERVAL, (ZERO, ONE))
    with pytest.raises(ValueError):
        apply_affine(k, SimplexPoint((ONE, ZERO, ZERO)))
    with pytest.raises(ValueError):
        AffineMap(Simplex(2), INTERVAL, (ZERO,))


def test_square_maps_must_be_affine():
    with pytest.raises(ValueError):
        AffineMap(SQUARE, INTERVAL, (ZERO, ONE, ONE, ONE))


def test_affine_endo_of_interval():
    h = AffineEndoI(F(1, 4), F(3, 4))
    assert h(ZERO) == F(1, 4) and h(ONE) == F(3, 4) and h(HALF) == HALF
    assert ID_I(F(2, 7)) == F(2, 7)


@given(st.integers(0, 2**32), st.sampled_from([2, 3, 4]), st.sampled_from([1, 2, 3, 4]))
def test_affine_maps_respect_combine(seed, n, m):
    r = random.Random(seed)
    dom, cod = Simplex(n), Simplex(m)
    k = random_affine_map(r, dom, cod)
    p, q = random_simplex_point(r, n), random_simplex_point(r, n)
    t = F(r.randint(0, 6), 6)
    assert apply_affine(k, dom.combine(p, q, t)) == cod.combine(apply_affine(k, p), apply_affine(k, q), t)


@given(st.integers(0, 2**32))
def test_composite_matches_sequential_application(seed):
    r = random.Random(seed)
    a, b = Simplex(3), Simplex(2)
    k = random_affine_map(r, a, b)
    h = random_affine_map(r, b, INTERVAL)
    p = random_simplex_point(r, 3)
    assert k.then(h)(p) == h(k(p))


units = st.fractions(0, 1, max_denominator=12)


@given(st.lists(st.tuples(units, units), min_size=2, max_size=4), units)
def test_projection_mix_is_affine_on_the_square(points, alpha):
    # weights 1/n each; compare the map on the mix with the mix of images
    n = len(points)
    weights = [F(1, n)] * n
    mixed = SQUARE.mix(weights, points)
    h = projection_mix(alpha)
    direct = sum(w * cvx_combine(u, v, alpha) for w, (u, v) in zip(weights, points))
    assert h(mixed) == direct
    assert projection(1)(mixed) == sum(w * u for w, (u, _) in zip(weights, points))


def test_pair_map_lands_in_square():
    h = pair_map(AffineEndoI(ZERO, ONE), AffineEndoI(ONE, ZERO))
    assert h(F(1, 3)) == (F(1, 3), F(2, 3))
