import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from affprob.generators import all_spaces, random_ifunction, random_space
from affprob.numeric import HALF, ONE, ZERO
from affprob.spaces import (
    NATURALS,
    CountableIFunction,
    CountableSet,
    FiniteSpace,
    IFunction,
    MeasurableFn,
    NotMeasurable,
    SpaceMismatch,
    TensorSizeError,
    generate_sigma_algebra,
    indicator,
    is_measurable,
    measurable_maps,
    pointwise_combine,
    product_sigma_algebra,
    require_measurable,
    telescoping_decompose,
    tensor_sigma_algebra,
)

# -- oracles -------------------------------------------------------------------


def brute_sigma_algebra(n, generators):
    """Close the generators under complement and union until nothing changes."""
    full = frozenset(range(n))
    family = {frozenset(), full, *(frozenset(g) for g in generators)}
    while True:
        new = set(family)
        for a in family:
            new.add(full - a)
            for b in family:
                new.add(a | b)
        if new == family:
            return family
        family = new


def atom_unions(space):
    out = set()
    for r in range(space.n_atoms + 1):
        for combo in itertools.combinations(space.atoms, r):
            out.add(frozenset().union(*combo))
    return out


def brute_maps(dom, cod):
    """Every point map whose atom preimages are atom unions of ``dom``."""
    sigma = atom_unions(dom)
    for table in itertools.product(range(cod.n_points), repeat=dom.n_points):
        if all(frozenset(p for p in dom.points if table[p] in atom) in sigma for atom in cod.atoms):
            yield table


def brute_tensor_family(x, y):
    """All subsets of X x Y whose graph preimages are measurable."""
    m = y.n_points
    sx, sy = atom_unions(x), atom_unions(y)
    fs, gs = list(brute_maps(x, y)), list(brute_maps(y, x))
    family = set()
    for bits in range(1 << (x.n_points * m)):
        zeta = {i for i in range(x.n_points * m) if bits >> i & 1}
        if all(frozenset(a for a in x.points if a * m + f[a] in zeta) in sx for f in fs) and all(
            frozenset(b for b in y.points if g[b] * m + b in zeta) in sy for g in gs
        ):
            family.add(frozenset(zeta))
    return family


# -- sigma-algebras ----------------------------------------------------------------


def test_generate_examples():
    assert generate_sigma_algebra(2, [{0}]).atoms == (frozenset({0}), frozenset({1}))
    assert generate_sigma_algebra(3, []).atoms == (frozenset({0, 1, 2}),)
    four = generate_sigma_algebra(4, [{0, 1}, {1, 2}])
    assert four.atoms == tuple(frozenset({i}) for i in range(4))
    assert atom_unions(four) == brute_sigma_algebra(4, [{0, 1}, {1, 2}])


def test_generate_rejects_empty_and_out_of_range():
    with pytest.raises(ValueError):
        generate_sigma_algebra(0, [])
    with pytest.raises(ValueError):
        generate_sigma_algebra(2, [{5}])


@given(st.integers(1, 6), st.lists(st.sets(st.integers(0, 5)), max_size=4))
def test_generation_matches_closure_oracle(n, gens):
    gens = [{p for p in g if p < n} for g in gens]
    space = generate_sigma_algebra(n, gens)
    assert atom_unions(space) == brute_sigma_algebra(n, gens)


@given(st.integers(1, 6), st.lists(st.sets(st.integers(0, 5)), max_size=4))
def test_generation_is_idempotent(n, gens):
    space = generate_sigma_algebra(n, [{p for p in g if p < n} for g in gens])
    assert generate_sigma_algebra(n, space.atoms) == space


def test_finite_space_validation():
    with pytest.raises(ValueError):
        FiniteSpace(3, (frozenset({0}), frozenset({1})))
    with pytest.raises(ValueError):
        FiniteSpace(2, (frozenset({0, 1}), frozenset({1})))
    s = FiniteSpace(3, (frozenset({2, 0}), frozenset({1})))
    assert s.atoms[0] == frozenset({0, 2})
    assert s.atom_of(2) == 0


def test_measurable_sets_are_atom_unions():
    s = FiniteSpace(4, (frozenset({0, 1}), frozenset({2}), frozenset({3})))
    assert {m.points for m in s.measurable_sets()} == atom_unions(s)
    assert s.is_measurable_subset({0, 1, 3})
    assert not s.is_measurable_subset({0})


# -- measurable maps -----------------------------------------------------------------


def test_identity_and_constant_are_measurable():
    for space in all_spaces(3):
        assert is_measurable(MeasurableFn.identity(space))
        assert is_measurable(MeasurableFn.constant(space, FiniteSpace.discrete(2), 1))


def test_splitting_an_atom_is_not_measurable():
    f = MeasurableFn(FiniteSpace.trivial(2), FiniteSpace.discrete(2), (0, 1))
    assert not is_measurable(f)
    with pytest.raises(NotMeasurable):
        require_measurable(f)


def test_measurable_maps_match_brute_force():
    for x in all_spaces(3):
        for y in all_spaces(2):
            assert {f.table for f in measurable_maps(x, y)} == set(brute_maps(x, y))


# -- indicators and combinations ---------------------------------------------------------


def test_indicator_examples():
    s = FiniteSpace(3, (frozenset({0}), frozenset({1, 2})))
    assert indicator(s.whole()).values == (ONE, ONE)
    assert indicator(s.empty()).values == (ZERO, ZERO)
    a = s.atom_set(0)
    total = [x + y for x, y in zip(indicator(a).values, indicator(a.complement()).values)]
    assert total == [1, 1]


def test_pointwise_combine_examples():
    d2 = FiniteSpace.discrete(2)
    f = IFunction(d2, (ZERO, ONE))
    g = IFunction(d2, (ONE, ZERO))
    assert pointwise_combine(f, f, Fraction(1, 5)) == f
    assert pointwise_combine(f, g, Fraction(1, 3)).values == (Fraction(2, 3), Fraction(1, 3))
    s = d2.atom_set(0)
    assert pointwise_combine(indicator(s), indicator(s.complement()), HALF).values == (HALF, HALF)
    with pytest.raises(SpaceMismatch):
        pointwise_combine(f, IFunction(FiniteSpace.discrete(3), (ZERO,) * 3), HALF)


def test_ifunction_from_points_rejects_non_measurable():
    with pytest.raises(ValueError):
        IFunction.from_points(FiniteSpace.trivial(2), [ZERO, ONE])


# -- telescoping decomposition ------------------------------------------------------


def test_telescoping_constant_one():
    s = FiniteSpace.discrete(3)
    d = telescoping_decompose(IFunction.constant(s, 1))
    assert [(c, t.points) for c, t in d.terms] == [(1, frozenset({0, 1, 2})), (0, frozenset())]


def test_telescoping_indicator():
    s = FiniteSpace.discrete(3)
    a = s.set_of_points({1})
    d = telescoping_decompose(indicator(a))
    assert [(c, t.points) for c, t in d.terms] == [(0, s.whole().points), (1, frozenset({1})), (0, frozenset())]


def test_telescoping_two_levels():
    s = FiniteSpace.discrete(4)
    f = IFunction(s, (Fraction(1, 4), Fraction(3, 4), ZERO, ZERO))
    d = telescoping_decompose(f)
    want = [
        (0, frozenset({0, 1, 2, 3})),
        (Fraction(1, 4), frozenset({0, 1})),
        (Fraction(1, 2), frozenset({1})),
        (Fraction(1, 4), frozenset()),
    ]
    assert [(c, t.points) for c, t in d.terms] == want
    assert d.recompose(s) == f
    assert d.normalized().terms == d.terms[1:]


def test_telescoping_on_naturals():
    f = CountableIFunction(((0, Fraction(1, 3)), (4, ONE)), Fraction(1, 2))
    d = telescoping_decompose(f)
    assert d.coefficient_sum() == 1
    back = d.recompose(NATURALS)
    assert all(back(p) == f(p) for p in range(10))


@given(st.integers(0, 2**32), st.integers(1, 8))
def test_telescoping_recomposes_exactly(seed, n):
    r = random.Random(seed)
    space = random_space(r, n)
    f = random_ifunction(r, space, 12)
    d = telescoping_decompose(f)
    assert d.coefficient_sum() == 1
    for p in space.points:
        # independent pointwise sum of coef * chi_S(p)
        assert sum(c for c, t in d.terms if p in t.points) == f(p)


# -- countable sets ------------------------------------------------------------------------

csets = st.builds(CountableSet, st.lists(st.integers(0, 12), max_size=5).map(tuple), st.booleans())


@given(csets, csets)
def test_countable_algebra_closure(a, b):
    for probe in range(20):
        assert (probe in (a | b)) == (probe in a or probe in b)
        assert (probe in (a & b)) == (probe in a and probe in b)
        assert (probe in a.complement()) != (probe in a)
    assert a.complement().cofinite != a.cofinite


# -- tensor sigma-algebra -------------------------------------------------------------------


def small_pairs(limit):
    spaces = [s for n in (1, 2, 3) for s in all_spaces(n)]
    return [(x, y) for x in spaces for y in spaces if x.n_points * y.n_points <= limit]


@pytest.mark.parametrize("x, y", small_pairs(6))
def test_tensor_matches_brute_force(x, y):
    t = tensor_sigma_algebra(x, y)
    assert atom_unions(t) == brute_tensor_family(x, y)


def test_tensor_discrete_is_powerset_brute_force():
    x, y = FiniteSpace.discrete(2), FiniteSpace.discrete(3)
    assert len(brute_tensor_family(x, y)) == 2**6
    assert tensor_sigma_algebra(x, y).n_atoms == 6


def test_tensor_with_point_copies_left_factor():
    for x in all_spaces(3):
        t = tensor_sigma_algebra(x, FiniteSpace.discrete(1))
        assert sorted(sorted(a) for a in t.atoms) == sorted(sorted(a) for a in x.atoms)


def test_tensor_trivial_by_discrete_contains_product():
    x, y = FiniteSpace.trivial(2), FiniteSpace.discrete(2)
    t = tensor_sigma_algebra(x, y)
    family = atom_unions(t)
    assert atom_unions(product_sigma_algebra(x, y)) <= family
    assert family == brute_tensor_family(x, y)


def test_tensor_cap():
    with pytest.raises(TensorSizeError):
        tensor_sigma_algebra(FiniteSpace.discrete(4), FiniteSpace.discrete(4))
    assert tensor_sigma_algebra(FiniteSpace.discrete(4), FiniteSpace.discrete(4), cap=None).n_atoms == 16
