import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from affprob import adversarial, laws
from affprob.equivalence import functionals_equal
from affprob.functionals import (
    Functional,
    FunctionalOnFunctionals,
    check_affine,
    check_preserves_limits,
    check_weakly_averaging,
    dyadic_chain,
    indicator_truncations,
    lemma_basic_suite,
    sample_functions,
    singleton_cover,
    t_join,
    t_pushforward,
    unit,
)
from affprob.generators import (
    grid_measures,
    random_countable_measure,
    random_countable_set,
    random_ifunction,
    random_map,
    random_measure,
    random_mixture,
    random_set_pair,
    random_space,
)
from affprob.giry import CountableMeasure, Measure, integrate
from affprob.numeric import HALF, ONE, ZERO
from affprob.spaces import NATURALS, FiniteSpace, IFunction, MeasurableFn, SpaceMismatch, indicator

F = Fraction
D2, D3 = FiniteSpace.discrete(2), FiniteSpace.discrete(3)


# -- evaluation ----------------------------------------------------------------------


def test_eval_examples():
    f = IFunction(D3, (F(1, 5), ONE, HALF))
    for x in D3.points:
        assert unit(D3, x).eval(f) == f(x)
    p = Measure(D3, (F(1, 6), F(1, 2), F(1, 3)))
    s = D3.set_of_points({0, 2})
    assert Functional.canonical(p).eval(indicator(s)) == p.mass(s)
    assert Functional.canonical(Measure.uniform(D2)).eval(IFunction(D2, (ZERO, ONE))) == HALF


def test_eval_space_mismatch():
    with pytest.raises(SpaceMismatch):
        unit(D2, 0).eval(IFunction.constant(D3, 1))


# -- weakly averaging ---------------------------------------------------------------------


def test_weakly_averaging_examples():
    p = Measure(D3, (F(1, 6), F(1, 2), F(1, 3)))
    assert check_weakly_averaging(Functional.canonical(p)).passed
    sq = adversarial.square_at_point(D2)
    res = check_weakly_averaging(sq, [HALF])
    assert not res.passed and res.witness == {"u": HALF, "value": F(1, 4)}
    assert check_weakly_averaging(adversarial.max_over_atoms(D2)).passed


# -- affine -------------------------------------------------------------------------------


def test_affine_examples():
    f, g = IFunction(D2, (ONE, ZERO)), IFunction(D2, (ZERO, ONE))
    res = check_affine(adversarial.max_over_atoms(D2), [(f, g, HALF)])
    assert not res.passed
    assert res.witness["lhs"] == HALF and res.witness["rhs"] == 1
    assert res.witness["f"] == f and res.witness["g"] == g and res.witness["r"] == HALF
    samples = [(a, b, r) for a in sample_functions(D3) for b in sample_functions(D3) for r in (F(1, 3), HALF)]
    assert check_affine(Functional.canonical(Measure.uniform(D3)), samples).passed
    for x in D3.points:
        assert check_affine(unit(D3, x), samples).passed


# -- limits ---------------------------------------------------------------------------------


def test_limits_canonical_on_naturals():
    r = random.Random(1)
    for _ in range(20):
        p = random_countable_measure(r)
        s = random_countable_set(r)
        g = Functional.canonical(p)
        assert check_preserves_limits(g, indicator(s), [indicator_truncations(s, 40)]).passed
        # the partial sums along the singleton cover reach P(S)
        assert sum(g.eval(indicator(c)) for c in singleton_cover(s, 40)) == p.mass(s)


def test_limits_finite_space_with_f_in_chain():
    f = IFunction(D3, (F(1, 3), F(5, 7), ONE))
    g = Functional.canonical(Measure.uniform(D3))
    assert check_preserves_limits(g, f, [dyadic_chain(f, 5) + [f]]).passed


def test_limits_tail_functional_fails_on_singleton_cover():
    p = CountableMeasure(((0, HALF), (1, F(1, 4)), (2, F(1, 4))))
    g = adversarial.tail_mixture(p)
    # agrees with P on finite sets, so each cover piece looks right
    for k in range(3):
        assert g.eval(indicator(NATURALS.singleton(k))) == p.mass(NATURALS.singleton(k)) / 2
    whole = NATURALS.whole()
    res = check_preserves_limits(g, indicator(whole), [indicator_truncations(whole, 16)])
    assert not res.passed
    assert res.witness["reached"] == HALF and res.witness["G(f)"] == 1


def test_limits_rejects_bad_chains():
    f = IFunction(D2, (HALF, HALF))
    g = Functional.canonical(Measure.uniform(D2))
    with pytest.raises(ValueError, match="monotone"):
        check_preserves_limits(g, f, [[IFunction(D2, (HALF, ZERO)), IFunction(D2, (ZERO, ZERO))]])
    with pytest.raises(ValueError, match="below"):
        check_preserves_limits(g, f, [[IFunction(D2, (ONE, ZERO))]])


def test_dyadic_chain_is_monotone_and_below():
    f = IFunction(D3, (F(1, 3), F(5, 7), ONE))
    chain = dyadic_chain(f, 6)
    assert all(a.le(b) for a, b in zip(chain, chain[1:]))
    assert all(c.le(f) for c in chain)


# -- unit, pushforward and join ----------------------------------------------------------


def test_unit_passes_all_checks():
    for x in D3.points:
        assert all(r.passed for r in laws.t_properties(unit(D3, x)))


def test_t_pushforward_examples():
    r = random.Random(2)
    p = random_measure(r, D3)
    g = Functional.canonical(p)
    assert functionals_equal(t_pushforward(MeasurableFn.identity(D3), g), g)
    f = MeasurableFn(D3, D3, (2, 0, 2))
    for x in D3.points:
        assert functionals_equal(t_pushforward(f, unit(D3, x)), unit(D3, f(x)))


def test_t_join_examples():
    p = Measure(D3, (F(1, 6), F(1, 2), F(1, 3)))
    g = Functional.canonical(p)
    assert functionals_equal(t_join(FunctionalOnFunctionals.point_mass(g)), g)
    q = FunctionalOnFunctionals.mixture([(HALF, unit(D3, 0)), (HALF, unit(D3, 2))])
    f = IFunction(D3, (F(1, 5), ONE, HALF))
    assert t_join(q).eval(f) == (f(0) + f(2)) / 2


def test_t_join_rejects_mixed_spaces():
    q = FunctionalOnFunctionals.mixture([(HALF, unit(D3, 0)), (HALF, unit(D2, 0))])
    with pytest.raises(SpaceMismatch):
        t_join(q)


@given(st.integers(0, 2**32))
def test_closure_under_pushforward_and_join(seed):
    r = random.Random(seed)
    space = random_space(r, 3)
    g = Functional.canonical(random_measure(r, space))
    target = random_space(r, 3)
    pushed = t_pushforward(random_map(r, space, target), g)
    assert all(res.passed for res in laws.t_properties(pushed))
    assert all(res.passed for res in laws.t_properties(t_join(random_mixture(r, space))))


def test_t_monad_laws_exhaustive_small():
    r = random.Random(4)
    for n in (1, 2, 3):
        space = random_space(r, n)
        tests = laws.test_functions(space, [random_ifunction(r, space) for _ in range(20)])
        for p in grid_measures(space, 3):
            g = Functional.canonical(p)
            assert laws.t_unit_left(g, tests).passed
            assert laws.t_unit_right(g, tests).passed
        qqq = FunctionalOnFunctionals.mixture([(F(1, 3), random_mixture(r, space)), (F(2, 3), random_mixture(r, space))])
        assert laws.t_associativity(qqq, tests).passed


def test_canonical_functionals_separated_by_indicators():
    ms = grid_measures(FiniteSpace(3, (frozenset({0, 1}), frozenset({2}))), 4)
    for a in ms:
        for b in ms:
            assert functionals_equal(Functional.canonical(a), Functional.canonical(b)) == (a == b)


# -- Lemma basic ----------------------------------------------------------------------------


def test_lemma_items_on_canonical_functionals():
    r = random.Random(5)
    for _ in range(20):
        space = random_space(r, 4)
        g = Functional.canonical(random_measure(r, space))
        pairs = [random_set_pair(r, space) for _ in range(25)]
        report = lemma_basic_suite(g, pairs, sample_functions(space), [0, F(1, 3), HALF, ONE])
        assert report.passed
        assert report.items["v"].status == "skipped"


def test_lemma_ii_example():
    p = Measure(D3, (F(1, 6), F(1, 2), F(1, 3)))
    g = Functional.canonical(p)
    for s in D3.measurable_sets():
        assert g.eval(indicator(s.complement())) == 1 - p.mass(s)


def test_lemma_iii_disjoint_reduces_to_additivity():
    p = Measure(D3, (F(1, 6), F(1, 2), F(1, 3)))
    s, t = D3.set_of_points({0}), D3.set_of_points({1, 2})
    assert p.mass(s & t) == 0
    report = lemma_basic_suite(Functional.canonical(p), [(s, t)])
    assert report.items["iii"].status == "pass"


def test_lemma_vi_with_zero_scale():
    g = Functional.canonical(Measure.uniform(D3))
    report = lemma_basic_suite(g, [], [IFunction(D3, (ONE, HALF, ZERO))], [0])
    assert report.items["vi"].status == "pass"
    assert g.eval(indicator(D3.empty())) == 0


def test_lemma_v_on_naturals():
    r = random.Random(6)
    for _ in range(20):
        g = Functional.canonical(random_countable_measure(r))
        s = random_countable_set(r)
        covers = [(s, singleton_cover(s, 64))] if not s.cofinite else [(NATURALS.whole(), singleton_cover(NATURALS.whole(), 64))]
        assert lemma_basic_suite(g, [], covers=covers).items["v"].status == "pass"


def test_lemma_failure_reports_item_and_sets():
    g = adversarial.max_over_atoms(D3)
    s = D3.set_of_points({0})
    report = lemma_basic_suite(g, [(s, D3.set_of_points({1}))])
    assert report.failed() == {"ii", "iii"}
    assert report.items["ii"].witness["S"] == s


# -- property tests ---------------------------------------------------------------------------


@given(st.integers(0, 2**32))
def test_canonical_eval_is_integral(seed):
    r = random.Random(seed)
    space = random_space(r, 4)
    p = random_measure(r, space)
    f = random_ifunction(r, space)
    assert Functional.canonical(p).eval(f) == integrate(p, f)
