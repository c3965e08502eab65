import random
from fractions import Fraction

import pytest

from affprob import adversarial
from affprob.equivalence import NotInT, phi
from affprob.functionals import lemma_basic_suite, property_gate, sample_functions, singleton_cover
from affprob.generators import random_countable_set, random_set_pair
from affprob.spaces import NATURALS, CountableSpace, FiniteSpace

F = Fraction


def failing_properties(g):
    return {r.name for r in property_gate(g) if not r.passed}


def lemma_samples(space, rng):
    if isinstance(space, CountableSpace):
        pairs = [(random_countable_set(rng), random_countable_set(rng)) for _ in range(60)]
        covers = [(s, singleton_cover(s, 64)) for s, _ in pairs if not s.cofinite]
        covers.append((NATURALS.whole(), singleton_cover(NATURALS.whole(), 64)))
    else:
        pairs = [random_set_pair(rng, space) for _ in range(60)]
        pairs += [(space.atom_set(a), space.atom_set(b)) for a in range(space.n_atoms) for b in range(space.n_atoms)]
        covers = []
    return pairs, sample_functions(space), [0, F(1, 3), F(1, 2)], covers


@pytest.mark.parametrize("name", sorted(adversarial.KINDS))
def test_kind_fails_exactly_its_declared_properties(name):
    kind = adversarial.KINDS[name]
    space = None if kind.countable else FiniteSpace.discrete(3)
    fixture = adversarial.build(name, space)
    assert failing_properties(fixture.functional) == set(kind.properties)


@pytest.mark.parametrize("fixture", adversarial.lemma_fixtures(), ids=lambda f: f.name)
def test_lemma_fixture_fails_exactly_its_declared_items(fixture):
    report = lemma_basic_suite(fixture.functional, *lemma_samples(fixture.functional.space, random.Random(11)))
    assert report.failed() == set(fixture.fails)


@pytest.mark.parametrize("kind", sorted(adversarial.PROPERTY_KINDS))
def test_property_fixture_fails_one_property_and_phi_rejects(kind):
    fixture = adversarial.property_fixture(kind)
    assert len(fixture.fails) == 1
    assert failing_properties(fixture.functional) == set(fixture.fails)
    with pytest.raises(NotInT):
        phi(fixture.functional)


def test_max_over_atoms_hits_sum_guard_without_gate():
    with pytest.raises(NotInT) as exc:
        phi(adversarial.max_over_atoms(FiniteSpace.discrete(2)), gate=False)
    assert exc.value.deficit == -1


def test_tail_mixture_deficit_is_mass_at_infinity():
    with pytest.raises(NotInT) as exc:
        phi(adversarial.build("tail-mixture").functional, gate=False)
    assert exc.value.deficit == F(1, 2)


def test_resolve_aliases_and_unknown_names():
    assert adversarial.resolve("non-affine").name == "max-over-atoms"
    with pytest.raises(ValueError, match="unknown adversarial kind"):
        adversarial.resolve("nonsense")


def test_self_dual_capacity_is_self_dual_and_not_additive():
    for n in range(3, 7):
        c = adversarial.self_dual_capacity(n)
        assert all(c(k) + c(n - k) == 1 for k in range(n + 1))
        assert any(c(1) + c(k) != c(k + 1) for k in range(1, n))
