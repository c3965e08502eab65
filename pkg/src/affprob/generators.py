"""Seeded random and exhaustive fixture generators.

Every random helper takes a ``random.Random`` so runs replay from a seed.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from typing import Iterator

from .convex import INTERVAL, AffineMap, Polytope, Simplex, SimplexPoint, homs_to_interval
from .functionals import Functional, FunctionalOnFunctionals
from .giry import CountableMeasure, Measure
from .numeric import UnitRational
from .spaces import (
    CountableSet,
    FiniteSpace,
    IFunction,
    MeasurableFn,
    MeasurableSet,
)


def set_partitions(items: list) -> Iterator[list[list]]:
    """All partitions of ``items`` into nonempty blocks."""
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        yield [[first], *part]
        for i in range(len(part)):
            yield [*part[:i], [first, *part[i]], *part[i + 1 :]]


def all_spaces(n_points: int) -> list[FiniteSpace]:
    """Every sigma-algebra on ``n_points`` points."""
    return [FiniteSpace(n_points, tuple(frozenset(b) for b in p)) for p in set_partitions(list(range(n_points)))]


def random_space(rng: random.Random, n_points: int, n_atoms: int | None = None) -> FiniteSpace:
    """A random partition of the points; ``n_atoms`` fixes the number of blocks."""
    k = n_atoms if n_atoms is not None else rng.randint(1, n_points)
    if not 1 <= k <= n_points:
        raise ValueError("need 1 <= atoms <= points")
    labels = list(range(k)) + [rng.randrange(k) for _ in range(n_points - k)]
    rng.shuffle(labels)
    blocks: dict[int, set[int]] = {}
    for p, lab in enumerate(labels):
        blocks.setdefault(lab, set()).add(p)
    return FiniteSpace(n_points, tuple(frozenset(b) for b in blocks.values()))


def compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """Ordered tuples of ``parts`` non-negative integers summing to ``total``."""
    for cuts in itertools.combinations(range(total + parts - 1), parts - 1):
        prev, out = -1, []
        for c in (*cuts, total + parts - 1):
            out.append(c - prev - 1)
            prev = c
        yield tuple(out)


def grid_measures(space: FiniteSpace, max_den: int) -> list[Measure]:
    """Every measure whose masses have denominators dividing some ``d <= max_den``."""
    seen: set[tuple] = set()
    out = []
    for d in range(1, max_den + 1):
        for comp in compositions(d, space.n_atoms):
            masses = tuple(Fraction(c, d) for c in comp)
            if masses not in seen:
                seen.add(masses)
                out.append(Measure(space, masses))
    return out


def random_weights(rng: random.Random, n: int, max_den: int = 12) -> tuple[Fraction, ...]:
    d = rng.randint(1, max_den)
    cuts = sorted(rng.randint(0, d) for _ in range(n - 1))
    bounds = [0, *cuts, d]
    return tuple(Fraction(bounds[i + 1] - bounds[i], d) for i in range(n))


def random_measure(rng: random.Random, space: FiniteSpace, max_den: int = 12) -> Measure:
    return Measure(space, random_weights(rng, space.n_atoms, max_den))


def random_unit(rng: random.Random, max_den: int = 8) -> UnitRational:
    d = rng.randint(1, max_den)
    return UnitRational(rng.randint(0, d), d)


def random_ifunction(rng: random.Random, space: FiniteSpace, max_den: int = 8) -> IFunction:
    return IFunction(space, tuple(random_unit(rng, max_den) for _ in range(space.n_atoms)))


def random_subset(rng: random.Random, space: FiniteSpace) -> MeasurableSet:
    return space.set_of_atoms(a for a in range(space.n_atoms) if rng.random() < 0.5)


def random_set_pair(rng: random.Random, space: FiniteSpace) -> tuple[MeasurableSet, MeasurableSet]:
    return random_subset(rng, space), random_subset(rng, space)


def random_map(rng: random.Random, dom: FiniteSpace, cod: FiniteSpace) -> MeasurableFn:
    """Constant on atoms of ``dom``, hence measurable for any ``cod``."""
    choice = [rng.randrange(cod.n_points) for _ in range(dom.n_atoms)]
    return MeasurableFn(dom, cod, tuple(choice[dom.atom_of(x)] for x in dom.points))


def random_countable_measure(rng: random.Random, max_point: int = 20, max_support: int = 5, max_den: int = 12) -> CountableMeasure:
    k = rng.randint(1, max_support)
    points = rng.sample(range(max_point), k)
    return CountableMeasure(tuple(zip(points, random_weights(rng, k, max_den))))


def random_countable_set(rng: random.Random, max_point: int = 20) -> CountableSet:
    pts = tuple(p for p in range(max_point) if rng.random() < 0.3)
    return CountableSet(pts, cofinite=rng.random() < 0.3)


def random_simplex_point(rng: random.Random, n: int, max_den: int = 12) -> SimplexPoint:
    return SimplexPoint(random_weights(rng, n, max_den))


def random_base_point(rng: random.Random, base: Polytope, max_den: int = 12):
    if base is INTERVAL:
        return random_unit(rng, max_den)
    if isinstance(base, Simplex):
        return random_simplex_point(rng, base.n, max_den)
    raise TypeError(f"no sampler for {base!r}")


def random_affine_map(rng: random.Random, dom: Polytope, cod: Polytope, max_den: int = 6) -> AffineMap:
    """Vertex images drawn at random in ``cod``; ``dom`` must be a simplex or the interval."""
    return AffineMap(dom, cod, tuple(random_base_point(rng, cod, max_den) for _ in dom.vertices()))


def random_hom(rng: random.Random, base: Polytope, max_den: int = 8) -> AffineMap:
    """A random element of ``Cvx(base, I)``."""
    return homs_to_interval(base, [random_unit(rng, max_den) for _ in base.vertices()])


def random_mixture(rng: random.Random, space: FiniteSpace, n_support: int = 3, max_den: int = 6) -> FunctionalOnFunctionals:
    """A finite-support element of ``T(T(X))`` over canonical functionals."""
    ws = random_weights(rng, n_support, max_den)
    return FunctionalOnFunctionals.mixture(
        [(w, Functional.canonical(random_measure(rng, space, max_den))) for w in ws]
    )


__all__ = [
    "all_spaces",
    "compositions",
    "grid_measures",
    "random_affine_map",
    "random_base_point",
    "random_countable_measure",
    "random_countable_set",
    "random_hom",
    "random_ifunction",
    "random_map",
    "random_measure",
    "random_mixture",
    "random_set_pair",
    "random_simplex_point",
    "random_space",
    "random_subset",
    "random_unit",
    "random_weights",
    "set_partitions",
]
