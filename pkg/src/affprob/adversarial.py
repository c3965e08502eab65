"""Black-box functionals built to break specific properties.

Each fixture records the set of checks it is designed to fail; the test
suite confirms it fails those and passes the rest.

Some single Lemma basic items cannot fail on their own: (i) together with
(iii) forces (ii), and (iii) with (ii) and (vi) forces (iv) on indicators.
Fixtures targeting (i), (ii) or (iv) therefore declare the smallest item
set that can fail together.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .functionals import Functional
from .giry import CountableMeasure, Measure, integrate
from .numeric import HALF, cvx_combine
from .spaces import NATURALS, FiniteSpace, telescoping_decompose


@dataclass(frozen=True)
class Fixture:
    name: str
    functional: Functional
    fails: frozenset[str]


def square_at_point(space: FiniteSpace, x0: int = 0) -> Functional:
    """``f -> f(x0)^2``; not weakly averaging, not affine."""
    return Functional.black_box(space, lambda f: f(x0) * f(x0), "square-at-point")


def shifted_integral(p: Measure) -> Functional:
    """``f -> (int f dP) +_{1/2} 1/2``; affine but moves constants."""
    return Functional.black_box(p.space, lambda f: cvx_combine(integrate(p, f), HALF, HALF), "shifted-integral")


def max_over_atoms(space: FiniteSpace) -> Functional:
    """``f -> max f``; weakly averaging and monotone, not affine."""
    return Functional.black_box(space, lambda f: max(f.values), "max-over-atoms")


def tail_mixture(p: CountableMeasure) -> Functional:
    """``f -> (int f dP) +_{1/2} (value of f at infinity)``.

    Affine and weakly averaging, but half its weight sits beyond every
    finite set, so it does not commute with increasing limits.
    """
    return Functional.black_box(NATURALS, lambda f: cvx_combine(integrate(p, f), f.tail, HALF), "tail-mixture")


def capacity_integral(space: FiniteSpace, capacity: Callable[[int], Fraction]) -> Functional:
    """Choquet integral of a capacity depending only on the number of atoms.

    ``G(f) = sum_i a_i * c(|S_i|)`` over the telescoping decomposition of
    ``f``.  Self-dual capacities (``c(k) + c(n-k) = 1``) satisfy every
    Lemma basic identity except modularity.
    """

    def evaluate(f):
        d = telescoping_decompose(f)
        return sum((a * capacity(len(s.mask)) for a, s in d.terms), Fraction(0))

    return Functional.black_box(space, evaluate, "capacity-integral")


def squared_integral(p: Measure) -> Functional:
    """``f -> int f^2 dP``; agrees with ``P`` on indicators but not homogeneous."""
    return Functional.black_box(
        p.space, lambda f: sum((m * v * v for m, v in zip(p.masses, f.values)), Fraction(0)), "squared-integral"
    )


def constant_half(space) -> Functional:
    return Functional.black_box(space, lambda f: HALF, "constant-half")


def reflected_integral(p: Measure) -> Functional:
    """``f -> 1 - int f dP``; order reversing."""
    return Functional.black_box(p.space, lambda f: 1 - integrate(p, f), "reflected-integral")


def self_dual_capacity(n: int) -> Callable[[int], Fraction]:
    """``c(k) = k/n`` nudged by ``1/(4n)`` away from ``n/2``; non-additive once ``n >= 3``."""

    def c(k: int) -> Fraction:
        if k in (0, n):
            return Fraction(k, n)
        side = (2 * k > n) - (2 * k < n)
        return Fraction(k, n) + Fraction(side, 4 * n)

    return c


WA, AFF, LIM = "weakly-averaging", "affine", "preserves-limits"
DEFAULT_TAIL_MEASURE = ((0, Fraction(1, 2)), (1, Fraction(1, 4)), (2, Fraction(1, 4)))


def _finite_measure(space, p):
    return p if p is not None else Measure.uniform(space)


@dataclass(frozen=True)
class Kind:
    """A named adversarial construction and the checks it is built to fail."""

    name: str
    build: Callable
    properties: frozenset[str]
    lemma_items: frozenset[str]
    countable: bool = False
    min_atoms: int = 1  # below this the construction stops failing its properties


KINDS: dict[str, Kind] = {
    k.name: k
    for k in [
        Kind("shifted-integral", lambda x, p: shifted_integral(_finite_measure(x, p)), frozenset({WA}), frozenset({"i", "vi"})),
        Kind("max-over-atoms", lambda x, p: max_over_atoms(x), frozenset({AFF}), frozenset({"ii", "iii"}), min_atoms=2),
        Kind(
            "tail-mixture",
            lambda x, p: tail_mixture(p if p is not None else CountableMeasure(DEFAULT_TAIL_MEASURE)),
            frozenset({LIM}),
            frozenset({"v"}),
            countable=True,
        ),
        Kind("square-at-point", lambda x, p: square_at_point(x), frozenset({WA, AFF}), frozenset({"vi"})),
        Kind(
            "capacity-integral",
            lambda x, p: capacity_integral(x, self_dual_capacity(x.n_atoms)),
            frozenset({AFF}),
            frozenset({"iii"}),
            min_atoms=3,
        ),
        Kind("squared-integral", lambda x, p: squared_integral(_finite_measure(x, p)), frozenset({WA, AFF}), frozenset({"vi"})),
        Kind("constant-half", lambda x, p: constant_half(x), frozenset({WA}), frozenset({"i", "vi"})),
        Kind(
            "reflected-integral",
            lambda x, p: reflected_integral(_finite_measure(x, p)),
            frozenset({WA, LIM}),
            frozenset({"i", "iv", "vi"}),
        ),
    ]
}

# each of the three defining properties with a construction failing only it
PROPERTY_KINDS = {"non-weakly-averaging": "shifted-integral", "non-affine": "max-over-atoms", "limit-violating": "tail-mixture"}

LEMMA_KINDS = (
    "capacity-integral",
    "tail-mixture",
    "squared-integral",
    "constant-half",
    "max-over-atoms",
    "reflected-integral",
)


def resolve(name: str) -> Kind:
    name = PROPERTY_KINDS.get(name, name)
    if name not in KINDS:
        choices = ", ".join([*PROPERTY_KINDS, *KINDS])
        raise ValueError(f"unknown adversarial kind {name!r}; choose from {choices}")
    return KINDS[name]


def build(name: str, space=None, measure=None) -> Fixture:
    """Instantiate a named kind; finite kinds default to the discrete 3-point space."""
    kind = resolve(name)
    if kind.countable:
        space = NATURALS
    elif space is None:
        space = FiniteSpace.discrete(3)
    elif space.n_atoms < kind.min_atoms:
        raise ValueError(f"{kind.name} needs at least {kind.min_atoms} atoms")
    return Fixture(kind.name, kind.build(space, measure), kind.properties)


def lemma_fixtures() -> list[Fixture]:
    """The Lemma basic fixtures with their declared failing items."""
    x3 = FiniteSpace.discrete(3)
    p3 = Measure(x3, (Fraction(1, 2), Fraction(1, 3), Fraction(1, 6)))
    out = []
    for name in LEMMA_KINDS:
        kind = KINDS[name]
        g = kind.build(NATURALS if kind.countable else x3, None if kind.countable else p3)
        out.append(Fixture(name, g, kind.lemma_items))
    return out


def property_fixture(kind: str, space: FiniteSpace | None = None) -> Fixture:
    """A functional failing exactly one of the three defining properties."""
    if kind not in PROPERTY_KINDS:
        raise ValueError(f"unknown property kind {kind!r}; choose from {', '.join(PROPERTY_KINDS)}")
    if kind == "non-affine" and space is None:
        space = FiniteSpace.discrete(2)
    return build(kind, space)
