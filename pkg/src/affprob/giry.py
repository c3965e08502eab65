"""The Giry monad on finite spaces and on the naturals (finite support)."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence, Union

from .numeric import ONE, ZERO, UnitRational, as_unit
from .spaces import (
    DEFAULT_TENSOR_CAP,
    NATURALS,
    CountableSet,
    FiniteSpace,
    IFunction,
    MeasurableFn,
    MeasurableSet,
    SpaceMismatch,
    TensorSpace,
    constant_graph,
    evaluation_map,
    function_space,
    require_measurable,
    tensor_sigma_algebra,
)


class NotAMeasure(ValueError):
    pass


@dataclass(frozen=True)
class Measure:
    """A probability measure on a finite space: one mass per atom."""

    space: FiniteSpace
    masses: tuple[UnitRational, ...]

    def __post_init__(self):
        masses = tuple(as_unit(m) for m in self.masses)
        if len(masses) != self.space.n_atoms:
            raise NotAMeasure(f"need {self.space.n_atoms} masses, got {len(masses)}")
        total = sum(masses, Fraction(0))
        if total != 1:
            raise NotAMeasure(f"masses sum to {total}, not 1")
        object.__setattr__(self, "masses", masses)

    def mass(self, s: MeasurableSet) -> Fraction:
        if s.space != self.space:
            raise SpaceMismatch("set is not in the measure's space")
        return sum((self.masses[i] for i in s.mask), Fraction(0))

    __call__ = mass

    @classmethod
    def uniform(cls, space: FiniteSpace) -> Measure:
        return cls(space, (Fraction(1, space.n_atoms),) * space.n_atoms)


@dataclass(frozen=True)
class CountableMeasure:
    """A finitely supported probability measure on the naturals."""

    support: tuple[tuple[int, UnitRational], ...]

    def __post_init__(self):
        merged: dict[int, Fraction] = {}
        for p, m in self.support:
            if p < 0:
                raise NotAMeasure("naturals are non-negative")
            merged[p] = merged.get(p, Fraction(0)) + Fraction(m)
        support = tuple((p, as_unit(m)) for p, m in sorted(merged.items()) if m != 0)
        total = sum((m for _, m in support), Fraction(0))
        if total != 1:
            raise NotAMeasure(f"masses sum to {total}, not 1")
        object.__setattr__(self, "support", support)

    @property
    def space(self):
        return NATURALS

    def mass(self, s: CountableSet) -> Fraction:
        return sum((m for p, m in self.support if p in s), Fraction(0))

    __call__ = mass


AnyMeasure = Union[Measure, CountableMeasure]


def pushforward(p: Measure, f: MeasurableFn) -> Measure:
    """``P f^{-1}``: mass of a codomain atom is ``P`` of its preimage."""
    if f.dom != p.space:
        raise SpaceMismatch("map domain differs from the measure's space")
    require_measurable(f)
    cod = f.cod
    return Measure(cod, tuple(p.mass(f.preimage(cod.atom_set(b))) for b in range(cod.n_atoms)))


def dirac(space, x: int) -> AnyMeasure:
    if space is NATURALS:
        return CountableMeasure(((x, ONE),))
    a = space.atom_of(x)
    return Measure(space, tuple(ONE if i == a else ZERO for i in range(space.n_atoms)))


def integrate(p: AnyMeasure, f) -> UnitRational:
    """``int f dP`` as a finite sum; on the naturals the tail value weighs the leftover mass."""
    if f.space != p.space:
        raise SpaceMismatch("function and measure live on different spaces")
    if isinstance(p, CountableMeasure):
        head = sum((m * f(x) for x, m in p.support), Fraction(0))
        leftover = 1 - sum((m for _, m in p.support), Fraction(0))
        return UnitRational(head + leftover * f.tail)
    return UnitRational(sum((m * v for m, v in zip(p.masses, f.values)), Fraction(0)))


def integral_operator(f) -> Callable[[AnyMeasure], UnitRational]:
    """``P -> int f dP``."""
    return lambda p: integrate(p, f)


# -- measures on measures -----------------------------------------------------


@dataclass(frozen=True, eq=False)
class MeasureOnMeasures:
    """A finitely supported measure on ``G(X)`` (or on ``G(G(X))`` when nested)."""

    items: tuple[tuple[UnitRational, object], ...]

    def __post_init__(self):
        items = tuple((as_unit(w), e) for w, e in self.items)
        if not items:
            raise NotAMeasure("empty support")
        if sum((w for w, _ in items), Fraction(0)) != 1:
            raise NotAMeasure("weights must sum to 1")
        object.__setattr__(self, "items", items)

    @classmethod
    def point_mass(cls, element) -> MeasureOnMeasures:
        return cls(((ONE, element),))

    def weights(self) -> dict:
        """Weights merged over equal support elements, zeros dropped."""
        out: dict = {}
        for w, e in self.items:
            out[e] = out.get(e, Fraction(0)) + w
        return {e: w for e, w in out.items() if w != 0}

    def mass_where(self, predicate: Callable[[object], bool]) -> Fraction:
        return sum((w for w, e in self.items if predicate(e)), Fraction(0))

    def __eq__(self, other):
        if not isinstance(other, MeasureOnMeasures):
            return NotImplemented
        return self.weights() == other.weights()

    def __hash__(self):
        return hash(frozenset(self.weights().items()))

    @property
    def space(self):
        spaces = {e.space for _, e in self.items}
        if len(spaces) != 1:
            raise SpaceMismatch("support elements live on different spaces")
        return spaces.pop()


def join(q: MeasureOnMeasures):
    """``mu'(Q)(S) = int q(S) dQ``.

    For a measure on measures this is a measure on ``X``; for a measure on
    measures-on-measures it flattens one level.
    """
    elements = [e for _, e in q.items]
    if all(isinstance(e, MeasureOnMeasures) for e in elements):
        return MeasureOnMeasures(tuple((w * v, e) for w, inner in q.items for v, e in inner.items))
    if not all(isinstance(e, Measure) for e in elements):
        raise TypeError("join expects a measure on measures")
    space = q.space
    masses = [Fraction(0)] * space.n_atoms
    for w, e in q.items:
        for i, m in enumerate(e.masses):
            masses[i] += w * m
    return Measure(space, tuple(masses))


def giry_map(q: MeasureOnMeasures, fn: Callable) -> MeasureOnMeasures:
    """Pushforward of a finitely supported measure along an arbitrary map of its support."""
    return MeasureOnMeasures(tuple((w, fn(e)) for w, e in q.items))


def dirac_inside(p: Measure) -> MeasureOnMeasures:
    """``G(eta')(P)``: mass ``P(a)`` on the Dirac measure at each atom ``a``."""
    space = p.space
    return MeasureOnMeasures(
        tuple((m, dirac(space, space.representative(a))) for a, m in enumerate(p.masses) if m)
    )


def giry_two(alpha) -> Measure:
    """``delta_0 +_alpha delta_1`` on the discrete two-point space."""
    alpha = as_unit(alpha)
    return Measure(FiniteSpace.discrete(2), (alpha, 1 - alpha))


# -- strength and the structure map --------------------------------------------


def strength(
    p: Measure, y: int, y_space: FiniteSpace, cap: int | None = DEFAULT_TENSOR_CAP
) -> Measure:
    """``tau(P, y) = P Gamma_y^{-1}`` on ``X (x) Y``."""
    t = tensor_sigma_algebra(p.space, y_space, cap)
    return pushforward(p, constant_graph(t, y))


def strength_on(p: Measure, y: int, t: TensorSpace) -> Measure:
    """As :func:`strength` with the tensor space already built."""
    if t.left != p.space:
        raise SpaceMismatch("tensor's left factor differs from the measure's space")
    return pushforward(p, constant_graph(t, y))


def st_map(f: MeasurableFn) -> Callable[[Measure], Measure]:
    """``G(f)``: the pushforward along ``f``."""
    require_measurable(f)
    return lambda p: pushforward(p, f)


def st_map_composite(f: MeasurableFn, p: Measure) -> Measure:
    """``P -> (P, f) -> P Gamma_f^{-1} -> P Gamma_f^{-1} ev^{-1}`` through ``X (x) Y^X``."""
    fs = function_space(f.dom, f.cod)
    t = tensor_sigma_algebra(f.dom, fs, cap=None)
    paired = strength_on(p, fs.index_of(f), t)
    return pushforward(paired, evaluation_map(t))


def factored_integral(p: Measure, f: IFunction) -> UnitRational:
    """``int f dP`` computed through ``G(2)``.

    ``f`` factors through its finite value set ``V``; each value ``u`` is
    the measure on ``2`` with mass ``u`` at ``1``, i.e. ``delta_0 +_{1-u}
    delta_1``.  Pushing ``P`` to ``G(V)``, mapping into ``G(G(2))``,
    joining and evaluating at ``{1}`` gives the integral.
    """
    values = sorted(set(f.values))
    v_space = FiniteSpace.discrete(len(values))
    to_values = MeasurableFn(p.space, v_space, tuple(values.index(f(x)) for x in p.space.points))
    on_values = st_map_composite(to_values, p)
    qq = MeasureOnMeasures(
        tuple((on_values.masses[i], giry_two(1 - u)) for i, u in enumerate(values))
    )
    two = join(qq)
    return UnitRational(two.mass(two.space.atom_set(1)))


def partial_sums(p: AnyMeasure, cover: Sequence) -> list[Fraction]:
    """Running totals ``sum_{i<=N} P(S_i)`` along a disjoint cover."""
    out, acc = [], Fraction(0)
    for s in cover:
        acc += p.mass(s)
        out.append(acc)
    return out
