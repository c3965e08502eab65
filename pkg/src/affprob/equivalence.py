"""The isomorphism between functionals and measures, and its monad-morphism squares.

``phi`` reads a measure off a functional by evaluating it on indicators;
``gamma`` sends a measure to integration against it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .functionals import (
    CheckResult,
    Functional,
    FunctionalOnFunctionals,
    property_gate,
    sample_functions,
    t_join,
    t_map,
    t_pushforward,
    unit,
)
from .giry import CountableMeasure, Measure, MeasureOnMeasures, dirac, join, pushforward
from .numeric import UnitRational, as_unit, unit_grid
from .spaces import (
    NATURALS,
    AnyIFunction,
    CountableSpace,
    FiniteSpace,
    MeasurableFn,
    indicator,
)


class NotInT(ValueError):
    """Raised when a functional is shown not to be an element of ``T(X)``."""

    def __init__(self, message: str, deficit: Fraction | None = None, witness=None):
        super().__init__(message)
        self.deficit = deficit
        self.witness = witness


DEFAULT_HORIZON = 64


def phi(g: Functional, gate: bool = True, horizon: int = DEFAULT_HORIZON):
    """``S -> G(chi_S)`` as a measure.

    With ``gate`` the sampled property checks run first (skipped for
    canonical functionals).  The masses must then sum to exactly 1; on the
    naturals only singletons below ``horizon`` are read, so mass escaping
    to infinity shows up as a deficit.
    """
    if gate and not g.is_canonical:
        for result in property_gate(g):
            if not result.passed:
                raise NotInT(f"not a T(X) element: fails {result.name}", witness=result.witness)
    if isinstance(g.space, CountableSpace):
        masses = [(p, g.eval(indicator(NATURALS.singleton(p)))) for p in range(horizon)]
        total = sum((m for _, m in masses), Fraction(0))
        if total != 1:
            raise NotInT(f"not a T(X) element: masses sum to {total}", deficit=1 - total)
        return CountableMeasure(tuple((p, m) for p, m in masses if m))
    space = g.space
    masses = [g.eval(indicator(space.atom_set(a))) for a in range(space.n_atoms)]
    total = sum(masses, Fraction(0))
    if total != 1:
        raise NotInT(f"not a T(X) element: masses sum to {total}", deficit=1 - total)
    return Measure(space, tuple(masses))


def gamma(p) -> Functional:
    """``P -> (f -> int f dP)``."""
    return Functional.canonical(p)


def functionals_equal(a: Functional, b: Functional, extra: Iterable[AnyIFunction] = ()) -> bool:
    """Agreement on every measurable indicator plus the ``extra`` functions.

    On finite spaces the indicators alone decide equality within ``T(X)``.
    """
    if a.space != b.space:
        return False
    space = a.space
    if isinstance(space, CountableSpace):
        tests = list(sample_functions(space))
    else:
        tests = [indicator(s) for s in space.measurable_sets()]
    tests.extend(extra)
    return all(a.eval(f) == b.eval(f) for f in tests)


def check_naturality(f: MeasurableFn, g: Functional) -> CheckResult:
    """``phi(T(f)(G)) == G(f)(phi(G))``."""
    lhs = phi(t_pushforward(f, g), gate=False)
    rhs = pushforward(phi(g, gate=False), f)
    if lhs != rhs:
        return CheckResult("phi-naturality", False, {"lhs": lhs.masses, "rhs": rhs.masses}, 1)
    return CheckResult("phi-naturality", True, cases=1)


# -- horizontal composite ----------------------------------------------------------


def _indicator_of_functional(target: Functional):
    """``xi = chi_{{target}}`` on ``T(X)``, deciding membership extensionally."""
    return lambda g: UnitRational(1 if functionals_equal(g, target) else 0)


def phi_outer(q: FunctionalOnFunctionals) -> MeasureOnMeasures:
    """``phi_{T(X)}(Q)``: the measure on ``T(X)`` with ``{G} -> Q(chi_{{G}})``.

    The atoms of ``T(X)`` seen by ``Q`` are its support points up to
    extensional equality.
    """
    if q.support is None:
        raise ValueError("phi on T(T(X)) needs a finite-support functional")
    reps: list[Functional] = []
    for _, g in q.support:
        if not any(functionals_equal(g, r) for r in reps):
            reps.append(g)
    items = tuple((q.eval(_indicator_of_functional(r)), r) for r in reps)
    return MeasureOnMeasures(tuple((w, r) for w, r in items if w))


def phi_phi(q: FunctionalOnFunctionals) -> MeasureOnMeasures:
    """``G(phi_X)(phi_{T(X)}(Q))``."""
    outer = phi_outer(q)
    return MeasureOnMeasures(tuple((w, phi(g, gate=False)) for w, g in outer.items))


def phi_phi_other_way(q: FunctionalOnFunctionals) -> MeasureOnMeasures:
    """``phi_{G(X)}(T(phi_X)(Q))``; the other side of the interchange square."""
    mapped = t_map(q, lambda g: phi(g, gate=False))
    seen: list[Measure] = []
    for _, p in mapped.support:
        if p not in seen:
            seen.append(p)
    items = tuple((mapped.eval(lambda p, target=t: UnitRational(1 if p == target else 0)), t) for t in seen)
    return MeasureOnMeasures(tuple((w, t) for w, t in items if w))


@dataclass
class MorphismReport:
    left: list[CheckResult]
    right: list[CheckResult]

    @property
    def passed(self) -> bool:
        return all(self.left) and all(self.right)


def check_left_square(space: FiniteSpace, x: int) -> CheckResult:
    """``phi(unit(x)) == dirac(x)``."""
    got = phi(unit(space, x), gate=False)
    want = dirac(space, x)
    if got != want:
        return CheckResult("monadIso-left-square", False, {"x": x, "phi": got.masses, "dirac": want.masses}, 1)
    return CheckResult("monadIso-left-square", True, cases=1)


def check_right_square(q: FunctionalOnFunctionals) -> CheckResult:
    """``phi(mu(Q)) == join(phi.phi(Q))``, with the composite taken both ways."""
    east_south = phi(t_join(q), gate=False)
    south = phi_phi(q)
    other = phi_phi_other_way(q)
    south_east = join(south)
    witness = None
    if south != other:
        witness = {"reason": "horizontal composite differs between its two routes"}
    elif east_south != south_east:
        witness = {"phi(mu(Q))": east_south.masses, "join(phi.phi(Q))": south_east.masses}
    if witness:
        return CheckResult("monadIso-right-square", False, witness, 1)
    return CheckResult("monadIso-right-square", True, cases=1)


def check_monad_morphism(
    space: FiniteSpace, points: Iterable[int] | None = None, qs: Iterable[FunctionalOnFunctionals] = ()
) -> MorphismReport:
    points = space.points if points is None else points
    return MorphismReport(
        [check_left_square(space, x) for x in points],
        [check_right_square(q) for q in qs],
    )


# -- G(2) and sigma-algebra generators --------------------------------------------------


TWO = FiniteSpace.discrete(2)


def alpha_to_measure(alpha) -> Measure:
    """``delta_{0} +_alpha delta_{1}``."""
    alpha = as_unit(alpha)
    return Measure(TWO, (alpha, 1 - alpha))


def measure_to_alpha(p: Measure) -> UnitRational:
    if p.space != TWO:
        raise ValueError("expected a measure on the two-point space")
    return p.masses[0]


def giry_two_iso(max_den: int = 6) -> list[tuple[UnitRational, Measure, UnitRational]]:
    """Rows ``(alpha, measure, alpha back)`` on the grid of denominators up to ``max_den``."""
    rows = []
    for a in unit_grid(max_den):
        p = alpha_to_measure(a)
        rows.append((a, p, measure_to_alpha(p)))
    return rows


def generator_preimage_matches(
    functionals: Sequence[Functional], s, lo, hi
) -> bool:
    """``{G | phi(G)(S) in [lo, hi]} == {G | G(chi_S) in [lo, hi]}`` over a finite family."""
    via_measure = {i for i, g in enumerate(functionals) if lo <= phi(g, gate=False).mass(s) <= hi}
    via_functional = {i for i, g in enumerate(functionals) if lo <= g.eval(indicator(s)) <= hi}
    return via_measure == via_functional
