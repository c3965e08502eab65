"""Reusable law checks returning :class:`CheckResult`.

These back the CLI suites and the test-suite; each compares two
independently computed sides exactly.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .functionals import (
    CheckResult,
    Functional,
    FunctionalOnFunctionals,
    affine_samples,
    check_affine,
    check_preserves_limits,
    check_weakly_averaging,
    default_chains,
    sample_functions,
    t_join,
    t_join_outer,
    t_map,
    t_push_unit,
)
from .giry import (
    Measure,
    MeasureOnMeasures,
    dirac,
    dirac_inside,
    giry_map,
    integrate,
    join,
    pushforward,
    st_map_composite,
    strength_on,
)
from .spaces import (
    AnyIFunction,
    FiniteSpace,
    IFunction,
    MeasurableFn,
    indicator,
    product_sigma_algebra,
    projection_left,
    projection_right,
    telescoping_decompose,
    tensor_map,
    tensor_sigma_algebra,
)


def _result(name: str, ok: bool, witness: dict | None = None, cases: int = 1) -> CheckResult:
    return CheckResult(name, ok, None if ok else witness, cases)


def test_functions(space: FiniteSpace, extra: Iterable[AnyIFunction] = ()) -> list[IFunction]:
    """Every measurable indicator plus ``extra``."""
    return [*(indicator(s) for s in space.measurable_sets()), *extra]


def agree(a: Functional, b: Functional, tests: Sequence[AnyIFunction]):
    """First test function on which ``a`` and ``b`` differ, or ``None``."""
    for f in tests:
        if a.eval(f) != b.eval(f):
            return {"f": f, "lhs": a.eval(f), "rhs": b.eval(f)}
    return None


# -- Giry monad --------------------------------------------------------------------


def giry_unit_left(p: Measure) -> CheckResult:
    """``join(dirac_{G(X)}(P)) == P``."""
    got = join(MeasureOnMeasures.point_mass(p))
    return _result("giry-unit-left", got == p, {"P": p.masses, "got": got.masses})


def giry_unit_right(p: Measure) -> CheckResult:
    """``join(G(dirac)(P)) == P``."""
    got = join(dirac_inside(p))
    return _result("giry-unit-right", got == p, {"P": p.masses, "got": got.masses})


def giry_associativity(qqq: MeasureOnMeasures) -> CheckResult:
    """``join(join(QQ)) == join(G(join)(QQ))`` for ``QQ`` in ``G(G(G(X)))``."""
    lhs = join(join(qqq))
    rhs = join(giry_map(qqq, join))
    return _result("giry-associativity", lhs == rhs, {"lhs": lhs.masses, "rhs": rhs.masses})


# -- functional monad -------------------------------------------------------------


def t_unit_left(g: Functional, tests: Sequence[AnyIFunction]) -> CheckResult:
    """``mu(eta_{T(X)}(G)) == G``."""
    w = agree(t_join(FunctionalOnFunctionals.point_mass(g)), g, tests)
    return _result("T-unit-left", w is None, w, len(tests))


def t_unit_right(g: Functional, tests: Sequence[AnyIFunction]) -> CheckResult:
    """``mu(T(eta)(G)) == G``."""
    w = agree(t_join(t_push_unit(g)), g, tests)
    return _result("T-unit-right", w is None, w, len(tests))


def t_associativity(qqq: FunctionalOnFunctionals, tests: Sequence[AnyIFunction]) -> CheckResult:
    """``mu(mu_{T(X)}(QQ)) == mu(T(mu)(QQ))``."""
    w = agree(t_join(t_join_outer(qqq)), t_join(t_map(qqq, t_join)), tests)
    return _result("T-associativity", w is None, w, len(tests))


def t_properties(g: Functional) -> list[CheckResult]:
    """The three defining property checks, with a limit chain under every sample function."""
    results = [check_weakly_averaging(g), check_affine(g, affine_samples(g.space))]
    chains = [(f, default_chains(f)) for f in sample_functions(g.space)]
    limit = CheckResult("preserves-limits", True)
    for f, cs in chains:
        limit = check_preserves_limits(g, f, cs)
        if not limit.passed:
            break
    results.append(limit)
    return results


# -- integration ---------------------------------------------------------------------


def section_property(space: FiniteSpace, f: IFunction) -> CheckResult:
    """``int f d(delta_x) == f(x)`` at every point."""
    for x in space.points:
        if integrate(dirac(space, x), f) != f(x):
            return _result("section-property", False, {"x": x, "f": f})
    return _result("section-property", True, cases=space.n_points)


def telescoping_exact(f: AnyIFunction) -> CheckResult:
    d = telescoping_decompose(f)
    total = d.coefficient_sum()
    if total != 1:
        return _result("telescoping", False, {"f": f, "coefficient_sum": total})
    back = d.recompose(f.space)
    return _result("telescoping", back == f, {"f": f, "recomposed": back})


# -- strength and the tensor sigma-algebra ----------------------------------------------


def strength_marginals(p: Measure, y: int, y_space: FiniteSpace, cap: int | None = 12) -> CheckResult:
    t = tensor_sigma_algebra(p.space, y_space, cap)
    tau = strength_on(p, y, t)
    left = pushforward(tau, projection_left(t))
    right = pushforward(tau, projection_right(t))
    ok = left == p and right == dirac(y_space, y)
    return _result("strength-marginals", ok, {"y": y, "left": left.masses, "right": right.masses})


def strength_naturality(
    p: Measure, y: int, y_space: FiniteSpace, f: MeasurableFn, g: MeasurableFn, cap: int | None = 12
) -> CheckResult:
    """``tau(G(f)(P), g(y)) == G(f (x) g)(tau(P, y))`` for ``f: X -> X'`` and ``g: Y -> Y'``."""
    src = tensor_sigma_algebra(p.space, y_space, cap)
    dst = tensor_sigma_algebra(f.cod, g.cod, cap)
    lhs = strength_on(pushforward(p, f), g(y), dst)
    rhs = pushforward(strength_on(p, y, src), tensor_map(f, g, src, dst))
    return _result("strength-naturality", lhs == rhs, {"lhs": lhs.masses, "rhs": rhs.masses})


def st_map_matches(f: MeasurableFn, p: Measure) -> CheckResult:
    """Pairing, strength and evaluation reproduce the direct pushforward."""
    lhs = st_map_composite(f, p)
    rhs = pushforward(p, f)
    return _result("st-map-composite", lhs == rhs, {"composite": lhs.masses, "direct": rhs.masses})


def tensor_contains_product(x: FiniteSpace, y: FiniteSpace, cap: int | None = 12) -> CheckResult:
    """Every product atom is a union of tensor atoms."""
    t = tensor_sigma_algebra(x, y, cap)
    prod = product_sigma_algebra(x, y)
    for atom in prod.atoms:
        if not t.is_measurable_subset(atom):
            return _result("tensor-contains-product", False, {"rectangle": sorted(atom)})
    return _result("tensor-contains-product", True, cases=len(prod.atoms))


def tensor_discrete_is_powerset(n: int, m: int, cap: int | None = 12) -> CheckResult:
    t = tensor_sigma_algebra(FiniteSpace.discrete(n), FiniteSpace.discrete(m), cap)
    return _result("tensor-discrete-powerset", t.n_atoms == n * m, {"atoms": t.n_atoms})


def countable_cover_sums(p, s, cover) -> CheckResult:
    """Partial sums of ``P`` along a disjoint cover reach ``P(S)``."""
    total = sum((p.mass(piece) for piece in cover), Fraction(0))
    return _result("countable-additivity", total == p.mass(s), {"partial_sum": total, "P(S)": p.mass(s)})
