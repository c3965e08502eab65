"""T as a limit over the slice category of X over iota, checked on finite samples.

For a base polytope ``A`` (a simplex, the interval or the square) the hom
set ``Cvx(A, I)`` is parameterised by vertex images, so an element of
``iota(A)`` is a map from those parameters to ``I``.  Everything here is
evaluated pointwise on the homs a check actually asks about.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .convex import (
    ID_I,
    INTERVAL,
    SQUARE,
    AffineMap,
    Polytope,
    apply_affine,
    homs_to_interval,
    projection,
    projection_mix,
)
from .functionals import (
    CheckResult,
    Functional,
    FunctionalOnFunctionals,
    affine_samples,
    check_affine,
    check_preserves_limits,
    check_weakly_averaging,
    dyadic_chain,
    sample_functions,
    t_pushforward,
    unit,
)
from .numeric import ONE, ZERO, UnitRational, as_unit, cvx_combine
from .spaces import FiniteSpace, IFunction, MeasurableFn, SpaceMismatch, pointwise_combine


class ConeViolation(ValueError):
    def __init__(self, message: str, witness: dict):
        super().__init__(message)
        self.witness = witness


class FixtureTooSmall(ValueError):
    pass


def extreme_homs(base: Polytope) -> list[AffineMap]:
    """Affine maps ``base -> I`` with every vertex sent to 0 or 1."""
    out = []
    for images in itertools.product((ZERO, ONE), repeat=len(base.vertices())):
        try:
            out.append(homs_to_interval(base, images))
        except ValueError:
            continue
    return out


class IotaElement:
    """An element of ``iota(A) = Cvx_w(Cvx(A, I), I)``.

    ``point`` is set for canonical elements ``h -> h(b)``.
    """

    def __init__(self, base: Polytope, evaluate: Callable[[AffineMap], Fraction], point=None, label: str = ""):
        self.base = base
        self._evaluate = evaluate
        self.point = point
        self.label = label

    @classmethod
    def canonical(cls, base: Polytope, b) -> IotaElement:
        if not base.contains(b):
            raise ValueError(f"{b} is not a point of {base!r}")
        return cls(base, lambda h: apply_affine(h, b), point=b, label=f"ev at {b}")

    def eval(self, h: AffineMap) -> UnitRational:
        if h.dom != self.base or h.cod is not INTERVAL:
            raise SpaceMismatch(f"expected an affine map {self.base!r} -> I")
        return as_unit(self._evaluate(h))

    __call__ = eval

    def __repr__(self):
        return f"IotaElement({self.label or 'black box'} on {self.base!r})"


def iota_equal(a: IotaElement, b: IotaElement, homs: Iterable[AffineMap] = ()) -> bool:
    """Agreement on the extreme homs (decisive for affine elements) and on ``homs``."""
    if a.base != b.base:
        return False
    return all(a.eval(h) == b.eval(h) for h in [*extreme_homs(a.base), *homs])


def iota_arrow(k: AffineMap, element: IotaElement) -> IotaElement:
    """``iota(k)(K) = g -> K(g o k)``."""
    if k.dom != element.base:
        raise SpaceMismatch("map domain differs from the element's base")
    point = None if element.point is None else apply_affine(k, element.point)
    return IotaElement(k.cod, lambda g: element.eval(k.then(g)), point=point, label="iota(k)(K)")


def check_iota_arrow(k: AffineMap, g: AffineMap, element: IotaElement) -> bool:
    """``ev_{g o k}(K) == ev_g(iota(k)(K))``."""
    return element.eval(k.then(g)) == iota_arrow(k, element).eval(g)


@dataclass(eq=False)
class SliceObject:
    """A measurable map ``X -> iota(A)``, one element per point."""

    source: FiniteSpace
    target: Polytope
    elements: tuple[IotaElement, ...]

    def __post_init__(self):
        self.elements = tuple(self.elements)
        if len(self.elements) != self.source.n_points:
            raise ValueError(f"need {self.source.n_points} elements, got {len(self.elements)}")
        for e in self.elements:
            if e.base != self.target:
                raise SpaceMismatch("element base differs from the slice target")
        for atom in self.source.atoms:
            pts = sorted(atom)
            first = self.elements[pts[0]]
            for p in pts[1:]:
                if self.elements[p] is not first and not iota_equal(first, self.elements[p]):
                    raise ValueError(f"slice object is not constant on atom {pts}")

    def __call__(self, x: int) -> IotaElement:
        return self.elements[x]

    @classmethod
    def from_points(cls, source: FiniteSpace, target: Polytope, points: Sequence) -> SliceObject:
        """Canonical elements at the given base points."""
        return cls(source, target, tuple(IotaElement.canonical(target, b) for b in points))

    def then(self, k: AffineMap) -> SliceObject:
        """``iota(k) o f``."""
        if k.dom != self.target:
            raise SpaceMismatch("map domain differs from the slice target")
        return SliceObject(self.source, k.cod, tuple(iota_arrow(k, e) for e in self.elements))


def hat(f: SliceObject) -> Callable[[AffineMap], IFunction]:
    """``h -> (x -> f(x)[h])``."""

    def at(h: AffineMap) -> IFunction:
        return IFunction.from_points(f.source, [e.eval(h) for e in f.elements])

    return at


def prime(gamma_fn: IFunction) -> SliceObject:
    """``x -> (h -> h(gamma(x)))`` into ``iota(I)``."""
    space = gamma_fn.space
    return SliceObject.from_points(space, INTERVAL, [gamma_fn(x) for x in space.points])


def paired_prime(g1: IFunction, g2: IFunction) -> SliceObject:
    """``x -> (h -> h(g1(x), g2(x)))`` into ``iota(I x I)``."""
    if g1.space != g2.space:
        raise SpaceMismatch("functions live on different spaces")
    space = g1.space
    return SliceObject.from_points(space, SQUARE, [(g1(x), g2(x)) for x in space.points])


def lambda_leg(f: SliceObject, g: Functional) -> IotaElement:
    """The cone leg at ``f``: ``h -> G(f_hat[h])``."""
    if g.space != f.source:
        raise SpaceMismatch("functional and slice object live on different spaces")
    at = hat(f)
    return IotaElement(f.target, lambda h: g.eval(at(h)), label="lambda_f(G)")


# -- cones and mediators -------------------------------------------------------

Omega = Callable[[SliceObject, object], IotaElement]


def canonical_cone(theta0: Callable[[object], Functional]) -> Omega:
    """``omega_f(z) = lambda_f(theta0(z))``."""
    return lambda f, z: lambda_leg(f, theta0(z))


def limit_cone() -> Omega:
    """The cone of T(X) itself: vertex elements are functionals."""
    return lambda f, g: lambda_leg(f, g)


def multiplication_cone() -> Omega:
    """On ``T(T(X))``: ``omega_f(Q)[h] = Q(G -> lambda_f(G)[h])``."""

    def omega(f: SliceObject, q: FunctionalOnFunctionals) -> IotaElement:
        return IotaElement(f.target, lambda h: q.eval(lambda g: lambda_leg(f, g).eval(h)), label="mu-cone")

    return omega


def check_cone_condition(
    omega: Omega, z, arrows: Iterable[tuple[AffineMap, SliceObject]], homs_for: Callable[[Polytope], list]
) -> CheckResult:
    """``omega_g(z)[h] == omega_f(z)[h o k]`` for each ``(k, f)`` with ``g = iota(k) o f``."""
    n = 0
    for k, f in arrows:
        g = f.then(k)
        left, right = omega(g, z), omega(f, z)
        for h in homs_for(k.cod):
            n += 1
            if left.eval(h) != right.eval(k.then(h)):
                return CheckResult(
                    "cone-condition", False, {"k": k, "f": f, "g": g, "h": h,
                                              "omega_g[h]": left.eval(h), "omega_f[h o k]": right.eval(k.then(h))}, n
                )
    return CheckResult("cone-condition", True, cases=n)


def theta_mediator(
    omega: Omega,
    z,
    space: FiniteSpace,
    arrows: Iterable[tuple[AffineMap, SliceObject]] = (),
    homs_for: Callable[[Polytope], list] = extreme_homs,
) -> Functional:
    """``theta(z)[gamma] = omega_{gamma'}(z)[id_I]``.

    Sampled ``arrows`` are checked against the cone condition first; a
    violation raises :class:`ConeViolation` with the failing data.
    """
    arrows = list(arrows)
    if arrows:
        result = check_cone_condition(omega, z, arrows, homs_for)
        if not result.passed:
            raise ConeViolation("omega is not a cone", result.witness)
    return Functional.black_box(space, lambda gamma_fn: omega(prime(gamma_fn), z).eval(ID_I), "theta(z)")


def square_affinity(omega: Omega, z, g1: IFunction, g2: IFunction, alpha) -> CheckResult:
    """Affinity of the mediator through the square ``I x I``.

    Compares ``theta(z)[g1 +_alpha g2]`` with ``omega_<g1,g2>'(z)`` at
    ``pi_1 +_alpha pi_2`` and with ``theta(z)[g1] +_alpha theta(z)[g2]``,
    where the last two are read off ``omega_<g1,g2>'`` at ``pi_1`` and
    ``pi_2`` via the cone condition.
    """
    alpha = as_unit(alpha)
    pp = omega(paired_prime(g1, g2), z)
    mixed = omega(prime(pointwise_combine(g1, g2, alpha)), z).eval(ID_I)
    via_square = pp.eval(projection_mix(alpha))
    t1, t2 = omega(prime(g1), z).eval(ID_I), omega(prime(g2), z).eval(ID_I)
    p1, p2 = pp.eval(projection(1)), pp.eval(projection(2))
    ok = mixed == via_square and t1 == p1 and t2 == p2 and via_square == cvx_combine(p1, p2, alpha)
    if not ok:
        return CheckResult(
            "theta-affine-square", False,
            {"theta[g1+g2]": mixed, "omega<g1,g2>[pi1+pi2]": via_square, "pi1": p1, "pi2": p2, "alpha": alpha}, 1
        )
    return CheckResult("theta-affine-square", True, cases=1)


def check_theta(omega: Omega, z, space: FiniteSpace) -> list[CheckResult]:
    """Run the three defining property checks on the mediator at ``z``."""
    theta = theta_mediator(omega, z, space)
    fs = sample_functions(space)
    results = [
        check_weakly_averaging(theta),
        check_affine(theta, affine_samples(space)),
        check_preserves_limits(theta, fs[-1], [dyadic_chain(fs[-1], 4)]),
    ]
    for g1 in fs[:2]:
        for g2 in fs[-2:]:
            results.append(square_affinity(omega, z, g1, g2, Fraction(1, 3)))
    return results


# -- counit ----------------------------------------------------------------------


@dataclass(eq=False)
class IotaFixture:
    """A finite carrier for ``iota(A)``: elements separated by ``ev_h`` for sampled ``h``."""

    base: Polytope
    elements: tuple[IotaElement, ...]
    homs: tuple[AffineMap, ...] = ()
    space: FiniteSpace = field(init=False)

    def __post_init__(self):
        self.elements = tuple(self.elements)
        self.homs = tuple(self.homs) or tuple(extreme_homs(self.base))
        sigs: dict[tuple, int] = {}
        for i, e in enumerate(self.elements):
            sig = tuple(e.eval(h) for h in self.homs)
            if sig in sigs:
                raise FixtureTooSmall(f"elements {sigs[sig]} and {i} are not separated by the sampled homs")
            sigs[sig] = i
        self.space = FiniteSpace.discrete(len(self.elements))

    def ev(self, h: AffineMap) -> IFunction:
        """``ev_h`` restricted to the carrier."""
        return IFunction(self.space, tuple(e.eval(h) for e in self.elements))

    def index_of(self, element: IotaElement) -> int:
        for i, e in enumerate(self.elements):
            if iota_equal(e, element, self.homs):
                return i
        raise KeyError("element not in fixture")


def epsilon(fixture: IotaFixture, g: Functional) -> IotaElement:
    """``eps_A(G)[h] = G(ev_h)``."""
    if g.space != fixture.space:
        raise SpaceMismatch("functional does not live on the fixture carrier")
    return IotaElement(fixture.base, lambda h: g.eval(fixture.ev(h)), label="eps(G)")


def iota_map_between(k: AffineMap, src: IotaFixture, dst: IotaFixture) -> MeasurableFn:
    """``iota(k)`` restricted to fixture carriers."""
    return MeasurableFn(src.space, dst.space, tuple(dst.index_of(iota_arrow(k, e)) for e in src.elements))


def check_epsilon_naturality(
    k: AffineMap, src: IotaFixture, dst: IotaFixture, g: Functional, homs: Iterable[AffineMap]
) -> CheckResult:
    """``iota(k)(eps_A(G)) == eps_B(T(iota(k))(G))`` on the given homs of ``B``."""
    lhs = iota_arrow(k, epsilon(src, g))
    rhs = epsilon(dst, t_pushforward(iota_map_between(k, src, dst), g))
    n = 0
    for h in [*extreme_homs(k.cod), *homs]:
        n += 1
        if lhs.eval(h) != rhs.eval(h):
            return CheckResult("epsilon-naturality", False, {"k": k, "h": h, "lhs": lhs.eval(h), "rhs": rhs.eval(h)}, n)
    return CheckResult("epsilon-naturality", True, cases=n)


def check_unit_mediator(g: SliceObject, homs: Iterable[AffineMap] = ()) -> CheckResult:
    """``lambda_g(ev_x) == g(x)`` for every point ``x``."""
    homs = list(homs)
    for x in g.source.points:
        if not iota_equal(lambda_leg(g, unit(g.source, x)), g(x), homs):
            return CheckResult("unit-as-mediator", False, {"x": x}, x + 1)
    return CheckResult("unit-as-mediator", True, cases=g.source.n_points)


def check_cone_commutation(
    k: AffineMap, f: SliceObject, g: Functional, homs: Iterable[AffineMap] = ()
) -> CheckResult:
    """``lambda_{iota(k) o f}(G) == iota(k)(lambda_f(G))``."""
    lhs = lambda_leg(f.then(k), g)
    rhs = iota_arrow(k, lambda_leg(f, g))
    for h in [*extreme_homs(k.cod), *homs]:
        if lhs.eval(h) != rhs.eval(h):
            return CheckResult("cone-commutation", False, {"k": k, "h": h, "lhs": lhs.eval(h), "rhs": rhs.eval(h)}, 1)
    return CheckResult("cone-commutation", True, cases=1)
