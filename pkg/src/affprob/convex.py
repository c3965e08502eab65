"""Convex spaces, free convex spaces on finitely many generators, and affine maps.

Concrete carriers:

* :data:`INTERVAL` - the unit interval, ``a +_r b = r*a + (1-r)*b``;
* :class:`Simplex` - the free convex space on ``n`` generators, points as
  barycentric coordinates (:class:`SimplexPoint`);
* :data:`SQUARE` - ``I x I`` with the componentwise structure.

These three are *polytopes*: each point is a convex mix of finitely many
vertices, so an affine map out of one is fixed by its vertex images.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable, Sequence, Union

from .numeric import ONE, ZERO, UnitRational, as_unit, axiom4_weight, format_rational


class ConvexSpace:
    """Interface: a carrier with ``combine(a, b, r) = a +_r b``."""

    name = "convex space"

    def combine(self, a, b, r):
        raise NotImplementedError

    def mix(self, weights: Sequence, points: Sequence):
        """Barycentric sum ``sum_i w_i * p_i`` folded through ``combine``.

        Zero weights are dropped; the remaining terms are nested left to right
        as ``(...((p_1 +_{s_1} p_2) +_{s_2} p_3) ...)``.
        """
        terms = [(Fraction(w), p) for w, p in zip(weights, points) if w != 0]
        if not terms:
            raise ValueError("all weights are zero")
        if sum(w for w, _ in terms) != 1:
            raise ValueError("weights must sum to 1")
        total, acc = terms[0]
        for w, p in terms[1:]:
            new_total = total + w
            acc = self.combine(acc, p, total / new_total)
            total = new_total
        return acc

    def equal(self, a, b) -> bool:
        return a == b


# -- axiom checking ----------------------------------------------------------


@dataclass
class AxiomResult:
    axiom: int
    passed: bool
    witness: dict | None = None


@dataclass
class AxiomReport:
    results: list[AxiomResult]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def failed(self) -> list[int]:
        return [r.axiom for r in self.results if not r.passed]

    def __getitem__(self, axiom: int) -> AxiomResult:
        return self.results[axiom - 1]


def check_axioms(space: ConvexSpace, samples: Iterable[tuple], weights: Iterable) -> AxiomReport:
    """Check the four convex-space axioms on sampled triples and weights.

    ``samples`` are triples ``(a1, a2, a3)`` of carrier elements; axioms 1-3
    use the first two.  Axiom 4 is tested with ``r = (1-p)q / (1-pq)``
    whenever ``pq != 1``; with ``p = q = 1`` every ``r`` is accepted.
    """
    samples = list(samples)
    weights = [as_unit(w) for w in weights]
    eq = space.equal
    found: dict[int, dict] = {}

    def fail(axiom, **witness):
        found.setdefault(axiom, witness)

    for a1, a2, a3 in samples:
        if 1 not in found and not eq(space.combine(a1, a2, ZERO), a2):
            fail(1, a1=a1, a2=a2, r=ZERO)
        for r in weights:
            if 2 not in found and not eq(space.combine(a1, a1, r), a1):
                fail(2, a=a1, r=r)
            if 3 not in found and not eq(space.combine(a1, a2, r), space.combine(a2, a1, 1 - r)):
                fail(3, a1=a1, a2=a2, r=r)
        if 4 in found:
            continue
        for p in weights:
            for q in weights:
                r = axiom4_weight(p, q)
                if r is None:
                    continue
                lhs = space.combine(space.combine(a1, a2, p), a3, q)
                rhs = space.combine(a1, space.combine(a2, a3, r), p * q)
                if not eq(lhs, rhs):
                    fail(4, a1=a1, a2=a2, a3=a3, p=p, q=q, r=r)
                    break
            if 4 in found:
                break
    return AxiomReport([AxiomResult(i, i not in found, found.get(i)) for i in (1, 2, 3, 4)])


# -- the unit interval and the square ----------------------------------------


class Polytope(ConvexSpace):
    """A convex space whose points are convex mixes of finitely many vertices."""

    def vertices(self) -> tuple:
        raise NotImplementedError

    def weights(self, point) -> tuple[Fraction, ...]:
        """Non-negative vertex weights summing to one that reproduce ``point``."""
        raise NotImplementedError

    def coordinates(self, point) -> tuple[Fraction, ...]:
        """Embedding into ``Q^d``; affine maps act affinely on these."""
        raise NotImplementedError

    def from_coordinates(self, coords: Sequence[Fraction]):
        raise NotImplementedError

    def contains(self, point) -> bool:
        raise NotImplementedError


class UnitInterval(Polytope):
    name = "I"

    def combine(self, a, b, r):
        a, b, r = as_unit(a), as_unit(b), as_unit(r)
        return UnitRational(r * a + (1 - r) * b)

    def vertices(self):
        return (ZERO, ONE)

    def weights(self, point):
        t = as_unit(point)
        return (1 - t, Fraction(t))

    def coordinates(self, point):
        return (Fraction(point),)

    def from_coordinates(self, coords):
        (t,) = coords
        return UnitRational(t)

    def contains(self, point) -> bool:
        try:
            as_unit(point)
        except (ValueError, TypeError):
            return False
        return True

    def __repr__(self):
        return "INTERVAL"


INTERVAL = UnitInterval()


class UnitSquare(Polytope):
    """``I x I``; points are pairs ``(u, v)``."""

    name = "IxI"

    def combine(self, a, b, r):
        return (INTERVAL.combine(a[0], b[0], r), INTERVAL.combine(a[1], b[1], r))

    def vertices(self):
        return ((ZERO, ZERO), (ONE, ZERO), (ZERO, ONE), (ONE, ONE))

    def weights(self, point):
        u, v = (Fraction(c) for c in point)
        return ((1 - u) * (1 - v), u * (1 - v), (1 - u) * v, u * v)

    def coordinates(self, point):
        return (Fraction(point[0]), Fraction(point[1]))

    def from_coordinates(self, coords):
        return (UnitRational(coords[0]), UnitRational(coords[1]))

    def contains(self, point) -> bool:
        return len(point) == 2 and all(INTERVAL.contains(c) for c in point)

    def __repr__(self):
        return "SQUARE"


SQUARE = UnitSquare()


# -- free convex spaces ------------------------------------------------------


@dataclass(frozen=True)
class SimplexPoint:
    coords: tuple[UnitRational, ...]

    def __post_init__(self):
        coords = tuple(as_unit(c) for c in self.coords)
        if not coords:
            raise ValueError("a simplex point needs at least one coordinate")
        if sum(coords, Fraction(0)) != 1:
            raise ValueError("barycentric coordinates must sum to 1")
        object.__setattr__(self, "coords", coords)

    @property
    def dim(self) -> int:
        return len(self.coords)

    @classmethod
    def vertex(cls, n: int, i: int) -> SimplexPoint:
        return cls(tuple(ONE if j == i else ZERO for j in range(n)))

    def __str__(self) -> str:
        return "p: " + " ".join(format_rational(c) for c in self.coords)


@dataclass(frozen=True, repr=False)
class Simplex(Polytope):
    """The free convex space on ``n`` generators."""

    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("a simplex needs at least one generator")

    @property
    def name(self) -> str:
        return f"D{self.n}"

    def combine(self, a: SimplexPoint, b: SimplexPoint, r) -> SimplexPoint:
        r = as_unit(r)
        if a.dim != self.n or b.dim != self.n:
            raise ValueError("point dimension does not match the simplex")
        return SimplexPoint(tuple(r * x + (1 - r) * y for x, y in zip(a.coords, b.coords)))

    def vertices(self):
        return tuple(SimplexPoint.vertex(self.n, i) for i in range(self.n))

    def weights(self, point: SimplexPoint):
        if point.dim != self.n:
            raise ValueError("point dimension does not match the simplex")
        return tuple(Fraction(c) for c in point.coords)

    def coordinates(self, point: SimplexPoint):
        return tuple(Fraction(c) for c in point.coords)

    def from_coordinates(self, coords):
        return SimplexPoint(tuple(coords))

    def contains(self, point) -> bool:
        return isinstance(point, SimplexPoint) and point.dim == self.n

    def __repr__(self):
        return f"Simplex({self.n})"


# -- free vs barycentric representation ---------------------------------------


@dataclass(frozen=True)
class Leaf:
    """The generator ``a_{index+1}``."""

    index: int

    def __str__(self):
        return f"a{self.index + 1}"


@dataclass(frozen=True)
class Node:
    left: "FreeForm"
    right: "FreeForm"
    r: UnitRational

    def __post_init__(self):
        object.__setattr__(self, "r", as_unit(self.r))

    def __str__(self):
        return f"({self.left} +_{format_rational(self.r)} {self.right})"


FreeForm = Union[Leaf, Node]


def _max_leaf(form: FreeForm) -> int:
    if isinstance(form, Leaf):
        return form.index
    return max(_max_leaf(form.left), _max_leaf(form.right))


def free_to_barycentric(form: FreeForm, n: int | None = None) -> SimplexPoint:
    """Expand a nested convex sum into coordinates on ``n`` generators."""
    if n is None:
        n = _max_leaf(form) + 1

    def expand(node: FreeForm) -> list[Fraction]:
        if isinstance(node, Leaf):
            if node.index >= n:
                raise ValueError(f"generator a{node.index + 1} exceeds dimension {n}")
            return [Fraction(1 if j == node.index else 0) for j in range(n)]
        left, right, r = expand(node.left), expand(node.right), node.r
        return [r * x + (1 - r) * y for x, y in zip(left, right)]

    return SimplexPoint(tuple(expand(form)))


def barycentric_to_free(p: SimplexPoint) -> FreeForm:
    """Nested form ``(...((a_i1 +_{s1} a_i2) +_{s2} a_i3) ...)`` over the nonzero coordinates.

    ``s_k`` is the running coordinate total before generator ``k+1`` divided
    by the total after it.
    """
    terms = [(i, c) for i, c in enumerate(p.coords) if c != 0]
    first, total = terms[0]
    form: FreeForm = Leaf(first)
    for i, c in terms[1:]:
        new_total = total + c
        form = Node(form, Leaf(i), total / new_total)
        total = new_total
    return form


def evaluate_free(form: FreeForm, space: ConvexSpace, generators: Sequence) -> Any:
    """Interpret a free form in ``space`` sending ``a_i`` to ``generators[i]``."""
    if isinstance(form, Leaf):
        return generators[form.index]
    return space.combine(
        evaluate_free(form.left, space, generators),
        evaluate_free(form.right, space, generators),
        form.r,
    )


# -- affine maps -------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class AffineMap:
    """An affine map out of a polytope, given by its vertex images.

    With ``cod = INTERVAL`` this is an element of ``Cvx(dom, I)``; for
    ``dom = INTERVAL`` the images are ``(h(0), h(1))``.
    """

    dom: Polytope
    cod: ConvexSpace
    images: tuple

    def __post_init__(self):
        images = tuple(self.images)
        if self.cod is INTERVAL:
            images = tuple(as_unit(v) for v in images)
        if len(images) != len(self.dom.vertices()):
            raise ValueError(
                f"{self.dom!r} has {len(self.dom.vertices())} vertices, got {len(images)} images"
            )
        object.__setattr__(self, "images", images)
        if isinstance(self.dom, UnitSquare) and isinstance(self.cod, Polytope):
            c = [self.cod.coordinates(v) for v in images]
            if any(a + d != b + e for a, b, e, d in zip(c[0], c[1], c[2], c[3])):
                raise ValueError("vertex images of the square are not affine")

    def __call__(self, point):
        return apply_affine(self, point)

    def then(self, g: AffineMap) -> AffineMap:
        """``g`` after ``self``."""
        return AffineMap(self.dom, g.cod, tuple(g(v) for v in self.images))

    def __eq__(self, other):
        if not isinstance(other, AffineMap):
            return NotImplemented
        return (
            self.dom == other.dom
            and self.cod == other.cod
            and all(self.cod.equal(a, b) for a, b in zip(self.images, other.images))
        )

    def __hash__(self):
        return hash((repr(self.dom), repr(self.cod), self.images))

    def __repr__(self):
        shown = ", ".join(
            format_rational(v) if isinstance(v, Fraction) else str(v) for v in self.images
        )
        return f"AffineMap({self.dom!r} -> {self.cod!r}: {shown})"


def apply_affine(k: AffineMap, p):
    """``sum_i w_i(p) * k(v_i)`` in the codomain's convex structure."""
    if not k.dom.contains(p):
        raise ValueError(f"{p} is not a point of {k.dom!r}")
    return k.cod.mix(k.dom.weights(p), k.images)


def identity_map(space: Polytope) -> AffineMap:
    return AffineMap(space, space, space.vertices())


def constant_map(dom: Polytope, cod: ConvexSpace, value) -> AffineMap:
    return AffineMap(dom, cod, (value,) * len(dom.vertices()))


class AffineEndoI(AffineMap):
    """``h: I -> I``, ``h(t) = (1-t)*h0 + t*h1``."""

    def __init__(self, h0, h1):
        super().__init__(INTERVAL, INTERVAL, (h0, h1))

    @property
    def h0(self) -> UnitRational:
        return self.images[0]

    @property
    def h1(self) -> UnitRational:
        return self.images[1]


ID_I = AffineEndoI(0, 1)


def projection(i: int) -> AffineMap:
    """``pi_1`` or ``pi_2``: ``I x I -> I``."""
    return AffineMap(SQUARE, INTERVAL, tuple(v[i - 1] for v in SQUARE.vertices()))


def projection_mix(alpha) -> AffineMap:
    """``pi_1 +_alpha pi_2: (u, v) -> u +_alpha v``."""
    return AffineMap(SQUARE, INTERVAL, tuple(INTERVAL.combine(u, v, alpha) for u, v in SQUARE.vertices()))


def pair_map(h1: AffineMap, h2: AffineMap) -> AffineMap:
    """``<h1, h2>: A -> I x I`` for ``h1, h2: A -> I``."""
    if h1.dom != h2.dom:
        raise ValueError("maps have different domains")
    return AffineMap(h1.dom, SQUARE, tuple(zip(h1.images, h2.images)))


def homs_to_interval(dom: Polytope, values: Sequence) -> AffineMap:
    return AffineMap(dom, INTERVAL, tuple(values))


def separating_homs(base: Polytope) -> list[AffineMap]:
    """Affine maps ``base -> I`` on which weakly averaging affine functionals are determined."""
    n = len(base.vertices())
    if isinstance(base, UnitSquare):
        return [projection(1), projection(2)]
    return [homs_to_interval(base, [ONE if j == i else ZERO for j in range(n)]) for i in range(n)]
