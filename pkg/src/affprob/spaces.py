"""Finite measurable spaces and the countable space of naturals.

A sigma-algebra on a finite set is determined by its atoms, so a
:class:`FiniteSpace` stores only the atom partition; measurable sets are
unions of atoms and measurable functions into ``[0, 1]`` are tables with
one value per atom.

The naturals carry the powerset sigma-algebra.  Only finite and cofinite
sets are representable (:class:`CountableSet`), which is enough to express
infinite disjoint covers by singletons.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Sequence, Union

from .numeric import ONE, ZERO, UnitRational, as_unit, cvx_combine

DEFAULT_TENSOR_CAP = 12


class SpaceMismatch(ValueError):
    pass


class NotMeasurable(ValueError):
    pass


class TensorSizeError(ValueError):
    pass


def _canonical_atoms(atoms: Iterable[Iterable[int]]) -> tuple[frozenset[int], ...]:
    blocks = [frozenset(a) for a in atoms]
    return tuple(sorted(blocks, key=min))


@dataclass(frozen=True)
class FiniteSpace:
    """Points ``0..n_points-1`` with the sigma-algebra given by ``atoms``."""

    n_points: int
    atoms: tuple[frozenset[int], ...]
    _atom_of: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.n_points < 1:
            raise ValueError("a finite space needs at least one point")
        atoms = _canonical_atoms(self.atoms)
        seen: list[int] = [-1] * self.n_points
        for i, block in enumerate(atoms):
            if not block:
                raise ValueError("atoms must be nonempty")
            for p in block:
                if not 0 <= p < self.n_points:
                    raise ValueError(f"point {p} outside 0..{self.n_points - 1}")
                if seen[p] != -1:
                    raise ValueError(f"point {p} lies in two atoms")
                seen[p] = i
        if -1 in seen:
            raise ValueError(f"point {seen.index(-1)} is not covered by any atom")
        object.__setattr__(self, "atoms", atoms)
        object.__setattr__(self, "_atom_of", tuple(seen))

    @classmethod
    def discrete(cls, n_points: int) -> FiniteSpace:
        return cls(n_points, tuple(frozenset([p]) for p in range(n_points)))

    @classmethod
    def trivial(cls, n_points: int) -> FiniteSpace:
        return cls(n_points, (frozenset(range(n_points)),))

    @property
    def n_atoms(self) -> int:
        return len(self.atoms)

    @property
    def points(self) -> range:
        return range(self.n_points)

    def atom_of(self, point: int) -> int:
        return self._atom_of[point]

    def representative(self, atom: int) -> int:
        return min(self.atoms[atom])

    def whole(self) -> MeasurableSet:
        return MeasurableSet(self, frozenset(range(self.n_atoms)))

    def empty(self) -> MeasurableSet:
        return MeasurableSet(self, frozenset())

    def atom_set(self, atom: int) -> MeasurableSet:
        return MeasurableSet(self, frozenset([atom]))

    def set_of_atoms(self, atoms: Iterable[int]) -> MeasurableSet:
        return MeasurableSet(self, frozenset(atoms))

    def is_measurable_subset(self, points: Iterable[int]) -> bool:
        pts = frozenset(points)
        return all(self.atoms[self._atom_of[p]] <= pts for p in pts)

    def set_of_points(self, points: Iterable[int]) -> MeasurableSet:
        pts = frozenset(points)
        if not self.is_measurable_subset(pts):
            raise NotMeasurable(f"{sorted(pts)} is not a union of atoms")
        return MeasurableSet(self, frozenset(self._atom_of[p] for p in pts))

    def measurable_sets(self) -> Iterator[MeasurableSet]:
        """Every measurable set, ordered by atom bitmask."""
        for mask in range(1 << self.n_atoms):
            yield MeasurableSet(self, frozenset(i for i in range(self.n_atoms) if mask >> i & 1))

    def point_sets(self) -> list[frozenset[int]]:
        return [s.points for s in self.measurable_sets()]


@dataclass(frozen=True)
class MeasurableSet:
    """A union of atoms of a finite space, stored as atom indices."""

    space: FiniteSpace
    mask: frozenset[int]

    @property
    def points(self) -> frozenset[int]:
        return frozenset().union(*(self.space.atoms[i] for i in self.mask))

    def __contains__(self, point: int) -> bool:
        return self.space.atom_of(point) in self.mask

    def _check(self, other: MeasurableSet):
        if other.space != self.space:
            raise SpaceMismatch("sets live in different spaces")

    def complement(self) -> MeasurableSet:
        return MeasurableSet(self.space, frozenset(range(self.space.n_atoms)) - self.mask)

    def __or__(self, other: MeasurableSet) -> MeasurableSet:
        self._check(other)
        return MeasurableSet(self.space, self.mask | other.mask)

    def __and__(self, other: MeasurableSet) -> MeasurableSet:
        self._check(other)
        return MeasurableSet(self.space, self.mask & other.mask)

    def __sub__(self, other: MeasurableSet) -> MeasurableSet:
        self._check(other)
        return MeasurableSet(self.space, self.mask - other.mask)

    def issubset(self, other: MeasurableSet) -> bool:
        self._check(other)
        return self.mask <= other.mask

    def is_empty(self) -> bool:
        return not self.mask

    def __repr__(self) -> str:
        return f"MeasurableSet(atoms={sorted(self.mask)})"


# -- the naturals -----------------------------------------------------------


@dataclass(frozen=True)
class CountableSpace:
    """The naturals with the powerset sigma-algebra."""

    def __repr__(self) -> str:
        return "NATURALS"

    def whole(self) -> CountableSet:
        return CountableSet((), cofinite=True)

    def empty(self) -> CountableSet:
        return CountableSet((), cofinite=False)

    def singleton(self, point: int) -> CountableSet:
        return CountableSet((point,))


NATURALS = CountableSpace()


@dataclass(frozen=True)
class CountableSet:
    """A finite set of naturals, or the complement of one (``cofinite``)."""

    points: tuple[int, ...]
    cofinite: bool = False

    def __post_init__(self):
        pts = tuple(sorted(set(self.points)))
        if pts and pts[0] < 0:
            raise ValueError("naturals are non-negative")
        object.__setattr__(self, "points", pts)

    @property
    def space(self) -> CountableSpace:
        return NATURALS

    def __contains__(self, point: int) -> bool:
        return (point in self.points) != self.cofinite

    def complement(self) -> CountableSet:
        return CountableSet(self.points, not self.cofinite)

    def __or__(self, other: CountableSet) -> CountableSet:
        a, b = set(self.points), set(other.points)
        if not self.cofinite and not other.cofinite:
            return CountableSet(tuple(a | b))
        if self.cofinite and other.cofinite:
            return CountableSet(tuple(a & b), True)
        fin, cof = (a, b) if not self.cofinite else (b, a)
        return CountableSet(tuple(cof - fin), True)

    def __and__(self, other: CountableSet) -> CountableSet:
        return (self.complement() | other.complement()).complement()

    def __sub__(self, other: CountableSet) -> CountableSet:
        return self & other.complement()

    def issubset(self, other: CountableSet) -> bool:
        return (self - other).is_empty()

    def is_empty(self) -> bool:
        return not self.cofinite and not self.points


AnySet = Union[MeasurableSet, CountableSet]


# -- measurable maps --------------------------------------------------------


@dataclass(frozen=True)
class MeasurableFn:
    """A point map between finite spaces; measurability is checked separately."""

    dom: FiniteSpace
    cod: FiniteSpace
    table: tuple[int, ...]

    def __post_init__(self):
        table = tuple(self.table)
        if len(table) != self.dom.n_points:
            raise ValueError("table length must equal the number of domain points")
        for y in table:
            if not 0 <= y < self.cod.n_points:
                raise ValueError(f"image point {y} outside the codomain")
        object.__setattr__(self, "table", table)

    def __call__(self, x: int) -> int:
        return self.table[x]

    @classmethod
    def identity(cls, space: FiniteSpace) -> MeasurableFn:
        return cls(space, space, tuple(space.points))

    @classmethod
    def constant(cls, dom: FiniteSpace, cod: FiniteSpace, y: int) -> MeasurableFn:
        return cls(dom, cod, (y,) * dom.n_points)

    def preimage_points(self, points: Iterable[int]) -> frozenset[int]:
        pts = frozenset(points)
        return frozenset(x for x in self.dom.points if self.table[x] in pts)

    def preimage(self, s: MeasurableSet) -> MeasurableSet:
        if s.space != self.cod:
            raise SpaceMismatch("set is not in the codomain")
        return self.dom.set_of_points(self.preimage_points(s.points))

    def then(self, g: MeasurableFn) -> MeasurableFn:
        """``g`` after ``self``."""
        if g.dom != self.cod:
            raise SpaceMismatch("cannot compose: codomain and domain differ")
        return MeasurableFn(self.dom, g.cod, tuple(g.table[y] for y in self.table))


def is_measurable(f: MeasurableFn) -> bool:
    """Preimage of every codomain atom is a union of domain atoms."""
    return all(f.dom.is_measurable_subset(f.preimage_points(atom)) for atom in f.cod.atoms)


def require_measurable(f: MeasurableFn) -> None:
    for atom in f.cod.atoms:
        pre = f.preimage_points(atom)
        if not f.dom.is_measurable_subset(pre):
            raise NotMeasurable(
                f"preimage {sorted(pre)} of codomain atom {sorted(atom)} is not measurable"
            )


def measurable_maps(dom: FiniteSpace, cod: FiniteSpace) -> Iterator[MeasurableFn]:
    """Every measurable map ``dom -> cod``.

    Each domain atom goes into a single codomain atom; inside that atom the
    points may land anywhere.
    """
    per_atom = []
    for atom in dom.atoms:
        pts = sorted(atom)
        choices = []
        for target in cod.atoms:
            for images in itertools.product(sorted(target), repeat=len(pts)):
                choices.append(dict(zip(pts, images)))
        per_atom.append(choices)
    for combo in itertools.product(*per_atom):
        table = [0] * dom.n_points
        for local in combo:
            for x, y in local.items():
                table[x] = y
        yield MeasurableFn(dom, cod, tuple(table))


# -- [0, 1]-valued functions ------------------------------------------------


@dataclass(frozen=True)
class IFunction:
    """A measurable function from a finite space into [0, 1], one value per atom."""

    space: FiniteSpace
    values: tuple[UnitRational, ...]

    def __post_init__(self):
        values = tuple(as_unit(v) for v in self.values)
        if len(values) != self.space.n_atoms:
            raise ValueError(f"need {self.space.n_atoms} values, got {len(values)}")
        object.__setattr__(self, "values", values)

    def __call__(self, point: int) -> UnitRational:
        return self.values[self.space.atom_of(point)]

    @classmethod
    def constant(cls, space: FiniteSpace, u) -> IFunction:
        return cls(space, (as_unit(u),) * space.n_atoms)

    @classmethod
    def from_points(cls, space: FiniteSpace, point_values: Sequence) -> IFunction:
        """Build from one value per point; raises if not constant on atoms."""
        vals = []
        for atom in space.atoms:
            seen = {as_unit(point_values[p]) for p in atom}
            if len(seen) != 1:
                raise NotMeasurable(f"values differ inside atom {sorted(atom)}")
            vals.append(seen.pop())
        return cls(space, tuple(vals))

    def precompose(self, f: MeasurableFn) -> IFunction:
        """``self o f`` as a function on ``f.dom``."""
        if f.cod != self.space:
            raise SpaceMismatch("function lives on a different space than the map's codomain")
        require_measurable(f)
        dom = f.dom
        return IFunction(dom, tuple(self(f(dom.representative(a))) for a in range(dom.n_atoms)))

    def level_sets(self) -> list[tuple[UnitRational, MeasurableSet]]:
        """Distinct values ascending, each with its level set."""
        groups: dict[UnitRational, set[int]] = {}
        for atom, v in enumerate(self.values):
            groups.setdefault(v, set()).add(atom)
        return [(v, MeasurableSet(self.space, frozenset(groups[v]))) for v in sorted(groups)]

    def le(self, other: IFunction) -> bool:
        return all(a <= b for a, b in zip(self.values, other.values))

    def __repr__(self) -> str:
        return "IFunction(" + ", ".join(str(v) for v in self.values) + ")"


@dataclass(frozen=True)
class CountableIFunction:
    """A function on the naturals equal to ``tail`` outside finitely many points."""

    exceptions: tuple[tuple[int, UnitRational], ...]
    tail: UnitRational = ZERO

    def __post_init__(self):
        tail = as_unit(self.tail)
        exc = {}
        for p, v in self.exceptions:
            v = as_unit(v)
            if v != tail:
                exc[p] = v
        object.__setattr__(self, "tail", tail)
        object.__setattr__(self, "exceptions", tuple(sorted(exc.items())))

    @property
    def space(self) -> CountableSpace:
        return NATURALS

    def __call__(self, point: int) -> UnitRational:
        return dict(self.exceptions).get(point, self.tail)

    @classmethod
    def constant(cls, u) -> CountableIFunction:
        return cls((), as_unit(u))

    def support_points(self) -> set[int]:
        return {p for p, _ in self.exceptions}

    def level_sets(self) -> list[tuple[UnitRational, CountableSet]]:
        groups: dict[UnitRational, set[int]] = {}
        for p, v in self.exceptions:
            groups.setdefault(v, set()).add(p)
        out = [(v, CountableSet(tuple(pts))) for v, pts in groups.items()]
        out.append((self.tail, CountableSet(tuple(self.support_points()), cofinite=True)))
        return sorted(out, key=lambda item: item[0])

    def le(self, other: CountableIFunction) -> bool:
        pts = self.support_points() | other.support_points()
        return self.tail <= other.tail and all(self(p) <= other(p) for p in pts)


AnyIFunction = Union[IFunction, CountableIFunction]


def indicator(s: AnySet) -> AnyIFunction:
    if isinstance(s, CountableSet):
        if s.cofinite:
            return CountableIFunction(tuple((p, ZERO) for p in s.points), ONE)
        return CountableIFunction(tuple((p, ONE) for p in s.points), ZERO)
    return IFunction(s.space, tuple(ONE if i in s.mask else ZERO for i in range(s.space.n_atoms)))


def constant_function(space, u) -> AnyIFunction:
    if isinstance(space, CountableSpace):
        return CountableIFunction.constant(u)
    return IFunction.constant(space, u)


def pointwise_combine(f: AnyIFunction, g: AnyIFunction, r) -> AnyIFunction:
    """``(f +_r g)(x) = f(x) +_r g(x)``."""
    if f.space != g.space:
        raise SpaceMismatch("functions live on different spaces")
    if isinstance(f, CountableIFunction):
        pts = f.support_points() | g.support_points()
        return CountableIFunction(
            tuple((p, cvx_combine(f(p), g(p), r)) for p in pts),
            cvx_combine(f.tail, g.tail, r),
        )
    return IFunction(f.space, tuple(cvx_combine(a, b, r) for a, b in zip(f.values, g.values)))


def scale(f: AnyIFunction, alpha) -> AnyIFunction:
    """``alpha * f``, written as ``f +_alpha 0``."""
    return pointwise_combine(f, constant_function(f.space, ZERO), alpha)


# -- simple-function decomposition -----------------------------------------


@dataclass(frozen=True)
class SimpleDecomposition:
    terms: tuple[tuple[UnitRational, AnySet], ...]

    def coefficient_sum(self) -> Fraction:
        return sum((c for c, _ in self.terms), Fraction(0))

    def value_at(self, point: int) -> Fraction:
        return sum((c for c, s in self.terms if point in s), Fraction(0))

    def recompose(self, space) -> AnyIFunction:
        """Sum of ``coef * indicator(set)`` as a function on ``space``."""
        if isinstance(space, CountableSpace):
            pts: set[int] = set()
            for _, s in self.terms:
                pts |= set(s.points)
            tail = sum((c for c, s in self.terms if s.cofinite), Fraction(0))
            return CountableIFunction(tuple((p, self.value_at(p)) for p in pts), tail)
        return IFunction.from_points(space, [self.value_at(p) for p in space.points])

    def normalized(self) -> SimpleDecomposition:
        return SimpleDecomposition(tuple(t for t in self.terms if t[0] != 0))


def telescoping_decompose(f: AnyIFunction) -> SimpleDecomposition:
    """Write ``f`` as a convex sum of indicators of nested upper level sets.

    With distinct values ``a_1 < ... < a_n`` and level sets ``S_i`` the terms
    are ``a_1`` on ``S_1 u ... u S_n``, ``a_j - a_{j-1}`` on
    ``S_j u ... u S_n`` and a final ``1 - a_n`` on the empty set.  Zero
    coefficients are kept.
    """
    levels = f.level_sets()
    empty = f.space.empty()
    upper = []
    acc = empty
    for _, s in reversed(levels):
        acc = acc | s
        upper.append(acc)
    upper.reverse()
    terms = []
    prev = Fraction(0)
    for (value, _), s in zip(levels, upper):
        terms.append((UnitRational(value - prev), s))
        prev = value
    terms.append((UnitRational(1 - prev), empty))
    return SimpleDecomposition(tuple(terms))


# -- sigma-algebra generation ------------------------------------------------


def generate_sigma_algebra(n_points: int, generators: Iterable[Iterable[int]]) -> FiniteSpace:
    """Smallest sigma-algebra on ``0..n_points-1`` containing ``generators``.

    Atoms are the classes of points that belong to exactly the same generators.
    """
    if n_points < 1:
        raise ValueError("n_points must be positive")
    gens = [frozenset(g) for g in generators]
    for g in gens:
        if any(not 0 <= p < n_points for p in g):
            raise ValueError(f"generator {sorted(g)} is not a subset of the points")
    classes: dict[tuple[bool, ...], set[int]] = {}
    for p in range(n_points):
        classes.setdefault(tuple(p in g for g in gens), set()).add(p)
    return FiniteSpace(n_points, tuple(frozenset(c) for c in classes.values()))


# -- tensor sigma-algebra ----------------------------------------------------


@dataclass(frozen=True)
class TensorSpace(FiniteSpace):
    """A sigma-algebra on ``left x right``; point ``(x, y)`` has index ``x*|right| + y``."""

    left: FiniteSpace = None
    right: FiniteSpace = None

    def pair_index(self, x: int, y: int) -> int:
        return x * self.right.n_points + y

    def pair(self, index: int) -> tuple[int, int]:
        return divmod(index, self.right.n_points)


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, a: int) -> int:
        while self.parent[a] != a:
            self.parent[a] = self.parent[self.parent[a]]
            a = self.parent[a]
        return a

    def union(self, a: int, b: int):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)

    def classes(self) -> list[frozenset[int]]:
        out: dict[int, set[int]] = {}
        for a in range(len(self.parent)):
            out.setdefault(self.find(a), set()).add(a)
        return [frozenset(c) for c in out.values()]


def _graph_blocks(src: FiniteSpace, dst: FiniteSpace):
    """Yield ``(source atom, target atom)`` pairs whose whole block ``A x B`` is one tensor class.

    A subset pulls back along a graph map to a union of source atoms iff it
    treats the graph points over each source atom alike, and any map from
    one atom into one target atom extends to a measurable map.  When ``A``
    has two or more points, any ``(a1, b1)`` and ``(a2, b2)`` with
    ``a1 != a2`` share a graph, so the graphs over ``A`` into ``B`` glue
    all of ``A x B`` together.  Singleton atoms impose nothing.
    """
    for atom in src.atoms:
        if len(atom) < 2:
            continue
        for target in dst.atoms:
            yield sorted(atom), sorted(target)


def tensor_sigma_algebra(
    x: FiniteSpace, y: FiniteSpace, cap: int | None = DEFAULT_TENSOR_CAP
) -> TensorSpace:
    """The final sigma-algebra on ``x * y`` making every graph map measurable.

    A subset is measurable iff its preimage under ``x -> (x, f(x))`` is
    measurable for every measurable ``f: x -> y`` and its preimage under
    ``y -> (g(y), y)`` is measurable for every measurable ``g: y -> x``.
    Pass ``cap=None`` to lift the size limit.
    """
    size = x.n_points * y.n_points
    if cap is not None and size > cap:
        raise TensorSizeError(f"|X|*|Y| = {size} exceeds the tensor cap {cap}")
    m = y.n_points
    uf = _UnionFind(size)
    for xs, ys in _graph_blocks(x, y):
        first = xs[0] * m + ys[0]
        for a in xs:
            for b in ys:
                uf.union(first, a * m + b)
    for ys, xs in _graph_blocks(y, x):
        first = xs[0] * m + ys[0]
        for b in ys:
            for a in xs:
                uf.union(first, a * m + b)
    return TensorSpace(size, tuple(uf.classes()), left=x, right=y)


def product_sigma_algebra(x: FiniteSpace, y: FiniteSpace) -> TensorSpace:
    """The sigma-algebra generated by rectangles ``A x B``."""
    m = y.n_points
    atoms = [frozenset(a * m + b for a in ax for b in by) for ax in x.atoms for by in y.atoms]
    return TensorSpace(x.n_points * m, tuple(atoms), left=x, right=y)


def rectangle(t: TensorSpace, a: MeasurableSet, b: MeasurableSet) -> frozenset[int]:
    return frozenset(t.pair_index(p, q) for p in a.points for q in b.points)


def graph_map(f: MeasurableFn, t: TensorSpace) -> MeasurableFn:
    """``x -> (x, f(x))``."""
    return MeasurableFn(t.left, t, tuple(t.pair_index(x, f(x)) for x in t.left.points))


def cograph_map(g: MeasurableFn, t: TensorSpace) -> MeasurableFn:
    """``y -> (g(y), y)``."""
    return MeasurableFn(t.right, t, tuple(t.pair_index(g(y), y) for y in t.right.points))


def constant_graph(t: TensorSpace, y: int) -> MeasurableFn:
    """``x -> (x, y)``."""
    return MeasurableFn(t.left, t, tuple(t.pair_index(x, y) for x in t.left.points))


def projection_left(t: TensorSpace) -> MeasurableFn:
    return MeasurableFn(t, t.left, tuple(t.pair(i)[0] for i in t.points))


def projection_right(t: TensorSpace) -> MeasurableFn:
    return MeasurableFn(t, t.right, tuple(t.pair(i)[1] for i in t.points))


def tensor_map(f: MeasurableFn, g: MeasurableFn, src: TensorSpace, dst: TensorSpace) -> MeasurableFn:
    """``(x, y) -> (f(x), g(y))``."""
    table = []
    for i in src.points:
        a, b = src.pair(i)
        table.append(dst.pair_index(f(a), g(b)))
    return MeasurableFn(src, dst, tuple(table))


# -- function spaces ---------------------------------------------------------


@dataclass(frozen=True)
class FunctionSpace(FiniteSpace):
    """``Y^X``: measurable maps ``X -> Y`` with the sigma-algebra of point evaluations."""

    maps: tuple[MeasurableFn, ...] = ()

    def index_of(self, f: MeasurableFn) -> int:
        return self.maps.index(f)


def function_space(x: FiniteSpace, y: FiniteSpace) -> FunctionSpace:
    maps = tuple(measurable_maps(x, y))
    gens = []
    for p in x.points:
        for atom in y.atoms:
            gens.append([i for i, f in enumerate(maps) if f(p) in atom])
    base = generate_sigma_algebra(len(maps), gens)
    return FunctionSpace(base.n_points, base.atoms, maps=maps)


def evaluation_map(t: TensorSpace) -> MeasurableFn:
    """``ev: X (x) Y^X -> Y``, ``(x, f) -> f(x)``; ``t.right`` must be a function space."""
    fs = t.right
    if not isinstance(fs, FunctionSpace):
        raise TypeError("right factor must be a FunctionSpace")
    cod = fs.maps[0].cod
    return MeasurableFn(t, cod, tuple(fs.maps[t.pair(i)[1]](t.pair(i)[0]) for i in t.points))
