"""Functionals ``I^X -> I`` and the monad T of weakly averaging affine ones.

A :class:`Functional` is either *canonical* (backed by a measure, evaluated
by integration) or a black box wrapping any callable.  Black boxes carry no
guarantees; the ``check_*`` functions can refute the defining properties on
samples but never certify them.

Monad operations are built from their defining formulas and evaluated
lazily, so comparing two of them really compares two computations:

* unit:        ``x -> ev_x``
* pushforward: ``T(f)(G) = h -> G(h o f)``
* join:        ``mu(Q) = f -> Q(ev_f)``
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .giry import AnyMeasure, dirac, integrate
from .numeric import HALF, ONE, ZERO, UnitRational, as_unit, unit_grid
from .spaces import (
    NATURALS,
    AnyIFunction,
    CountableIFunction,
    CountableSet,
    CountableSpace,
    FiniteSpace,
    IFunction,
    MeasurableFn,
    SpaceMismatch,
    constant_function,
    indicator,
    pointwise_combine,
    require_measurable,
    scale,
)


class Functional:
    """An element of ``I^(I^X)``."""

    def __init__(self, space, evaluate: Callable, measure: AnyMeasure | None = None, label: str = ""):
        self.space = space
        self._evaluate = evaluate
        self.measure = measure
        self.label = label

    @classmethod
    def canonical(cls, p: AnyMeasure) -> Functional:
        return cls(p.space, lambda f: integrate(p, f), measure=p, label="canonical")

    @classmethod
    def black_box(cls, space, fn: Callable, label: str = "black box") -> Functional:
        return cls(space, fn, label=label)

    @property
    def is_canonical(self) -> bool:
        return self.measure is not None

    def eval(self, f: AnyIFunction) -> UnitRational:
        if f.space != self.space:
            raise SpaceMismatch("function and functional live on different spaces")
        return as_unit(self._evaluate(f))

    __call__ = eval

    def __repr__(self):
        return f"Functional({self.label or 'anonymous'} on {self.space!r})"


def eval_functional(g: Functional, f: AnyIFunction) -> UnitRational:
    return g.eval(f)


@dataclass(frozen=True, eq=False)
class FunctionalOnFunctionals:
    """An element of ``T(T(X))`` (or deeper), evaluated on maps ``xi: T(X) -> I``.

    ``support`` lists ``(weight, element)`` when the functional is a finite
    mixture of evaluations ``xi -> xi(element)``; lazily built ones may
    leave it ``None`` and record ``base`` instead.
    """

    evaluate: Callable[[Callable], Fraction]
    support: tuple | None = None
    label: str = ""
    base: object = None  # space of the innermost functionals, when known

    @classmethod
    def mixture(cls, items: Iterable[tuple]) -> FunctionalOnFunctionals:
        items = tuple((as_unit(w), e) for w, e in items)
        if sum((w for w, _ in items), Fraction(0)) != 1:
            raise ValueError("mixture weights must sum to 1")

        def evaluate(xi):
            return sum((w * xi(e) for w, e in items), Fraction(0))

        return cls(evaluate, items, label="mixture")

    @classmethod
    def point_mass(cls, element) -> FunctionalOnFunctionals:
        """The unit at the next level: ``ev_element``."""
        return cls.mixture([(ONE, element)])

    def eval(self, xi: Callable) -> UnitRational:
        return as_unit(self.evaluate(xi))

    __call__ = eval


# -- monad structure ----------------------------------------------------------


def unit(space, x: int) -> Functional:
    """``ev_x``; canonical, backed by the Dirac measure at ``x``."""
    return Functional(space, lambda f: f(x), measure=dirac(space, x), label=f"ev_{x}")


def t_pushforward(f: MeasurableFn, g: Functional) -> Functional:
    """``h -> G(h o f)``."""
    if f.dom != g.space:
        raise SpaceMismatch("map domain differs from the functional's space")
    require_measurable(f)
    return Functional(f.cod, lambda h: g.eval(h.precompose(f)), label=f"T(f)({g.label})")


def t_join(q: FunctionalOnFunctionals) -> Functional:
    """``f -> Q(ev_f)``."""
    space = _support_space(q)
    return Functional(space, lambda f: q.eval(lambda g: g.eval(f)), label="mu(Q)")


def t_join_outer(qq: FunctionalOnFunctionals) -> FunctionalOnFunctionals:
    """Multiplication one level up: ``xi -> QQ(Q -> Q(xi))``."""
    support = None
    if qq.support is not None and all(e.support is not None for _, e in qq.support):
        support = tuple((w * v, g) for w, e in qq.support for v, g in e.support)
    return FunctionalOnFunctionals(lambda xi: qq.eval(lambda q: q.eval(xi)), support, "mu(QQ)")


def t_map(q: FunctionalOnFunctionals, fn: Callable) -> FunctionalOnFunctionals:
    """``T(fn)(Q) = xi -> Q(xi o fn)`` for a map ``fn`` on the support level."""
    support = None if q.support is None else tuple((w, fn(e)) for w, e in q.support)
    return FunctionalOnFunctionals(lambda xi: q.eval(lambda e: xi(fn(e))), support, "T(fn)(Q)")


def t_push_unit(g: Functional) -> FunctionalOnFunctionals:
    """``T(eta)(G) = xi -> G(xi o eta)`` where ``eta(x) = ev_x``."""
    space = g.space
    if not isinstance(space, FiniteSpace):
        raise TypeError("only finite spaces are supported")

    def evaluate(xi):
        along_unit = IFunction(
            space, tuple(as_unit(xi(unit(space, space.representative(a)))) for a in range(space.n_atoms))
        )
        return g.eval(along_unit)

    support = None
    if g.measure is not None:
        support = tuple(
            (m, unit(space, space.representative(a))) for a, m in enumerate(g.measure.masses) if m
        )
    return FunctionalOnFunctionals(evaluate, support, "T(eta)(G)", base=space)


def _support_space(q: FunctionalOnFunctionals):
    if q.base is not None:
        return q.base
    if q.support is None:
        raise ValueError("cannot infer the base space of a lazily built functional")
    spaces = {e.space for _, e in q.support}
    if len(spaces) != 1:
        raise SpaceMismatch("support functionals live on different spaces")
    return spaces.pop()


def t_join_on(space, q: FunctionalOnFunctionals) -> Functional:
    """:func:`t_join` for a ``Q`` without recorded support."""
    return Functional(space, lambda f: q.eval(lambda g: g.eval(f)), label="mu(Q)")


# -- property checks ----------------------------------------------------------


@dataclass
class CheckResult:
    name: str
    passed: bool
    witness: dict | None = None
    cases: int = 1

    def __bool__(self):
        return self.passed


def check_weakly_averaging(g: Functional, samples: Iterable = ()) -> CheckResult:
    samples = list(samples) or unit_grid(4)
    for u in samples:
        got = g.eval(constant_function(g.space, u))
        if got != u:
            return CheckResult("weakly-averaging", False, {"u": as_unit(u), "value": got}, len(samples))
    return CheckResult("weakly-averaging", True, cases=len(samples))


def check_affine(g: Functional, samples: Iterable[tuple]) -> CheckResult:
    """``G(f +_r h) == G(f) +_r G(h)`` on every sampled ``(f, h, r)``.

    A sample may carry ``f +_r h`` precomputed as a fourth entry.
    """
    n = 0
    seen: dict = {}

    def ev(f):  # samples reuse the same function objects
        key = id(f)
        if key not in seen:
            seen[key] = g.eval(f)
        return seen[key]

    for sample in samples:
        f, h, r = sample[:3]
        n += 1
        mixed = sample[3] if len(sample) > 3 else pointwise_combine(f, h, r)
        lhs = g.eval(mixed)
        rhs = r * ev(f) + (1 - r) * ev(h)
        if lhs != rhs:
            return CheckResult(
                "affine", False, {"f": f, "g": h, "r": as_unit(r), "lhs": lhs, "rhs": UnitRational(rhs)}, n
            )
    return CheckResult("affine", True, cases=n)


def dyadic_chain(f: IFunction, depth: int = 4) -> list[IFunction]:
    """``psi_k = floor(2^k f) / 2^k``: simple, increasing, below ``f``."""
    out = []
    for k in range(depth + 1):
        d = 1 << k
        out.append(IFunction(f.space, tuple(Fraction((v * d).numerator // (v * d).denominator, d) for v in f.values)))
    return out


def truncation_chain(f: CountableIFunction, horizon: int) -> list[CountableIFunction]:
    """``psi_N = f`` on ``0..N-1`` and ``0`` beyond, for ``N = 1..horizon``."""
    return [CountableIFunction(tuple((p, f(p)) for p in range(n)), ZERO) for n in range(1, horizon + 1)]


def indicator_truncations(s: CountableSet, horizon: int) -> list[CountableIFunction]:
    """Indicators of ``S n {0..N-1}``, increasing to the indicator of ``S``."""
    return truncation_chain(indicator(s), horizon)


def _validate_chain(chain: Sequence, f) -> None:
    for i, psi in enumerate(chain):
        if not psi.le(f):
            raise ValueError(f"chain element {i} is not below f")
        if i and not chain[i - 1].le(psi):
            raise ValueError(f"chain is not monotone at position {i}")


def check_preserves_limits(g: Functional, f: AnyIFunction, chains: Iterable[Sequence]) -> CheckResult:
    """Compare ``G(f)`` with what the supplied monotone chains below ``f`` reach.

    On a finite space ``f`` itself joins every chain, so the check passes iff
    no chain value exceeds ``G(f)``.  On the naturals the chains are finite
    prefixes of sequences increasing to ``f`` and their last value must
    already equal ``G(f)``; this refutes but cannot certify.
    """
    target = g.eval(f)
    n = 0
    for chain in chains:
        chain = list(chain)
        _validate_chain(chain, f)
        values = [g.eval(psi) for psi in chain]
        n += len(values)
        if isinstance(g.space, CountableSpace):
            for i in range(1, len(values)):
                if values[i] < values[i - 1]:
                    return CheckResult("preserves-limits", False, {"step": i, "values": values[i - 1 : i + 1]}, n)
            if not values or values[-1] != target:
                reached = values[-1] if values else None
                return CheckResult(
                    "preserves-limits", False, {"terms": len(values), "reached": reached, "G(f)": target}, n
                )
        else:
            top = max(values + [target])
            if top != target:
                return CheckResult("preserves-limits", False, {"sup": top, "G(f)": target}, n)
    return CheckResult("preserves-limits", True, cases=n)


# -- default samples ------------------------------------------------------------


def sample_functions(space) -> list[AnyIFunction]:
    """A small deterministic family of test functions on ``space``."""
    if isinstance(space, CountableSpace):
        fs = [indicator(space.singleton(i)) for i in range(4)]
        fs += [indicator(space.whole()), indicator(space.empty()), indicator(CountableSet((0, 2), True))]
        fs.append(CountableIFunction(((0, Fraction(1, 3)), (1, Fraction(3, 4))), Fraction(1, 2)))
        return fs
    fs = [indicator(space.atom_set(a)) for a in range(space.n_atoms)]
    fs += [indicator(space.whole()), indicator(space.empty()), constant_function(space, HALF)]
    n = space.n_atoms
    fs.append(IFunction(space, tuple(Fraction(i, max(n - 1, 1)) for i in range(n))))
    return fs


@lru_cache(maxsize=256)
def affine_samples(space, weights=(Fraction(1, 3), Fraction(1, 2))) -> tuple[tuple, ...]:
    """Ordered pairs of distinct sample functions with each weight, plus their mix.

    ``f +_r f`` is ``f`` itself, so the diagonal is left out.
    """
    fs = sample_functions(space)
    return tuple((f, h, r, pointwise_combine(f, h, r)) for f in fs for h in fs if f != h for r in weights)


@lru_cache(maxsize=1024)
def default_chains(f: AnyIFunction) -> tuple[list, ...]:
    if isinstance(f, CountableIFunction):
        horizon = max(f.support_points(), default=0) + 8
        return (truncation_chain(f, horizon),)
    return (dyadic_chain(f, 4),)


def property_gate(g: Functional) -> list[CheckResult]:
    """The three defining property checks on the default samples."""
    space = g.space
    results = [check_weakly_averaging(g), check_affine(g, affine_samples(space))]
    fs = sample_functions(space)
    if isinstance(space, CountableSpace):
        whole = indicator(NATURALS.whole())
        limit = check_preserves_limits(g, whole, [indicator_truncations(NATURALS.whole(), 64)])
    else:
        limit = CheckResult("preserves-limits", True)
    for f in fs:
        if not limit.passed:
            break
        more = check_preserves_limits(g, f, default_chains(f))
        limit = CheckResult("preserves-limits", more.passed, more.witness, limit.cases + more.cases)
    results.append(limit)
    return results


# -- Lemma basic ------------------------------------------------------------------

LEMMA_ITEMS = ("i", "ii", "iii", "iv", "v", "vi")


@dataclass
class ItemResult:
    item: str
    status: str  # "pass", "fail" or "skipped"
    witness: dict | None = None
    cases: int = 0


@dataclass
class LemmaReport:
    items: dict[str, ItemResult] = field(default_factory=dict)

    def failed(self) -> set[str]:
        return {k for k, v in self.items.items() if v.status == "fail"}

    @property
    def passed(self) -> bool:
        return not self.failed()


def lemma_basic_suite(
    g: Functional,
    set_pairs: Iterable[tuple],
    functions: Iterable[AnyIFunction] = (),
    alphas: Iterable = (),
    covers: Iterable[tuple] = (),
) -> LemmaReport:
    """Check the six indicator identities of a functional in ``T(X)``.

    ``covers`` holds ``(S, [S_1, S_2, ...])`` with the ``S_i`` disjoint and
    covering ``S`` (item v).  Items with no applicable samples are skipped.
    """
    ev = lambda s: g.eval(indicator(s))
    space = g.space
    report = LemmaReport()
    pairs = list(set_pairs)

    def record(item, witness, cases):
        status = "pass" if witness is None else "fail"
        if cases == 0:
            status = "skipped"
        report.items[item] = ItemResult(item, status, witness, cases)

    whole, empty = space.whole(), space.empty()
    w = None
    if ev(whole) != 1 or ev(empty) != 0:
        w = {"G(X)": ev(whole), "G(empty)": ev(empty)}
    record("i", w, 1)

    w, n = None, 0
    for s, _ in pairs:
        n += 1
        if ev(s.complement()) != 1 - ev(s):
            w = {"S": s, "G(S)": ev(s), "G(S^c)": ev(s.complement())}
            break
    record("ii", w, n)

    w, n = None, 0
    for s, t in pairs:
        n += 1
        if ev(s & t) + ev(s | t) != ev(s) + ev(t):
            w = {"S": s, "T": t, "lhs": ev(s & t) + ev(s | t), "rhs": ev(s) + ev(t)}
            break
    record("iii", w, n)

    w, n = None, 0
    for s, t in pairs:
        for small, big in ((s, t), (s & t, s), (s, s | t)):
            if not small.issubset(big):
                continue
            n += 1
            if ev(small) > ev(big):
                w = {"S": small, "T": big, "G(S)": ev(small), "G(T)": ev(big)}
                break
        if w:
            break
    record("iv", w, n)

    w, n = None, 0
    for s, cover in covers:
        n += 1
        total = Fraction(0)
        for piece in cover:
            total += ev(piece)
        if total != ev(s):
            w = {"S": s, "pieces": len(cover), "partial_sum": total, "G(S)": ev(s)}
            break
    record("v", w, n)

    w, n = None, 0
    alphas = list(alphas)
    for f in functions:
        for a in alphas:
            n += 1
            lhs = g.eval(scale(f, a))
            rhs = a * g.eval(f)
            if lhs != rhs:
                w = {"f": f, "alpha": as_unit(a), "lhs": lhs, "rhs": rhs}
                break
        if w:
            break
    record("vi", w, n)
    return report


def singleton_cover(s: CountableSet, horizon: int) -> list[CountableSet]:
    """``{p}`` for each ``p`` in ``S`` below ``horizon``; a prefix of the singleton cover."""
    return [CountableSet((p,)) for p in range(horizon) if p in s]
