"""Named verification suites and their JSON reports.

Check ids follow the mathematical statement they test, e.g.
``lemma-basic-iii`` or ``monadIso-right-square``.  Checks run on a thread
pool; the report is assembled once every check has finished.
"""

from __future__ import annotations

import json
import os
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from typing import Callable

from . import codensity as cd, equivalence as eqv, laws
from .convex import (
    ID_I,
    INTERVAL,
    AffineMap,
    Simplex,
    SimplexPoint,
    barycentric_to_free,
    check_axioms,
    free_to_barycentric,
)
from .functionals import (
    CheckResult,
    Functional,
    FunctionalOnFunctionals,
    LEMMA_ITEMS,
    lemma_basic_suite,
    sample_functions,
    singleton_cover,
    t_join,
    t_pushforward,
)
from .generators import (
    all_spaces,
    grid_measures,
    random_affine_map,
    random_base_point,
    random_countable_measure,
    random_countable_set,
    random_hom,
    random_ifunction,
    random_map,
    random_measure,
    random_mixture,
    random_set_pair,
    random_space,
    random_weights,
)
from .giry import CountableMeasure, Measure, MeasureOnMeasures, factored_integral, integrate
from .numeric import format_rational, unit_grid
from .spaces import (
    NATURALS,
    CountableSpace,
    FiniteSpace,
    IFunction,
    MeasurableSet,
    CountableSet,
    TensorSizeError,
    generate_sigma_algebra,
    indicator,
)
from .textio import Document

SUITES = ("laws", "lemma-basic", "equivalence", "codensity")


class Skipped(Exception):
    """Raised by a check that does not apply to the given fixtures."""


@dataclass
class CheckRecord:
    id: str
    status: str
    witness: dict | None = None
    millis: float = 0.0
    cases: int = 0

    def to_json(self) -> dict:
        out = {"id": self.id, "status": self.status, "millis": round(self.millis, 3), "cases": self.cases}
        if self.witness is not None:
            out["witness"] = to_jsonable(self.witness)
        return out


@dataclass
class SuiteReport:
    suite: str
    checks: list[CheckRecord] = field(default_factory=list)

    @property
    def failures(self) -> list[CheckRecord]:
        return [c for c in self.checks if c.status == "fail"]

    @property
    def passed(self) -> bool:
        return not self.failures

    def counts(self) -> dict[str, int]:
        out = {"pass": 0, "fail": 0, "skipped": 0}
        for c in self.checks:
            out[c.status] += 1
        return out

    def to_json(self) -> dict:
        return {"suite": self.suite, "checks": [c.to_json() for c in self.checks]}

    def merge(self, other: SuiteReport) -> None:
        self.checks.extend(other.checks)


def to_jsonable(value):
    """Witness payloads in the ``num/den`` text form."""
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, MeasurableSet):
        return sorted(value.points)
    if isinstance(value, CountableSet):
        return {"points": list(value.points), "cofinite": value.cofinite}
    if isinstance(value, IFunction):
        return [format_rational(v) for v in value.values]
    if isinstance(value, (Measure, CountableMeasure)):
        from .textio import measure_to_json

        return measure_to_json(value)["masses"]
    return str(value)


def schema() -> dict:
    return json.loads(resources.files("affprob").joinpath("report_schema.json").read_text())


# -- execution -----------------------------------------------------------------------

Task = tuple[str, Callable[[], object]]


def _summarize(check_id: str, out, millis: float) -> CheckRecord:
    if isinstance(out, Skipped):
        return CheckRecord(check_id, "skipped", {"reason": str(out)}, millis)
    results = out if isinstance(out, list) else [out]
    cases = sum(r.cases for r in results)
    bad = next((r for r in results if not r.passed), None)
    if bad is None:
        return CheckRecord(check_id, "pass", None, millis, cases)
    witness = {"check": bad.name, **(bad.witness or {"detail": "no witness recorded"})}
    return CheckRecord(check_id, "fail", witness, millis, cases)


def _run_one(check_id: str, fn: Callable[[], object]) -> list[CheckRecord]:
    """Run one task; a dict result fans out into one record per key."""
    start = time.perf_counter()
    try:
        out = fn()
    except Skipped as exc:
        out = exc
    except Exception as exc:  # a crashing check is a failing check
        millis = (time.perf_counter() - start) * 1000
        return [CheckRecord(check_id, "fail", {"error": f"{type(exc).__name__}: {exc}"}, millis)]
    millis = (time.perf_counter() - start) * 1000
    if isinstance(out, dict):
        return [_summarize(sub_id, sub, millis / max(len(out), 1)) for sub_id, sub in out.items()]
    return [_summarize(check_id, out, millis)]


def run_tasks(suite: str, tasks: list[Task], workers: int | None = None) -> SuiteReport:
    workers = workers or min(8, os.cpu_count() or 1)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(_run_one, cid, fn) for cid, fn in tasks]
        records = [r for f in futures for r in f.result()]
    return SuiteReport(suite, records)


# -- fixtures ------------------------------------------------------------------------


@dataclass
class Config:
    doc: Document | None = None
    seed: int = 0
    exhaustive_denominator: int | None = None
    cap_tensor: int = 12
    samples: int = 20

    def rng(self, salt: str) -> random.Random:
        return random.Random(f"{self.seed}:{salt}")

    @property
    def space(self):
        if self.doc is not None:
            return self.doc.space
        return random_space(self.rng("space"), 3)

    @property
    def finite_space(self) -> FiniteSpace:
        s = self.space
        if isinstance(s, CountableSpace):
            raise Skipped("fixture space is the naturals")
        return s

    def measures(self) -> list[Measure]:
        space = self.finite_space
        found = [p for p in (self.doc.measures if self.doc else []) if isinstance(p, Measure)]
        if self.exhaustive_denominator:
            return found + grid_measures(space, self.exhaustive_denominator)
        rng = self.rng("measures")
        return found + [random_measure(rng, space, 6) for _ in range(self.samples)]

    def functionals(self) -> list[tuple[str, Functional]]:
        """Document functionals (labelled), or canonical ones from the measures."""
        if self.doc is not None and self.doc.functionals:
            out = []
            for i, spec in enumerate(self.doc.functionals):
                label = spec.name if spec.kind == "adversarial" else "canonical"
                out.append((f"{i}:{label}", spec.build(self.doc.space)))
            return out
        if isinstance(self.space, CountableSpace):
            ms = [p for p in self.doc.measures if isinstance(p, CountableMeasure)] if self.doc else []
            return [(f"{i}:canonical", Functional.canonical(p)) for i, p in enumerate(ms)]
        return [(f"{i}:canonical", Functional.canonical(p)) for i, p in enumerate(self.measures()[:6])]

    def spaces_for_exhaustion(self) -> list[FiniteSpace]:
        if self.doc is not None and isinstance(self.doc.space, FiniteSpace):
            return [self.doc.space]
        return [s for n in (1, 2, 3) for s in all_spaces(n)]


def _every(results_fn, items) -> Callable[[], list[CheckResult]]:
    return lambda: [results_fn(i) for i in items]


# -- laws ----------------------------------------------------------------------------


def laws_tasks(cfg: Config) -> list[Task]:
    def measures():
        if cfg.exhaustive_denominator:
            return [p for s in cfg.spaces_for_exhaustion() for p in grid_measures(s, cfg.exhaustive_denominator)]
        return cfg.measures()

    def telescoping():
        space = cfg.finite_space
        fs = list(cfg.doc.functions.values()) if cfg.doc else []
        r = cfg.rng("telescoping")
        fs += [random_ifunction(r, space) for _ in range(100)]
        return [laws.telescoping_exact(f) for f in fs]

    def giry_assoc():
        ms = measures()
        r = cfg.rng("giry-assoc")
        out = []
        for _ in range(cfg.samples):
            space = r.choice(ms).space
            pool = [p for p in ms if p.space == space]
            inner = [MeasureOnMeasures(tuple(zip(random_weights(r, 2, 4), r.sample(pool, 1) * 2))) for _ in range(2)]
            outer = MeasureOnMeasures(tuple(zip(random_weights(r, 2, 4), inner)))
            out.append(laws.giry_associativity(outer))
        return out

    def t_tests(space):
        r = cfg.rng("t-tests")
        return laws.test_functions(space, [random_ifunction(r, space) for _ in range(10)])

    def t_unit():
        out = []
        for _, g in cfg.functionals():
            if not isinstance(g.space, FiniteSpace):
                continue
            tests = t_tests(g.space)
            out += [laws.t_unit_left(g, tests), laws.t_unit_right(g, tests)]
        if not out:
            raise Skipped("no finite-space functionals")
        return out

    def t_assoc():
        space = cfg.finite_space
        r = cfg.rng("t-assoc")
        tests = t_tests(space)
        out = []
        for _ in range(cfg.samples // 2 or 1):
            qs = [random_mixture(r, space, 2, 4) for _ in range(2)]
            qqq = FunctionalOnFunctionals.mixture(zip(random_weights(r, 2, 4), qs))
            out.append(laws.t_associativity(qqq, tests))
        return out

    def t_props():
        out = []
        for label, g in cfg.functionals():
            for res in laws.t_properties(g):
                res.name = f"{res.name}[{label}]"
                out.append(res)
        return out

    def t_closure():
        space = cfg.finite_space
        r = cfg.rng("closure")
        out = []
        for p in cfg.measures()[:5]:
            g = Functional.canonical(p)
            target = random_space(r, 3)
            out += laws.t_properties(t_pushforward(random_map(r, space, target), g))
        out += laws.t_properties(t_join(random_mixture(r, space)))
        return out

    def section():
        space = cfg.finite_space
        r = cfg.rng("section")
        return [laws.section_property(space, random_ifunction(r, space)) for _ in range(cfg.samples)]

    def factored():
        space = cfg.finite_space
        out = []
        for p in cfg.measures()[:5]:
            for s in space.measurable_sets():
                f = indicator(s)
                ok = factored_integral(p, f) == integrate(p, f)
                out.append(CheckResult("integral-through-two", ok, None if ok else {"S": s}))
        return out

    def tensor_tasks():
        space = cfg.finite_space
        out = []
        for y in (FiniteSpace.discrete(2), FiniteSpace.trivial(2), FiniteSpace.discrete(1)):
            try:
                out.append(laws.tensor_contains_product(space, y, cfg.cap_tensor))
            except TensorSizeError as exc:
                raise Skipped(str(exc)) from None
        return out

    def strength():
        space = cfg.finite_space
        r = cfg.rng("strength")
        out = []
        for p in cfg.measures()[:8]:
            y_space = random_space(r, 2)
            y = r.randrange(2)
            try:
                out.append(laws.strength_marginals(p, y, y_space, cfg.cap_tensor))
                f = random_map(r, space, random_space(r, 2))
                g = random_map(r, y_space, random_space(r, 2))
                out.append(laws.strength_naturality(p, y, y_space, f, g, cfg.cap_tensor))
            except TensorSizeError as exc:
                raise Skipped(str(exc)) from None
        return out

    def st_map():
        space = cfg.finite_space
        if space.n_points > 3:
            raise Skipped("function-space composite is enumerated only for spaces of at most 3 points")
        r = cfg.rng("st-map")
        return [laws.st_map_matches(random_map(r, space, random_space(r, 2)), p) for p in cfg.measures()[:5]]

    def countable():
        r = cfg.rng("countable")
        out = []
        for _ in range(cfg.samples):
            p = random_countable_measure(r)
            s = random_countable_set(r)
            out.append(laws.countable_cover_sums(p, s, singleton_cover(s, 64)))
        return out

    def convex_axioms():
        grid = unit_grid(3)
        triples = [(a, b, c) for a in grid[::2] for b in grid[::2] for c in grid[::2]]
        d3 = Simplex(3)
        pts = [SimplexPoint(w) for w in [(1, 0, 0), (Fraction(1, 2), Fraction(1, 2), 0), (Fraction(1, 3),) * 3]]
        reports = [check_axioms(INTERVAL, triples, grid), check_axioms(d3, [(a, b, c) for a in pts for b in pts for c in pts], grid)]
        return [CheckResult("convex-axioms", r.passed, None if r.passed else {"failed": r.failed()}) for r in reports]

    def free_forms():
        out = []
        for w in grid_measures(FiniteSpace.discrete(3), 6):
            p = SimplexPoint(w.masses)
            back = free_to_barycentric(barycentric_to_free(p), 3)
            out.append(CheckResult("free-barycentric-roundtrip", back == p, None if back == p else {"p": str(p)}))
        return out

    def sigma_idempotent():
        space = cfg.finite_space
        again = generate_sigma_algebra(space.n_points, space.atoms)
        return CheckResult("sigma-generation-idempotent", again == space, {"atoms": [sorted(a) for a in again.atoms]})

    return [
        ("convex-axioms", convex_axioms),
        ("free-barycentric-roundtrip", free_forms),
        ("sigma-generation-idempotent", sigma_idempotent),
        ("telescoping-decomposition", telescoping),
        ("tensor-contains-product", tensor_tasks),
        ("giry-unit-left", lambda: [laws.giry_unit_left(p) for p in measures()]),
        ("giry-unit-right", lambda: [laws.giry_unit_right(p) for p in measures()]),
        ("giry-associativity", giry_assoc),
        ("T-unit-laws", t_unit),
        ("T-associativity", t_assoc),
        ("T-properties", t_props),
        ("T-closure", t_closure),
        ("section-property", section),
        ("integral-through-two", factored),
        ("strength", strength),
        ("st-map-composite", st_map),
        ("countable-additivity", countable),
    ]


# -- Lemma basic ------------------------------------------------------------------------


def lemma_tasks(cfg: Config) -> list[Task]:
    tasks = []
    for label, g in cfg.functionals():
        tasks.append((f"lemma-basic[{label}]", _lemma_runner(cfg, label, [g])))
    if not isinstance(cfg.space, CountableSpace) and (cfg.doc is None or not cfg.doc.functionals):
        r = cfg.rng("lemma-countable")
        gs = [Functional.canonical(random_countable_measure(r)) for _ in range(cfg.samples)]
        tasks.append(("lemma-basic[naturals]", _lemma_runner(cfg, "naturals", gs)))
    return tasks


def _lemma_runner(cfg: Config, label: str, gs: list[Functional]):
    """One record per item, aggregated over ``gs``; the first failure is kept."""

    def run():
        merged: dict[str, list] = {item: [] for item in LEMMA_ITEMS}
        for n, g in enumerate(gs):
            report = lemma_basic_suite(g, *_lemma_samples(cfg, f"{label}:{n}", g.space))
            for item in LEMMA_ITEMS:
                res = report.items[item]
                if res.status != "skipped":
                    merged[item].append(CheckResult(f"lemma-basic-{item}", res.status == "pass", res.witness, res.cases))
        out = {}
        for item, results in merged.items():
            name = f"lemma-basic-{item}[{label}]"
            out[name] = results if results else Skipped("no applicable samples on this space")
        return out

    return run


def _lemma_samples(cfg: Config, salt: str, space):
    r = cfg.rng(f"lemma:{salt}")
    if isinstance(space, CountableSpace):
        pairs = [(random_countable_set(r), random_countable_set(r)) for _ in range(cfg.samples * 5)]
        covers = [(s, singleton_cover(s, 64)) for s, _ in pairs[:10] if not s.cofinite]
        covers.append((NATURALS.whole(), singleton_cover(NATURALS.whole(), 64)))
    else:
        pairs = [random_set_pair(r, space) for _ in range(cfg.samples * 5)]
        pairs += [(space.atom_set(a), space.atom_set(b)) for a in range(space.n_atoms) for b in range(space.n_atoms)]
        covers = []
    return pairs, sample_functions(space), [Fraction(1, 2), Fraction(1, 3), 0], covers


# -- equivalence --------------------------------------------------------------------------


def equivalence_tasks(cfg: Config) -> list[Task]:
    def all_measures():
        if cfg.exhaustive_denominator:
            return [p for s in cfg.spaces_for_exhaustion() for p in grid_measures(s, cfg.exhaustive_denominator)]
        return cfg.measures()

    def phi_gamma():
        return [
            CheckResult("phi-gamma-roundtrip", eqv.phi(eqv.gamma(p)) == p, {"P": p.masses}) for p in all_measures()
        ]

    def gamma_phi():
        out = []
        for p in all_measures():
            g = Functional.black_box(p.space, lambda f, p=p: integrate(p, f), "integration")
            ok = eqv.functionals_equal(eqv.gamma(eqv.phi(g)), g)
            out.append(CheckResult("gamma-phi-roundtrip", ok, None if ok else {"P": p.masses}))
        return out

    def naturality():
        r = cfg.rng("naturality")
        space = cfg.finite_space
        return [
            eqv.check_naturality(random_map(r, space, random_space(r, 3)), Functional.canonical(p))
            for p in cfg.measures()
        ]

    def left_square():
        return [eqv.check_left_square(s, x) for s in cfg.spaces_for_exhaustion() for x in s.points]

    def right_square():
        r = cfg.rng("right-square")
        space = cfg.finite_space
        qs = [random_mixture(r, space, r.randint(1, 4), 6) for _ in range(cfg.samples)]
        units = [FunctionalOnFunctionals.mixture([(Fraction(1, 2), eqv.unit(space, 0)), (Fraction(1, 2), eqv.unit(space, space.n_points - 1))])]
        return [eqv.check_right_square(q) for q in qs + units]

    def two_iso():
        rows = eqv.giry_two_iso(6)
        bad = [a for a, p, back in rows if back != a or eqv.alpha_to_measure(eqv.measure_to_alpha(p)) != p]
        return CheckResult("giry-two-iso", not bad, {"alphas": bad}, len(rows))

    def phi_affine():
        r = cfg.rng("phi-affine")
        ms = cfg.measures()
        out = []
        for _ in range(cfg.samples):
            p1, p2 = r.choice(ms), r.choice(ms)
            w = random_weights(r, 2, 6)
            mixed = t_join(FunctionalOnFunctionals.mixture([(w[0], eqv.gamma(p1)), (w[1], eqv.gamma(p2))]))
            want = Measure(p1.space, tuple(w[0] * a + w[1] * b for a, b in zip(p1.masses, p2.masses)))
            got = eqv.phi(mixed, gate=False)
            out.append(CheckResult("phi-affine", got == want, {"got": got.masses, "want": want.masses}))
        return out

    def generators():
        space = cfg.finite_space
        gs = [eqv.gamma(p) for p in cfg.measures()]
        grid = unit_grid(4)
        out = []
        for s in space.measurable_sets():
            for lo in grid:
                for hi in grid:
                    if lo <= hi:
                        ok = eqv.generator_preimage_matches(gs, s, lo, hi)
                        out.append(CheckResult("phi-sigma-generators", ok, None if ok else {"S": s, "U": [lo, hi]}))
        return out

    tasks = [
        ("phi-gamma-roundtrip", phi_gamma),
        ("gamma-phi-roundtrip", gamma_phi),
        ("phi-naturality", naturality),
        ("monadIso-left-square", left_square),
        ("monadIso-right-square", right_square),
        ("giry-two-iso", two_iso),
        ("phi-affine", phi_affine),
        ("phi-sigma-generators", generators),
    ]
    if cfg.doc is not None:
        for label, g in cfg.functionals():
            tasks.append((f"phi-accepts[{label}]", _phi_accepts(g)))
    return tasks


def _phi_accepts(g: Functional):
    def run():
        try:
            eqv.phi(g)
        except eqv.NotInT as exc:
            witness = {"reason": str(exc)}
            if exc.deficit is not None:
                witness["deficit"] = exc.deficit
            if exc.witness:
                witness["property_witness"] = exc.witness
            return CheckResult("phi-accepts", False, witness)
        return CheckResult("phi-accepts", True)

    return run


# -- codensity -------------------------------------------------------------------------------


def codensity_tasks(cfg: Config) -> list[Task]:
    def setup():
        space = cfg.finite_space
        gs = [g for _, g in cfg.functionals() if g.space == space]
        return space, gs

    bases = [Simplex(2), Simplex(3), Simplex(4), INTERVAL]

    def random_slice(r, space, base):
        reps = [random_base_point(r, base, 6) for _ in range(space.n_atoms)]
        return cd.SliceObject.from_points(space, base, [reps[space.atom_of(x)] for x in space.points])

    def cone_commutation():
        space, gs = setup()
        r = cfg.rng("cone")
        out = []
        for g in gs:
            for _ in range(cfg.samples):
                a, b = r.choice(bases), r.choice(bases)
                f = random_slice(r, space, a)
                k = random_affine_map(r, a, b)
                out.append(cd.check_cone_commutation(k, f, g, [random_hom(r, b) for _ in range(5)]))
        return out

    def lemma_cd():
        r = cfg.rng("lemma-cd")
        out = []
        for _ in range(cfg.samples * 5):
            a, b = r.choice(bases), r.choice(bases)
            k = random_affine_map(r, a, b)
            el = cd.IotaElement.canonical(a, random_base_point(r, a))
            ok = cd.check_iota_arrow(k, random_hom(r, b), el)
            out.append(CheckResult("lemma-cD", ok, None if ok else {"k": k}))
        return out

    def unit_mediator():
        space, _ = setup()
        r = cfg.rng("unit-mediator")
        return [cd.check_unit_mediator(random_slice(r, space, b)) for b in bases]

    def theta_roundtrip():
        space, gs = setup()
        r = cfg.rng("theta")
        omega = cd.canonical_cone(lambda z: z)
        out = []
        for g in gs:
            arrows = []
            for _ in range(3):
                a, b = r.choice(bases), r.choice(bases)
                arrows.append((random_affine_map(r, a, b), random_slice(r, space, a)))
            theta = cd.theta_mediator(omega, g, space, arrows)
            ok = eqv.functionals_equal(theta, g)
            out.append(CheckResult("theta-roundtrip", ok, None if ok else {"functional": g.label}))
            out += cd.check_theta(omega, g, space)
        return out

    def theta_mu():
        space, _ = setup()
        r = cfg.rng("theta-mu")
        out = []
        for _ in range(cfg.samples // 2 or 1):
            q = random_mixture(r, space, r.randint(1, 3), 6)
            theta = cd.theta_mediator(cd.multiplication_cone(), q, space)
            ok = eqv.functionals_equal(theta, t_join(q))
            out.append(CheckResult("theta-mu-cone", ok))
        return out

    def theta_self():
        space, gs = setup()
        out = []
        for g in gs:
            theta = cd.theta_mediator(cd.limit_cone(), g, space)
            out.append(CheckResult("theta-self-mediation", eqv.functionals_equal(theta, g)))
        return out

    def hat_prime():
        space, _ = setup()
        r = cfg.rng("hat-prime")
        out = []
        for _ in range(cfg.samples):
            gamma_fn = random_ifunction(r, space)
            back = cd.hat(cd.prime(gamma_fn))(ID_I)
            out.append(CheckResult("hat-prime-identity", back == gamma_fn, {"gamma": gamma_fn, "back": back}))
        return out

    def eps_naturality():
        r = cfg.rng("epsilon")
        out = []
        for _ in range(cfg.samples):
            a, b = r.choice(bases), r.choice(bases)
            k = random_affine_map(r, a, b)
            src, dst = _fixture_pair(r, a, k)
            g = Functional.canonical(random_measure(r, src.space, 6))
            out.append(cd.check_epsilon_naturality(k, src, dst, g, [random_hom(r, b) for _ in range(3)]))
        return out

    def eps_unit():
        r = cfg.rng("epsilon-unit")
        out = []
        for base in bases:
            fx = cd.IotaFixture(base, _distinct_elements(r, base, 4))
            for i, el in enumerate(fx.elements):
                ok = cd.iota_equal(cd.epsilon(fx, eqv.unit(fx.space, i)), el, [random_hom(r, base)])
                out.append(CheckResult("epsilon-unit", ok))
        return out

    return [
        ("lemma-cD", lemma_cd),
        ("cone-commutation", cone_commutation),
        ("unit-as-mediator", unit_mediator),
        ("theta-roundtrip", theta_roundtrip),
        ("theta-mu-cone", theta_mu),
        ("theta-self-mediation", theta_self),
        ("hat-prime-identity", hat_prime),
        ("epsilon-naturality", eps_naturality),
        ("epsilon-unit", eps_unit),
    ]


def _distinct_elements(r: random.Random, base, n: int) -> list[cd.IotaElement]:
    out, seen = [], set()
    while len(out) < n:
        b = random_base_point(r, base, 6)
        key = str(b)
        if key not in seen:
            seen.add(key)
            out.append(cd.IotaElement.canonical(base, b))
    return out


def _fixture_pair(r: random.Random, base, k: AffineMap) -> tuple[cd.IotaFixture, cd.IotaFixture]:
    """A fixture on ``base`` and one on ``k.cod`` holding all of its images."""
    src = cd.IotaFixture(base, _distinct_elements(r, base, 3))
    images: list[cd.IotaElement] = []
    for e in src.elements:
        img = cd.iota_arrow(k, e)
        if not any(cd.iota_equal(img, other) for other in images):
            images.append(img)
    return src, cd.IotaFixture(k.cod, images)


# -- entry point ---------------------------------------------------------------------------

_BUILDERS = {
    "laws": laws_tasks,
    "lemma-basic": lemma_tasks,
    "equivalence": equivalence_tasks,
    "codensity": codensity_tasks,
}


def run_suite(name: str, cfg: Config, workers: int | None = None) -> SuiteReport:
    if name == "all":
        report = SuiteReport("all")
        for sub in SUITES:
            report.merge(run_suite(sub, cfg, workers))
        return report
    if name not in _BUILDERS:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)} or all")
    try:
        tasks = _BUILDERS[name](cfg)
    except Skipped as exc:
        return SuiteReport(name, [CheckRecord(name, "skipped", {"reason": str(exc)})])
    return run_tasks(name, tasks, workers)
