"""Command-line harness: ``gen`` writes fixtures, ``verify`` runs suites."""

from __future__ import annotations

import argparse
import json
import random
import sys

from . import adversarial
from .generators import random_countable_measure, random_measure, random_space
from .spaces import NATURALS
from .suites import SUITES, Config, SuiteReport, run_suite, to_jsonable
from .textio import Document, FunctionalSpec, ParseError, format_document, parse_document

MAX_POINTS = 12


class UsageError(ValueError):
    pass


def generate(kind: str, seed: int, points: int = 3, atoms: int | None = None, adversarial_kind: str | None = None) -> str:
    """Fixture text for ``kind``; identical for identical arguments."""
    if not 1 <= points <= MAX_POINTS:
        raise UsageError(f"--points must be between 1 and {MAX_POINTS}")
    if atoms is not None and not 1 <= atoms <= points:
        raise UsageError("--atoms must be between 1 and --points")
    rng = random.Random(seed)
    kind_info = None
    if adversarial_kind is not None:
        if kind != "functional":
            raise UsageError("--adversarial applies to 'gen functional' only")
        if adversarial_kind == "":
            adversarial_kind = sorted(adversarial.PROPERTY_KINDS)[rng.randrange(len(adversarial.PROPERTY_KINDS))]
        try:
            kind_info = adversarial.resolve(adversarial_kind)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        if atoms is None:
            lo = min(max(2, kind_info.min_atoms), points)
            atoms = rng.randint(lo, points)
    space = random_space(rng, points, atoms)
    if kind == "space":
        return format_document(Document(space))
    if kind == "measure":
        return format_document(Document(space, measures=[random_measure(rng, space)]))
    if kind != "functional":
        raise UsageError(f"unknown kind {kind!r}")
    if kind_info is None:
        spec = FunctionalSpec("canonical", measure=random_measure(rng, space))
        return format_document(Document(space, functionals=[spec]))
    if kind_info.countable:
        spec = FunctionalSpec("adversarial", adversarial_kind, random_countable_measure(rng, max_point=8))
        return _declare(kind_info) + format_document(Document(NATURALS, functionals=[spec]))
    if space.n_atoms < kind_info.min_atoms:
        raise UsageError(f"{kind_info.name} needs at least {kind_info.min_atoms} atoms; use --atoms")
    spec = FunctionalSpec("adversarial", adversarial_kind, random_measure(rng, space))
    return _declare(kind_info) + format_document(Document(space, functionals=[spec]))


def _declare(kind: adversarial.Kind) -> str:
    return f"# adversarial {kind.name}: fails {', '.join(sorted(kind.properties))}\n"


def _print_report(report: SuiteReport, out) -> None:
    for c in report.checks:
        line = f"{c.status.upper():7} {c.id}"
        if c.cases:
            line += f" ({c.cases} cases)"
        print(line, file=out)
        if c.status == "fail":
            print("        witness: " + json.dumps(to_jsonable(c.witness)), file=out)
    counts = report.counts()
    print(f"{report.suite}: {counts['pass']} passed, {counts['fail']} failed, {counts['skipped']} skipped", file=out)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="affprob", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="write a fixture document")
    gen.add_argument("kind", choices=["space", "measure", "functional"])
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--points", type=int, default=3)
    gen.add_argument("--atoms", type=int)
    gen.add_argument(
        "--adversarial",
        nargs="?",
        const="",
        metavar="KIND",
        help="emit a functional built to fail one property; KIND defaults to a seeded choice among "
        + ", ".join(adversarial.PROPERTY_KINDS),
    )
    gen.add_argument("--out", help="write to this path instead of stdout")

    ver = sub.add_parser("verify", help="run verification suites")
    ver.add_argument("suite", choices=[*SUITES, "all"])
    ver.add_argument("fixtures", nargs="*", help="fixture documents; generated fixtures are used when omitted")
    ver.add_argument("--seed", type=int, default=0)
    ver.add_argument("--exhaustive-denominator", type=int, metavar="D")
    ver.add_argument("--cap-tensor", type=int, default=12)
    ver.add_argument("--samples", type=int, default=20)
    ver.add_argument("--json", metavar="PATH", help="also write the JSON report here")
    ver.add_argument("--quiet", action="store_true", help="print only the summary line")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "gen":
            text = generate(args.kind, args.seed, args.points, args.atoms, args.adversarial)
            if args.out:
                with open(args.out, "w", encoding="utf-8") as fh:
                    fh.write(text)
            else:
                sys.stdout.write(text)
            return 0
        return _verify(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def _verify(args) -> int:
    if args.exhaustive_denominator is not None and not 1 <= args.exhaustive_denominator <= 12:
        raise UsageError("--exhaustive-denominator must be between 1 and 12")
    docs: list[tuple[str, Document | None]] = []
    for path in args.fixtures:
        try:
            with open(path, encoding="utf-8") as fh:
                docs.append((path, parse_document(fh.read())))
        except ParseError as exc:
            print(f"error: {path}: {exc}", file=sys.stderr)
            return 2
        except OSError as exc:
            raise UsageError(str(exc)) from None
    if not docs:
        docs = [("generated", None)]

    report = SuiteReport(args.suite)
    for name, doc in docs:
        cfg = Config(doc, args.seed, args.exhaustive_denominator, args.cap_tensor, args.samples)
        part = run_suite(args.suite, cfg)
        if len(docs) > 1:
            for c in part.checks:
                c.id = f"{name}:{c.id}"
        report.merge(part)

    if args.quiet:
        counts = report.counts()
        print(f"{report.suite}: {counts['pass']} passed, {counts['fail']} failed, {counts['skipped']} skipped")
    else:
        _print_report(report, sys.stdout)
    if args.json:
        payload = report.to_json()
        payload["seed"] = args.seed
        payload["counts"] = report.counts()
        with open(args.json, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, indent=2)
    return 0 if report.passed else 1


if __name__ == "__main__":
    sys.exit(main())
