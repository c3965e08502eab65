"""Plain-text fixture documents and JSON export.

A document starts with a space and may continue with measures, named
functions and functionals::

    points 3
    atom 0: 0 2
    atom 1: 1
    P: atom0=1/2 atom1=1/2
    function f
    atom 0: 1/3
    atom 1: 1
    functional canonical
    P: atom0=1/4 atom1=3/4
    functional adversarial max-over-atoms

The naturals are written ``naturals`` in place of the ``points`` block,
and their measures as ``P: point0=1/2 point7=1/2``.  Blank lines and lines
starting with ``#`` are ignored.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from . import adversarial
from .convex import SimplexPoint
from .functionals import Functional
from .giry import CountableMeasure, Measure
from .numeric import format_rational, parse_rational, parse_unit
from .spaces import NATURALS, CountableSpace, FiniteSpace, IFunction


class ParseError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass
class FunctionalSpec:
    kind: str  # "canonical" or "adversarial"
    name: str = ""
    measure: Measure | CountableMeasure | None = None

    def build(self, space) -> Functional:
        if self.kind == "canonical":
            return Functional.canonical(self.measure)
        return adversarial.build(self.name, None if isinstance(space, CountableSpace) else space, self.measure).functional

    @property
    def declared_failures(self) -> frozenset[str]:
        if self.kind == "canonical":
            return frozenset()
        return adversarial.resolve(self.name).properties


@dataclass
class Document:
    space: FiniteSpace | CountableSpace
    measures: list = field(default_factory=list)
    functions: dict[str, IFunction] = field(default_factory=dict)
    functionals: list[FunctionalSpec] = field(default_factory=list)


# -- formatting ------------------------------------------------------------------


def format_space(space) -> str:
    if isinstance(space, CountableSpace):
        return "naturals\n"
    lines = [f"points {space.n_points}"]
    for i, atom in enumerate(space.atoms):
        lines.append(f"atom {i}: " + " ".join(str(p) for p in sorted(atom)))
    return "\n".join(lines) + "\n"


def format_measure(p) -> str:
    if isinstance(p, CountableMeasure):
        return "P: " + " ".join(f"point{x}={format_rational(m)}" for x, m in p.support) + "\n"
    return "P: " + " ".join(f"atom{i}={format_rational(m)}" for i, m in enumerate(p.masses)) + "\n"


def format_function(f: IFunction, name: str = "f") -> str:
    lines = [f"function {name}"] + [f"atom {i}: {format_rational(v)}" for i, v in enumerate(f.values)]
    return "\n".join(lines) + "\n"


def format_functional(spec: FunctionalSpec) -> str:
    head = "functional canonical" if spec.kind == "canonical" else f"functional adversarial {spec.name}"
    body = format_measure(spec.measure) if spec.measure is not None else ""
    return head + "\n" + body


def format_document(doc: Document) -> str:
    parts = [format_space(doc.space)]
    parts += [format_measure(p) for p in doc.measures]
    parts += [format_function(f, name) for name, f in doc.functions.items()]
    parts += [format_functional(s) for s in doc.functionals]
    return "".join(parts)


def format_simplex_point(p: SimplexPoint) -> str:
    return str(p)


def parse_simplex_point(text: str) -> SimplexPoint:
    body = text.strip()
    if not body.startswith("p:"):
        raise ValueError("simplex point must start with 'p:'")
    return SimplexPoint(tuple(parse_rational(t) for t in body[2:].split()))


# -- parsing ------------------------------------------------------------------------

_ATOM = re.compile(r"^atom\s+(\d+)\s*:\s*(.*)$")
_MASS = re.compile(r"^(atom|point)(\d+)=(\S+)$")


def _parse_measure(line_no: int, text: str, space):
    entries = text[2:].split()
    if not entries:
        raise ParseError(line_no, "measure has no masses")
    values: dict[int, Fraction] = {}
    for entry in entries:
        m = _MASS.match(entry)
        if not m:
            raise ParseError(line_no, f"bad mass entry {entry!r}")
        want = "point" if isinstance(space, CountableSpace) else "atom"
        if m.group(1) != want:
            raise ParseError(line_no, f"expected '{want}N=' entries for this space")
        idx = int(m.group(2))
        if idx in values:
            raise ParseError(line_no, f"{want} {idx} given twice")
        try:
            values[idx] = parse_unit(m.group(3))
        except ValueError as exc:
            raise ParseError(line_no, str(exc)) from None
    try:
        if isinstance(space, CountableSpace):
            return CountableMeasure(tuple(values.items()))
        if set(values) - set(range(space.n_atoms)):
            raise ParseError(line_no, "mass given for an atom the space does not have")
        return Measure(space, tuple(values.get(i, Fraction(0)) for i in range(space.n_atoms)))
    except ValueError as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(line_no, str(exc)) from None


def parse_document(text: str) -> Document:
    lines = [(i + 1, raw.strip()) for i, raw in enumerate(text.splitlines())]
    lines = [(n, t) for n, t in lines if t and not t.startswith("#")]
    if not lines:
        raise ParseError(1, "empty document")
    pos = 0

    n, head = lines[pos]
    pos += 1
    if head == "naturals":
        space = NATURALS
    else:
        m = re.match(r"^points\s+(\d+)$", head)
        if not m:
            raise ParseError(n, "expected 'points N' or 'naturals'")
        n_points = int(m.group(1))
        atoms = []
        while pos < len(lines) and _ATOM.match(lines[pos][1]):
            an, at = lines[pos]
            am = _ATOM.match(at)
            if int(am.group(1)) != len(atoms):
                raise ParseError(an, f"expected atom {len(atoms)}")
            try:
                atoms.append(frozenset(int(t) for t in am.group(2).split()))
            except ValueError:
                raise ParseError(an, "atom members must be integers") from None
            pos += 1
        if not atoms:
            raise ParseError(n, "space has no atoms")
        try:
            space = FiniteSpace(n_points, tuple(atoms))
        except ValueError as exc:
            raise ParseError(n, str(exc)) from None
        if tuple(sorted(atoms, key=min)) != tuple(atoms):
            raise ParseError(n, "atoms must be listed by their smallest point")

    doc = Document(space)
    while pos < len(lines):
        n, line = lines[pos]
        pos += 1
        if line.startswith("P:"):
            doc.measures.append(_parse_measure(n, line, space))
        elif line.startswith("function "):
            name = line.split(None, 1)[1].strip()
            if isinstance(space, CountableSpace):
                raise ParseError(n, "functions on the naturals have no text form")
            values = []
            while pos < len(lines) and _ATOM.match(lines[pos][1]):
                vn, vt = lines[pos]
                am = _ATOM.match(vt)
                if int(am.group(1)) != len(values):
                    raise ParseError(vn, f"expected atom {len(values)}")
                try:
                    values.append(parse_unit(am.group(2)))
                except ValueError as exc:
                    raise ParseError(vn, str(exc)) from None
                pos += 1
            if len(values) != space.n_atoms:
                raise ParseError(n, f"function {name!r} needs {space.n_atoms} values, got {len(values)}")
            doc.functions[name] = IFunction(space, tuple(values))
        elif line.startswith("functional"):
            parts = line.split()
            measure = None
            if pos < len(lines) and lines[pos][1].startswith("P:"):
                measure = _parse_measure(lines[pos][0], lines[pos][1], space)
                pos += 1
            if parts[1:2] == ["canonical"] and len(parts) == 2:
                if measure is None:
                    raise ParseError(n, "canonical functional needs a following 'P:' line")
                doc.functionals.append(FunctionalSpec("canonical", measure=measure))
            elif parts[1:2] == ["adversarial"] and len(parts) == 3:
                try:
                    kind = adversarial.resolve(parts[2])
                except ValueError as exc:
                    raise ParseError(n, str(exc)) from None
                if kind.countable != isinstance(space, CountableSpace):
                    raise ParseError(n, f"kind {kind.name!r} does not live on this space")
                doc.functionals.append(FunctionalSpec("adversarial", parts[2], measure))
            else:
                raise ParseError(n, "expected 'functional canonical' or 'functional adversarial <kind>'")
        else:
            raise ParseError(n, f"unexpected line {line!r}")
    return doc


def read_document(path) -> Document:
    with open(path, encoding="utf-8") as fh:
        return parse_document(fh.read())


# -- JSON ----------------------------------------------------------------------------


def space_to_json(space) -> dict:
    if isinstance(space, CountableSpace):
        return {"kind": "naturals"}
    return {"kind": "finite", "points": space.n_points, "atoms": [sorted(a) for a in space.atoms]}


def measure_to_json(p) -> dict:
    if isinstance(p, CountableMeasure):
        masses = {f"point{x}": format_rational(m) for x, m in p.support}
    else:
        masses = {f"atom{i}": format_rational(m) for i, m in enumerate(p.masses)}
    return {"space": space_to_json(p.space), "masses": masses}
