"""Exact rational arithmetic on the unit interval."""

from __future__ import annotations

from fractions import Fraction
from typing import Union

Rational = Fraction
RationalLike = Union[int, str, Fraction]


_SLOTS = Fraction.__slots__ == ("_numerator", "_denominator")


class UnitRational(Fraction):
    """A rational number in [0, 1], kept in lowest terms by ``Fraction``.

    Arithmetic falls back to plain ``Fraction`` results; wrap them again
    (``UnitRational(x)``) when the range guarantee is needed.
    """

    __slots__ = ()

    def __new__(cls, numerator: RationalLike = 0, denominator: int | None = None):
        if denominator is None and type(numerator) is Fraction and _SLOTS:
            # already in lowest terms: skip the generic constructor
            n, d = numerator.numerator, numerator.denominator
            if n < 0 or n > d:
                raise ValueError(f"{format_rational(numerator)} is outside [0, 1]")
            self = object.__new__(cls)
            self._numerator, self._denominator = n, d
            return self
        if type(numerator) is cls and denominator is None:
            return numerator
        if denominator is None:
            self = super().__new__(cls, numerator)
        else:
            self = super().__new__(cls, numerator, denominator)
        if self < 0 or self > 1:
            raise ValueError(f"{format_rational(self)} is outside [0, 1]")
        return self

    def __repr__(self) -> str:
        return f"UnitRational({format_rational(self)})"

    def __str__(self) -> str:
        return format_rational(self)

    @property
    def num(self) -> int:
        return self.numerator

    @property
    def den(self) -> int:
        return self.denominator


ZERO = UnitRational(0)
ONE = UnitRational(1)
HALF = UnitRational(1, 2)


def as_unit(value: RationalLike) -> UnitRational:
    if type(value) is UnitRational:
        return value
    if isinstance(value, float):
        raise TypeError("floats are not accepted; pass an int, str or Fraction")
    return UnitRational(value)


def cvx_combine(u: RationalLike, v: RationalLike, r: RationalLike) -> UnitRational:
    """Return ``u +_r v = r*u + (1 - r)*v``."""
    u, v, r = as_unit(u), as_unit(v), as_unit(r)
    return UnitRational(r * u + (1 - r) * v)


def axiom4_weight(p: RationalLike, q: RationalLike) -> Fraction | None:
    """Weight ``r`` making ``(a +_p b) +_q c == a +_{pq} (b +_r c)``.

    Returns ``None`` when ``p == q == 1``; any ``r`` works there.
    """
    p, q = Fraction(p), Fraction(q)
    if p * q == 1:
        return None
    return (1 - p) * q / (1 - p * q)


def parse_rational(text: str) -> Fraction:
    """Parse the ``num/den`` text form (``"3/4"``, ``"1"``)."""
    text = text.strip()
    if not text:
        raise ValueError("empty rational")
    if "." in text or "e" in text.lower():
        raise ValueError(f"not an exact rational: {text!r}")
    return Fraction(text)


def parse_unit(text: str) -> UnitRational:
    return UnitRational(parse_rational(text))


def format_rational(value: Fraction | int) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def unit_grid(max_den: int) -> list[UnitRational]:
    """All rationals in [0, 1] with denominator at most ``max_den``, sorted."""
    values = {Fraction(n, d) for d in range(1, max_den + 1) for n in range(d + 1)}
    return [UnitRational(v) for v in sorted(values)]
