"""Fuchsian signatures and Riemann-Hurwitz arithmetic (exact, no floats)."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .errors import NotAdmissibleError, ParseError

H_CAP = 4


@dataclass(frozen=True, order=True)
class Signature:
    """``(h; m_1, ..., m_l)`` with periods kept sorted ascending."""

    h: int
    periods: tuple[int, ...] = ()

    def __post_init__(self):
        if self.h < 0:
            raise ValueError("orbit genus must be non-negative")
        periods = tuple(sorted(int(m) for m in self.periods))
        if any(m < 2 for m in periods):
            raise ValueError(f"periods must be >= 2, got {periods}")
        object.__setattr__(self, "periods", periods)

    @property
    def l(self) -> int:
        return len(self.periods)

    def measure(self) -> Fraction:
        """``2h - 2 + sum(1 - 1/m_j)``: the normalized hyperbolic area."""
        return 2 * self.h - 2 + sum((1 - Fraction(1, m) for m in self.periods), Fraction(0))

    def __str__(self):
        return format_signature(self)

    @classmethod
    def parse(cls, text: str) -> "Signature":
        return parse_signature(text)


def parse_signature(text: str) -> Signature:
    """Parse ``"h;m1,...,ml"``; ``"h;-"`` or ``"h;"`` for no periods.

    Also accepts a parenthesized form and ``m^k`` shorthand (``"0;2^6,5"``).
    """
    s = text.strip().strip("()").replace(" ", "")
    h_part, sep, p_part = s.partition(";")
    if not sep:
        raise ParseError(f"signature {text!r} lacks ';'")
    try:
        h = int(h_part)
        periods: list[int] = []
        if p_part not in ("", "-"):
            for item in p_part.split(","):
                base, _, rep = item.partition("^")
                periods.extend([int(base)] * (int(rep) if rep else 1))
        return Signature(h, tuple(periods))
    except ValueError as exc:
        raise ParseError(f"malformed signature {text!r}: {exc}") from None


def format_signature(sig: Signature) -> str:
    return f"{sig.h};" + (",".join(map(str, sig.periods)) if sig.periods else "-")


def teich_dim(sig: Signature) -> int:
    return 3 * sig.h - 3 + sig.l


def rh_value(sig: Signature, order: int) -> Fraction:
    """Exact genus solving ``2g - 2 = order * measure``."""
    return 1 + Fraction(order) * sig.measure() / 2


def rh_genus(sig: Signature, order: int) -> int:
    if order < 1:
        raise ValueError("order must be positive")
    g = rh_value(sig, order)
    if g.denominator != 1 or g < 2:
        raise NotAdmissibleError(
            f"({sig}) with order {order} is not a surface-kernel-admissible pair: g = {g}",
            value=g,
        )
    return int(g)


def divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def _period_tuples(count: int, target: Fraction, choices: list[int], start: int) -> Iterator[tuple[int, ...]]:
    """Non-decreasing tuples from ``choices[start:]`` with sum(1 - 1/m) == target."""
    if count == 0:
        if target == 0:
            yield ()
        return
    top = choices[-1]
    if target > count * (1 - Fraction(1, top)):
        return
    for i in range(start, len(choices)):
        m = choices[i]
        term = 1 - Fraction(1, m)
        # every remaining term is at least ``term``
        if count * term > target:
            return
        for rest in _period_tuples(count - 1, target - term, choices, i):
            yield (m,) + rest


def enumerate_signatures(genus: int, order: int, dim: int, h_cap: int = H_CAP) -> list[Signature]:
    """All signatures of Teichmueller dimension ``dim`` admissible for (genus, order).

    Periods are restricted to divisors of ``order`` (an element order always
    divides the group order).
    """
    if genus < 2 or order < 1 or dim < 0:
        return []
    target = Fraction(2 * genus - 2, order)
    choices = [m for m in divisors(order) if m >= 2]
    found = []
    for h in range(0, h_cap + 1):
        l = dim + 3 - 3 * h
        if l < 0:
            break
        rest = target - (2 * h - 2)
        if rest < 0:
            continue
        if l == 0:
            if rest == 0:
                found.append(Signature(h, ()))
            continue
        if not choices:
            continue
        for periods in _period_tuples(l, rest, choices, 0):
            found.append(Signature(h, periods))
    found.sort()
    return found
