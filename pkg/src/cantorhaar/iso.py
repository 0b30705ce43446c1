"""Order-preserving conversion between two radix systems through [0, 1].

``phi_2^{-1} o phi_1`` is evaluated by greedy digit extraction.  Reals with
two representations in the target system (a compact element and its
co-compact partner) always receive the eventually-zero one, which makes the
conversion a function.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import MixedSystems, OutOfRange
from .radix import DigitProvider, LevelPoint, RadixSystem, phi

__all__ = ["Status", "ConversionResult", "StreamResult", "digits_of_rational", "iso_point", "iso_stream"]


class Status(enum.Enum):
    TERMINATED = "TERMINATED"
    TRUNCATED = "TRUNCATED"


@dataclass(frozen=True)
class ConversionResult:
    digits: LevelPoint
    status: Status
    consumed: int
    value_check: Optional[Fraction] = None

    @property
    def terminated(self) -> bool:
        return self.status is Status.TERMINATED


def digits_of_rational(r: Fraction, system: RadixSystem, max_k: int = 64) -> ConversionResult:
    """Greedy expansion ``d_i = floor(r_i * n_i)``, ``r_{i+1} = r_i * n_i - d_i``.

    Stops with TERMINATED once the remainder vanishes.  ``r = 1`` has no
    eventually-zero representative and comes back TRUNCATED as all-max
    digits, as does any expansion still running after ``max_k`` digits.
    """
    r = Fraction(r)
    if r < 0 or r > 1:
        raise OutOfRange(f"{r} is outside [0, 1]")
    digits: list[int] = []
    rem = r
    for i in range(1, max_k + 1):
        if rem == 0:
            break
        n = system.radix(i)
        scaled = rem * n
        d = min(scaled.numerator // scaled.denominator, n - 1)
        digits.append(d)
        rem = scaled - d
    point = LevelPoint._trusted(system, tuple(digits))
    if rem == 0:
        return ConversionResult(point, Status.TERMINATED, len(digits), phi(point))
    return ConversionResult(point, Status.TRUNCATED, len(digits))


def iso_point(x: LevelPoint, sys1: RadixSystem, sys2: RadixSystem, max_k: int = 64) -> ConversionResult:
    if x.system != sys1:
        raise MixedSystems(f"point is over {x.system}, not {sys1}")
    return digits_of_rational(phi(x), sys2, max_k)


@dataclass(frozen=True)
class StreamResult:
    digits: LevelPoint
    undecided: bool
    precision: int


def _default_precision(sys1: RadixSystem, sys2: RadixSystem, budget: int) -> int:
    # Enough source digits to resolve `budget` target digits with 32 bits to spare.
    need = sys2.size(budget) << 32
    k, size = 0, 1
    while size < need:
        k += 1
        size *= sys1.radix(k)
    return k


def iso_stream(
    x: DigitProvider, sys2: RadixSystem, budget: int, max_precision: int | None = None
) -> StreamResult:
    """Certify up to ``budget`` target digits of ``phi(x)`` from finite prefixes.

    A target digit ``d`` is emitted only once the enclosure of ``phi(x)``
    fits inside the half-open cell of ``d``; the right end of [0, 1] is the
    one boundary that may be touched.  When ``max_precision`` source digits
    do not settle the next digit the enclosure straddles a cell boundary and
    the result is flagged ``undecided``.
    """
    if budget < 0:
        raise ValueError("budget must be >= 0")
    sys1 = x.system
    cap = _default_precision(sys1, sys2, budget) if max_precision is None else max_precision
    k = 0
    lo, width_src = Fraction(0), Fraction(1)
    cell_lo, width = Fraction(0), Fraction(1)
    digits: list[int] = []
    while len(digits) < budget:
        m = sys2.radix(len(digits) + 1)
        w = width / m
        while True:
            offset = (lo - cell_lo) / w
            d = min(offset.numerator // offset.denominator, m - 1)
            upper = cell_lo + (d + 1) * w
            if lo + width_src < upper or upper == 1:
                break
            if k >= cap:
                return StreamResult(LevelPoint._trusted(sys2, tuple(digits)), True, k)
            k += 1
            width_src /= sys1.radix(k)
            lo += x.digit(k) * width_src
        digits.append(d)
        cell_lo += d * w
        width = w
    return StreamResult(LevelPoint._trusted(sys2, tuple(digits)), False, k)
