"""Haar measure on clopen sets and its image under phi.

Everything here is exact: measures are :class:`fractions.Fraction` values
and every comparison is an equality of rationals.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import kernels
from .clopen import ClopenInterval, ClopenSet, from_paper_endpoints, refine
from .errors import LevelOverflow, MixedSystems
from .radix import LevelPoint, RadixSystem, phi, rank, successor, translate, unrank

__all__ = [
    "PushforwardReport",
    "SweepReport",
    "haar_measure",
    "phi_image",
    "lebesgue_of_image",
    "check_pushforward_interval",
    "check_openmap",
    "level_consistency",
    "exhaustive_pushforward",
    "translate_set",
]


@dataclass(frozen=True)
class PushforwardReport:
    haar_value: Fraction
    lebesgue_value: Fraction
    equal: bool
    witness: Optional[ClopenInterval] = None

    @classmethod
    def compare(cls, haar: Fraction, lebesgue: Fraction, witness: ClopenInterval | None = None) -> PushforwardReport:
        equal = haar == lebesgue
        return cls(haar, lebesgue, equal, None if equal else witness)


def haar_measure(s: ClopenSet) -> Fraction:
    """Normalized count of level atoms in ``s``."""
    return Fraction(s.count(), s.system.size(s.level))


def _image_of_ranks(system: RadixSystem, level: int, lo: int, hi: int) -> tuple[Fraction, Fraction]:
    left = phi(unrank(system, level, lo))
    try:
        right = phi(successor(unrank(system, level, hi)))
    except LevelOverflow:
        # The top atom reaches the supremum of [0, 1].
        right = Fraction(1)
    return left, right


def phi_image(iv: ClopenInterval) -> tuple[Fraction, Fraction]:
    """Endpoints of the closed interval phi(iv) in [0, 1]."""
    return _image_of_ranks(iv.system, iv.level, rank(iv.lo), rank(iv.hi))


def lebesgue_of_image(s: ClopenSet | list[ClopenInterval]) -> Fraction:
    """Length of the union of the images of the intervals of ``s``.

    Images of disjoint intervals can share an endpoint; merging overlapping
    or touching images before summing keeps that point from counting twice.
    A plain list of intervals, not necessarily canonical, is accepted too.
    """
    if isinstance(s, ClopenSet):
        images = [_image_of_ranks(s.system, s.level, lo, hi) for lo, hi in s.ranges]
    else:
        images = [phi_image(iv) for iv in s]
    images.sort()
    total = Fraction(0)
    cur_lo = cur_hi = None
    for lo, hi in images:
        if cur_hi is not None and lo <= cur_hi:
            cur_hi = max(cur_hi, hi)
            continue
        if cur_hi is not None:
            total += cur_hi - cur_lo
        cur_lo, cur_hi = lo, hi
    if cur_hi is not None:
        total += cur_hi - cur_lo
    return total


def check_pushforward_interval(a: LevelPoint, b: LevelPoint) -> PushforwardReport:
    """Compare the Haar measure of ``[a, b']`` with ``phi(b) - phi(a)``."""
    s = from_paper_endpoints(a, b)
    return PushforwardReport.compare(haar_measure(s), phi(b) - phi(a), s.intervals[0])


def check_openmap(s: ClopenSet) -> PushforwardReport:
    haar = haar_measure(s)
    lebesgue = lebesgue_of_image(s)
    witness = None
    if haar != lebesgue:
        for iv in s.intervals:
            part = haar_measure(ClopenSet.from_interval(iv))
            left, right = phi_image(iv)
            if part != right - left:
                witness = iv
                break
        else:
            witness = s.intervals[0] if s.ranges else None
    return PushforwardReport.compare(haar, lebesgue, witness)


def level_consistency(s: ClopenSet, m: int) -> bool:
    return haar_measure(s) == haar_measure(refine(s, m))


@dataclass(frozen=True)
class SweepReport:
    system: RadixSystem
    level: int
    pairs: int
    failures: int
    first_failure: Optional[tuple[LevelPoint, LevelPoint]]
    backend: str

    @property
    def passed(self) -> bool:
        return self.failures == 0


def exhaustive_pushforward(system: RadixSystem, level: int, backend=None) -> SweepReport:
    """All pairs ``a < b`` of C_level checked in one compiled sweep.

    Both sides are integers over the common denominator |C_level|, which is
    the same exact comparison :func:`check_pushforward_interval` makes.
    """
    impl = backend or kernels
    pairs, failures, ia, ib = impl.pushforward_sweep(system.radices(level))
    first = None
    if failures:
        first = (unrank(system, level, ia), unrank(system, level, ib))
    return SweepReport(system, level, pairs, failures, first, impl.BACKEND)


def translate_set(s: ClopenSet, g: LevelPoint) -> ClopenSet:
    """The translate ``g + s`` under the componentwise group law of C_n."""
    if g.system != s.system:
        raise MixedSystems("translation by a point of another system")
    level = max(s.level, g.level)
    s = refine(s, level)
    g = LevelPoint._trusted(g.system, g.digits + (0,) * (level - g.level))
    return ClopenSet.from_points(s.system, level, (translate(p, g) for p in s.points()))
