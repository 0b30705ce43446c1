"""Mixed-radix digit sequences over a Cantor group C = prod Z_{n_i}.

A point of the finite quotient C_n is a tuple of ``n`` digits with
``0 <= d_i < n_i``.  Such a tuple also names the compact element of C that
is padded with zeros, so the same object serves both roles.  The
lexicographic order on digit sequences makes C a complete chain; the map
``phi`` sends it monotonically onto [0, 1].
"""
from __future__ import annotations

import enum
import itertools
import json
import operator
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import Callable, Iterator, Sequence, Union

from .errors import (
    DigitOutOfRange,
    FormatError,
    InvalidRadix,
    LevelOverflow,
    LevelTooLarge,
    LevelTooSmall,
    LevelUnderflow,
    MixedSystems,
    RankOutOfRange,
)

__all__ = [
    "RadixSystem",
    "LevelPoint",
    "CoCompactPoint",
    "DigitProvider",
    "Order",
    "Undecided",
    "radix_at",
    "lex_compare",
    "successor",
    "predecessor",
    "rank",
    "unrank",
    "embed",
    "project",
    "phi",
    "phi_cocompact",
    "phi_enclosure",
    "psi_gap_embed",
    "translate",
    "level_points",
    "parse_digits",
]


@dataclass(frozen=True)
class RadixSystem:
    """Eventually periodic sequence of cyclic orders n_1, n_2, ...

    ``radix(i)`` is ``preperiod[i-1]`` while ``i <= len(preperiod)`` and then
    cycles through ``period``.
    """

    preperiod: tuple[int, ...]
    period: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "preperiod", tuple(int(n) for n in self.preperiod))
        object.__setattr__(self, "period", tuple(int(n) for n in self.period))
        if not self.period:
            raise InvalidRadix("period must be nonempty")
        bad = [n for n in self.preperiod + self.period if n < 2]
        if bad:
            raise InvalidRadix(f"every radix must be >= 2, got {bad[0]}")

    @classmethod
    def constant(cls, n: int) -> RadixSystem:
        return cls((), (n,))

    @classmethod
    def periodic(cls, *period: int) -> RadixSystem:
        return cls((), tuple(period))

    def radix(self, i: int) -> int:
        if i < 1:
            raise ValueError(f"radix index must be >= 1, got {i}")
        pre = len(self.preperiod)
        if i <= pre:
            return self.preperiod[i - 1]
        return self.period[(i - pre - 1) % len(self.period)]

    def radices(self, n: int) -> tuple[int, ...]:
        return _radices(self, n)

    def prefix_products(self, n: int) -> tuple[int, ...]:
        """``(P_0, ..., P_n)`` with ``P_i = n_1 * ... * n_i`` and ``P_0 = 1``."""
        return _prefix_products(self, n)

    def size(self, n: int) -> int:
        """Cardinality of the level-``n`` quotient C_n."""
        return _prefix_products(self, n)[n]

    def to_json(self) -> dict:
        return {"preperiod": list(self.preperiod), "period": list(self.period)}

    @classmethod
    def from_json(cls, obj: dict) -> RadixSystem:
        try:
            return cls(tuple(obj.get("preperiod", ())), tuple(obj["period"]))
        except (KeyError, TypeError, AttributeError) as exc:
            raise FormatError(f"bad radix system object: {obj!r}") from exc

    @classmethod
    def load(cls, path: str | Path) -> RadixSystem:
        try:
            obj = json.loads(Path(path).read_text())
        except json.JSONDecodeError as exc:
            raise FormatError(f"{path}: {exc}") from exc
        return cls.from_json(obj)

    def __str__(self) -> str:
        pre = ",".join(map(str, self.preperiod))
        per = ",".join(map(str, self.period))
        return f"preperiod=[{pre}] period=[{per}]"


@lru_cache(maxsize=4096)
def _radices(system: RadixSystem, n: int) -> tuple[int, ...]:
    return tuple(system.radix(i) for i in range(1, n + 1))


@lru_cache(maxsize=4096)
def _prefix_products(system: RadixSystem, n: int) -> tuple[int, ...]:
    return tuple(itertools.accumulate(_radices(system, n), operator.mul, initial=1))


def radix_at(system: RadixSystem, i: int) -> int:
    return system.radix(i)


@dataclass(frozen=True)
class LevelPoint:
    """A point of C_n, equivalently the zero-padded compact element of C.

    Trailing zeros are kept: ``(1,)`` and ``(1, 0)`` live at different levels
    although they name the same compact element.  Use :func:`lex_compare`
    for order-theoretic equality.
    """

    system: RadixSystem
    digits: tuple[int, ...]

    def __post_init__(self) -> None:
        digits = tuple(int(d) for d in self.digits)
        object.__setattr__(self, "digits", digits)
        for i, (d, n) in enumerate(zip(digits, self.system.radices(len(digits))), start=1):
            if not 0 <= d < n:
                raise DigitOutOfRange(f"digit {d} at position {i} outside [0, {n})")

    @classmethod
    def _trusted(cls, system: RadixSystem, digits: tuple[int, ...]) -> LevelPoint:
        p = object.__new__(cls)
        object.__setattr__(p, "system", system)
        object.__setattr__(p, "digits", digits)
        return p

    @classmethod
    def zero(cls, system: RadixSystem, level: int) -> LevelPoint:
        return cls._trusted(system, (0,) * level)

    @classmethod
    def top(cls, system: RadixSystem, level: int) -> LevelPoint:
        return cls._trusted(system, tuple(n - 1 for n in system.radices(level)))

    @property
    def level(self) -> int:
        return len(self.digits)

    def digit(self, i: int) -> int:
        return self.digits[i - 1] if i <= len(self.digits) else 0

    def is_zero(self) -> bool:
        return not any(self.digits)

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.digits)) + ")"


@dataclass(frozen=True)
class CoCompactPoint:
    """The element ``x' = sup(down(x) minus {x})`` just below a compact ``x``.

    Its digit sequence agrees with ``base`` before the last nonzero digit,
    decrements that digit, and is maximal from there on.
    """

    base: LevelPoint

    def __post_init__(self) -> None:
        if self.base.is_zero():
            raise LevelUnderflow("the bottom element has no co-compact partner")

    @property
    def system(self) -> RadixSystem:
        return self.base.system

    @property
    def _pivot(self) -> int:
        digits = self.base.digits
        return max(i for i, d in enumerate(digits, start=1) if d)

    def digit(self, i: int) -> int:
        k = self._pivot
        if i < k:
            return self.base.digits[i - 1]
        if i == k:
            return self.base.digits[i - 1] - 1
        return self.system.radix(i) - 1


class DigitProvider:
    """An arbitrary point of C given by a digit rule ``i -> d_i`` (1-based).

    Queries are memoized, so a provider always answers the same index the
    same way even when its rule is stateful.
    """

    def __init__(self, system: RadixSystem, rule: Callable[[int], int]):
        self.system = system
        self._rule = rule
        self._cache: dict[int, int] = {}

    def digit(self, i: int) -> int:
        d = self._cache.get(i)
        if d is None:
            d = int(self._rule(i))
            n = self.system.radix(i)
            if not 0 <= d < n:
                raise DigitOutOfRange(f"provider digit {d} at position {i} outside [0, {n})")
            self._cache[i] = d
        return d

    def prefix(self, k: int) -> LevelPoint:
        return LevelPoint._trusted(self.system, tuple(self.digit(i) for i in range(1, k + 1)))

    @classmethod
    def from_point(cls, point: LevelPoint | CoCompactPoint) -> DigitProvider:
        return cls(point.system, point.digit)

    @classmethod
    def periodic(cls, system: RadixSystem, head: Sequence[int], cycle: Sequence[int]) -> DigitProvider:
        head, cycle = tuple(head), tuple(cycle)
        if not cycle:
            raise ValueError("cycle must be nonempty")

        def rule(i: int) -> int:
            if i <= len(head):
                return head[i - 1]
            return cycle[(i - len(head) - 1) % len(cycle)]

        return cls(system, rule)

    @classmethod
    def top(cls, system: RadixSystem) -> DigitProvider:
        return cls(system, lambda i: system.radix(i) - 1)

    def __repr__(self) -> str:
        shown = ",".join(str(self.digit(i)) for i in range(1, 9))
        return f"DigitProvider({shown},...)"


Point = Union[LevelPoint, CoCompactPoint, DigitProvider]


class Order(enum.Enum):
    LT = -1
    EQ = 0
    GT = 1


@dataclass(frozen=True)
class Undecided:
    """Two streams agreed on every digit inspected."""

    depth: int


def _horizon(x: Point) -> int:
    if isinstance(x, LevelPoint):
        return x.level
    return x.base.level


def lex_compare(x: Point, y: Point, depth_budget: int = 64) -> Order | Undecided:
    """Compare two points of C digit by digit; the first difference decides.

    Level and co-compact points have finite descriptions, so their
    comparison always terminates.  As soon as a :class:`DigitProvider` is
    involved only ``depth_budget`` digits are inspected.
    """
    if x.system != y.system:
        raise MixedSystems(f"{x.system} vs {y.system}")
    if isinstance(x, LevelPoint) and isinstance(y, LevelPoint):
        a, b = x.digits, y.digits
        if len(a) < len(b):
            a = a + (0,) * (len(b) - len(a))
        elif len(b) < len(a):
            b = b + (0,) * (len(a) - len(b))
        return Order.EQ if a == b else (Order.LT if a < b else Order.GT)

    streams = isinstance(x, DigitProvider) or isinstance(y, DigitProvider)
    # Past both horizons, two finite descriptions differ at once or never.
    depth = depth_budget if streams else max(_horizon(x), _horizon(y)) + 1
    for i in range(1, depth + 1):
        dx, dy = x.digit(i), y.digit(i)
        if dx != dy:
            return Order.LT if dx < dy else Order.GT
    return Undecided(depth_budget) if streams else Order.EQ


def successor(p: LevelPoint) -> LevelPoint:
    """Immediate lex successor within the same level (odometer increment)."""
    digits = list(p.digits)
    radices = p.system.radices(p.level)
    for i in range(len(digits) - 1, -1, -1):
        if digits[i] + 1 < radices[i]:
            digits[i] += 1
            return LevelPoint._trusted(p.system, tuple(digits))
        digits[i] = 0
    raise LevelOverflow(f"{p} is the maximum of level {p.level}")


def predecessor(p: LevelPoint) -> LevelPoint:
    digits = list(p.digits)
    radices = p.system.radices(p.level)
    for i in range(len(digits) - 1, -1, -1):
        if digits[i] > 0:
            digits[i] -= 1
            return LevelPoint._trusted(p.system, tuple(digits))
        digits[i] = radices[i] - 1
    raise LevelUnderflow(f"{p} is the minimum of level {p.level}")


def rank(p: LevelPoint) -> int:
    """Number of level points strictly below ``p``."""
    r = 0
    for d, n in zip(p.digits, p.system.radices(p.level)):
        r = r * n + d
    return r


def unrank(system: RadixSystem, level: int, r: int) -> LevelPoint:
    size = system.size(level)
    if not 0 <= r < size:
        raise RankOutOfRange(f"rank {r} outside [0, {size})")
    digits = []
    for n in reversed(system.radices(level)):
        r, d = divmod(r, n)
        digits.append(d)
    return LevelPoint._trusted(system, tuple(reversed(digits)))


def embed(p: LevelPoint, m: int) -> LevelPoint:
    """Zero-pad ``p`` to level ``m``."""
    if m < p.level:
        raise LevelTooSmall(f"cannot embed level {p.level} into level {m}")
    return LevelPoint._trusted(p.system, p.digits + (0,) * (m - p.level))


def project(p: LevelPoint, n: int) -> LevelPoint:
    """Truncate ``p`` to its first ``n`` digits."""
    if n > p.level:
        raise LevelTooLarge(f"cannot project level {p.level} onto level {n}")
    if n < 0:
        raise LevelTooSmall(f"negative level {n}")
    return LevelPoint._trusted(p.system, p.digits[:n])


def phi(p: LevelPoint) -> Fraction:
    """``sum_i d_i / (n_1 ... n_i)`` computed exactly."""
    products = p.system.prefix_products(p.level)
    total = products[-1]
    numerator = sum(d * (total // products[i]) for i, d in enumerate(p.digits, start=1))
    return Fraction(numerator, total)


def phi_cocompact(x: CoCompactPoint) -> Fraction:
    # The map collapses each compact element with its co-compact partner.
    return phi(x.base)


def phi_enclosure(x: Point, k: int) -> tuple[Fraction, Fraction]:
    """Interval ``[lo, hi]`` of width ``1/(n_1...n_k)`` containing phi(x)."""
    if k < 0:
        raise ValueError("precision must be >= 0")
    prefix = LevelPoint._trusted(x.system, tuple(x.digit(i) for i in range(1, k + 1)))
    lo = phi(prefix)
    return lo, lo + Fraction(1, x.system.size(k))


def psi_gap_embed(p: LevelPoint) -> Fraction:
    """Place ``p`` in a Cantor-type subset of [0, 1] with gaps between cells.

    Digit ``d`` at position ``i`` contributes ``2d / prod_{j<=i}(2 n_j - 1)``;
    for radix 2 throughout this is the middle-third Cantor set.
    """
    numerator, denominator = 0, 1
    for d, n in zip(p.digits, p.system.radices(p.level)):
        numerator = numerator * (2 * n - 1) + 2 * d
        denominator *= 2 * n - 1
    return Fraction(numerator, denominator)


def translate(p: LevelPoint, g: LevelPoint) -> LevelPoint:
    """Group law of C_n: componentwise addition mod n_i, no carries."""
    if p.system != g.system:
        raise MixedSystems(f"{p.system} vs {g.system}")
    if p.level != g.level:
        raise LevelTooLarge(f"levels differ: {p.level} vs {g.level}")
    radices = p.system.radices(p.level)
    return LevelPoint._trusted(
        p.system, tuple((a + b) % n for a, b, n in zip(p.digits, g.digits, radices))
    )


def level_points(system: RadixSystem, level: int) -> Iterator[LevelPoint]:
    """All points of C_level in lex order."""
    for digits in itertools.product(*(range(n) for n in system.radices(level))):
        yield LevelPoint._trusted(system, digits)


def parse_digits(text: str, system: RadixSystem) -> LevelPoint:
    """Parse ``"1,0,2"`` (empty string gives the level-0 point)."""
    text = text.strip()
    if not text:
        return LevelPoint(system, ())
    try:
        digits = tuple(int(t) for t in text.split(","))
    except ValueError as exc:
        raise FormatError(f"bad digit list {text!r}") from exc
    return LevelPoint(system, digits)
