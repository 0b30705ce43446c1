"""Clopen subsets of C as finite unions of prefix intervals.

A clopen set is stored at a level ``n`` as a canonical tuple of inclusive
rank ranges over C_n: sorted, pairwise disjoint and never adjacent.  The set
it denotes is every x in C whose first ``n`` digits fall in one of the
ranges.  Canonical form makes equality at a fixed level syntactic.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator, Sequence

from .errors import EmptyInterval, FormatError, LevelTooSmall, MixedSystems, RankOutOfRange
from .radix import (
    DigitProvider,
    LevelPoint,
    Order,
    RadixSystem,
    lex_compare,
    parse_digits,
    rank,
    unrank,
)

__all__ = [
    "ClopenInterval",
    "ClopenSet",
    "from_paper_endpoints",
    "refine",
    "coarsen",
    "set_union",
    "set_intersect",
    "set_complement",
    "set_difference",
    "same_set",
    "partition_atoms",
]

Range = tuple[int, int]


@dataclass(frozen=True)
class ClopenInterval:
    """``{x in C : lo <= prefix_n(x) <= hi}`` for level points ``lo <= hi``."""

    lo: LevelPoint
    hi: LevelPoint

    def __post_init__(self) -> None:
        if self.lo.system != self.hi.system:
            raise MixedSystems("interval endpoints over different systems")
        if self.lo.level != self.hi.level:
            raise LevelTooSmall(f"endpoint levels differ: {self.lo.level} vs {self.hi.level}")
        if lex_compare(self.lo, self.hi) is Order.GT:
            raise EmptyInterval(f"lo {self.lo} above hi {self.hi}")

    @property
    def level(self) -> int:
        return self.lo.level

    @property
    def system(self) -> RadixSystem:
        return self.lo.system

    def to_json(self) -> dict:
        return {"lo": list(self.lo.digits), "hi": list(self.hi.digits), "level": self.level}


def _normalize(ranges: Iterable[Range]) -> tuple[Range, ...]:
    out: list[list[int]] = []
    for lo, hi in sorted(ranges):
        if lo > hi:
            continue
        if out and lo <= out[-1][1] + 1:
            out[-1][1] = max(out[-1][1], hi)
        else:
            out.append([lo, hi])
    return tuple((lo, hi) for lo, hi in out)


@dataclass(frozen=True)
class ClopenSet:
    system: RadixSystem
    level: int
    ranges: tuple[Range, ...]

    def __post_init__(self) -> None:
        if self.level < 0:
            raise LevelTooSmall(f"negative level {self.level}")
        ranges = tuple((int(lo), int(hi)) for lo, hi in self.ranges)
        size = self.system.size(self.level)
        for lo, hi in ranges:
            if not 0 <= lo <= hi < size:
                raise RankOutOfRange(f"range ({lo}, {hi}) outside [0, {size})")
        if _normalize(ranges) != ranges:
            raise ValueError("ranges are not in canonical form; use ClopenSet.from_ranges")
        object.__setattr__(self, "ranges", ranges)

    @classmethod
    def from_ranges(cls, system: RadixSystem, level: int, ranges: Iterable[Range]) -> ClopenSet:
        return cls(system, level, _normalize(ranges))

    @classmethod
    def empty(cls, system: RadixSystem, level: int = 0) -> ClopenSet:
        return cls(system, level, ())

    @classmethod
    def full(cls, system: RadixSystem, level: int = 0) -> ClopenSet:
        return cls(system, level, ((0, system.size(level) - 1),))

    @classmethod
    def from_interval(cls, iv: ClopenInterval) -> ClopenSet:
        return cls(iv.system, iv.level, ((rank(iv.lo), rank(iv.hi)),))

    @classmethod
    def from_intervals(cls, intervals: Sequence[ClopenInterval], system: RadixSystem | None = None) -> ClopenSet:
        """Union of intervals, refined to the deepest level among them."""
        if not intervals:
            if system is None:
                raise ValueError("system required for an empty interval list")
            return cls.empty(system)
        system = system or intervals[0].system
        if any(iv.system != system for iv in intervals):
            raise MixedSystems("intervals over different systems")
        level = max(iv.level for iv in intervals)
        parts = [refine(cls.from_interval(iv), level) for iv in intervals]
        return cls.from_ranges(system, level, (r for p in parts for r in p.ranges))

    @classmethod
    def from_points(cls, system: RadixSystem, level: int, points: Iterable[LevelPoint]) -> ClopenSet:
        ranks = []
        for p in points:
            if p.level != level:
                raise LevelTooSmall(f"point {p} is not at level {level}")
            r = rank(p)
            ranks.append((r, r))
        return cls.from_ranges(system, level, ranks)

    @property
    def intervals(self) -> tuple[ClopenInterval, ...]:
        return tuple(
            ClopenInterval(unrank(self.system, self.level, lo), unrank(self.system, self.level, hi))
            for lo, hi in self.ranges
        )

    def count(self) -> int:
        """Number of level-``n`` atoms inside the set."""
        return sum(hi - lo + 1 for lo, hi in self.ranges)

    def is_empty(self) -> bool:
        return not self.ranges

    def is_full(self) -> bool:
        return self.ranges == ((0, self.system.size(self.level) - 1),)

    def points(self) -> Iterator[LevelPoint]:
        for lo, hi in self.ranges:
            for r in range(lo, hi + 1):
                yield unrank(self.system, self.level, r)

    def contains_rank(self, r: int) -> bool:
        # Ranges are short lists in practice; bisect is not worth the import.
        return any(lo <= r <= hi for lo, hi in self.ranges)

    def __contains__(self, x: LevelPoint | DigitProvider) -> bool:
        if x.system != self.system:
            raise MixedSystems("point and set over different systems")
        if isinstance(x, LevelPoint) and x.level < self.level:
            raise LevelTooSmall(f"point level {x.level} below set level {self.level}")
        prefix = LevelPoint._trusted(self.system, tuple(x.digit(i) for i in range(1, self.level + 1)))
        return self.contains_rank(rank(prefix))

    def to_json(self) -> list[dict]:
        return [iv.to_json() for iv in self.intervals]

    @classmethod
    def from_json(cls, system: RadixSystem, obj: list) -> ClopenSet:
        if not isinstance(obj, list):
            raise FormatError("a clopen set must be a JSON array of {lo, hi, level}")
        intervals = []
        for item in obj:
            try:
                level = int(item["level"])
                lo = LevelPoint(system, tuple(item["lo"]))
                hi = LevelPoint(system, tuple(item["hi"]))
            except (KeyError, TypeError) as exc:
                raise FormatError(f"bad interval object {item!r}") from exc
            if lo.level != level or hi.level != level:
                raise FormatError(f"endpoints of {item!r} do not match level {level}")
            intervals.append(ClopenInterval(lo, hi))
        return cls.from_intervals(intervals, system)

    @classmethod
    def load(cls, system: RadixSystem, path: str | Path) -> ClopenSet:
        try:
            obj = json.loads(Path(path).read_text())
        except json.JSONDecodeError as exc:
            raise FormatError(f"{path}: {exc}") from exc
        return cls.from_json(system, obj)

    @classmethod
    def from_cli(cls, system: RadixSystem, lo: str, hi: str, level: int) -> ClopenSet:
        a, b = parse_digits(lo, system), parse_digits(hi, system)
        if a.level != level or b.level != level:
            raise FormatError(f"--lo/--hi must have exactly {level} digits")
        return cls.from_interval(ClopenInterval(a, b))


def from_paper_endpoints(a: LevelPoint, b: LevelPoint) -> ClopenSet:
    """The set ``[a, b']``: points whose prefix lies in ``[a, b)``.

    ``b'`` sits immediately below ``b`` in C, so the closed interval from
    ``a`` to ``b'`` is exactly the preimage of the half-open lex range.
    """
    if a.system != b.system:
        raise MixedSystems(f"{a.system} vs {b.system}")
    if a.level != b.level:
        raise LevelTooSmall(f"endpoint levels differ: {a.level} vs {b.level}")
    ra, rb = rank(a), rank(b)
    if ra >= rb:
        raise EmptyInterval(f"[{a}, {b}') is empty")
    return ClopenSet(a.system, a.level, ((ra, rb - 1),))


def refine(s: ClopenSet, m: int) -> ClopenSet:
    if m < s.level:
        raise LevelTooSmall(f"cannot refine level {s.level} down to {m}")
    scale = s.system.size(m) // s.system.size(s.level)
    return ClopenSet(s.system, m, tuple((lo * scale, (hi + 1) * scale - 1) for lo, hi in s.ranges))


def coarsen(s: ClopenSet) -> ClopenSet:
    """Same point set at the smallest level able to represent it."""
    size = s.system.size(s.level)
    for level in range(s.level + 1):
        scale = size // s.system.size(level)
        if all(lo % scale == 0 and (hi + 1) % scale == 0 for lo, hi in s.ranges):
            return ClopenSet(s.system, level, tuple((lo // scale, (hi + 1) // scale - 1) for lo, hi in s.ranges))
    return s  # unreachable: level == s.level always qualifies


def _common(*sets: ClopenSet) -> tuple[RadixSystem, int, list[ClopenSet]]:
    system = sets[0].system
    if any(t.system != system for t in sets):
        raise MixedSystems("clopen sets over different systems")
    level = max(t.level for t in sets)
    return system, level, [refine(t, level) for t in sets]


def set_union(s: ClopenSet, t: ClopenSet) -> ClopenSet:
    system, level, (a, b) = _common(s, t)
    return ClopenSet.from_ranges(system, level, a.ranges + b.ranges)


def set_intersect(s: ClopenSet, t: ClopenSet) -> ClopenSet:
    system, level, (a, b) = _common(s, t)
    out: list[Range] = []
    i = j = 0
    while i < len(a.ranges) and j < len(b.ranges):
        lo = max(a.ranges[i][0], b.ranges[j][0])
        hi = min(a.ranges[i][1], b.ranges[j][1])
        if lo <= hi:
            out.append((lo, hi))
        if a.ranges[i][1] < b.ranges[j][1]:
            i += 1
        else:
            j += 1
    return ClopenSet.from_ranges(system, level, out)


def set_complement(s: ClopenSet) -> ClopenSet:
    out: list[Range] = []
    cursor = 0
    for lo, hi in s.ranges:
        if cursor < lo:
            out.append((cursor, lo - 1))
        cursor = hi + 1
    size = s.system.size(s.level)
    if cursor < size:
        out.append((cursor, size - 1))
    return ClopenSet(s.system, s.level, tuple(out))


def set_difference(s: ClopenSet, t: ClopenSet) -> ClopenSet:
    return set_intersect(s, set_complement(t))


def same_set(s: ClopenSet, t: ClopenSet) -> bool:
    """Point-set equality regardless of the level each set is stored at."""
    _, _, (a, b) = _common(s, t)
    return a.ranges == b.ranges


def partition_atoms(generators: Sequence[ClopenSet], system: RadixSystem | None = None) -> list[ClopenSet]:
    """Atoms of the finite Boolean algebra generated by ``generators``.

    Every atom is nonempty, atoms are pairwise disjoint, they cover C, and
    each generator is the union of the atoms it meets.  Atoms are returned
    in order of their lex-first point.
    """
    if not generators:
        if system is None:
            raise ValueError("system required when there are no generators")
        return [ClopenSet.full(system)]
    if system is not None and generators[0].system != system:
        raise MixedSystems("generators not over the given system")
    system, level, refined = _common(*generators)
    size = system.size(level)

    cuts = {0, size}
    for g in refined:
        for lo, hi in g.ranges:
            cuts.update((lo, hi + 1))
    bounds = sorted(cuts)

    # Each elementary segment is homogeneous for every generator.
    pointers = [0] * len(refined)
    atoms: dict[tuple[bool, ...], list[Range]] = {}
    for start, stop in zip(bounds, bounds[1:]):
        signature = []
        for k, g in enumerate(refined):
            ranges = g.ranges
            while pointers[k] < len(ranges) and ranges[pointers[k]][1] < start:
                pointers[k] += 1
            p = pointers[k]
            signature.append(p < len(ranges) and ranges[p][0] <= start)
        atoms.setdefault(tuple(signature), []).append((start, stop - 1))
    return [ClopenSet.from_ranges(system, level, segs) for segs in atoms.values()]
