"""Finite groups as Cayley tables and strict towers of quotients.

A tower ``G_1 <- G_2 <- ... <- G_k`` of surjective homomorphisms with
nontrivial kernels is the finite data of a Cantor group.  Replacing each
level by a product of cyclic groups of the same cardinality gives the radix
system of an abelian group with the same Haar measure.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Optional

import numpy as np

from .errors import FormatError, TrivialBase, TrivialKernel
from .radix import RadixSystem

__all__ = [
    "FiniteGroup",
    "GroupHom",
    "Tower",
    "Violation",
    "validate_group",
    "validate_hom",
    "validate_tower",
    "kernel_size",
    "compose",
    "abelianize_tower",
    "uniform_pushforward_check",
    "PushforwardMasses",
    "haar_finite",
    "cyclic_hom",
    "load_group",
    "save_group",
    "load_hom",
    "save_hom",
    "load_tower",
    "save_tower",
    "standard_towers",
]


@dataclass(frozen=True)
class FiniteGroup:
    """Group on ``0 .. order-1`` with ``table[a][b] = a*b``."""

    table: tuple[tuple[int, ...], ...]
    identity: int = 0
    name: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "table", tuple(tuple(int(x) for x in row) for row in self.table))

    @property
    def order(self) -> int:
        return len(self.table)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inverse(self, a: int) -> int:
        return self.table[a].index(self.identity)

    @classmethod
    def trivial(cls) -> FiniteGroup:
        return cls(((0,),), 0, "1")

    @classmethod
    def cyclic(cls, n: int) -> FiniteGroup:
        return cls(tuple(tuple((a + b) % n for b in range(n)) for a in range(n)), 0, f"Z{n}")

    @classmethod
    def dihedral(cls, n: int) -> FiniteGroup:
        """Symmetries of the n-gon, order 2n; ``r^a s^b`` has index ``a + n*b``."""

        def mul(x: int, y: int) -> int:
            a, b = x % n, x // n
            c, d = y % n, y // n
            return (a + (c if b == 0 else -c)) % n + n * ((b + d) % 2)

        size = 2 * n
        return cls(tuple(tuple(mul(x, y) for y in range(size)) for x in range(size)), 0, f"D{n}")

    @classmethod
    def quaternion(cls) -> FiniteGroup:
        """Q8 with index ``4*s + u`` for ``(-1)^s * (1, i, j, k)[u]``."""
        # unit products as (sign, unit) for units 1, i, j, k
        units = {
            (0, 0): (0, 0), (0, 1): (0, 1), (0, 2): (0, 2), (0, 3): (0, 3),
            (1, 0): (0, 1), (1, 1): (1, 0), (1, 2): (0, 3), (1, 3): (1, 2),
            (2, 0): (0, 2), (2, 1): (1, 3), (2, 2): (1, 0), (2, 3): (0, 1),
            (3, 0): (0, 3), (3, 1): (0, 2), (3, 2): (1, 1), (3, 3): (1, 0),
        }

        def mul(x: int, y: int) -> int:
            s, u = divmod(x, 4)
            t, v = divmod(y, 4)
            sign, w = units[(u, v)]
            return 4 * ((s + t + sign) % 2) + w

        return cls(tuple(tuple(mul(x, y) for y in range(8)) for x in range(8)), 0, "Q8")


@dataclass(frozen=True)
class Violation:
    kind: str
    detail: str
    witness: tuple[int, ...] = ()

    def __str__(self) -> str:
        return f"{self.kind}: {self.detail}"


def validate_group(g: FiniteGroup) -> Optional[Violation]:
    """First axiom failure of the Cayley table, or ``None`` if it is a group."""
    n = g.order
    if n < 1:
        return Violation("shape", "empty table")
    if any(len(row) != n for row in g.table):
        return Violation("shape", "table is not square")
    if not 0 <= g.identity < n:
        return Violation("identity", f"identity index {g.identity} out of range", (g.identity,))
    t = np.array(g.table, dtype=np.int64)
    if t.min() < 0 or t.max() >= n:
        a, b = np.argwhere((t < 0) | (t >= n))[0]
        return Violation("range", f"entry at ({a},{b}) is not an element", (int(a), int(b)))
    full = np.arange(n)
    for a in range(n):
        if not np.array_equal(np.sort(t[a]), full):
            return Violation("latin-square", f"row {a} repeats an entry", (a,))
    for b in range(n):
        if not np.array_equal(np.sort(t[:, b]), full):
            return Violation("latin-square", f"column {b} repeats an entry", (b,))
    e = g.identity
    for a in range(n):
        if t[e, a] != a or t[a, e] != a:
            return Violation("identity", f"{e} is not neutral for {a}", (a,))
    for a in range(n):
        row = np.flatnonzero(t[a] == e)
        if row.size == 0 or t[row[0], a] != e:
            return Violation("inverse", f"{a} has no two-sided inverse", (a,))
    left = t[t, :]  # (ab)c
    right = t[:, t]  # a(bc)
    bad = np.argwhere(left != right)
    if bad.size:
        a, b, c = (int(x) for x in bad[0])
        return Violation("associativity", f"({a}*{b})*{c} != {a}*({b}*{c})", (a, b, c))
    return None


@dataclass(frozen=True)
class GroupHom:
    source: FiniteGroup
    target: FiniteGroup
    mapping: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "mapping", tuple(int(x) for x in self.mapping))

    def __call__(self, x: int) -> int:
        return self.mapping[x]


def validate_hom(f: GroupHom) -> Optional[Violation]:
    """First failure of the homomorphism law or surjectivity, if any."""
    src, tgt = f.source, f.target
    if len(f.mapping) != src.order:
        return Violation("shape", f"map has {len(f.mapping)} entries for a group of order {src.order}")
    if any(not 0 <= y < tgt.order for y in f.mapping):
        x = next(i for i, y in enumerate(f.mapping) if not 0 <= y < tgt.order)
        return Violation("range", f"image of {x} is not a target element", (x,))
    m = np.array(f.mapping, dtype=np.int64)
    lhs = m[np.array(src.table, dtype=np.int64)]
    rhs = np.array(tgt.table, dtype=np.int64)[m[:, None], m[None, :]]
    bad = np.argwhere(lhs != rhs)
    if bad.size:
        x, y = (int(v) for v in bad[0])
        return Violation("homomorphism", f"f({x}*{y}) != f({x})*f({y})", (x, y))
    missing = sorted(set(range(tgt.order)) - set(f.mapping))
    if missing:
        return Violation("surjectivity", f"{missing[0]} has no preimage", (missing[0],))
    return None


def kernel_size(f: GroupHom) -> int:
    return sum(1 for y in f.mapping if y == f.target.identity)


def compose(f: GroupHom, g: GroupHom) -> GroupHom:
    """``f o g``: apply ``g`` first."""
    if g.target != f.source:
        raise ValueError("homomorphisms are not composable")
    return GroupHom(g.source, f.target, tuple(f.mapping[y] for y in g.mapping))


def cyclic_hom(m: int, n: int, multiplier: int = 1) -> GroupHom:
    """``Z_m -> Z_n, x -> multiplier * x mod n``; surjective iff n | m and gcd(multiplier, n) = 1."""
    return GroupHom(FiniteGroup.cyclic(m), FiniteGroup.cyclic(n), tuple((multiplier * x) % n for x in range(m)))


@dataclass(frozen=True)
class Tower:
    """``levels[0]`` is the smallest quotient; ``steps[k]: levels[k+1] -> levels[k]``."""

    levels: tuple[FiniteGroup, ...]
    steps: tuple[GroupHom, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "levels", tuple(self.levels))
        object.__setattr__(self, "steps", tuple(self.steps))
        if len(self.steps) != max(len(self.levels) - 1, 0):
            raise ValueError(f"{len(self.levels)} levels need {len(self.levels) - 1} steps, got {len(self.steps)}")

    @classmethod
    def chain(cls, *levels_and_maps) -> Tower:
        """``Tower.chain(G1, map2, G2, map3, G3, ...)`` with maps as index lists."""
        levels = list(levels_and_maps[0::2])
        steps = [GroupHom(levels[k + 1], levels[k], m) for k, m in enumerate(levels_and_maps[1::2])]
        return cls(tuple(levels), tuple(steps))


def validate_tower(t: Tower) -> Optional[Violation]:
    for k, g in enumerate(t.levels, start=1):
        v = validate_group(g)
        if v is not None:
            return Violation(v.kind, f"level {k}: {v.detail}", v.witness)
    for k, (f, lower, upper) in enumerate(zip(t.steps, t.levels, t.levels[1:]), start=1):
        if f.source != upper or f.target != lower:
            return Violation("shape", f"step {k} does not map level {k + 1} onto level {k}")
        v = validate_hom(f)
        if v is not None:
            return Violation(v.kind, f"step {k}: {v.detail}", v.witness)
        if kernel_size(f) < 2:
            return Violation("strictness", f"step {k} has trivial kernel")
    return None


def abelianize_tower(t: Tower) -> RadixSystem:
    """Radices ``|G_1|, |ker step_1|, |ker step_2|, ...`` extended by period (2)."""
    if not t.levels or t.levels[0].order < 2:
        raise TrivialBase("the first quotient must have at least two elements")
    radices = [t.levels[0].order]
    for k, f in enumerate(t.steps, start=1):
        size = kernel_size(f)
        if size < 2:
            raise TrivialKernel(f"step {k} has trivial kernel")
        radices.append(size)
    return RadixSystem(tuple(radices), (2,))


@dataclass(frozen=True)
class PushforwardMasses:
    masses: tuple[Fraction, ...]
    equal: bool


def uniform_pushforward_check(f: GroupHom) -> PushforwardMasses:
    """Push the uniform distribution on the source through ``f``, exactly."""
    weight = Fraction(1, f.source.order)
    masses = [Fraction(0)] * f.target.order
    for y in f.mapping:
        masses[y] += weight
    uniform = Fraction(1, f.target.order)
    return PushforwardMasses(tuple(masses), all(m == uniform for m in masses))


def haar_finite(g: FiniteGroup) -> tuple[Fraction, ...]:
    return (Fraction(1, g.order),) * g.order


# -- file formats ----------------------------------------------------------

def _ints(line: str, path) -> list[int]:
    try:
        return [int(x) for x in line.split()]
    except ValueError as exc:
        raise FormatError(f"{path}: non-integer token in {line!r}") from exc


def load_group(path: str | Path) -> FiniteGroup:
    """Read ``order identity`` followed by ``order`` rows of the Cayley table."""
    path = Path(path)
    lines = [ln for ln in path.read_text().splitlines() if ln.strip()]
    if not lines:
        raise FormatError(f"{path}: empty group file")
    header = _ints(lines[0], path)
    if len(header) != 2:
        raise FormatError(f"{path}: header must be 'order identity'")
    order, identity = header
    rows = [_ints(ln, path) for ln in lines[1:]]
    if len(rows) != order or any(len(r) != order for r in rows):
        raise FormatError(f"{path}: expected {order} rows of {order} entries")
    return FiniteGroup(tuple(tuple(r) for r in rows), identity, path.stem)


def save_group(g: FiniteGroup, path: str | Path) -> None:
    lines = [f"{g.order} {g.identity}"] + [" ".join(map(str, row)) for row in g.table]
    Path(path).write_text("\n".join(lines) + "\n")


def load_hom(path: str | Path, source: FiniteGroup, target: FiniteGroup) -> GroupHom:
    path = Path(path)
    tokens = _ints(path.read_text(), path)
    if len(tokens) != source.order:
        raise FormatError(f"{path}: expected {source.order} images, got {len(tokens)}")
    return GroupHom(source, target, tuple(tokens))


def save_hom(f: GroupHom, path: str | Path) -> None:
    Path(path).write_text(" ".join(map(str, f.mapping)) + "\n")


def load_tower(directory: str | Path) -> Tower:
    """Read ``tower.json`` listing ``levels`` and ``steps`` file names in order."""
    directory = Path(directory)
    manifest = directory / "tower.json"
    try:
        spec = json.loads(manifest.read_text())
        level_files, step_files = spec["levels"], spec.get("steps", [])
    except FileNotFoundError as exc:
        raise FormatError(f"{manifest} not found") from exc
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        raise FormatError(f"{manifest}: {exc}") from exc
    levels = [load_group(directory / name) for name in level_files]
    if len(step_files) != max(len(levels) - 1, 0):
        raise FormatError(f"{manifest}: {len(levels)} levels need {len(levels) - 1} steps")
    steps = [load_hom(directory / name, levels[k + 1], levels[k]) for k, name in enumerate(step_files)]
    return Tower(tuple(levels), tuple(steps))


def save_tower(t: Tower, directory: str | Path) -> None:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    level_files = [f"level{k}.grp" for k in range(1, len(t.levels) + 1)]
    step_files = [f"step{k}.hom" for k in range(1, len(t.steps) + 1)]
    for g, name in zip(t.levels, level_files):
        save_group(g, directory / name)
    for f, name in zip(t.steps, step_files):
        save_hom(f, directory / name)
    (directory / "tower.json").write_text(json.dumps({"levels": level_files, "steps": step_files}, indent=2) + "\n")


def standard_towers() -> dict[str, Tower]:
    """The small towers used throughout the tests and the CLI demos."""
    z2, z3, z4, z6, z12 = (FiniteGroup.cyclic(n) for n in (2, 3, 4, 6, 12))
    d4, q8 = FiniteGroup.dihedral(4), FiniteGroup.quaternion()
    return {
        "z2-z4": Tower.chain(z2, [x % 2 for x in range(4)], z4),
        "z2-d4": Tower.chain(z2, [x // 4 for x in range(8)], d4),
        "z3-z6-z12": Tower.chain(z3, [x % 3 for x in range(6)], z6, [x % 6 for x in range(12)], z12),
        # kernel <i> = {+-1, +-i}
        "z2-q8": Tower.chain(z2, [0 if x % 4 in (0, 1) else 1 for x in range(8)], q8),
    }

