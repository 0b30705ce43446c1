"""Haar-uniform sampling of C and statistical checks against Lebesgue measure.

Digits come from a counter-based generator (see :mod:`cantorhaar.kernels`),
so sample ``i`` depends only on ``(seed, i)``: any split of the index range
across workers reproduces the same samples.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import kernels
from .clopen import ClopenSet
from .errors import DepthTooSmall, EmptyInput, MixedSystems
from .measure import haar_measure
from .radix import LevelPoint, RadixSystem

__all__ = [
    "SamplerConfig",
    "KsReport",
    "FrequencyReport",
    "KS_C_001",
    "sample_digits",
    "sample_batch",
    "sample_values",
    "ks_statistic",
    "run_uniformity_test",
    "empirical_vs_exact",
]

# Asymptotic Kolmogorov-Smirnov coefficient for alpha = 0.01.
KS_C_001 = 1.628

_CHUNK = 1 << 15


@dataclass(frozen=True)
class SamplerConfig:
    system: RadixSystem
    depth: int
    count: int
    seed: int

    def __post_init__(self) -> None:
        if self.depth < 1:
            raise ValueError("depth must be >= 1")
        if self.count < 1:
            raise ValueError("count must be >= 1")

    @property
    def radices(self) -> tuple[int, ...]:
        return self.system.radices(self.depth)


def sample_digits(cfg: SamplerConfig, index: int) -> LevelPoint:
    if not 0 <= index < cfg.count:
        raise IndexError(f"sample index {index} outside [0, {cfg.count})")
    row = kernels.sample_digit_matrix(cfg.seed, cfg.radices, index, 1)[0]
    return LevelPoint._trusted(cfg.system, tuple(int(d) for d in row))


def sample_batch(cfg: SamplerConfig, start: int = 0, count: int | None = None, bias: float | None = None) -> np.ndarray:
    """Digit matrix of samples ``start .. start+count-1``."""
    count = cfg.count - start if count is None else count
    return kernels.sample_digit_matrix(cfg.seed, cfg.radices, start, count, -1.0 if bias is None else bias)


def sample_values(cfg: SamplerConfig, bias: float | None = None) -> np.ndarray:
    """phi of every sample, as the midpoint of its depth-``depth`` enclosure.

    ``bias`` switches on the control sampler whose first digit is 0 with
    that probability; it exists to show the uniformity test has power.
    """
    b = -1.0 if bias is None else bias
    parts = [
        kernels.sample_phi(cfg.seed, cfg.radices, start, min(_CHUNK, cfg.count - start), b)
        for start in range(0, cfg.count, _CHUNK)
    ]
    return np.concatenate(parts)


def ks_statistic(values) -> float:
    """One-sample Kolmogorov-Smirnov distance to Uniform[0, 1].

    ``values`` must be sorted ascending.
    """
    v = np.asarray(values, dtype=np.float64)
    n = v.shape[0]
    if n == 0:
        raise EmptyInput("no values")
    if np.any(np.diff(v) < 0):
        raise ValueError("values must be sorted ascending")
    i = np.arange(1, n + 1, dtype=np.float64)
    return float(max(np.max(i / n - v), np.max(v - (i - 1) / n)))


@dataclass(frozen=True)
class KsReport:
    statistic: float
    critical_value: float
    n: int
    passed: bool


def run_uniformity_test(cfg: SamplerConfig, bias: float | None = None, c_alpha: float = KS_C_001) -> KsReport:
    values = np.sort(sample_values(cfg, bias))
    d = ks_statistic(values)
    crit = c_alpha / math.sqrt(cfg.count)
    return KsReport(d, crit, cfg.count, d < crit)


@dataclass(frozen=True)
class FrequencyReport:
    frequency: Fraction
    exact: Fraction
    deviation: float
    bound: float
    n: int
    passed: bool


def _prefix_ranks(digits: np.ndarray, radices: tuple[int, ...]) -> np.ndarray:
    size = math.prod(radices)
    if size < 1 << 62:
        r = np.zeros(digits.shape[0], dtype=np.int64)
        for j, n in enumerate(radices):
            r = r * n + digits[:, j]
        return r
    r = np.zeros(digits.shape[0], dtype=object)
    for j, n in enumerate(radices):
        r = r * n + digits[:, j].astype(object)
    return r


def empirical_vs_exact(s: ClopenSet, cfg: SamplerConfig) -> FrequencyReport:
    """Fraction of samples landing in ``s`` against its exact Haar measure.

    Passes when the deviation is within three binomial standard errors.
    """
    if cfg.depth < s.level:
        raise DepthTooSmall(f"depth {cfg.depth} below set level {s.level}")
    if s.system != cfg.system:
        raise MixedSystems("set and sampler over different systems")
    hits = 0
    radices = s.system.radices(s.level)
    for start in range(0, cfg.count, _CHUNK):
        count = min(_CHUNK, cfg.count - start)
        digits = sample_batch(cfg, start, count)[:, : s.level]
        ranks = _prefix_ranks(digits, radices)
        inside = np.zeros(count, dtype=bool)
        for lo, hi in s.ranges:
            inside |= (ranks >= lo) & (ranks <= hi)
        hits += int(inside.sum())
    exact = haar_measure(s)
    freq = Fraction(hits, cfg.count)
    deviation = abs(float(freq - exact))
    p = float(exact)
    bound = 3.0 * math.sqrt(p * (1.0 - p) / cfg.count)
    return FrequencyReport(freq, exact, deviation, bound, cfg.count, deviation <= bound)
