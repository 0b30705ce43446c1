"""Brute-force references, deliberately independent of the library code paths.

Nothing here calls into ``cantorhaar`` beyond reading radices, so a bug in
the library cannot leak into the expected values.
"""
from __future__ import annotations

import itertools
from fractions import Fraction


def lex_sorted_points(radices):
    """C_n in lex order via Python's own tuple ordering."""
    return sorted(itertools.product(*(range(n) for n in radices)))


def phi_terms(digits, radices):
    """The defining series, one Fraction term at a time."""
    total = Fraction(0)
    denom = 1
    for d, n in zip(digits, radices):
        denom *= n
        total += Fraction(d, denom)
    return total


def count_between(points, lo, hi_exclusive):
    return sum(1 for p in points if lo <= p < hi_exclusive)


def inverse_phi_search(value, radices):
    """All level points (at this level) whose phi equals ``value``."""
    return [p for p in itertools.product(*(range(n) for n in radices)) if phi_terms(p, radices) == value]
