"""Numpy implementations of the hot loops.

These mirror ``_ckernels.pyx`` function for function and must produce
identical results, bit for bit.  They are used when the compiled extension
is unavailable or ``CANTORHAAR_PURE=1`` is set.
"""
from __future__ import annotations

import itertools

import numpy as np

BACKEND = "python"

_INV_2_53 = 1.0 / 9007199254740992.0


def digits_from_bits(bits: np.ndarray, radices, bias: float = -1.0) -> np.ndarray:
    """Reduce 64-bit words to digits, ``d_j = bits[:, j] mod n_j``.

    A nonnegative ``bias`` makes the first digit 0 with that probability
    (from the top 53 bits) and uniform over ``1 .. n_1 - 1`` otherwise.
    """
    bits = np.asarray(bits, dtype=np.uint64)
    radices = np.asarray(radices, dtype=np.int64)
    digits = (bits % radices.astype(np.uint64)[None, :]).astype(np.int64)
    if bias >= 0.0 and radices.shape[0]:
        first = bits[:, 0]
        u = (first >> np.uint64(11)).astype(np.float64) * _INV_2_53
        other = 1 + (first % np.uint64(int(radices[0]) - 1)).astype(np.int64)
        digits[:, 0] = np.where(u < bias, 0, other)
    return digits


def phi_midpoints(digits: np.ndarray, radices) -> np.ndarray:
    """``sum_j d_j / (n_1...n_j) + 1 / (2 n_1...n_depth)`` per row, by Horner."""
    digits = np.asarray(digits, dtype=np.int64)
    radices = np.asarray(radices, dtype=np.int64)
    value = np.full(digits.shape[0], 0.5)
    for j in range(radices.shape[0] - 1, -1, -1):
        value = (digits[:, j] + value) / float(radices[j])
    return value


def pushforward_sweep(radices) -> tuple[int, int, int, int]:
    """Check every lex pair ``a < b`` of C_n on a common denominator |C_n|.

    The Haar side is the number of enumerated points from ``a`` up to but
    excluding ``b``; the Lebesgue side is the difference of phi numerators
    over |C_n|.  Returns ``(pairs, failures, first_a, first_b)`` with the
    enumeration indices of the first failing pair, or ``-1`` for none.
    """
    radices = [int(n) for n in radices]
    size = 1
    for n in radices:
        size *= n
    # itertools.product enumerates in lex order without reference to ranks.
    points = np.array(list(itertools.product(*(range(n) for n in radices))), dtype=np.int64)
    points = points.reshape(size, len(radices))
    weights = []
    prefix = 1
    for n in radices:
        prefix *= n
        weights.append(size // prefix)
    phi_num = points @ np.array(weights, dtype=np.int64)

    failures = 0
    first = (-1, -1)
    for i in range(size - 1):
        gap = phi_num[i + 1:] - phi_num[i]
        bad = np.flatnonzero(gap != np.arange(1, size - i, dtype=np.int64))
        if bad.size:
            if not failures:
                first = (i, i + 1 + int(bad[0]))
            failures += int(bad.size)
    return size * (size - 1) // 2, failures, first[0], first[1]
