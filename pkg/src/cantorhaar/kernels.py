"""Backend selection for the hot loops, plus the shared random source.

The compiled extension ``_ckernels`` is preferred.  Setting the environment
variable ``CANTORHAAR_PURE=1`` forces the numpy fallback, which is also used
whenever the extension was not built.

Random words come from numpy's Philox counter-based generator keyed by the
seed.  Sample ``i`` of depth ``D`` consumes words ``i*D .. i*D + D - 1`` of
that stream, so any sample can be regenerated on its own.
"""
from __future__ import annotations

import os

import numpy as np

from . import _kernels_py

if os.environ.get("CANTORHAAR_PURE", "") not in ("", "0"):
    _impl = _kernels_py
else:
    try:
        from . import _ckernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        _impl = _kernels_py

BACKEND: str = _impl.BACKEND
digits_from_bits = _impl.digits_from_bits
phi_midpoints = _impl.phi_midpoints
pushforward_sweep = _impl.pushforward_sweep

_WORDS_PER_BLOCK = 4  # Philox4x64 emits four words per counter step


def available_backends() -> dict:
    """Every importable implementation, keyed by name."""
    out = {"python": _kernels_py}
    try:
        from . import _ckernels  # type: ignore[attr-defined]
    except ImportError:
        pass
    else:
        out["cython"] = _ckernels
    return out


def counter_bits(seed: int, start: int, count: int, depth: int) -> np.ndarray:
    """Random words for samples ``start .. start+count-1``, shape ``(count, depth)``."""
    first_word = start * depth
    block, skip = divmod(first_word, _WORDS_PER_BLOCK)
    gen = np.random.Philox(key=seed & 0xFFFFFFFFFFFFFFFF)
    gen.advance(block)
    words = gen.random_raw(skip + count * depth)[skip:]
    return words.reshape(count, depth)


def sample_digit_matrix(seed: int, radices, start: int, count: int, bias: float = -1.0, backend=None) -> np.ndarray:
    impl = backend or _impl
    radices = np.asarray(radices, dtype=np.int64)
    return impl.digits_from_bits(counter_bits(seed, start, count, radices.shape[0]), radices, bias)


def sample_phi(seed: int, radices, start: int, count: int, bias: float = -1.0, backend=None) -> np.ndarray:
    """Midpoint of the phi enclosure of each sampled digit prefix."""
    impl = backend or _impl
    radices = np.asarray(radices, dtype=np.int64)
    return impl.phi_midpoints(sample_digit_matrix(seed, radices, start, count, bias, impl), radices)
