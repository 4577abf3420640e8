"""Seeded randomness.

Every random draw in the package goes through :func:`make_rng`, a numpy
``Generator`` over ``PCG64``. Its ``permutation`` is a Fisher-Yates shuffle
and ``integers`` uses Lemire's unbiased bounded draw.

Per-trial seeds are derived with :func:`mix`::

    z = (master + (index + 1) * 0x9E3779B97F4A7C15) mod 2**64
    mix(master, index) = splitmix64_finalize(z)

so trial ``i`` of an experiment can be replayed on its own.
"""

import numpy as np

PRNG_ID = f"numpy-{np.__version__}/PCG64"

_MASK = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def _finalize(z: int) -> int:
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return z ^ (z >> 31)


def mix(master: int, index: int) -> int:
    """Derive the 64-bit seed of stream ``index`` from ``master``."""
    check_seed(master)
    if index < 0:
        raise ValueError(f"stream index must be nonnegative, got {index}")
    return _finalize((master + (index + 1) * _GOLDEN) & _MASK)


def check_seed(seed: int) -> int:
    if not isinstance(seed, (int, np.integer)) or not 0 <= seed <= _MASK:
        raise ValueError(f"seed must be an unsigned 64-bit integer, got {seed!r}")
    return int(seed)


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(check_seed(seed)))
