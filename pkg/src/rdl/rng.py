"""Random-number policy for the whole package.

Every random draw in this package comes from numpy's counter-based Philox
bit generator wrapped in ``numpy.random.Generator``.  Streams are derived
from a user-supplied 64-bit master seed through ``numpy.random.SeedSequence``:

* ``generator(seed)`` — the stream for a single sampling call;
* ``generator(seed, spawn_key)`` — a named sub-stream, where the spawn key
  is a small tuple of nonnegative ints (the simulator uses
  ``(chunk_index, stream_id)``, see ``rdl.sim``);
* ``derive_seed(seed, index)`` — a fresh 64-bit master seed for run
  ``index`` of a multi-run study.

Philox is platform-independent and SeedSequence derivation is documented
and stable in numpy, so a (seed, spawn_key) pair identifies the same byte
stream on every machine running the same numpy build.
"""

from __future__ import annotations

import numpy as np

from .errors import InvalidParams

_SEED_MAX = 2**64


def check_seed(seed: int) -> int:
    """Validate and return a master seed (an unsigned 64-bit integer)."""
    if isinstance(seed, bool) or not isinstance(seed, (int, np.integer)):
        raise InvalidParams(f"seed must be an integer, got {type(seed).__name__}")
    seed = int(seed)
    if not 0 <= seed < _SEED_MAX:
        raise InvalidParams(f"seed must be in [0, 2**64), got {seed}")
    return seed


def generator(seed: int, spawn_key: tuple[int, ...] = ()) -> np.random.Generator:
    """Return the Philox generator for ``seed`` and an optional sub-stream key."""
    seed = check_seed(seed)
    ss = np.random.SeedSequence(seed, spawn_key=spawn_key)
    return np.random.Generator(np.random.Philox(ss))


def derive_seed(seed: int, index: int) -> int:
    """Derive the master seed for run ``index`` of a seeded study."""
    seed = check_seed(seed)
    if index < 0:
        raise InvalidParams(f"run index must be nonnegative, got {index}")
    ss = np.random.SeedSequence(seed, spawn_key=(index,))
    return int(ss.generate_state(1, np.uint64)[0])
