"""Run-wide constants.

The sampling generator is numpy's ``PCG64`` bit generator, constructed with
``numpy.random.default_rng``.  Every sampled run derives one generator per
shard from ``(seed, shard_index)`` so a report does not depend on how many
workers processed it.
"""

import os

RNG_ALGORITHM = "PCG64"
DEFAULT_SEED = 24301

DEFAULT_MAX_DIMENSION = 28
MAX_DIMENSION_ENV = "ANTIPODAL_MAX_N"

# Families per shard in exhaustive sweeps, samples per shard in sampled ones.
SHARD_SIZE = 1 << 16
SAMPLE_SHARD_SIZE = 1 << 13

VIOLATION_CAP = 16


def max_dimension() -> int:
    """Largest cube dimension a :class:`~antipodal.cube.Family` may have."""
    raw = os.environ.get(MAX_DIMENSION_ENV)
    if raw is None:
        return DEFAULT_MAX_DIMENSION
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"{MAX_DIMENSION_ENV} must be an integer, got {raw!r}") from None
