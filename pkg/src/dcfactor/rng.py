"""Seeded random streams.

Every random choice in the package comes from a Philox counter-based
generator keyed by ``SeedSequence([seed, *stream])``. Distinct ``stream``
tuples give independent sequences from the same user seed, and results do
not depend on platform or on how many draws other streams made.
"""
from __future__ import annotations

import numpy as np

from .errors import InputError


def make_rng(seed: int, *stream: int) -> np.random.Generator:
    if not 0 <= int(seed) < 2**64:
        raise InputError(f"seed must be an unsigned 64-bit integer, got {seed}")
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([int(seed), *stream])))


__all__ = ["make_rng"]
