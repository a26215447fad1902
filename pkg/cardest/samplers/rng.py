# cardest. GNU GPL-3.0 (see LICENSE file)
"""
rng.py
Seed derivation for sampling sources.

The generator is numpy's `PCG64` bit generator driven by a `SeedSequence`.
For a seed `(base_seed, stream_id)` the generator is

    Generator(PCG64(SeedSequence(base_seed, spawn_key=(stream_id,))))

which is also `SeedSequence(base_seed).spawn(stream_id + 1)[stream_id]`.
Both PCG64 and SeedSequence produce the same bits on every platform.
Do not swap the bit generator, tests and regression values are pinned on it.
"""
import numbers
from dataclasses import dataclass

import numpy as np

from cardest.errors import ParameterDomainError

_UINT64 = 2**64


@dataclass(frozen=True)
class RngSeed:
    """
    Seed of one independent random stream.

    ```
    rng = RngSeed(42, stream_id=7).generator()
    rng.integers(0, 10)
    ```

    Args:
        base_seed (int): seed shared by a batch of trials, in [0, 2**64)
        stream_id (int, optional): index of the stream within the batch (trial index). Defaults to 0.
    """
    base_seed: int
    stream_id: int = 0

    def __post_init__(self):
        for name in ("base_seed", "stream_id"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, numbers.Integral):
                raise ParameterDomainError(f"{name} must be an integer, not {type(value).__name__}")
            if not 0 <= value < _UINT64:
                raise ParameterDomainError(f"{name} must be a 64-bit unsigned integer, got {value}")
            object.__setattr__(self, name, int(value))

    @property
    def seed_sequence(self) -> np.random.SeedSequence:
        """numpy `SeedSequence` of this stream"""
        return np.random.SeedSequence(self.base_seed, spawn_key=(self.stream_id,))

    def generator(self) -> np.random.Generator:
        """New generator at the start of this stream"""
        return np.random.Generator(np.random.PCG64(self.seed_sequence))

    def as_json(self) -> dict:
        return {"base_seed": self.base_seed, "stream_id": self.stream_id}


def as_generator(seed=None) -> np.random.Generator:
    """Resolve anything accepted as a seed into a numpy Generator.

    Args:
        seed (RngSeed|int|np.random.Generator|None): `RngSeed`, a plain int (stream 0 of that base seed),
            an existing generator (used as is), or None for fresh OS entropy (not reproducible).

    Returns:
        np.random.Generator: generator
    """
    if seed is None:
        return np.random.Generator(np.random.PCG64(np.random.SeedSequence()))
    if isinstance(seed, np.random.Generator):
        return seed
    if isinstance(seed, RngSeed):
        return seed.generator()
    if isinstance(seed, numbers.Integral) and not isinstance(seed, bool):
        return RngSeed(int(seed)).generator()
    raise TypeError(f"Cannot make a random generator from {type(seed).__name__}")
