# cardest. GNU GPL-3.0 (see LICENSE file)
"""
sources.py
Sampling sources: each `draw()` returns one element of a fixed finite set,
uniformly and independently of previous draws.
"""
import logging
import numbers
import warnings
from collections import Counter
from enum import Enum
from pathlib import Path

import numpy as np

from cardest.errors import ParameterDomainError, SourceError
from cardest.samplers.rng import as_generator

logger = logging.getLogger(__name__)

BLOCK_SIZE = 4096
"""Indices are drawn from the generator by blocks of this size.
Changing it changes every seeded sequence."""


class Identity(str, Enum):
    """How a line of a file is identified when sampled"""

    POSITION = "position"
    """Each line index is an element, duplicate lines are distinct elements"""

    CONTENT = "content"
    """The text of the line is the element, duplicate lines are the same element"""


class SamplingSource:
    """
    Base class of sampling sources. Subclasses implement `_element(index)` and set `size`.

    Draws pick an index in `[0, size)` with `Generator.integers`, which rejects
    out of range candidates instead of reducing them modulo `size` (no bias).

    Args:
        size (int): number of indices to draw from
        seed (RngSeed|int|np.random.Generator, optional): random stream. Defaults to None (not reproducible).
        block_size (int, optional): indices drawn per call to the generator. Defaults to `BLOCK_SIZE`.
    """

    known_cardinality: int = None
    """Size of the sampled set when it is known (verification sources), otherwise None"""

    def __init__(self, size:int, seed=None, block_size:int = BLOCK_SIZE):
        if isinstance(size, bool) or not isinstance(size, numbers.Integral) or size < 1:
            raise ParameterDomainError(f"A sampling source needs at least one element, got size={size}")
        self.size = int(size)
        self.rng = as_generator(seed)
        """numpy Generator owned by this source"""
        self.block_size = block_size
        self._indices = self._iter_indices()

    def _iter_indices(self):
        rng, size, block_size = self.rng, self.size, self.block_size
        while True:
            yield from rng.integers(0, size, size=block_size, dtype=np.int64).tolist()

    def _element(self, index:int):
        raise NotImplementedError()

    def draw(self):
        """One element of the set, uniformly at random"""
        return self._element(next(self._indices))

    def __iter__(self):
        """Endless iterator of draws"""
        while True:
            yield self.draw()

    def __call__(self):
        return self.draw()


class SyntheticSource(SamplingSource):
    """Uniform source over the integers `0..n-1`. `known_cardinality` is `n`."""
    def __init__(self, n:int, seed=None, block_size:int = BLOCK_SIZE):
        super().__init__(n, seed=seed, block_size=block_size)
        self.known_cardinality = self.size

    def _element(self, index:int):
        return index

    # ints are their own ids, skip the method call
    def draw(self):
        return next(self._indices)


class FileSource(SamplingSource):
    """
    Uniform source over the lines of a UTF-8 text file. The whole file is loaded in memory.

    With `Identity.POSITION` the line index is the element, the set is the lines and draws are uniform over it.
    With `Identity.CONTENT` the text is the element. Draws are uniform over the distinct texts
    only if the lines are distinct; a warning reports the number of duplicates otherwise.

    Args:
        path (str|Path): newline delimited text file, trailing newline optional
        identity (Identity|str, optional): "position" or "content". Defaults to "position".
        seed (RngSeed|int|np.random.Generator, optional): random stream. Defaults to None.

    Raises:
        OSError: the file cannot be read
        SourceError: the file has no line
    """
    def __init__(self, path, identity=Identity.POSITION, seed=None, block_size:int = BLOCK_SIZE):
        try:
            self.identity = Identity(identity)
        except ValueError as er:
            raise ParameterDomainError(f"Unknown identity '{identity}', use one of {[i.value for i in Identity]}") from er

        self.path = Path(path)
        with open(self.path, "r", encoding="utf8") as f:
            lines = f.read().split("\n")
        if lines and lines[-1] == "":
            lines.pop()
        if not lines:
            raise SourceError(f"{self.path} is empty, there is nothing to sample")

        self.lines: list[str] = lines
        """Lines of the file, without their newline"""

        distinct = len(set(lines))
        self.duplicates = len(lines) - distinct
        """Number of lines repeating an earlier line"""

        if self.identity is Identity.CONTENT:
            self.known_cardinality = distinct
            if self.duplicates:
                warnings.warn(f"{self.path} has {self.duplicates} duplicate line{'s'[:self.duplicates^1]}: "
                              "draws are not uniform over distinct contents, the accuracy guarantee does not hold")
        else:
            self.known_cardinality = len(lines)

        logger.debug("loaded %d lines from %s (identity=%s)", len(lines), self.path, self.identity.value)
        super().__init__(len(lines), seed=seed, block_size=block_size)

    def _element(self, index:int):
        if self.identity is Identity.CONTENT:
            return self.lines[index]
        return index


class CallableSource(SamplingSource):
    """
    Wraps any zero-argument callable as a source, e.g. an external `RandomSample` routine.
    Uniformity is the callable's responsibility.

    Args:
        fn (callable): returns one element per call
        known_cardinality (int, optional): size of the set if known. Defaults to None.
    """
    def __init__(self, fn, known_cardinality:int = None):
        if not callable(fn):
            raise TypeError(f"Expected a callable, not {type(fn).__name__}")
        if known_cardinality is not None and (not isinstance(known_cardinality, numbers.Integral) or known_cardinality < 1):
            raise ParameterDomainError(f"known_cardinality must be a positive integer, got {known_cardinality}")
        self.fn = fn
        self.known_cardinality = known_cardinality
        self.rng = None
        self.size = known_cardinality

    def draw(self):
        return self.fn()


def synthetic_source(n:int, seed=None) -> SyntheticSource:
    """Uniform source over `n` distinct ids (`0..n-1`).

    ```
    source = synthetic_source(10_000, RngSeed(42, 3))
    source.draw()   # an int in [0, 10000)
    ```

    Raises:
        ParameterDomainError: n < 1
    """
    return SyntheticSource(n, seed=seed)


def file_source(path, identity=Identity.POSITION, seed=None) -> FileSource:
    """Uniform source over the lines of a file, see `FileSource`"""
    return FileSource(path, identity=identity, seed=seed)


def callable_source(fn, known_cardinality:int = None) -> CallableSource:
    """Source drawing from a user callable, see `CallableSource`"""
    return CallableSource(fn, known_cardinality=known_cardinality)


def draw_counts(source:SamplingSource, draws:int) -> Counter:
    """Frequency of each element over `draws` draws"""
    return Counter(source.draw() for _ in range(draws))
