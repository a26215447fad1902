# cardest. GNU GPL-3.0 (see LICENSE file)
from .rng import RngSeed, as_generator
from .sources import SamplingSource, SyntheticSource, FileSource, CallableSource, Identity, BLOCK_SIZE
from .sources import synthetic_source, file_source, callable_source, draw_counts

__all__ = ["RngSeed", "as_generator", "SamplingSource", "SyntheticSource", "FileSource", "CallableSource",
           "Identity", "BLOCK_SIZE", "synthetic_source", "file_source", "callable_source", "draw_counts"]
