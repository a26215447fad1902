# cardest. GNU GPL-3.0 (see LICENSE file)
"""
cardest
Estimate the number of elements of a set from uniform random samples, by counting repeats.

Subpackages are imported on demand:

- `cardest.bounds` k_err, sample budget and tail bounds
- `cardest.classes` the estimator
- `cardest.samplers` seeded sampling sources
- `cardest.harness` Monte Carlo verification
"""
__version__ = "0.1.0"
