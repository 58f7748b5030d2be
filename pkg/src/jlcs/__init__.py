"""Exact computation of character values, exponential sums and epsilon
factors for simple supercuspidal representations of inner forms of general
linear groups over a local field of equal characteristic."""

__version__ = "0.1.0"
