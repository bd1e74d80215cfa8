"""HarmonicFlow - numerical lab for the k-equivariant harmonic map heat flow.

This package solves the radial flow on the unit disk, checks its ordering, energy and blow-up
behavior, and writes reproducible run artifacts.
"""

from _config import __version__

__title__ = "HarmonicFlow"
__license__ = "MIT"

__all__: list[str] = ["__version__"]
