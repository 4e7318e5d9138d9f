"""Set-family and poset-pattern algorithms on the subset lattice.

Exact extremal solvers (Dilworth, Mirsky, capped chain partitions via flow),
blow-up construction and embedding search, fingerprint/container
decompositions of pattern-free families, supersaturation finders, and
reproducible randomized estimators.  The heavy lifting lives in the compiled
extension `subposets._core`.
"""

from subposets._core import *  # noqa: F401,F403
from subposets._core import __doc__ as _core_doc

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
