"""Checkered-pattern matrices: rank structure, factorizations, and embedding.

Thin re-export of the compiled extension; see the package README for the
operation catalogue.
"""

from checkmat._core import *  # noqa: F401,F403
from checkmat._core import __doc__  # noqa: F401

__version__ = "0.1.0"
