"""Standalone figure rendering for degdiff CSV outputs.

This package never calls the analysis library; it reads the documented CSV
schemas and draws. Schema drift is a hard error, not a guess.
"""

__version__ = "0.1.0"

from .figures import FigureSpec, render
from .schemas import SchemaError, read_table

__all__ = ["FigureSpec", "render", "SchemaError", "read_table", "__version__"]
