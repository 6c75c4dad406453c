"""Figure rendering for vacuum-census CSV datasets. Display only: nothing
here recomputes physics."""
from .figures import FigureJob, ValidationError, render

__version__ = "0.1.0"

__all__ = ["FigureJob", "ValidationError", "render", "__version__"]
