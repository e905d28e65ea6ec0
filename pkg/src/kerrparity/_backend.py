"""Kernel selection: compiled extension when importable, numpy otherwise.

Set ``KERRPARITY_BACKEND=python`` to force the fallback, ``cython`` to
require the extension.
"""
import os

from . import _series_py

_choice = os.environ.get("KERRPARITY_BACKEND", "auto").lower()

if _choice == "python":
    series_sums = _series_py.series_sums
    BACKEND = "python"
else:
    try:
        from ._series_ext import series_sums
        BACKEND = "cython"
    except ImportError:
        if _choice == "cython":
            raise
        series_sums = _series_py.series_sums
        BACKEND = "python"

__all__ = ["series_sums", "BACKEND"]
