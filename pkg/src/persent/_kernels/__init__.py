"""Reduction kernel selection: compiled extension with pure fallback.

The Cython extension is picked at import time when present; otherwise
the bitset-based pure implementation is used. Both expose the same
``reduce_columns(col_ptr, rows) -> lows`` contract and must produce
identical output (cross-checked in the test suite and benchmark).
"""

from . import reduction_py

try:
    from . import reduction as _compiled

    HAVE_COMPILED = True
except ImportError:
    _compiled = None
    HAVE_COMPILED = False

_default = _compiled if HAVE_COMPILED else reduction_py

BACKENDS = ("compiled", "python") if HAVE_COMPILED else ("python",)


def reduce_columns(col_ptr, rows, backend=None):
    """Reduce Z2 boundary columns; see reduction_py.reduce_columns.

    backend: None for the import-time default, or "compiled"/"python".
    """
    if backend is None:
        return _default.reduce_columns(col_ptr, rows)
    if backend == "python":
        return reduction_py.reduce_columns(col_ptr, rows)
    if backend == "compiled":
        if not HAVE_COMPILED:
            raise RuntimeError("compiled reduction kernel is not available")
        return _compiled.reduce_columns(col_ptr, rows)
    raise ValueError(f"unknown backend {backend!r}")
