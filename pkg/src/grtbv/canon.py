"""Kernel selection for canonical labelling.

The compiled extension ``grtbv._canon`` is used when importable; setting the
environment variable ``GRTBV_PURE=1`` forces the pure-Python fallback.
"""

import os

from . import _canon_py

if os.environ.get("GRTBV_PURE", "") == "1":
    _impl = _canon_py
    BACKEND = "python"
else:
    try:
        from . import _canon as _impl  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:  # pragma: no cover - depends on build
        _impl = _canon_py
        BACKEND = "python"

canonical_form = _impl.canonical_form
python_canonical_form = _canon_py.canonical_form

__all__ = ["BACKEND", "canonical_form", "python_canonical_form"]
