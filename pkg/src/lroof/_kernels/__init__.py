"""Kernel backend selection.

The compiled Cython backend is preferred when the extension was built;
otherwise the pure-Python backend is used.  Set LROOF_KERNELS=python (or
=cython) to force a backend; forcing cython raises if the extension is
missing.
"""

import os

_forced = os.environ.get("LROOF_KERNELS", "").strip().lower()
if _forced not in ("", "cython", "python"):
    raise ImportError(f"LROOF_KERNELS must be 'cython' or 'python', got {_forced!r}")

if _forced == "python":
    from . import _pykernels as _impl
else:
    try:
        from . import _cykernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        if _forced == "cython":
            raise
        from . import _pykernels as _impl

BACKEND = _impl.BACKEND
eigh_jacobi = _impl.eigh_jacobi
real_eigenvalues = _impl.real_eigenvalues
two_point_scan = _impl.two_point_scan

__all__ = ["BACKEND", "eigh_jacobi", "real_eigenvalues", "two_point_scan"]
