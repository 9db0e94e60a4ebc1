"""Kernel backend selection.

The compiled Cython core is preferred when importable; the numpy fallback
is used otherwise. ``MAGCP_BACKEND=python`` forces the fallback (useful for
benchmarking and debugging), ``MAGCP_BACKEND=cython`` makes a missing
extension a hard error.
"""
import os

_requested = os.environ.get("MAGCP_BACKEND", "").strip().lower()

if _requested == "python":
    from . import _kernels_py as _impl

    BACKEND = "python"
else:
    try:
        from . import _kernels_cy as _impl

        BACKEND = "cython"
    except ImportError:
        if _requested == "cython":
            raise
        from . import _kernels_py as _impl

        BACKEND = "python"

landau_block = _impl.landau_block
cp_kernel_batch = _impl.cp_kernel_batch
