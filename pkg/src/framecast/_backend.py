"""Kernel backend selection.

The compiled ``_kernels`` extension is used when it imports; otherwise the
numpy fallback.  Setting ``FRAMECAST_PURE_PYTHON=1`` forces the fallback.
"""
import os

from . import _kernels_py

try:
    from . import _kernels as _kernels_ext
except ImportError:  # extension not built
    _kernels_ext = None

BACKENDS = {"python": _kernels_py}
if _kernels_ext is not None:
    BACKENDS["cython"] = _kernels_ext

if os.environ.get("FRAMECAST_PURE_PYTHON") or _kernels_ext is None:
    DEFAULT = "python"
else:
    DEFAULT = "cython"


def get_kernels(name=None):
    """Return the kernel module for ``name`` (``None`` selects the default)."""
    name = DEFAULT if name is None else name
    try:
        return BACKENDS[name]
    except KeyError:
        raise ValueError(
            f"backend {name!r} unavailable; choose from {sorted(BACKENDS)}"
        ) from None


def available():
    return sorted(BACKENDS)
