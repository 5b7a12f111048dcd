"""Kernel backend selection.

The compiled extension is used when it imports; otherwise the numpy
fallback is used. Set ``HYBRIDMARK_BACKEND=python`` to force the fallback or
``HYBRIDMARK_BACKEND=cython`` to fail loudly when the extension is missing.
"""
import os

from hybridmark import _pykernels


def load(name="auto"):
    if name == "python":
        return _pykernels
    try:
        from hybridmark import _ckernels
    except ImportError:
        if name == "cython":
            raise
        return _pykernels
    return _ckernels


def available():
    names = ["python"]
    try:
        from hybridmark import _ckernels  # noqa: F401
    except ImportError:
        pass
    else:
        names.append("cython")
    return names


kernels = load(os.environ.get("HYBRIDMARK_BACKEND", "auto"))
BACKEND = "python" if kernels is _pykernels else "cython"
