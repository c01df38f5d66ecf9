"""Kernel selection: the compiled extension when it imports, else pure Python.

Set ``BNBPE_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _pykernels

BACKEND = "python"
segment = _pykernels.segment
MergeTable = _pykernels.MergeTable

if os.environ.get("BNBPE_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels
    except ImportError:
        pass
    else:
        BACKEND = "cython"
        segment = _ckernels.segment
        MergeTable = _ckernels.MergeTable


def backends():
    """Map backend name -> (segment, MergeTable) for every importable backend."""
    out = {"python": (_pykernels.segment, _pykernels.MergeTable)}
    try:
        from . import _ckernels
    except ImportError:
        return out
    out["cython"] = (_ckernels.segment, _ckernels.MergeTable)
    return out
