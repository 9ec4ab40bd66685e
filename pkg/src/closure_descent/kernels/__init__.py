"""Hot kernels, compiled when available.

The Cython extension ``_ckernels`` is used if it was built; otherwise the
pure-Python twins in ``_pykernels`` are used. Set the environment variable
``CLOSURE_DESCENT_KERNELS=python`` to force the fallback.
"""

from __future__ import annotations

import os

from . import _pykernels

_choice = os.environ.get("CLOSURE_DESCENT_KERNELS", "auto").lower()

if _choice == "python":
    _impl = _pykernels
    BACKEND = "python"
else:
    try:
        from . import _ckernels as _impl  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:
        if _choice == "cython":
            raise
        _impl = _pykernels
        BACKEND = "python"

PB_REGULAR_EPI = _pykernels.PB_REGULAR_EPI
PB_CLOSED = _pykernels.PB_CLOSED
PB_OPEN = _pykernels.PB_OPEN
PB_IMAGE_IDENTITY = _pykernels.PB_IMAGE_IDENTITY
PB_MEET_CLOSED = _pykernels.PB_MEET_CLOSED

closure_table = _impl.closure_table
image_table = _impl.image_table
preimage_table = _impl.preimage_table
moore_families = _impl.moore_families
canonical_family = _impl.canonical_family
pullback_flags = _impl.pullback_flags
pullback_flags_all = _impl.pullback_flags_all
descent_data_search = _impl.descent_data_search
popcount = _pykernels.popcount

__all__ = [
    "BACKEND",
    "PB_CLOSED",
    "PB_IMAGE_IDENTITY",
    "PB_MEET_CLOSED",
    "PB_OPEN",
    "PB_REGULAR_EPI",
    "canonical_family",
    "closure_table",
    "descent_data_search",
    "image_table",
    "moore_families",
    "popcount",
    "preimage_table",
    "pullback_flags",
    "pullback_flags_all",
]
