"""Backend selection for the hot loops.

The compiled ``_core`` extension is used when importable; setting
``RAINBOWTRI_PURE=1`` forces the pure-Python kernels.
"""

import os

from rainbowtri import _pycore

if os.environ.get("RAINBOWTRI_PURE"):
    _impl = _pycore
    BACKEND = "python"
else:
    try:
        from rainbowtri import _core as _impl

        BACKEND = "cython"
    except ImportError:
        _impl = _pycore
        BACKEND = "python"

find_rainbow = _impl.find_rainbow
canonical_masks = _impl.canonical_masks
dfs_search = _impl.dfs_search

RAINBOW_TABLE = _pycore.RAINBOW_TABLE
MASK_PERMS = _pycore.MASK_PERMS

__all__ = [
    "BACKEND",
    "find_rainbow",
    "canonical_masks",
    "dfs_search",
    "RAINBOW_TABLE",
    "MASK_PERMS",
]
