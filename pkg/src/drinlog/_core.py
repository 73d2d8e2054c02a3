"""Kernel backend selection: compiled Cython if available, numpy fallback otherwise.

Set DRINLOG_PURE=1 in the environment to force the fallback (used by the
benchmark script and as an escape hatch on platforms without a compiler).
"""

import os

from drinlog import _kernels_py

if os.environ.get("DRINLOG_PURE") == "1":
    _impl = _kernels_py
else:
    try:
        from drinlog import _kernels as _impl  # type: ignore
    except ImportError:
        _impl = _kernels_py

BACKEND = _impl.BACKEND
pmul = _impl.pmul
pdivmod = _impl.pdivmod
sblock_kernel = _impl.sblock_kernel
