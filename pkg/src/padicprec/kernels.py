"""Backend selection for the echelon kernels.

The compiled extension is used when it was built; otherwise (or when the
environment variable ``PADICPREC_PURE_PYTHON`` is set to a non-empty value)
the pure-Python twin is used.  Both expose the same four functions.
"""

import os

from . import _kernels_py

if os.environ.get("PADICPREC_PURE_PYTHON"):
    _impl = _kernels_py
else:
    try:
        from . import _ckernels as _impl
    except ImportError:  # extension not built
        _impl = _kernels_py

BACKEND = _impl.BACKEND
combine_column = _impl.combine_column
column_valuation = _impl.column_valuation
reduce_above = _impl.reduce_above
delete_column = _impl.delete_column


def available_backends():
    """Map backend name to kernel module for every importable backend."""
    found = {"python": _kernels_py}
    try:
        from . import _ckernels
    except ImportError:
        pass
    else:
        found["cython"] = _ckernels
    return found
