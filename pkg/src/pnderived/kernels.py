"""Backend selection for the elimination kernels.

The compiled extension ``pnderived._kernels`` is used when it was built;
otherwise the pure-Python module is used.  Setting the environment
variable ``PNDERIVED_PURE_PYTHON=1`` forces the fallback.
"""

import os

if os.environ.get("PNDERIVED_PURE_PYTHON", "") not in ("", "0"):
    from . import _kernels_py as _impl
else:
    try:
        from . import _kernels as _impl
    except ImportError:  # extension not built
        from . import _kernels_py as _impl

BACKEND = _impl.BACKEND
rank_int = _impl.rank_int
rank_mod_p = _impl.rank_mod_p
rref_mod_p = _impl.rref_mod_p
rref_frac = _impl.rref_frac

__all__ = ["BACKEND", "rank_int", "rank_mod_p", "rref_mod_p", "rref_frac"]
