"""Backend selection for the hot loops.

The compiled extension is used when it was built; otherwise, or when the
environment variable ``GHILB_PURE_PYTHON`` is set to a non-empty value, the
pure-Python implementation is used.  ``BACKEND`` names the active one.
"""
import os

if os.environ.get("GHILB_PURE_PYTHON"):
    from ._kernels_py import *  # noqa: F401,F403
    BACKEND = "python"
else:
    try:
        from ._kernels import *  # noqa: F401,F403
        BACKEND = "cython"
    except ImportError:
        from ._kernels_py import *  # noqa: F401,F403
        BACKEND = "python"
