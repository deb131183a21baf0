"""Polynomial kernel backend selection.

The compiled extension (_polycore, built from the .pyx source) and the
pure-Python module (_polycore_py) implement identical kernels.  The
compiled one is preferred when present; JETCHECK_POLY_BACKEND=py|cy
forces a choice (cy raises if the extension is missing).
"""

import os

_choice = os.environ.get("JETCHECK_POLY_BACKEND", "auto").lower()

if _choice in ("py", "python"):
    from . import _polycore_py as impl
elif _choice in ("cy", "cython", "ext"):
    from . import _polycore as impl  # type: ignore[no-redef]
else:
    try:
        from . import _polycore as impl  # type: ignore[no-redef]
    except ImportError:
        from . import _polycore_py as impl  # type: ignore[no-redef]

BACKEND_NAME = impl.BACKEND_NAME

mono_mul = impl.mono_mul
mono_deg = impl.mono_deg
mono_divides = impl.mono_divides
mono_div = impl.mono_div
mono_cmp = impl.mono_cmp
poly_add = impl.poly_add
poly_sub = impl.poly_sub
poly_neg = impl.poly_neg
poly_scale = impl.poly_scale
poly_mul = impl.poly_mul
poly_mul_mono = impl.poly_mul_mono
poly_pow = impl.poly_pow
poly_leading = impl.poly_leading
poly_divexact = impl.poly_divexact
