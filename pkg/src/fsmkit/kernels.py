"""Backend selection for the finite-automaton kernels.

The compiled module is used when it was built and the machine fits in 64
states; otherwise the pure-Python module takes over. Set
``FSMKIT_PURE_PYTHON=1`` to force the fallback everywhere.
"""

import os

from . import _kernels_py

try:
    if os.environ.get("FSMKIT_PURE_PYTHON"):
        raise ImportError("pure-python backend forced")
    from . import _kernels_c
except ImportError:
    _kernels_c = None

BACKEND = _kernels_c.BACKEND if _kernels_c is not None else _kernels_py.BACKEND


def compile_nfa(n, nsym, start, finals_mask, eps, delta, backend=None):
    """Build a ``CompiledNfa`` from whichever backend applies.

    ``backend`` may be ``"cython"`` or ``"python"`` to pin one (used by the
    tests and the benchmark).
    """
    if backend == "python":
        mod = _kernels_py
    elif backend == "cython":
        if _kernels_c is None:
            raise RuntimeError("compiled kernels are not available")
        mod = _kernels_c
    elif _kernels_c is not None and n <= _kernels_c.MAX_STATES:
        mod = _kernels_c
    else:
        mod = _kernels_py
    return mod.CompiledNfa(n, nsym, start, finals_mask, eps, delta)


def available_backends():
    return ["python"] + (["cython"] if _kernels_c is not None else [])
