"""Optional JIT acceleration for the hot solver kernels.

The branch-and-bound search and the greedy incentive scan are compiled
with numba when it is available.  Setting the environment variable
``BALKCOV_NUMBA=0`` (or ``false`` / ``off``) before import disables the
JIT and selects the pure NumPy/Python fallback path instead; results are
identical either way.  ``benchmarks/bench_kernels.py`` compares the two.
"""

import os


def _env_enabled() -> bool:
    return os.environ.get("BALKCOV_NUMBA", "1").strip().lower() not in ("0", "false", "off")


try:
    import numba as _numba  # noqa: F401

    HAVE_NUMBA = True
except ImportError:
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and _env_enabled()

if USE_NUMBA:
    from numba import njit
else:

    def njit(*args, **kwargs):
        """No-op stand-in for numba.njit when the JIT is unavailable or disabled."""
        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]

        def wrap(func):
            return func

        return wrap
