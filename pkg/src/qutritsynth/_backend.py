"""Select the compiled kernel extension, falling back to pure Python.

Set ``QUTRITSYNTH_PURE=1`` to force the fallback.  The compiled kernels use
64-bit integers, so callers route oversized problems through :func:`for_bound`.
"""

import os

from . import _kernels_py as pure

compiled = None
if not os.environ.get("QUTRITSYNTH_PURE"):
    try:
        from . import _kernels as compiled  # type: ignore[no-redef]
    except ImportError:  # pragma: no cover - depends on the build
        compiled = None

kernels = compiled if compiled is not None else pure
BACKEND = "compiled" if compiled is not None else "python"

# keeps every intermediate of the int64 kernels (squares, sums, 4N) in range
INT64_SAFE = 1 << 60


def for_bound(bound4) -> object:
    """Kernel module able to handle coordinates with ``P^2 + 3 Q^2 <= bound4``."""
    if BACKEND == "compiled" and bound4 < INT64_SAFE:
        return compiled
    return pure


def use(name: str) -> None:
    """Switch the default backend (``"compiled"`` or ``"python"``); used by benchmarks and tests."""
    global kernels, BACKEND, compiled
    if name == "python":
        kernels, BACKEND = pure, "python"
    elif name == "compiled":
        from . import _kernels as mod

        compiled = mod
        kernels, BACKEND = mod, "compiled"
    else:
        raise ValueError(name)
