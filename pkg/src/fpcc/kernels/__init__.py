"""Backend selection for the sequential solver kernels.

The Thomas solve and the Gauss-Seidel sweep are loop-carried recurrences
that numpy cannot vectorize, so they are compiled with numba by default.
Setting the environment variable ``FPCC_DISABLE_NUMBA`` to ``1``/``true``
(checked once, at import) selects the pure-NumPy reference lane instead;
the same happens automatically when numba is not importable.

``BACKEND`` records which lane is active ("numba" or "numpy").
"""

from __future__ import annotations

import os

_disabled = os.environ.get("FPCC_DISABLE_NUMBA", "").strip().lower() in {
    "1",
    "true",
    "yes",
    "on",
}

if _disabled:
    from ._reference import gauss_seidel, gauss_seidel_backward, thomas

    BACKEND = "numpy"
else:
    try:
        from ._jit import gauss_seidel, gauss_seidel_backward, thomas

        BACKEND = "numba"
    except ImportError:  # pragma: no cover - exercised only without numba
        from ._reference import gauss_seidel, gauss_seidel_backward, thomas

        BACKEND = "numpy"

__all__ = ["BACKEND", "thomas", "gauss_seidel", "gauss_seidel_backward"]
