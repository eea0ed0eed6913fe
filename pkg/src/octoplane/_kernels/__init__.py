"""Kernel backend selection.

The compiled Cython module is preferred when importable; the pure-numpy
module is the fallback.  OCTOPLANE_BACKEND={compiled,pure} forces the
choice (import fails if a forced compiled backend is unavailable).
"""

from __future__ import annotations

import os

from . import pure, shared  # noqa: F401  (shared re-exported for callers)

_choice = os.environ.get("OCTOPLANE_BACKEND", "")

if _choice == "pure":
    backend = pure
    BACKEND_NAME = "pure"
else:
    try:
        from . import _fast as backend  # type: ignore[no-redef]

        BACKEND_NAME = "compiled"
    except ImportError:
        if _choice == "compiled":
            raise
        backend = pure
        BACKEND_NAME = "pure"

canonical_reps = backend.canonical_reps
face_closure = backend.face_closure
closure_counts = backend.closure_counts
cover_counts = backend.cover_counts
l_batch = backend.l_batch
maximal_mask = backend.maximal_mask


def get_backend(name: str):
    """Return a kernel module by name; used by tests and benchmarks."""
    if name == "pure":
        return pure
    if name == "compiled":
        from . import _fast

        return _fast
    raise ValueError(f"unknown backend {name!r}")
