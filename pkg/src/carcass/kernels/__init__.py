"""Hot kernels with a compiled implementation and a pure-Python fallback.

The compiled module is used when it imports cleanly; setting
``CARCASS_PURE_PYTHON=1`` forces the fallback.
"""
import os

from . import _pykernels as python_backend

compiled_backend = None
if os.environ.get("CARCASS_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as compiled_backend
    except ImportError:  # extension not built
        compiled_backend = None

backend = compiled_backend if compiled_backend is not None else python_backend
BACKEND_NAME = "compiled" if compiled_backend is not None else "python"

cut_capacities = backend.cut_capacities
dinic = backend.dinic

__all__ = ["cut_capacities", "dinic", "BACKEND_NAME", "python_backend", "compiled_backend"]
