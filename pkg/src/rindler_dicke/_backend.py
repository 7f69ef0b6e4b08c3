"""Pick the kernel implementation at import time.

The compiled ``_kernels`` extension is used when it was built; otherwise the
numpy fallback.  ``RINDLER_DICKE_BACKEND=python`` forces the fallback.
"""

import os

from . import _kernels_py

python_kernels = _kernels_py

try:
    from . import _kernels as compiled_kernels
except ImportError:  # extension not built
    compiled_kernels = None

if compiled_kernels is not None and os.environ.get("RINDLER_DICKE_BACKEND", "").lower() != "python":
    kernels = compiled_kernels
    BACKEND = "compiled"
else:
    kernels = python_kernels
    BACKEND = "python"
