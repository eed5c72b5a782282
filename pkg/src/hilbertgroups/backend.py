"""Selects the direct-summation kernel at import time.

The compiled extension ``_toeplitz`` is used when it imports; otherwise the
numpy fallback. Set ``HILBERTGROUPS_BACKEND=python`` to force the fallback.
"""

import os

from . import _toeplitz_py

try:
    from . import _toeplitz as _compiled
except ImportError:  # extension not built
    _compiled = None

BACKENDS = {"python": _toeplitz_py.toeplitz_direct}
if _compiled is not None:
    BACKENDS["compiled"] = _compiled.toeplitz_direct

if os.environ.get("HILBERTGROUPS_BACKEND", "").lower() == "python" or _compiled is None:
    BACKEND = "python"
else:
    BACKEND = "compiled"

toeplitz_direct = BACKENDS[BACKEND]
