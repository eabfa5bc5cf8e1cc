"""Select the kernel implementation at import time.

The compiled extension is used when it was built and ``RQAMON_PURE_PYTHON``
is unset; otherwise the numpy fallback is loaded.
"""

import logging
import os

from . import _pykernels

logger = logging.getLogger(__name__)

try:
    if os.environ.get("RQAMON_PURE_PYTHON"):
        raise ImportError("pure-python kernels requested")
    from . import _kernels as kernels

    BACKEND = "compiled"
except ImportError as exc:
    logger.debug("using numpy kernels: %s", exc)
    kernels = _pykernels
    BACKEND = "python"

# packing helpers are numpy-only in both backends
pack_rows = _pykernels.pack_rows
unpack_window = _pykernels.unpack_window
n_words = _pykernels.n_words
