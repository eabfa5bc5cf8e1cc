import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from rqamon import _backend, _pykernels, measures, recurrence  # noqa: E402

BACKENDS = {"python": _pykernels}
try:
    from rqamon import _kernels

    BACKENDS["compiled"] = _kernels
except ImportError:
    pass


@pytest.fixture(params=sorted(BACKENDS))
def backend(request, monkeypatch):
    """Run a test once per available kernel implementation."""
    mod = BACKENDS[request.param]
    monkeypatch.setattr(recurrence, "kernels", mod)
    monkeypatch.setattr(measures, "kernels", mod)
    return request.param


@pytest.fixture
def example_rp():
    from rqamon import build_rp, delay_embed

    return build_rp(delay_embed([0, 0.05, 1.0, 0.05, 0], 1, 1), 0.1)
