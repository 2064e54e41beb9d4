import numpy as np
import pytest

from bvpnewton import _kernels


@pytest.fixture(params=sorted(_kernels.BACKENDS))
def backend(request, monkeypatch):
    """Run a test once per available elimination backend."""
    thomas, gauss = _kernels.BACKENDS[request.param]
    monkeypatch.setattr(_kernels, "thomas", thomas)
    monkeypatch.setattr(_kernels, "gauss", gauss)
    return request.param


@pytest.fixture
def rng():
    return np.random.default_rng(20241015)


def pytest_terminal_summary(terminalreporter):
    from tests import test_acceptance

    if test_acceptance.VERDICTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(test_acceptance.VERDICTS):
            terminalreporter.write_line(line)
