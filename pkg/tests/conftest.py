import numpy as np
import pytest

from hybridmark import _backend, fixtures
from hybridmark.bitcodec import text_to_stream
from hybridmark.raster import GrayImage


@pytest.fixture(scope="session")
def hosts():
    return fixtures.all_fixtures()


@pytest.fixture(scope="session")
def document_bits():
    return text_to_stream("document")


@pytest.fixture(params=_backend.available())
def backend(request):
    return _backend.load(request.param)


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


def random_image(rng, h, w):
    return GrayImage(rng.integers(0, 256, size=(h, w)))


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
