import pytest

from qsglab import corpus
from qsglab.core import FiniteSemigroup

ACCEPTANCE_LINES = []


@pytest.fixture(params=corpus.names())
def corpus_name(request):
    return request.param


@pytest.fixture
def semigroup(corpus_name) -> FiniteSemigroup:
    return corpus.load(corpus_name)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
