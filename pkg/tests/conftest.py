import sys
from pathlib import Path

import pytest

from foonkit import corpus

sys.path.insert(0, str(Path(__file__).parent))

# verbatim rendering, irregular spacing included
ADD_YOGHURT_TEXT = """\
//
O      Mixer  0
S      off
S      contains {chopped banana}
O      bowl  1
S      contains {yoghurt}
O      yoghurt 1
S      in      [bowl]
M      add yoghurt      1:46      1:49
O      Mixer  0
S      contains {chopped banana, yoghurt}
O      bowl  0
S      empty
//
"""

ACCEPTANCE_RESULTS: list[str] = []


@pytest.fixture
def add_yoghurt_text():
    return ADD_YOGHURT_TEXT


@pytest.fixture(params=corpus.NAMES)
def corpus_name(request):
    return request.param


@pytest.fixture
def recipes():
    return corpus.load_foon("recipes"), corpus.load_kitchen("recipes"), corpus.load_rates()


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_RESULTS:
            terminalreporter.write_line(line)


def pytest_addoption(parser):
    group = parser.getgroup("foonkit", "external FOON dataset (optional, reported only)")
    group.addoption("--foon-dataset", help="universal FOON file to report per-goal tree sizes for")
    group.addoption("--foon-kitchen", help="kitchen file for --foon-dataset")
    group.addoption("--foon-rates", help="motion rates file for --foon-dataset")
