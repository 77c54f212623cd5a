import sys
from pathlib import Path

import pytest

from twistalex.presentation import load_presentation

CORPUS = Path(__file__).resolve().parents[1] / "src" / "twistalex" / "corpus"


def corpus_path(name: str) -> str:
    return str(CORPUS / name)


def knot(name: str):
    return load_presentation(corpus_path(f"{name}.pres"))


@pytest.fixture
def trefoil():
    return knot("3_1")


@pytest.fixture
def figure_eight():
    return knot("4_1")


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
