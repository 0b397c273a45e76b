"""Shared fixtures and the acceptance-report summary hook."""

from pathlib import Path

import pytest

from pswm import build_index, parse_corpus_file, parse_judgments_file

FIXTURES = Path(__file__).parent / "fixtures"
CORPUS_PATH = FIXTURES / "corpus.jsonl"
JUDGMENTS_PATH = FIXTURES / "judgments.tsv"

# One "criterion N PASS/FAIL" line per acceptance test, echoed after the run.
ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def fixture_docs():
    return parse_corpus_file(CORPUS_PATH)


@pytest.fixture(scope="session")
def fixture_index(fixture_docs):
    return build_index(fixture_docs)


@pytest.fixture(scope="session")
def fixture_judgments():
    return parse_judgments_file(JUDGMENTS_PATH)


@pytest.fixture
def acceptance_report():
    """Collector for acceptance criteria outcomes.

    Each criterion test calls this once with its result; the line is printed
    inline and repeated in the terminal summary, which survives output
    capture.
    """

    def report(criterion: int, ok: bool, detail: str) -> None:
        line = f"[acceptance] criterion {criterion} {'PASS' if ok else 'FAIL'}: {detail}"
        print(line)
        ACCEPTANCE_LINES.append(line)

    return report


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
