import shutil

import pytest

from helpers import REPO_DIR
from sketchport.kb import load_repository


@pytest.fixture(scope="session")
def repo():
    return load_repository(REPO_DIR)


@pytest.fixture
def repo_copy(tmp_path):
    """A writable copy of the fixture repository."""
    dest = tmp_path / "repo"
    shutil.copytree(REPO_DIR, dest)
    return dest


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(RESULTS):
        terminalreporter.write_line(RESULTS[number])
