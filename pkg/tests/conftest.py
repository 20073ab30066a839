import os
from pathlib import Path

import pytest

from subelect.core import EXAMPLE_PROFILE, example_election

# criterion id -> (status, detail); filled by test_acceptance.py
ACCEPTANCE: dict[str, tuple[str, str]] = {}

DATA_DIR = Path(__file__).parent / "data"


@pytest.fixture
def estar():
    return example_election()


@pytest.fixture
def estar_file(tmp_path):
    path = tmp_path / "estar.txt"
    path.write_text(EXAMPLE_PROFILE)
    return path


@pytest.fixture
def record():
    def _record(cid: str, status: str, detail: str) -> None:
        ACCEPTANCE[cid] = (status, detail)
        print(f"[{status}] {cid}: {detail}")

    return _record


def sushi_path():
    env = os.environ.get("SUBELECT_SUSHI")
    if env:
        return Path(env)
    hits = sorted(DATA_DIR.glob("*sushi*.soc"))
    return hits[0] if hits else None


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for cid in sorted(ACCEPTANCE):
        status, detail = ACCEPTANCE[cid]
        terminalreporter.write_line(f"{status:<5} {cid}  {detail}")
