import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from overseer import parse_net_file

NETS_DIR = Path(__file__).parent.parent / "src" / "overseer" / "nets"
FAILURE_DIR = Path(__file__).parent / "failures"


@pytest.fixture(scope="session")
def two_machines_path() -> Path:
    return NETS_DIR / "two_machines.pnet"


@pytest.fixture(scope="session")
def drop_job_path() -> Path:
    return NETS_DIR / "drop_job.pnet"


@pytest.fixture()
def two_machines(two_machines_path):
    return parse_net_file(two_machines_path)


@pytest.fixture()
def drop_job(drop_job_path):
    return parse_net_file(drop_job_path)
