from pathlib import Path

import pytest

from fraczeta.zeros import digitize, parse_zero_file

DATA_DIR = Path(__file__).parent / "data"
ZEROS_100 = DATA_DIR / "riemann_zeros_100.txt"


@pytest.fixture(scope="session")
def zeros_path() -> Path:
    return ZEROS_100


@pytest.fixture(scope="session")
def zero_table(zeros_path):
    return parse_zero_file(zeros_path)


@pytest.fixture(scope="session")
def zero_digits(zero_table):
    return digitize(zero_table, precision_digits=50)
