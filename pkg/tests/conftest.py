import os
import sys
from functools import lru_cache

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from zzm.superpotential import Superpotential, motive_from_polynomial  # noqa: E402

import reference_data  # noqa: E402


@lru_cache(maxsize=None)
def motive(text, lam=((1, 0), (0, 1))):
    return motive_from_polynomial(text, lam)


def printed(text):
    return Superpotential.from_cycles(*reference_data.PERMUTATIONS[text])


@pytest.fixture(scope="session")
def get_motive():
    return motive


def pytest_terminal_summary(terminalreporter):
    import acceptance_log

    if acceptance_log.LINES:
        terminalreporter.section("acceptance criteria")
        for k in sorted(acceptance_log.LINES):
            terminalreporter.write_line(acceptance_log.LINES[k])
