import os
import sys

import numpy as np
import pytest

sys.path.insert(0, os.path.dirname(__file__))

from rleibniz.gfield import field_make  # noqa: E402
from rleibniz.presets import preset, random_algebra  # noqa: E402
from rleibniz.restricted import is_restrictable  # noqa: E402

PRIMES = (2, 3, 5, 7)

# shipped presets and small direct sums
PRESET_NAMES = (
    "ab1", "ab2", "ab3", "cy2", "cyc3", "aff2", "laff2", "heis3", "sl2", "torsd2",
    "nonres", "nonresleib", "aff2+aff2", "aff2+cy2", "aff2+heis3", "laff2+aff2", "torsd2+ab1",
)

ACCEPTANCE = {}


def preset_fixtures(primes=PRIMES, names=PRESET_NAMES):
    return [(f"{name}@{p}", preset(name, p)) for p in primes for name in names]


def random_fixtures(count, seed=0, max_dim=6):
    out = []
    for s in range(count):
        F = field_make(PRIMES[s % len(PRIMES)])
        out.append((f"random{s + seed}@{F.p}", random_algebra(F, np.random.default_rng(s + seed), max_dim)))
    return out


def restricted_fixtures(fixtures):
    out = []
    for label, A in fixtures:
        res = is_restrictable(A)
        if res:
            out.append((label, A, res.pmap))
    return out


def elements(A, limit=3125, samples=1000, seed=0):
    """All of A when small enough, else seeded samples."""
    if A.F.q ** A.n <= limit:
        return A.all_elements()
    return A.random_elements(np.random.default_rng(seed), samples)


@pytest.fixture(scope="session")
def acceptance():
    return ACCEPTANCE


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE):
        ok, text = ACCEPTANCE[key]
        terminalreporter.write_line(f"criterion {key:2d}: {'PASS' if ok else 'FAIL'}  {text}")
