import os
import random
import sys

import pytest
from hypothesis import HealthCheck, settings

from quintparity.code import build_code
from quintparity.galois import make_field

settings.register_profile(
    "default", max_examples=200, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile("quick", max_examples=30, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def ref_mul(a, b, poly, m):
    """Shift-and-add multiplication; shares nothing with the table-driven field."""
    out = 0
    while b:
        if b & 1:
            out ^= a
        b >>= 1
        a <<= 1
        if a >> m:
            a ^= poly
    return out


def ref_pow(a, n, poly, m):
    out = 1
    for _ in range(n):
        out = ref_mul(out, a, poly, m)
    return out


def ref_column(rho, poly, m):
    """Parity-check column of a data drive, written out from its definition."""
    r2 = ref_mul(rho, rho, poly, m)
    return (1, rho, r2, ref_mul(r2, rho, poly, m), ref_mul(rho, rho ^ 1, poly, m))


def random_error(rng, params, positions):
    return {p: rng.randrange(1, params.field.size) for p in positions}


@pytest.fixture(scope="session")
def gf8():
    return make_field(3)


@pytest.fixture(scope="session")
def gf16():
    return make_field(4)


@pytest.fixture(scope="session")
def gf256():
    return make_field(8)


@pytest.fixture(scope="session")
def code16(gf16):
    return build_code(gf16, 13)


@pytest.fixture(scope="session")
def code8(gf8):
    return build_code(gf8, 7)


@pytest.fixture
def rng():
    return random.Random(12345)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(results):
        status, title, msg = results[num]
        terminalreporter.write_line(f"{status} criterion {num:2d}: {title} {msg}")
