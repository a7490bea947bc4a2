"""Corrected closed forms: each test shows the corrected expression holds on
forward-built errors while the alternative reading fails.  See docs/closed_forms.md."""

import random

import pytest

from quintparity.beyond import degraded_sigmas, four_failure_consistency_3d1p, symmetric_functions
from quintparity.code import build_code, error_syndrome
from quintparity.galois import make_field

F = make_field(4)
C = build_code(F, 13)
m = F.mul


def _instances(j, n=300, ndata=2, seed=0):
    rng = random.Random(seed + j)
    for _ in range(n):
        data = rng.sample(range(C.k), ndata)
        e = {p: rng.randrange(1, 16) for p in data}
        e[C.parity_position(j)] = rng.randrange(16)
        e = {p: v for p, v in e.items() if v}
        yield [C.alpha[p] for p in data], error_syndrome(C, e)


def test_missing_p5_sigma1_numerator():
    ok = wrong = 0
    for (u, v), s in _instances(5):
        s1, s2, s3, s4, _ = s
        sig = degraded_sigmas(F, s, 5)
        if sig is None:
            continue
        den = m(s1, s3) ^ m(s2, s2)
        ok += sig[0] == u ^ v
        alt = F.div(m(s1, s4) ^ m(s1, s3), den)
        wrong += alt != u ^ v
    assert ok > 250 and wrong > 200


def test_missing_p5_nondegeneracy_is_nonzero_denominator():
    # solvable instances have s1 s3 + s2^2 != 0 overwhelmingly; "= 0" would reject them
    nonzero = sum(1 for _, s in _instances(5) if m(s[0], s[2]) ^ m(s[1], s[1]))
    assert nonzero > 250


def test_missing_p4_consistency_uses_s2_s3_s5():
    holds = alt = 0
    for _, s in _instances(4):
        s1, s2, s3, s4, s5 = s
        holds += s2 ^ s3 ^ s5 == 0
        alt += s1 ^ s2 ^ s5 == 0
    assert holds == 300 and alt < 50


def test_missing_p4_relation():
    good = alt = 0
    for (u, v), s in _instances(4):
        s1, s2, s3 = s[:3]
        a, b = u ^ v, m(u, v)
        good += s3 ^ m(a, s2) ^ m(s1, b) == 0
        alt += s2 ^ m(a, s2) ^ m(s1, b) == 0
    assert good == 300 and alt < 50


@pytest.mark.parametrize("j", [2, 3])
def test_missing_p2_p3_forms_recover_sigmas(j):
    hits = 0
    for (u, v), s in _instances(j):
        sig = degraded_sigmas(F, s, j)
        if sig is not None:
            assert sig == (u ^ v, m(u, v))
            hits += 1
    assert hits > 250


def test_three_data_one_parity_rows():
    rng = random.Random(11)
    for j in range(1, 6):
        for _ in range(200):
            data = rng.sample(range(C.k), 3)
            e = {p: rng.randrange(1, 16) for p in data}
            e[C.parity_position(j)] = rng.randrange(1, 16)
            s = error_syndrome(C, e)
            sig = symmetric_functions(F, [C.alpha[p] for p in data])
            assert four_failure_consistency_3d1p(F, j, sig, s) == 0


def test_three_data_p2_row_needs_sigma3_term():
    rng = random.Random(12)
    misses = 0
    for _ in range(200):
        data = rng.sample(range(C.k), 3)
        e = {p: rng.randrange(1, 16) for p in data}
        e[C.parity_position(2)] = rng.randrange(1, 16)
        s1, s2, s3, s4, s5 = error_syndrome(C, e)
        a, b, c = symmetric_functions(F, [C.alpha[p] for p in data])
        misses += (s4 ^ m(a, s3) ^ m(b, s3 ^ s5)) != 0
    assert misses > 150
