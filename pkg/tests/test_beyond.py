import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from quintparity.beyond import (
    calculate_coefficients,
    degraded_two_data_missing_parity,
    list_bound,
    locate_three_data_multi_syndrome,
    recover_data_for_two_parity,
    recover_three_failed,
    recover_two_data_for_parity,
    repair_3erasures_1unknown,
    solve_cubic_over_alpha,
    symmetric_functions,
    two_parity_constraint,
)
from quintparity.code import apply_error, build_code, canonical_error, encode, error_syndrome
from quintparity.faultlab import closed_form_branches, oracle_decode, validate_closed_forms
from quintparity.galois import make_field
from quintparity.mindist import Classification, Status, decode_syndrome

F16 = make_field(4)
C16 = build_code(F16, 13)
F256 = make_field(8)
C256 = build_code(F256, 30)


@pytest.mark.parametrize("branch", list(closed_form_branches()))
def test_closed_form_branch_matches_oracle(branch):
    res = validate_closed_forms(C16, trials=60, seed=7, branches=[branch])[branch]
    assert res["mismatches"] == 0, res["first"]


def test_list_bound():
    assert list_bound(13) == 30


def test_recover_three_failed_rejects_decodable_syndrome():
    with pytest.raises(ValueError):
        recover_three_failed(C16, error_syndrome(C16, {0: 1, 3: 2}))


def test_three_parity_errors_listed_first():
    s = (1, 0, 1, 0, 1)
    cands = recover_three_failed(C16, s)
    assert cands[0] == {13: 1, 15: 1, 17: 1}
    want = {canonical_error(o) for o in oracle_decode(C16, s, 3) if len(o) == 3 and sum(p < 13 for p in o) < 3}
    assert {canonical_error(c) for c in cands} == want
    # ordered by number of data errors, then positions
    keys = [(sum(p < 13 for p in c), sorted(c)) for c in cands]
    assert keys == sorted(keys)


@given(st.integers(0, 2**32 - 1))
def test_list_contains_truth_gf256(seed):
    rng = random.Random(seed)
    k = C256.k
    npar = rng.randrange(1, 4)
    pos = rng.sample(range(k), 3 - npar) + [k + j for j in rng.sample(range(5), npar)]
    e = {p: rng.randrange(1, 256) for p in pos}
    s = error_syndrome(C256, e)
    if decode_syndrome(C256, s) is not None:
        return
    cands = recover_three_failed(C256, s)
    assert canonical_error(e) in {canonical_error(c) for c in cands}
    assert len(cands) <= list_bound(k)
    for c in cands:
        assert error_syndrome(C256, c) == s and len(c) == 3


def test_two_parity_constraint_rejects_bad_pair():
    with pytest.raises(ValueError):
        two_parity_constraint(F16, (1, 2, 3, 4, 5), 3, 3)
    with pytest.raises(ValueError):
        recover_data_for_two_parity(C16, (1, 2, 3, 4, 5), 4, 2)


def test_cube_root_locator_with_parities_2_and_3():
    # the kept cube root 7 is a locator; with parities 2, 3 failed, s1 = s4 = s5
    code = build_code(F16, 14)
    i = code.position_of(7)
    e = {i: 5, code.parity_position(2): 3, code.parity_position(3): 9}
    s = error_syndrome(code, e)
    assert s[0] == s[3] == s[4]
    assert recover_data_for_two_parity(code, s, 2, 3) == e


@given(st.integers(0, 2**32 - 1), st.integers(1, 5))
def test_calculate_coefficients_reproduces_syndrome(seed, j):
    rng = random.Random(seed)
    a, b = rng.sample(range(13), 2)
    e = {a: rng.randrange(1, 16), b: rng.randrange(1, 16), C16.parity_position(j): rng.randrange(16)}
    s = error_syndrome(C16, e)
    x, y, z = calculate_coefficients(F16, C16.alpha[a], C16.alpha[b], s, j)
    assert (x, y, z) == (e[a], e[b], e[C16.parity_position(j)])


def test_two_data_for_parity_finds_truth():
    e = {1: 4, 6: 9, C16.parity_position(5): 2}
    s = error_syndrome(C16, e)
    assert e in recover_two_data_for_parity(C16, s, 5)


# -- several syndromes of three failed data drives ----------------------------


def _syndromes(rng, code, data, count):
    return [error_syndrome(code, {p: rng.randrange(1, code.field.size) for p in data}) for _ in range(count)]


def test_multi_syndrome_unique_triple():
    rng = random.Random(1)
    hits = 0
    for _ in range(50):
        data = sorted(rng.sample(range(C256.k), 3))
        res = locate_three_data_multi_syndrome(C256, _syndromes(rng, C256, data, 3))
        if res.kind == "unique":
            assert res.triples == [tuple(data)]
            hits += 1
    assert hits >= 45


def test_multi_syndrome_two_syndromes_sweep():
    rng = random.Random(2)
    for _ in range(20):
        data = sorted(rng.sample(range(13), 3))
        res = locate_three_data_multi_syndrome(C16, _syndromes(rng, C16, data, 2))
        if res.kind == "candidates":
            assert tuple(data) in res.triples
            assert len(res.triples) <= C16.k


def test_multi_syndrome_detects_more_than_three():
    rng = random.Random(3)
    data = rng.sample(range(C256.k), 4)
    rows = []
    for _ in range(4):
        e = {p: rng.randrange(1, 256) for p in data}
        rows.append(error_syndrome(C256, e))
    assert locate_three_data_multi_syndrome(C256, rows).kind == "overdetermined"


def test_multi_syndrome_input_checks():
    with pytest.raises(ValueError):
        locate_three_data_multi_syndrome(C16, [(1, 0, 0, 0, 0)])  # parity-looking syndrome
    s = error_syndrome(C16, {0: 1, 1: 1, 2: 1})
    with pytest.raises(ValueError):
        locate_three_data_multi_syndrome(C16, [s, s])


def test_cubic_roots_are_the_locators():
    trip = [C16.alpha[i] for i in (2, 5, 11)]
    sig = symmetric_functions(F16, trip)
    assert sorted(solve_cubic_over_alpha(C16, *sig)) == sorted(trip)


# -- one parity drive missing -----------------------------------------------------


@pytest.mark.parametrize("j", [2, 3, 5])
def test_degraded_unique_for_parities_2_3_5(j):
    rng = random.Random(j)
    exact = 0
    for _ in range(200):
        a, b = rng.sample(range(13), 2)
        e = {a: rng.randrange(1, 16), b: rng.randrange(1, 16), C16.parity_position(j): rng.randrange(1, 16)}
        res = degraded_two_data_missing_parity(C16, error_syndrome(C16, e), j)
        if res.unique:
            assert res.errors[0] == e
            exact += 1
    assert exact >= 150


@pytest.mark.parametrize("j", [1, 4])
def test_degraded_constraint_for_parities_1_4(j):
    rng = random.Random(j)
    for _ in range(100):
        a, b = rng.sample(range(13), 2)
        e = {a: rng.randrange(1, 16), b: rng.randrange(1, 16), C16.parity_position(j): rng.randrange(1, 16)}
        res = degraded_two_data_missing_parity(C16, error_syndrome(C16, e), j)
        if res.constraint is None:
            continue
        c1, c2, c3 = res.constraint
        u, v = C16.alpha[a], C16.alpha[b]
        assert F16.mul(c1, u ^ v) ^ F16.mul(c2, F16.mul(u, v)) == c3


def test_degraded_single_data_error():
    e = {3: 7, C16.parity_position(2): 5}
    assert degraded_two_data_missing_parity(C16, error_syndrome(C16, e), 2).errors == [e]
    assert degraded_two_data_missing_parity(C16, (0, 4, 0, 0, 0), 2).errors == [{14: 4}]
    with pytest.raises(ValueError):
        degraded_two_data_missing_parity(C16, (0,) * 5, 6)


# -- three erasures and one unknown error ---------------------------------------


@pytest.mark.parametrize("seed", range(6))
def test_repair_three_erasures_one_error(seed):
    rng = random.Random(seed)
    k = C16.k
    bad = 0
    for _ in range(60):
        word = encode(C16, [rng.randrange(16) for _ in range(k)]).symbols
        pos = rng.sample(range(C16.n), 4)
        erasures, p = sorted(pos[:3]), pos[3]
        e = {q: rng.randrange(1, 16) for q in pos}
        out = repair_3erasures_1unknown(C16, apply_error(word, e), erasures)
        assert out.status is not Status.CLEAN
        if out.status is Status.CORRECTED:
            bad += out.codeword != word
        else:
            assert out.classification is Classification.LIST
            assert canonical_error(e) in {canonical_error(c) for c in out.candidates}
    assert bad == 0


def test_repair_three_erasures_needs_three():
    with pytest.raises(ValueError):
        repair_3erasures_1unknown(C16, [0] * 18, [0, 1])
