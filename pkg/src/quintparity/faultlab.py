"""Fault-injection lab: brute-force oracle, Monte Carlo campaigns, op counting."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from itertools import combinations
from math import comb
from typing import Optional, Sequence

import numpy as np

from .beyond import (
    degraded_two_data_missing_parity,
    four_failure_consistency_2d2p,
    four_failure_consistency_3d1p,
    locate_two_data_for_parity,
    recover_data_for_two_parity,
    recover_three_failed,
    recover_two_data_for_parity,
    symmetric_functions,
    three_data_consistency,
)
from .code import (
    CodeParams,
    ErrorVector,
    Word,
    apply_error,
    as_symbols,
    build_code,
    canonical_error,
    encode,
    error_syndrome,
    syndrome,
)
from .galois import FieldSpec, OpCounts, make_field
from .mindist import (
    Status,
    decode_combined,
    decode_stripe,
    decode_syndrome,
    solve_erasure_syndrome,
)

ORACLE_LIMIT = 10**8
SCHEMA = "quintparity.campaign/1"


# -- brute-force oracle -------------------------------------------------------


def _contributions(params: CodeParams) -> np.ndarray:
    """contrib[pos, v-1] = H column of pos scaled by v, shape (n, q-1, 5)."""
    f = params.field
    vals = np.arange(1, f.size)
    out = np.zeros((params.n, f.size - 1, 5), dtype=np.int64)
    exp = np.array(f.exp, dtype=np.int64)
    logv = np.array([f.log[v] for v in vals], dtype=np.int64)
    for pos in range(params.n):
        for j, c in enumerate(params.column(pos)):
            if c:
                out[pos, :, j] = exp[f.log[c] + logv]
    return out


def oracle_decode(
    params: CodeParams,
    s: Sequence[int],
    max_weight: int,
    required: Sequence[int] = (),
    limit: int = ORACLE_LIMIT,
) -> list[ErrorVector]:
    """Every error of weight <= max_weight with syndrome ``s``, by exhaustive search.

    ``required`` restricts the search to supports containing all of those
    positions.  Results are ordered by weight, then positions, then values.
    Refuses searches larger than ``limit``.
    """
    n = params.n
    q1 = params.field.size - 1
    required = sorted(set(required))
    others = [p for p in range(n) if p not in required]
    budget = 0
    for w in range(len(required), max_weight + 1):
        budget += comb(len(others), w - len(required)) * q1**w
    if budget > limit:
        raise ValueError(f"oracle search of {budget} vectors exceeds limit {limit}")
    target = np.array(s, dtype=np.int64)
    contrib = _contributions(params)
    k = params.k
    found: list[ErrorVector] = []
    if not required and not any(s):
        found.append({})
    for w in range(max(1, len(required)), max_weight + 1):
        for extra in combinations(others, w - len(required)):
            support = sorted(required + list(extra))
            data = [p for p in support if p < k]
            rows = [p - k for p in support if p >= k]
            # parity columns are unit vectors, so each parity value is whatever
            # the data part leaves on its row; only data values are enumerated
            acc = np.zeros((1, 5), dtype=np.int64)
            for pos in data:
                acc = (acc[:, None, :] ^ contrib[pos][None, :, :]).reshape(-1, 5)
            resid = acc ^ target
            free = [j for j in range(5) if j not in rows]
            ok = np.all(resid[:, free] == 0, axis=1) & np.all(resid[:, rows] != 0, axis=1)
            for h in np.nonzero(ok)[0]:
                idx = np.unravel_index(int(h), (q1,) * len(data))
                e = {p: int(i) + 1 for p, i in zip(data, idx)}
                e.update({k + j: int(resid[h, j]) for j in rows})
                found.append(dict(sorted(e.items())))
    return found



def oracle_on_support(
    params: CodeParams, s: Sequence[int], positions: Sequence[int], limit: int = ORACLE_LIMIT
) -> list[ErrorVector]:
    """Every assignment of values (zero allowed) to ``positions`` with H e = s."""
    positions = sorted(set(positions))
    q = params.field.size
    if q ** len(positions) > limit:
        raise ValueError(f"oracle search of {q ** len(positions)} vectors exceeds limit {limit}")
    contrib = _contributions(params)
    acc = np.zeros((1, 5), dtype=np.int64)
    for pos in positions:
        col = np.concatenate([np.zeros((1, 5), dtype=np.int64), contrib[pos]])
        acc = (acc[:, None, :] ^ col[None, :, :]).reshape(-1, 5)
    hits = np.nonzero(np.all(acc == np.array(s, dtype=np.int64), axis=1))[0]
    out = []
    for h in hits:
        idx = np.unravel_index(int(h), (q,) * len(positions))
        out.append({p: int(v) for p, v in zip(positions, idx)})
    return out

# -- campaigns -----------------------------------------------------------------


@dataclass
class TrialSpec:
    m: int = 8
    poly: Optional[int] = None
    k: int = 20
    # probability of each injected error weight; keys are weights 0..5
    weights: dict = field(default_factory=lambda: {1: 0.5, 2: 0.5})
    erasures: int = 0
    values: str = "uniform"  # "uniform" nonzero symbols, or "bitflip" single bits
    model: str = "random"  # "random" positions, or "codeword" weight-5 differences
    trials: int = 1000
    seed: int = 0
    list_decoding: bool = False
    count_ops: bool = False

    def __post_init__(self):
        self.weights = {int(w): float(p) for w, p in self.weights.items()}
        if any(not 0 <= w <= 5 for w in self.weights):
            raise ValueError("error weights must lie in 0..5")
        if self.values not in ("uniform", "bitflip"):
            raise ValueError(f"unknown value distribution {self.values!r}")
        if self.model not in ("random", "codeword"):
            raise ValueError(f"unknown error model {self.model!r}")
        if not 0 <= self.erasures <= 4:
            raise ValueError("erasure count must lie in 0..4")

    @classmethod
    def from_dict(cls, d: dict) -> "TrialSpec":
        d = dict(d)
        if isinstance(d.get("poly"), str):
            d["poly"] = int(d["poly"], 16)
        return cls(**d)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["weights"] = {str(w): p for w, p in self.weights.items()}
        return d

    def code(self) -> CodeParams:
        spec = FieldSpec.default(self.m) if self.poly is None else FieldSpec(self.m, self.poly)
        return build_code(make_field(spec), self.k)


OUTCOMES = ("clean", "corrected_exact", "corrected_wrong", "detected_uncorrectable", "silent")


def _stat() -> dict:
    return {"n": 0, "min": None, "max": None, "sum": 0}


def _stat_add(st: dict, x: int) -> None:
    st["n"] += 1
    st["sum"] += x
    st["min"] = x if st["min"] is None else min(st["min"], x)
    st["max"] = x if st["max"] is None else max(st["max"], x)


def _stat_merge(a: dict, b: dict) -> dict:
    if not a["n"]:
        return dict(b)
    if not b["n"]:
        return dict(a)
    return {
        "n": a["n"] + b["n"],
        "min": min(a["min"], b["min"]),
        "max": max(a["max"], b["max"]),
        "sum": a["sum"] + b["sum"],
    }


@dataclass
class CampaignReport:
    trials: int = 0
    counts: dict = field(default_factory=lambda: dict.fromkeys(OUTCOMES, 0))
    by_classification: dict = field(default_factory=dict)
    by_weight: dict = field(default_factory=dict)
    list_decoding: dict = field(
        default_factory=lambda: {"attempts": 0, "truth_in_list": 0, "max_list": 0}
    )
    ops: dict = field(default_factory=lambda: {"syndrome": _stat(), "localization": _stat()})

    def merge(self, other: "CampaignReport") -> "CampaignReport":
        out = CampaignReport(trials=self.trials + other.trials)
        out.counts = {k: self.counts[k] + other.counts[k] for k in OUTCOMES}
        for src in (self.by_classification, other.by_classification):
            for k, v in src.items():
                out.by_classification[k] = out.by_classification.get(k, 0) + v
        for src in (self.by_weight, other.by_weight):
            for w, row in src.items():
                dst = out.by_weight.setdefault(w, dict.fromkeys(OUTCOMES, 0))
                for k, v in row.items():
                    dst[k] += v
        a, b = self.list_decoding, other.list_decoding
        out.list_decoding = {
            "attempts": a["attempts"] + b["attempts"],
            "truth_in_list": a["truth_in_list"] + b["truth_in_list"],
            "max_list": max(a["max_list"], b["max_list"]),
        }
        out.ops = {p: _stat_merge(self.ops[p], other.ops[p]) for p in self.ops}
        return out

    def to_dict(self) -> dict:
        return {
            "trials": self.trials,
            "counts": dict(self.counts),
            "by_classification": dict(sorted(self.by_classification.items())),
            "by_weight": {str(w): dict(r) for w, r in sorted(self.by_weight.items())},
            "list_decoding": dict(self.list_decoding),
            "ops": {p: dict(st) for p, st in self.ops.items()},
        }


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    """Independent stream per (seed, trial); trials can run in any order or process."""
    return np.random.Generator(np.random.Philox(key=seed, counter=[0, trial, 0, 0]))


def _draw_value(rng, f, how: str) -> int:
    if how == "bitflip":
        return 1 << int(rng.integers(0, f.m))
    return int(rng.integers(1, f.size))


def _codeword_difference(params: CodeParams, rng, how: str) -> ErrorVector:
    """A random codeword of weight exactly 5 (an undetectable error pattern)."""
    f = params.field
    while True:
        support = sorted(int(p) for p in rng.choice(params.n, size=5, replace=False))
        last = support[-1]
        e = solve_erasure_syndrome(params, params.column(last), support[:-1])
        if e is None or not all(e.values()):
            continue
        e[last] = 1
        scale = _draw_value(rng, f, how)
        return {p: f.mul(scale, v) for p, v in e.items()}


def _classify(decoded, original, truth_nonzero: bool, s) -> str:
    if not truth_nonzero:
        return "clean" if decoded.status is Status.CLEAN else "corrected_wrong"
    if not any(s):
        return "silent"
    if decoded.status is Status.UNCORRECTABLE:
        return "detected_uncorrectable"
    return "corrected_exact" if decoded.codeword == original else "corrected_wrong"


def run_campaign(spec: TrialSpec, start: int = 0, stop: Optional[int] = None) -> CampaignReport:
    """Run trials ``start .. stop-1`` of ``spec`` (all of them by default)."""
    params = spec.code()
    f = params.field
    stop = spec.trials if stop is None else stop
    report = CampaignReport()
    weights = sorted(spec.weights)
    probs = np.array([spec.weights[w] for w in weights], dtype=float)
    probs = probs / probs.sum()
    for t in range(start, stop):
        rng = trial_rng(spec.seed, t)
        data = [int(x) for x in rng.integers(0, f.size, params.k)]
        original = encode(params, data).symbols
        w = int(weights[int(rng.choice(len(weights), p=probs))])
        if spec.model == "codeword":
            error = _codeword_difference(params, rng, spec.values) if w else {}
            erased: list[int] = []
        else:
            picks = [int(p) for p in rng.choice(params.n, size=w + spec.erasures, replace=False)]
            erased = sorted(picks[w:])
            error = {p: _draw_value(rng, f, spec.values) for p in picks[:w]}
        received = list(apply_error(original, error))
        for p in erased:
            received[p] = 0
        truth = {p: a ^ b for p, (a, b) in enumerate(zip(original, received)) if a != b}
        s = syndrome(params, received)
        if spec.count_ops and not erased:
            ops = count_field_ops(params, received)
            _stat_add(report.ops["syndrome"], ops["syndrome"].total())
            _stat_add(report.ops["localization"], ops["localization"].total())
        if erased:
            decoded = decode_combined(params, received, erased)
        else:
            decoded = decode_stripe(params, received)
        outcome = _classify(decoded, original, bool(truth), s)
        report.trials += 1
        report.counts[outcome] += 1
        row = report.by_weight.setdefault(w, dict.fromkeys(OUTCOMES, 0))
        row[outcome] += 1
        if decoded.status is Status.CORRECTED and decoded.classification is not None:
            key = decoded.classification.value
            report.by_classification[key] = report.by_classification.get(key, 0) + 1
        if spec.list_decoding and decoded.status is Status.UNCORRECTABLE and not erased:
            cands = recover_three_failed(params, s)
            ld = report.list_decoding
            ld["attempts"] += 1
            ld["max_list"] = max(ld["max_list"], len(cands))
            if canonical_error(truth) in {canonical_error(c) for c in cands}:
                ld["truth_in_list"] += 1
    return report


def run_campaign_parallel(spec: TrialSpec, workers: int = 1) -> CampaignReport:
    """Split the trials into contiguous chunks and merge; identical to run_campaign."""
    if workers <= 1 or spec.trials < 2 * workers:
        return run_campaign(spec)
    from concurrent.futures import ProcessPoolExecutor

    bounds = np.linspace(0, spec.trials, workers + 1).astype(int)
    with ProcessPoolExecutor(workers) as pool:
        parts = list(
            pool.map(run_campaign, [spec] * workers, bounds[:-1].tolist(), bounds[1:].tolist())
        )
    out = CampaignReport()
    for p in parts:
        out = out.merge(p)
    return out


def campaign_json(spec: TrialSpec, report: CampaignReport) -> str:
    return json.dumps({"schema": SCHEMA, "spec": spec.to_dict(), "report": report.to_dict()}, indent=2)


# -- operation counting -------------------------------------------------------


def count_field_ops(params: CodeParams, received: Word, erasures: Sequence[int] = ()) -> dict:
    """Field operations spent computing the syndrome and then localizing the error.

    Without erasures the localization phase is the minimum-distance decoder;
    with erasures it is the erasure solver.
    """
    ip = params.instrumented()
    word = as_symbols(params, received)
    s = syndrome(ip, word)
    syn = ip.field.reset()
    if erasures:
        solve_erasure_syndrome(ip, s, erasures)
    else:
        decode_syndrome(ip, s)
    loc = ip.field.reset()
    return {"syndrome": syn, "localization": loc}



# -- closed-form validation ------------------------------------------------------
#
# Each check builds an error pattern forward, takes its syndrome, and compares
# what a closed form says against exhaustive search.  A check returns None on
# agreement or a short description of the disagreement.


def _canon_set(errors) -> set:
    return {canonical_error(e) for e in errors}


def _ndata(params: CodeParams, e) -> int:
    return sum(1 for p in e if p < params.k)


def _weight3(e) -> bool:
    return len(e) == 3 and all(e.values())


def _check_two_data_one_parity(params, rng, j):
    f, k = params.field, params.k
    pj = params.parity_position(j)
    data = [int(x) for x in rng.choice(k, 2, replace=False)]
    e = {p: int(rng.integers(1, f.size)) for p in data + [pj]}
    s = error_syndrome(params, e)
    got = recover_two_data_for_parity(params, s, j)
    for c in got:
        if error_syndrome(params, c) != s:
            return f"candidate {c} does not reproduce s={s}"
    got = _canon_set(c for c in got if _weight3(c))
    want = _canon_set(o for o in oracle_decode(params, s, 3, required=[pj]) if _ndata(params, o) == 2)
    return None if got == want else f"s={s}: formula {sorted(got)} oracle {sorted(want)}"


def _check_one_data_two_parity(params, rng, j, l):
    f, k = params.field, params.k
    pj, pl = params.parity_position(j), params.parity_position(l)
    e = {int(rng.integers(0, k)): int(rng.integers(1, f.size))}
    e[pj] = int(rng.integers(1, f.size))
    e[pl] = int(rng.integers(1, f.size))
    s = error_syndrome(params, e)
    got = recover_data_for_two_parity(params, s, j, l)
    got = _canon_set([got] if got is not None and _weight3(got) else [])
    want = _canon_set(o for o in oracle_decode(params, s, 3, required=[pj, pl]) if _ndata(params, o) == 1)
    return None if got == want else f"s={s}: formula {sorted(got)} oracle {sorted(want)}"


def _degraded_oracle(params, s, j) -> list[ErrorVector]:
    """Explanations using data drives and parity j only, with the fewest data errors."""
    pj = params.parity_position(j)
    allowed = set(range(params.k)) | {pj}
    cands = oracle_decode(params, s, 2) + oracle_decode(params, s, 3, required=[pj])
    cands = [o for o in cands if set(o) <= allowed and _ndata(params, o) <= 2]
    if not cands:
        return []
    low = min(_ndata(params, o) for o in cands)
    return [o for o in cands if _ndata(params, o) == low]


def _check_degraded(params, rng, j):
    f, k = params.field, params.k
    pj = params.parity_position(j)
    data = [int(x) for x in rng.choice(k, 2, replace=False)]
    e = {p: int(rng.integers(1, f.size)) for p in data}
    e[pj] = int(rng.integers(0, f.size))  # the missing drive may hold anything
    e = {p: v for p, v in e.items() if v}
    s = error_syndrome(params, e)
    res = degraded_two_data_missing_parity(params, s, j)
    best = _degraded_oracle(params, s, j)
    want = _canon_set(best)
    if res.constraint is None:
        got = _canon_set(res.errors)
        if len(want) == 1:
            return None if got == want else f"s={s}: formula {sorted(got)} oracle {sorted(want)}"
        return None if not got else f"s={s}: formula claims {sorted(got)} but oracle has {len(want)}"
    # underdetermined: the pairs the constraint admits must be exactly the oracle's
    if any(_ndata(params, o) != 2 for o in best):
        return f"s={s}: constraint returned although oracle has fewer data errors"
    got = set()
    for u, v, x, y, z in locate_two_data_for_parity(params, s, j):
        iu, iv = params.position_of(u), params.position_of(v)
        if x and y and iu is not None and iv is not None:
            ev = {iu: x, iv: y, pj: z}
            got.add(canonical_error(ev))
    return None if got == want else f"s={s}: constraint pairs {len(got)} oracle {len(want)}"


def _other_subset(rng, k, size, avoid) -> list[int]:
    while True:
        pick = sorted(int(x) for x in rng.choice(k, size, replace=False))
        if pick != sorted(avoid):
            return pick


def _check_3d1p(params, rng, j):
    f, k = params.field, params.k
    pj = params.parity_position(j)
    data = sorted(int(x) for x in rng.choice(k, 3, replace=False))
    e = {p: int(rng.integers(1, f.size)) for p in data + [pj]}
    s = error_syndrome(params, e)
    sig = symmetric_functions(f, [params.alpha[p] for p in data])
    if four_failure_consistency_3d1p(f, j, sig, s):
        return f"s={s}: true locators rejected"
    other = _other_subset(rng, k, 3, data)
    sig = symmetric_functions(f, [params.alpha[p] for p in other])
    says = four_failure_consistency_3d1p(f, j, sig, s) == 0
    truth = bool(oracle_on_support(params, s, other + [pj]))
    return None if says == truth else f"s={s}, data {other}: formula {says} oracle {truth}"


def _check_2d2p(params, rng, j, l):
    f, k = params.field, params.k
    pj, pl = params.parity_position(j), params.parity_position(l)
    data = sorted(int(x) for x in rng.choice(k, 2, replace=False))
    e = {p: int(rng.integers(1, f.size)) for p in data + [pj, pl]}
    s = error_syndrome(params, e)
    u, v = (params.alpha[p] for p in data)
    if four_failure_consistency_2d2p(f, j, l, f.add(u, v), f.mul(u, v), s)[0]:
        return f"s={s}: true locators rejected"
    other = _other_subset(rng, k, 2, data)
    u, v = (params.alpha[p] for p in other)
    says = four_failure_consistency_2d2p(f, j, l, f.add(u, v), f.mul(u, v), s)[0] == 0
    truth = bool(oracle_on_support(params, s, other + [pj, pl]))
    return None if says == truth else f"s={s}, data {other}: formula {says} oracle {truth}"


def _check_three_data(params, rng):
    f, k = params.field, params.k
    data = sorted(int(x) for x in rng.choice(k, 3, replace=False))
    e = {p: int(rng.integers(1, f.size)) for p in data}
    s = error_syndrome(params, e)
    sig = symmetric_functions(f, [params.alpha[p] for p in data])
    if three_data_consistency(f, sig, s):
        return f"s={s}: true locators rejected"
    other = _other_subset(rng, k, 3, data)
    sig = symmetric_functions(f, [params.alpha[p] for p in other])
    says = three_data_consistency(f, sig, s) == 0
    truth = bool(oracle_on_support(params, s, other))
    return None if says == truth else f"s={s}, data {other}: formula {says} oracle {truth}"


def _three_failure_list(params, rng):
    """The full list decoder against the oracle's weight-3 list with a parity error."""
    f, k = params.field, params.k
    while True:
        npar = int(rng.integers(1, 4))
        pos = [int(p) for p in rng.choice(k, 3 - npar, replace=False)]
        pos += [k + int(p) for p in rng.choice(5, npar, replace=False)]
        e = {p: int(rng.integers(1, f.size)) for p in pos}
        s = error_syndrome(params, e)
        if decode_syndrome(params, s) is None:
            break
    got = _canon_set(recover_three_failed(params, s))
    want = _canon_set(o for o in oracle_decode(params, s, 3) if len(o) == 3 and _ndata(params, o) < 3)
    return None if got == want else f"s={s}: decoder {len(got)} oracle {len(want)}"


def closed_form_branches() -> dict:
    pairs = [(j, l) for j in range(1, 6) for l in range(j + 1, 6)]
    out = {}
    for j in range(1, 6):
        out[f"two data + P{j}"] = lambda p, r, j=j: _check_two_data_one_parity(p, r, j)
    for j, l in pairs:
        out[f"one data + P{j},P{l}"] = lambda p, r, j=j, l=l: _check_one_data_two_parity(p, r, j, l)
    for j in range(1, 6):
        out[f"P{j} missing, two data"] = lambda p, r, j=j: _check_degraded(p, r, j)
    for j in range(1, 6):
        out[f"three data + P{j} consistency"] = lambda p, r, j=j: _check_3d1p(p, r, j)
    for j, l in pairs:
        out[f"two data + P{j},P{l} consistency"] = lambda p, r, j=j, l=l: _check_2d2p(p, r, j, l)
    out["three data consistency"] = _check_three_data
    out["three-failure list"] = _three_failure_list
    return out


def _validate_branch(params: CodeParams, name: str, index: int, trials: int, seed: int) -> dict:
    check = closed_form_branches()[name]
    bad = 0
    first = None
    for t in range(trials):
        msg = check(params, trial_rng(seed + index, t))
        if msg is not None:
            bad += 1
            first = first or msg
    return {"trials": trials, "mismatches": bad, "first": first}


def validate_closed_forms(
    params: CodeParams,
    trials: int = 1000,
    seed: int = 0,
    branches: Optional[Sequence[str]] = None,
    workers: int = 1,
) -> dict:
    """Run closed-form branches against the oracle; {branch: {"trials", "mismatches", "first"}}.

    Branch i draws from the trial streams of seed + i, so results do not depend
    on ``workers``.
    """
    table = list(closed_form_branches())
    names = table if branches is None else list(branches)
    idx = [table.index(n) for n in names]
    n = len(names)
    if workers <= 1:
        parts = list(map(_validate_branch, [params] * n, names, idx, [trials] * n, [seed] * n))
    else:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(workers) as pool:
            parts = list(pool.map(_validate_branch, [params] * n, names, idx, [trials] * n, [seed] * n))
    return dict(zip(names, parts))

__all__ = [
    "ORACLE_LIMIT",
    "CampaignReport",
    "OpCounts",
    "TrialSpec",
    "campaign_json",
    "closed_form_branches",
    "count_field_ops",
    "error_syndrome",
    "oracle_decode",
    "oracle_on_support",
    "run_campaign",
    "run_campaign_parallel",
    "trial_rng",
    "validate_closed_forms",
]
