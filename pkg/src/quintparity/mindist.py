"""Unique decoding within the minimum distance.

Up to two errors at unknown positions, up to four erasures, or any mix with
``erasures + 2 * errors <= 4``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Optional, Sequence

from .code import (
    NPARITY,
    CodeParams,
    ErrorVector,
    Word,
    apply_error,
    as_symbols,
    parity_column,
    parity_submatrix,
    select_rows,
    solve_square,
    syndrome,
)
from .galois import FieldTables

MAX_ERASURES = 4


class Status(str, Enum):
    CLEAN = "clean"
    CORRECTED = "corrected"
    UNCORRECTABLE = "uncorrectable"


class Classification(str, Enum):
    PARITY_ONLY = "parity-only"
    ONE_DATA = "1 data"
    DATA_PARITY = "1 data + 1 parity"
    TWO_DATA = "2 data"
    ERASURE = "erasure-repair"
    ERASURE_ERROR = "erasure + error"
    LIST = "list-decoded"


@dataclass
class DecodeOutcome:
    status: Status
    error: Optional[ErrorVector] = None
    classification: Optional[Classification] = None
    codeword: Optional[tuple[int, ...]] = None
    candidates: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.status is not Status.UNCORRECTABLE


def _clean(word) -> DecodeOutcome:
    return DecodeOutcome(Status.CLEAN, {}, None, tuple(word))


def _corrected(word, error, cls) -> DecodeOutcome:
    error = {p: v for p, v in error.items() if v}
    if not error:
        return _clean(word)
    return DecodeOutcome(Status.CORRECTED, error, cls, apply_error(word, error))


def _uncorrectable(candidates=None) -> DecodeOutcome:
    return DecodeOutcome(Status.UNCORRECTABLE, candidates=list(candidates or []))


def weight(s: Sequence[int]) -> int:
    return sum(1 for x in s if x)


# -- one data drive plus at most one parity drive ---------------------------


def locate_parity_and_data(
    f: FieldTables, s: Sequence[int], excluded: Iterable[int] = ()
) -> Optional[tuple[int, int, int, int]]:
    """Solve x P(rho) + y I_j = s for (j, rho, x, y) with x, rho nonzero.

    ``j == 6`` means the solution has y = 0, i.e. a lone data error.  Returns
    None when no such solution exists, including when ``s`` has weight 1.
    Candidate locators that are excluded cube roots of unity are skipped.
    """
    for m in (1, 3):
        sm, sm1 = s[m - 1], s[m]
        if sm == 0 or sm1 == 0:
            continue
        rho = f.div(sm1, sm)
        p = parity_column(f, rho)
        if p[3] == 1 and rho in excluded:
            continue
        x = f.div(sm, p[m - 1])
        fails = 0
        j = 0
        for t in range(1, NPARITY + 1):
            if t in (m, m + 1):
                continue
            if s[t - 1] != f.mul(x, p[t - 1]):
                fails += 1
                j = t
        if fails == 0:
            return (6, rho, x, 0)
        if fails == 1:
            return (j, rho, x, f.add(s[j - 1], f.mul(x, p[j - 1])))
    return None


def recover_parity_and_data(params: CodeParams, s: Sequence[int]) -> Optional[ErrorVector]:
    found = locate_parity_and_data(params.field, s, params.excluded)
    if found is None:
        return None
    j, rho, x, y = found
    i = params.position_of(rho)
    if i is None:
        return None
    e = {i: x}
    if j <= NPARITY:
        e[params.parity_position(j)] = y
    return e


# -- two data drives --------------------------------------------------------


def locate_two_data(f: FieldTables, s: Sequence[int]) -> Optional[tuple[int, int, int, int]]:
    """Solve x P(u) + y P(v) = s with x, y nonzero and u != v, via Cramer and a quadratic."""
    s1, s2, s3, s4, s5 = s
    if f.add(f.add(s2, s3), s5) != 0:
        return None
    d = f.add(f.mul(s2, s2), f.mul(s1, s3))
    d1 = f.add(f.mul(s2, s3), f.mul(s1, s4))
    d2 = f.add(f.mul(s2, s4), f.mul(s3, s3))
    if d == 0 or d1 == 0 or d2 == 0:
        return None
    sigma1 = f.div(d1, d)
    sigma2 = f.div(d2, d)
    roots = f.solve_quadratic(1, sigma1, sigma2)
    if len(roots) != 2:
        return None
    u, v = roots
    den = f.add(v, u)
    x = f.div(f.add(f.mul(v, s1), s2), den)
    y = f.div(f.add(s2, f.mul(u, s1)), den)
    return (u, v, x, y)


def recover_two_data(params: CodeParams, s: Sequence[int]) -> Optional[ErrorVector]:
    found = locate_two_data(params.field, s)
    if found is None:
        return None
    u, v, x, y = found
    i = params.position_of(u)
    j = params.position_of(v)
    if i is None or j is None:
        return None
    return {i: x, j: y}


# -- the main decoder -------------------------------------------------------


def decode_syndrome(
    params: CodeParams, s: Sequence[int]
) -> Optional[tuple[ErrorVector, Optional[Classification]]]:
    """The localization phase: map a syndrome to an error of weight <= 2, or None."""
    k = params.k
    nz = [j for j in range(NPARITY) if s[j]]
    if not nz:
        return {}, None
    if len(nz) <= 2:
        return {k + j: s[j] for j in nz}, Classification.PARITY_ONLY
    e = recover_parity_and_data(params, s)
    if e is not None:
        cls = Classification.ONE_DATA if len(e) == 1 else Classification.DATA_PARITY
        return e, cls
    e = recover_two_data(params, s)
    if e is not None:
        return e, Classification.TWO_DATA
    return None


def decode_stripe(params: CodeParams, received: Word) -> DecodeOutcome:
    word = as_symbols(params, received)
    s = syndrome(params, word)
    found = decode_syndrome(params, s)
    if found is None:
        return _uncorrectable()
    e, cls = found
    return _corrected(word, e, cls)


# -- erasures ---------------------------------------------------------------


def solve_erasure_syndrome(
    params: CodeParams, s: Sequence[int], positions: Iterable[int]
) -> Optional[ErrorVector]:
    """The unique e supported on ``positions`` with H e = s, or None if inconsistent.

    Entries may be zero.  At most four positions; the distance-5 property
    guarantees a nonsingular square subsystem exists.
    """
    e, residual = _erasure_solution(params, s, positions)
    if any(residual.values()):
        return None
    return e


def _erasure_solution(params: CodeParams, s, positions) -> tuple[ErrorVector, dict[int, int]]:
    """Solve on the selected rows; also return the leftover check rows (zero when consistent)."""
    f = params.field
    k = params.k
    positions = sorted(set(positions))
    if len(positions) > MAX_ERASURES:
        raise ValueError(f"at most {MAX_ERASURES} erasures can be solved, got {len(positions)}")
    data = [p for p in positions if p < k]
    prow = {p - k + 1 for p in positions if p >= k}
    rows = select_rows(params, data, prow)
    if rows is None:  # pragma: no cover - excluded by the distance property
        raise AssertionError("no nonsingular subsystem for erasure pattern")
    e: ErrorVector = {}
    residual: dict[int, int] = {}
    if data:
        vals = solve_square(f, parity_submatrix(params, rows, data), [s[j - 1] for j in rows])
        e.update(zip(data, vals))
    for j in range(1, NPARITY + 1):
        if j in rows:
            continue
        acc = s[j - 1]
        for i in data:
            acc = f.add(acc, f.mul(params.rows[j - 1][i], e[i]))
        if j in prow:
            e[k + j - 1] = acc
        else:
            residual[j] = acc
    return e, residual


def erasure_linear_map(
    params: CodeParams, positions: Iterable[int]
) -> tuple[list[int], list[list[int]], list[list[int]]]:
    """Matrices R and C with e = R s on ``positions`` and C s = 0 iff consistent.

    The erasure solution is linear in the syndrome, so R and C are read off
    from the five unit syndromes.  Used for bulk repair of whole shards.
    """
    positions = sorted(set(positions))
    cols = []
    for t in range(NPARITY):
        unit = [0] * NPARITY
        unit[t] = 1
        cols.append(_erasure_solution(params, unit, positions))
    checks = sorted(cols[0][1])
    r = [[cols[t][0][p] for t in range(NPARITY)] for p in positions]
    c = [[cols[t][1][j] for t in range(NPARITY)] for j in checks]
    return positions, r, c


def decode_erasures(params: CodeParams, received: Word, erasures: Iterable[int]) -> DecodeOutcome:
    word = as_symbols(params, received)
    erasures = _check_positions(params, erasures)
    s = syndrome(params, word)
    e = solve_erasure_syndrome(params, s, erasures)
    if e is None:
        return _uncorrectable()
    return _corrected(word, e, Classification.ERASURE)


def _check_positions(params: CodeParams, positions: Iterable[int]) -> list[int]:
    out = sorted(set(int(p) for p in positions))
    if any(not 0 <= p < params.n for p in out):
        raise ValueError(f"erasure positions must lie in 0..{params.n - 1}")
    if len(out) > MAX_ERASURES:
        raise ValueError(f"at most {MAX_ERASURES} erasures supported, got {len(out)}")
    return out


def decode_combined(params: CodeParams, received: Word, erasures: Iterable[int]) -> DecodeOutcome:
    """Correct known erasures plus as many unknown errors as ``Z + 2E <= 4`` allows."""
    word = as_symbols(params, received)
    erasures = _check_positions(params, erasures)
    if not erasures:
        return decode_stripe(params, word)
    s = syndrome(params, word)
    e = solve_erasure_syndrome(params, s, erasures)
    if e is not None:
        return _corrected(word, e, Classification.ERASURE)
    if (MAX_ERASURES - len(erasures)) // 2 < 1:
        return _uncorrectable()
    found = None
    erased = set(erasures)
    for p in range(params.n):
        if p in erased:
            continue
        cand = solve_erasure_syndrome(params, s, erasures + [p])
        if cand is None or cand[p] == 0:
            continue
        if found is not None:
            return _uncorrectable()
        found = cand
    if found is None:
        return _uncorrectable()
    return _corrected(word, found, Classification.ERASURE_ERROR)
