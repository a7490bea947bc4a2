"""Decoding past the minimum distance.

List decoding of three-drive failures that involve at least one parity
drive, location of three failed data drives from several syndromes,
degraded operation with a parity drive missing, and four-drive consistency
conditions used to repair three erasures plus one unknown error.

The closed forms here are written over GF(2^m), so every minus sign of the
textbook derivations is a plus (XOR).  Each of them is checked against the
brute-force oracle in ``faultlab`` by the test suite; see
``docs/closed_forms.md``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional, Sequence

from .code import (
    NPARITY,
    CodeParams,
    ErrorVector,
    Word,
    as_symbols,
    canonical_error,
    error_syndrome,
    parity_column,
    rank,
    solve_square,
    syndrome,
)
from .galois import FieldTables
from .mindist import (
    Classification,
    DecodeOutcome,
    Status,
    _check_positions,
    _corrected,
    decode_syndrome,
    solve_erasure_syndrome,
)


def list_bound(k: int) -> int:
    """Largest possible number of weight-3 explanations with a parity error."""
    return 2 * k + 4


def _sum(f: FieldTables, *xs: int) -> int:
    acc = 0
    for x in xs:
        acc = f.add(acc, x)
    return acc


def _sorted_candidates(params: CodeParams, found) -> list[ErrorVector]:
    seen = {}
    for e in found:
        key = canonical_error(e)
        seen.setdefault(key, dict(key))
    k = params.k
    keys = sorted(seen, key=lambda c: (sum(1 for p, _ in c if p < k), tuple(p for p, _ in c)))
    return [seen[c] for c in keys]


def _sound(params: CodeParams, s: Sequence[int], e: ErrorVector, wt: int) -> bool:
    return (
        len(e) == wt
        and all(v for v in e.values())
        and tuple(error_syndrome(params, e)) == tuple(s)
    )


# -- two data drives and one parity drive -----------------------------------


def augmatrix_for_parity(f: FieldTables, s: Sequence[int], j: int):
    """Linear system [A | b] for (sigma1, sigma2) when parity j and two data drives fail.

    Returns ``(rows, cond)``; ``cond`` must vanish for the system to be usable.
    """
    s1, s2, s3, s4, s5 = s
    if j == 5:
        return [(s2, s1, s3), (s3, s2, s4)], 0
    if j == 4:
        return [(s2, s1, s3)], _sum(f, s2, s3, s5)
    if j == 3:
        return [(s2, s1, f.add(s2, s5)), (s5, f.add(s1, s2), _sum(f, s2, s4, s5))], 0
    if j == 2:
        return [(s5, _sum(f, s1, s3, s5), f.add(s3, s4)), (s3, f.add(s3, s5), s4)], 0
    if j == 1:
        return [(s3, s2, s4)], _sum(f, s2, s3, s5)
    raise ValueError(f"parity index must be 1..5, got {j}")


def locate_two_data_when_determined(f: FieldTables, rows) -> Optional[tuple[int, int]]:
    (c11, c12, c13), (c21, c22, c23) = rows
    d = f.add(f.mul(c11, c22), f.mul(c21, c12))
    d1 = f.add(f.mul(c13, c22), f.mul(c23, c12))
    d2 = f.add(f.mul(c11, c23), f.mul(c21, c13))
    if d == 0 or d1 == 0 or d2 == 0:
        return None
    roots = f.solve_quadratic(1, f.div(d1, d), f.div(d2, d))
    if len(roots) != 2:
        return None
    return roots


def calculate_coefficients(
    f: FieldTables, u: int, v: int, s: Sequence[int], j: int
) -> tuple[int, int, int]:
    """Solve x P(u) + y P(v) + z I_j = s for (x, y, z)."""
    if u == v or u == 0 or v == 0:
        raise ValueError("locators must be distinct and nonzero")
    s1, s2, s3 = s[0], s[1], s[2]
    if j > 2:
        d = f.add(v, u)
        x = f.div(f.add(f.mul(s1, v), s2), d)
        y = f.div(f.add(f.mul(s1, u), s2), d)
    elif j == 2:
        d = f.mul(f.add(v, u), f.add(v, u))
        x = f.div(f.add(f.mul(s1, f.mul(v, v)), s3), d)
        y = f.div(f.add(f.mul(s1, f.mul(u, u)), s3), d)
    elif j == 1:
        d = f.mul(f.mul(u, v), f.add(v, u))
        x = f.div(f.add(f.mul(s2, f.mul(v, v)), f.mul(s3, v)), d)
        y = f.div(f.add(f.mul(s2, f.mul(u, u)), f.mul(s3, u)), d)
    else:
        raise ValueError(f"parity index must be 1..5, got {j}")
    pu, pv = parity_column(f, u), parity_column(f, v)
    z = _sum(f, s[j - 1], f.mul(x, pu[j - 1]), f.mul(y, pv[j - 1]))
    return x, y, z


def locate_two_data_when_underdetermined(
    params: CodeParams, s: Sequence[int], j: int, row
) -> list[tuple[int, int, int, int, int]]:
    """All (u, v, x, y, z) with u < v satisfying the single constraint c1 s1 + c2 s2 = c3."""
    f = params.field
    c1, c2, c3 = row
    out = []
    for v in params.alpha:
        num = f.add(c3, f.mul(c1, v))
        den = f.add(c1, f.mul(c2, v))
        if den and num:
            u = f.div(num, den)
            if u < v:
                out.append((u, v) + calculate_coefficients(f, u, v, s, j))
        elif not den and not num:
            for u in params.alpha:
                if u < v:
                    out.append((u, v) + calculate_coefficients(f, u, v, s, j))
    return out


def locate_two_data_for_parity(params: CodeParams, s: Sequence[int], j: int):
    f = params.field
    rows, cond = augmatrix_for_parity(f, s, j)
    if cond:
        return []
    if len(rows) == 2:
        uv = locate_two_data_when_determined(f, rows)
        if uv is None:
            return []
        u, v = uv
        return [(u, v) + calculate_coefficients(f, u, v, s, j)]
    return locate_two_data_when_underdetermined(params, s, j, rows[0])


def recover_two_data_for_parity(params: CodeParams, s: Sequence[int], j: int) -> list[ErrorVector]:
    out = []
    for u, v, x, y, z in locate_two_data_for_parity(params, s, j):
        i1 = params.position_of(u)
        i2 = params.position_of(v)
        if i1 is None or i2 is None:
            continue
        out.append({i1: x, i2: y, params.parity_position(j): z})
    return out


# -- one data drive and two parity drives -----------------------------------


def two_parity_constraint(f: FieldTables, s: Sequence[int], j: int, l: int) -> int:
    """Value that must vanish for x P(rho) + y I_j + z I_l = s to have a solution."""
    s1, s2, s3, s4, s5 = s
    m = f.mul
    key = (j, l)
    if key == (1, 2):
        return _sum(f, m(s4, s5), m(s3, s4), m(s3, s3))
    if key == (1, 3):
        return _sum(f, m(s5, s5), m(s2, s4), m(s2, s2))
    if key == (1, 4):
        return _sum(f, s2, s3, s5)
    if key == (1, 5):
        return f.add(m(s2, s4), m(s3, s3))
    if key == (2, 3):
        return f.add(m(f.add(m(s5, s5), m(s1, s4)), s5), m(m(s1, s4), f.add(s1, s4)))
    if key == (2, 4):
        t = f.add(s3, s5)
        return f.add(m(t, t), m(s1, s3))
    if key == (2, 5):
        return f.add(m(s1, m(s4, s4)), m(s3, m(s3, s3)))
    if key == (3, 4):
        return f.add(m(s1, f.add(s5, s2)), m(s2, s2))
    if key == (3, 5):
        return f.add(m(m(s1, s1), s4), m(s2, m(s2, s2)))
    if key == (4, 5):
        return f.add(m(s1, s3), m(s2, s2))
    raise ValueError(f"need 1 <= j < l <= 5, got ({j}, {l})")


def _two_parity_rho(f: FieldTables, s, j, l, excluded) -> int:
    s1, s2, s3, s4, s5 = s
    key = (j, l)
    if key == (1, 2):
        if s3:
            return f.div(s4, s3)
        if s5:
            return f.div(f.add(s3, s4), s5)
    elif key == (1, 3):
        if s2:
            return f.div(f.add(s2, s5), s2)
    elif key in ((1, 4), (1, 5)):
        if s2:
            return f.div(s3, s2)
    elif key == (2, 3):
        if f.add(s1, s5):
            return f.div(f.add(s4, s5), f.add(s1, s5))
        if s5 and excluded:
            # s1 = s4 = s5: rho is the cube root of unity that was kept
            return f.add(1, excluded[0])
    elif key == (2, 4):
        if f.add(s3, s5):
            return f.div(s3, f.add(s3, s5))
    elif key == (2, 5):
        if s3:
            return f.div(s4, s3)
    elif key == (3, 4):
        if s2:
            return f.div(f.add(s2, s5), s2)
    elif key == (3, 5):
        if s2:
            return f.div(f.mul(s1, s4), f.mul(s2, s2))
    elif key == (4, 5):
        if s2:
            return f.div(s3, s2)
    return 0


def recover_data_for_two_parity(
    params: CodeParams, s: Sequence[int], j: int, l: int
) -> Optional[ErrorVector]:
    """Explain ``s`` by one data drive plus parity drives j < l, if possible."""
    if not 1 <= j < l <= NPARITY:
        raise ValueError(f"need 1 <= j < l <= 5, got ({j}, {l})")
    f = params.field
    if two_parity_constraint(f, s, j, l):
        return None
    rho = _two_parity_rho(f, s, j, l, params.excluded)
    if rho == 0:
        return None
    i = params.position_of(rho)
    if i is None:
        return None
    p = parity_column(f, rho)
    q, t, w = [r for r in range(1, NPARITY + 1) if r not in (j, l)]
    x = f.div(s[q - 1], p[q - 1])
    if s[t - 1] != f.mul(x, p[t - 1]) or s[w - 1] != f.mul(x, p[w - 1]):
        return None
    return {
        i: x,
        params.parity_position(j): f.add(s[j - 1], f.mul(x, p[j - 1])),
        params.parity_position(l): f.add(s[l - 1], f.mul(x, p[l - 1])),
    }


# -- the three-failure list decoder ------------------------------------------


def recover_three_failed(params: CodeParams, s: Sequence[int]) -> list[ErrorVector]:
    """Every weight-3 error with at least one parity error whose syndrome is ``s``.

    The caller must already know that ``s`` has no explanation of weight <= 2
    (run :func:`quintparity.mindist.decode_syndrome` first); otherwise
    ValueError is raised.  The result is deduplicated and ordered by number
    of data errors, then positions.
    """
    s = tuple(s)
    if decode_syndrome(params, s) is not None:
        raise ValueError("syndrome is decodable within the minimum distance")
    k = params.k
    found: list[ErrorVector] = []
    nz = [j for j in range(NPARITY) if s[j]]
    if len(nz) == 3:
        found.append({k + j: s[j] for j in nz})
    for j, l in combinations(range(1, NPARITY + 1), 2):
        e = recover_data_for_two_parity(params, s, j, l)
        if e is not None:
            found.append(e)
    for j in range(1, NPARITY + 1):
        found.extend(recover_two_data_for_parity(params, s, j))
    out = [e for e in _sorted_candidates(params, found) if _sound(params, s, e, 3)]
    assert len(out) <= list_bound(k), "list-decoding bound violated"
    return out


# -- three data drives --------------------------------------------------------


def three_data_consistency(f: FieldTables, sigma: Sequence[int], s: Sequence[int]) -> int:
    """s4 + sigma1 s3 + sigma2 s2 + sigma3 s1; zero iff the locators fit ``s``."""
    sig1, sig2, sig3 = sigma
    return _sum(f, s[3], f.mul(sig1, s[2]), f.mul(sig2, s[1]), f.mul(sig3, s[0]))


def symmetric_functions(f: FieldTables, locators: Sequence[int]) -> tuple[int, ...]:
    """Elementary symmetric polynomials sigma1..sigman of the locators."""
    sig = [1]
    for a in locators:
        nxt = sig + [0]
        for i in range(1, len(nxt)):
            nxt[i] = f.add(nxt[i], f.mul(a, sig[i - 1]))
        sig = nxt
    return tuple(sig[1:])


def solve_cubic_over_alpha(params: CodeParams, sig1: int, sig2: int, sig3: int) -> list[int]:
    """Locators a in alpha with a^3 + sigma1 a^2 + sigma2 a + sigma3 = 0."""
    f = params.field
    out = []
    for a in params.alpha:
        a2 = f.mul(a, a)
        if _sum(f, f.mul(a2, a), f.mul(sig1, a2), f.mul(sig2, a), sig3) == 0:
            out.append(a)
    return out


@dataclass
class MultiSyndromeResult:
    kind: str  # "unique", "candidates", "overdetermined" or "none"
    triples: list = field(default_factory=list)


def _triple_positions(params: CodeParams, sig) -> Optional[tuple[int, int, int]]:
    roots = solve_cubic_over_alpha(params, *sig)
    if len(roots) != 3:
        return None
    return tuple(sorted(params.position_of(r) for r in roots))


def locate_three_data_multi_syndrome(
    params: CodeParams, syndromes: Sequence[Sequence[int]]
) -> MultiSyndromeResult:
    """Locate three failed data drives from several syndromes of the same failure.

    Each syndrome contributes the linear equation
    ``s3 sigma1 + s2 sigma2 + s1 sigma3 = s4``.  A rank-3 system gives the
    triple outright; a rank-2 system is swept over one locator; an inconsistent
    system rules out any failure of at most three data drives.
    """
    f = params.field
    rows = []
    for s in syndromes:
        if f.add(f.add(s[1], s[2]), s[4]):
            raise ValueError("syndrome is not consistent with data-only errors")
        rows.append((s[2], s[1], s[0], s[3]))
    coef = [r[:3] for r in rows]
    rk = rank(f, coef)
    if rank(f, rows) > rk:
        return MultiSyndromeResult("overdetermined")
    if rk == 3:
        basis = _independent_rows(f, rows, 3)
        sig = solve_square(f, [r[:3] for r in basis], [r[3] for r in basis])
        trip = _triple_positions(params, sig)
        return MultiSyndromeResult("unique", [trip]) if trip else MultiSyndromeResult("none")
    if rk < 2:
        raise ValueError("need at least two independent syndromes")
    basis = _independent_rows(f, rows, 2)
    triples = set()
    for a in params.alpha:
        a2 = f.mul(a, a)
        extra = (a2, a, 1, f.mul(a2, a))
        sig = solve_square(f, [r[:3] for r in basis] + [extra[:3]], [r[3] for r in basis] + [extra[3]])
        if sig is None:
            continue
        trip = _triple_positions(params, sig)
        if trip:
            triples.add(trip)
    out = sorted(triples)
    assert len(out) <= params.k
    return MultiSyndromeResult("candidates" if out else "none", out)


def _independent_rows(f: FieldTables, rows, want: int):
    picked = []
    for r in rows:
        if rank(f, [p[:3] for p in picked + [r]]) == len(picked) + 1:
            picked.append(r)
            if len(picked) == want:
                break
    return picked


# -- one parity drive missing -------------------------------------------------


@dataclass
class DegradedResult:
    """Outcome of decoding with one parity drive known to be missing.

    ``errors`` holds the unique explanation when there is one.  When the data
    alone cannot pin down two locators, ``constraint`` is ``(c1, c2, c3)`` with
    ``c1 sigma1 + c2 sigma2 = c3``; one more known locator then fixes the other.
    """

    errors: list = field(default_factory=list)
    constraint: Optional[tuple[int, int, int]] = None

    @property
    def unique(self) -> bool:
        return len(self.errors) == 1


def _single_data_with_parity(params: CodeParams, s, j) -> Optional[ErrorVector]:
    f = params.field
    if j == 1:
        a, b = 2, 3
    elif j == 2:
        a, b = 3, 4
    else:
        a, b = 1, 2
    sa, sb = s[a - 1], s[b - 1]
    if not sa or not sb:
        return None
    rho = f.div(sb, sa)
    p = parity_column(f, rho)
    x = f.div(sa, p[a - 1])
    for t in range(1, NPARITY + 1):
        if t != j and s[t - 1] != f.mul(x, p[t - 1]):
            return None
    i = params.position_of(rho)
    if i is None:
        return None
    return {i: x, params.parity_position(j): f.add(s[j - 1], f.mul(x, p[j - 1]))}


def degraded_sigmas(f: FieldTables, s: Sequence[int], j: int) -> Optional[tuple[int, int]]:
    """Closed-form (sigma1, sigma2) for two data errors when parity j (2, 3 or 5) is missing."""
    s1, s2, s3, s4, s5 = s
    m = f.mul
    if j == 5:
        den = f.add(m(s1, s3), m(s2, s2))
        n1 = f.add(m(s2, s3), m(s1, s4))
        n2 = f.add(m(s2, s4), m(s3, s3))
    elif j == 3:
        t = f.add(s2, s5)
        den = f.add(m(s1, t), m(s2, s2))
        n1 = f.add(m(s2, t), m(s1, s4))
        n2 = f.add(m(t, t), m(s2, s4))
    elif j == 2:
        t = f.add(s3, s5)
        den = f.add(m(t, t), m(s1, s3))
        n1 = f.add(m(s3, t), m(s1, s4))
        n2 = f.add(m(s4, t), m(s3, s3))
    else:
        raise ValueError("closed forms exist only for missing parity 2, 3 or 5")
    if den == 0:
        return None
    return f.div(n1, den), f.div(n2, den)


def degraded_two_data_missing_parity(params: CodeParams, s: Sequence[int], j: int) -> DegradedResult:
    """Decode with parity drive j missing, allowing up to two unknown data errors.

    The explanation with the fewest data errors wins.
    """
    if not 1 <= j <= NPARITY:
        raise ValueError(f"parity index must be 1..5, got {j}")
    f = params.field
    s = tuple(s)
    pj = params.parity_position(j)
    if all(s[t] == 0 for t in range(NPARITY) if t != j - 1):
        return DegradedResult([{pj: s[j - 1]} if s[j - 1] else {}])
    e = _single_data_with_parity(params, s, j)
    if e is not None:
        return DegradedResult([{p: v for p, v in e.items() if v}])
    if j in (1, 4):
        rows, cond = augmatrix_for_parity(f, s, j)
        if cond:
            return DegradedResult()
        return DegradedResult(constraint=rows[0])
    sig = degraded_sigmas(f, s, j)
    if sig is None or sig[0] == 0 or sig[1] == 0:
        return DegradedResult()
    roots = f.solve_quadratic(1, sig[0], sig[1])
    if len(roots) != 2:
        return DegradedResult()
    u, v = roots
    i1, i2 = params.position_of(u), params.position_of(v)
    if i1 is None or i2 is None:
        return DegradedResult()
    x, y, z = calculate_coefficients(f, u, v, s, j)
    e = {i1: x, i2: y, pj: z}
    e = {p: val for p, val in e.items() if val}
    if tuple(error_syndrome(params, e)) != s:
        return DegradedResult()
    return DegradedResult([e])


# -- four failed drives -------------------------------------------------------


def four_failure_consistency_3d1p(f: FieldTables, j: int, sigma: Sequence[int], s: Sequence[int]) -> int:
    """Zero iff three data errors with locator symmetric functions ``sigma`` and
    one error on parity j can produce ``s``.  ``sigma`` is (sigma1, sigma2, sigma3)."""
    s1, s2, s3, s4, s5 = s
    sig1, sig2, sig3 = sigma
    m = f.mul
    if j in (1, 4):
        return _sum(f, s2, s3, s5)
    if j == 2:
        return _sum(f, s4, m(sig1, s3), m(sig2, f.add(s3, s5)), m(sig3, s1))
    if j == 3:
        return _sum(f, s4, m(sig1, f.add(s2, s5)), m(sig2, s2), m(sig3, s1))
    if j == 5:
        return _sum(f, s4, m(sig1, s3), m(sig2, s2), m(sig3, s1))
    raise ValueError(f"parity index must be 1..5, got {j}")


def four_failure_consistency_2d2p(
    f: FieldTables, j: int, l: int, sigma1: int, sigma2: int, s: Sequence[int]
) -> tuple[int, int]:
    """(consistency, degeneracy) for two data errors plus errors on parities j < l.

    Consistency vanishes iff a matching weight-4 error exists.  Degeneracy
    vanishes iff the consistency equation no longer limits the second locator
    to two values; it coincides with the one-data, two-parity constraint.
    """
    s1, s2, s3, s4, s5 = s
    a, b = sigma1, sigma2
    m = f.mul
    key = (j, l)
    if key == (1, 2):
        c = _sum(f, m(b, f.add(s5, s3)), s4, m(a, s3))
    elif key == (1, 3):
        c = _sum(f, m(a, f.add(s5, s2)), s4, m(s2, b))
    elif key == (1, 4):
        c = _sum(f, s2, s3, s5)
    elif key == (1, 5):
        c = _sum(f, s4, m(a, s3), m(s2, b))
    elif key == (2, 3):
        c = _sum(f, m(b, s5), m(m(a, a), s5), m(a, s4), s4, m(s1, m(b, b)), m(s1, m(a, b)))
    elif key == (2, 4):
        c = _sum(f, m(a, f.add(s5, s3)), s3, m(s1, b))
    elif key == (2, 5):
        c = _sum(f, m(a, s4), m(b, s3), m(m(a, a), s3), m(s1, m(b, b)))
    elif key == (3, 4):
        c = _sum(f, s5, m(s1, b), m(a, s2), s2)
    elif key == (3, 5):
        c = _sum(f, s4, m(s2, b), m(s1, m(a, b)), m(m(a, a), s2))
    elif key == (4, 5):
        c = _sum(f, s3, m(s1, b), m(a, s2))
    else:
        raise ValueError(f"need 1 <= j < l <= 5, got ({j}, {l})")
    return c, two_parity_constraint(f, s, j, l)


def _poly_coeffs(f: FieldTables, g, degree: int) -> list[int]:
    """Coefficients (low to high) of a polynomial of known degree bound, from samples."""
    xs = [0, 1, f.exp[1]][: degree + 1]
    ys = [g(x) for x in xs]
    mat = [[f.pow(x, d) if x or d == 0 else 0 for d in range(degree + 1)] for x in xs]
    return solve_square(f, mat, ys)


def _roots_of(f: FieldTables, coeffs: list[int]) -> Optional[list[int]]:
    """Roots of c0 + c1 w + c2 w^2; None when every coefficient is zero."""
    coeffs = coeffs + [0] * (3 - len(coeffs))
    c0, c1, c2 = coeffs
    if c2:
        return list(f.solve_quadratic(c2, c1, c0))
    if c1:
        return [f.div(c0, c1)]
    if c0:
        return []
    return None


def _data_candidates(params: CodeParams, s, erasures) -> tuple[Optional[list[int]], Optional[tuple[int, int, int]]]:
    """Data positions the unknown fourth error may occupy, from the four-failure tables.

    Returns (positions, degenerate pair).  positions is None when the tables do
    not narrow the search for this erasure shape; the pair (i, j, l) is set when
    the two-parity consistency equation degenerates.
    """
    f = params.field
    k = params.k
    data = [p for p in erasures if p < k]
    par = [p - k + 1 for p in erasures if p >= k]
    known = [params.alpha[p] for p in data]
    if len(data) == 1 and len(par) == 2:
        j, l = par
        a = known[0]

        def g(w):
            return four_failure_consistency_2d2p(f, j, l, f.add(a, w), f.mul(a, w), s)[0]

        # at most quadratic in the unknown locator
        roots = _roots_of(f, _poly_coeffs(f, g, 2))
        if roots is None:
            return None, (data[0], j, l)
    elif len(data) == 2 and len(par) == 1:
        (j,) = par
        a, b = known
        c1, c2 = f.add(a, b), f.mul(a, b)

        def g(w):
            return four_failure_consistency_3d1p(f, j, (f.add(c1, w), f.add(c2, f.mul(c1, w)), f.mul(c2, w)), s)

        # linear in the unknown locator
        roots = _roots_of(f, _poly_coeffs(f, g, 1))
        if roots is None:
            return None, None
    else:
        return None, None
    out = []
    for w in roots:
        p = params.position_of(w) if w else None
        if p is not None and p not in data:
            out.append(p)
    return out, None


def repair_3erasures_1unknown(
    params: CodeParams, received: Word, erasures: Sequence[int]
) -> DecodeOutcome:
    """Repair three known erasures plus one further error at an unknown position.

    This lies past the guaranteed radius, so the answer can be ambiguous:
    a unique surviving candidate is returned as corrected, several are
    returned as a candidate list with status UNCORRECTABLE.
    """
    word = as_symbols(params, received)
    erasures = _check_positions(params, erasures)
    if len(erasures) != 3:
        raise ValueError("exactly three erasures required")
    s = syndrome(params, word)
    e = solve_erasure_syndrome(params, s, erasures)
    if e is not None:
        return _corrected(word, e, Classification.ERASURE)
    k = params.k
    erased = set(erasures)
    data_pos, degenerate = _data_candidates(params, s, erasures)
    likelier = []
    if degenerate is not None:
        # every locator fits; a one-data, two-parity explanation (if any) is
        # the most likely reading, but it cannot be told apart from the rest
        _, j, l = degenerate
        alt = recover_data_for_two_parity(params, s, j, l)
        if alt is not None and _sound(params, s, alt, 3):
            likelier.append(alt)
    if data_pos is None:
        data_pos = [p for p in range(k) if p not in erased]
    positions = data_pos + [p for p in range(k, params.n) if p not in erased]
    cands = []
    for p in positions:
        sol = solve_erasure_syndrome(params, s, erasures + [p])
        if sol is not None and sol[p]:
            cands.append({q: v for q, v in sol.items() if v})
    cands = _sorted_candidates(params, cands)
    if likelier:
        return DecodeOutcome(
            Status.UNCORRECTABLE, candidates=likelier + cands, classification=Classification.LIST
        )
    if len(cands) == 1:
        out = _corrected(word, cands[0], Classification.ERASURE_ERROR)
        out.candidates = cands
        return out
    return DecodeOutcome(Status.UNCORRECTABLE, candidates=cands, classification=Classification.LIST)
