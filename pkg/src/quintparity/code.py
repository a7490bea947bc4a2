"""The quintuple-parity systematic code: locators, parity matrix, encoding, syndromes.

Drive positions are 0-based throughout the library: data drives occupy
positions ``0 .. k-1`` and parity drive ``j`` (numbered 1..5, matching the
five parity rows) sits at position ``k + j - 1``.  Human-facing output uses
the labels produced by :func:`drive_label` (``D1 .. Dk``, ``P1 .. P5``).
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from itertools import combinations
from typing import Iterable, Optional, Sequence, Union

from .galois import CountingField, FieldTables, cubic_roots_of_unity

NPARITY = 5


def k_max(f: FieldTables) -> int:
    """Largest supported data-drive count: nonzero elements minus one excluded cube root."""
    return f.order - len(cubic_roots_of_unity(f)) // 2


def parity_column(f: FieldTables, rho: int) -> tuple[int, int, int, int, int]:
    """(1, rho, rho^2, rho^3, rho (rho + 1)) -- the parity-matrix column for locator rho."""
    rho2 = f.mul(rho, rho)
    return (1, rho, rho2, f.mul(rho2, rho), f.add(rho2, rho))


@dataclass(frozen=True)
class CodeParams:
    field: FieldTables
    k: int
    alpha: tuple[int, ...]
    excluded: tuple[int, ...]
    # rows[j][i] = p_{j+1, i}
    rows: tuple[tuple[int, ...], ...] = field(repr=False)
    index_of: dict = field(repr=False, compare=False)

    @property
    def n(self) -> int:
        return self.k + NPARITY

    def parity_position(self, j: int) -> int:
        return self.k + j - 1

    def position_of(self, rho: int) -> Optional[int]:
        """Data position whose locator is ``rho``, or None."""
        return self.field.lookup(self.index_of, rho)

    def column(self, pos: int) -> tuple[int, ...]:
        """Column ``pos`` of the parity-check matrix H = [P | I]."""
        if pos < self.k:
            return tuple(r[pos] for r in self.rows)
        return tuple(int(j == pos - self.k) for j in range(NPARITY))

    def instrumented(self) -> "CodeParams":
        """A copy whose field counts operations (see :class:`CountingField`)."""
        return replace(self, field=CountingField(self.field))


def build_code(
    f: FieldTables, k: int, alpha: Optional[Sequence[int]] = None
) -> CodeParams:
    """Construct the code for ``k`` data drives.

    By default locators are successive powers D^0, D^1, ... of the generator,
    skipping the smaller (as an integer) nontrivial cube root of unity when the
    field has one.  A custom ``alpha`` must consist of distinct nonzero elements
    and may contain at most one of the two cube roots.
    """
    roots = cubic_roots_of_unity(f)
    kmax = k_max(f)
    if not 1 <= k <= kmax:
        raise ValueError(f"k={k} out of range 1..{kmax} for GF(2^{f.m})")
    if alpha is None:
        excluded = roots[:1]
        seq = []
        for i in range(f.order):
            a = f.exp[i]
            if a in excluded:
                continue
            seq.append(a)
            if len(seq) == k:
                break
        alpha = tuple(seq)
    else:
        alpha = tuple(int(a) for a in alpha)
        if len(alpha) != k:
            raise ValueError(f"expected {k} locators, got {len(alpha)}")
        if len(set(alpha)) != k:
            raise ValueError("locators must be distinct")
        if any(not 0 < a < f.size for a in alpha):
            raise ValueError("locators must be nonzero field elements")
        present = [r for r in roots if r in alpha]
        if len(present) > 1:
            raise ValueError("at most one nontrivial cube root of unity may be used as a locator")
        excluded = tuple(r for r in roots if r not in alpha)[:1]
    cols = [parity_column(f, a) for a in alpha]
    rows = tuple(tuple(c[j] for c in cols) for j in range(NPARITY))
    return CodeParams(
        field=f,
        k=k,
        alpha=alpha,
        excluded=excluded,
        rows=rows,
        index_of={a: i for i, a in enumerate(alpha)},
    )


def drive_label(k: int, pos: int) -> str:
    return f"D{pos + 1}" if pos < k else f"P{pos - k + 1}"


@dataclass(frozen=True)
class Stripe:
    data: tuple[int, ...]
    parity: tuple[int, ...]

    @property
    def symbols(self) -> tuple[int, ...]:
        return self.data + self.parity

    @classmethod
    def from_symbols(cls, k: int, symbols: Sequence[int]) -> "Stripe":
        if len(symbols) != k + NPARITY:
            raise ValueError(f"expected {k + NPARITY} symbols, got {len(symbols)}")
        return cls(tuple(symbols[:k]), tuple(symbols[k:]))


Word = Union[Stripe, Sequence[int]]


def as_symbols(params: CodeParams, received: Word) -> tuple[int, ...]:
    if isinstance(received, Stripe):
        word = received.symbols
    else:
        word = tuple(received)
    if len(word) != params.n:
        raise ValueError(f"expected {params.n} symbols, got {len(word)}")
    return word


def encode(params: CodeParams, data: Sequence[int]) -> Stripe:
    if len(data) != params.k:
        raise ValueError(f"expected {params.k} data symbols, got {len(data)}")
    f = params.field
    parity = []
    for row in params.rows:
        acc = 0
        for p, d in zip(row, data):
            acc = f.add(acc, f.mul(p, d))
        parity.append(acc)
    return Stripe(tuple(data), tuple(parity))


def syndrome(params: CodeParams, received: Word) -> tuple[int, int, int, int, int]:
    """s = H r.  Costs exactly 5k multiplications and 5k additions."""
    word = as_symbols(params, received)
    f = params.field
    k = params.k
    data = word[:k]
    out = []
    for j, row in enumerate(params.rows):
        acc = word[k + j]
        for p, d in zip(row, data):
            acc = f.add(acc, f.mul(p, d))
        out.append(acc)
    return tuple(out)


# error vectors are sparse maps position -> nonzero value
ErrorVector = dict


def error_syndrome(params: CodeParams, error: ErrorVector) -> tuple[int, ...]:
    """H e for a sparse error vector."""
    f = params.field
    s = [0] * NPARITY
    for pos, val in error.items():
        col = params.column(pos)
        for j in range(NPARITY):
            s[j] ^= f.mul(col[j], val)
    return tuple(s)


def apply_error(word: Sequence[int], error: ErrorVector) -> tuple[int, ...]:
    out = list(word)
    for pos, val in error.items():
        out[pos] ^= val
    return tuple(out)


def canonical_error(error: ErrorVector) -> tuple[tuple[int, int], ...]:
    return tuple(sorted((p, v) for p, v in error.items() if v))


# -- linear algebra over the field ------------------------------------------


def parity_submatrix(
    params: CodeParams, rows: Iterable[int], cols: Iterable[int]
) -> list[list[int]]:
    """Rows are parity-row numbers 1..5; cols are 0-based data positions."""
    return [[params.rows[j - 1][i] for i in cols] for j in rows]


def rank(f: FieldTables, matrix: Sequence[Sequence[int]]) -> int:
    """Rank by Gaussian elimination over the field."""
    m = [list(r) for r in matrix]
    if not m:
        return 0
    nrows, ncols = len(m), len(m[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = f.inv(m[r][c])
        m[r] = [f.mul(inv, x) for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c]:
                factor = m[i][c]
                m[i] = [f.add(a, f.mul(factor, b)) for a, b in zip(m[i], m[r])]
        r += 1
        if r == nrows:
            break
    return r


def solve_square(
    f: FieldTables, matrix: Sequence[Sequence[int]], rhs: Sequence[int]
) -> Optional[list[int]]:
    """Solve A x = b for square A; None when A is singular."""
    n = len(matrix)
    m = [list(row) + [b] for row, b in zip(matrix, rhs)]
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c]), None)
        if piv is None:
            return None
        m[c], m[piv] = m[piv], m[c]
        inv = f.inv(m[c][c])
        m[c] = [f.mul(inv, x) for x in m[c]]
        for i in range(n):
            if i != c and m[i][c]:
                factor = m[i][c]
                m[i] = [f.add(a, f.mul(factor, b)) for a, b in zip(m[i], m[c])]
    return [m[i][n] for i in range(n)]


def invert_square(f: FieldTables, matrix: Sequence[Sequence[int]]) -> Optional[list[list[int]]]:
    n = len(matrix)
    cols = []
    for j in range(n):
        e = [int(i == j) for i in range(n)]
        x = solve_square(f, matrix, e)
        if x is None:
            return None
        cols.append(x)
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def select_rows(
    params: CodeParams, data_positions: Sequence[int], blocked_rows: Iterable[int] = ()
) -> Optional[tuple[int, ...]]:
    """Pick parity rows (1..5) giving a nonsingular square system for the data positions.

    Row sets are tried in lexicographic order, so {1, 2, 3, 4} (the Vandermonde
    rows) wins whenever it is available.
    """
    t = len(data_positions)
    if t == 0:
        return ()
    avail = [j for j in range(1, NPARITY + 1) if j not in set(blocked_rows)]
    for rows in combinations(avail, t):
        if rank(params.field, parity_submatrix(params, rows, data_positions)) == t:
            return rows
    return None
