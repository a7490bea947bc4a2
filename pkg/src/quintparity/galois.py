"""Arithmetic in GF(2^m) plus a table-driven solver for quadratics.

Elements are plain integers whose bits are the coordinates over the
polynomial basis 1, D, D^2, ..., D^(m-1), where D is a root of the chosen
primitive polynomial.  Addition is XOR.

In characteristic two the usual quadratic formula is useless.  Instead,
``a x^2 + b x + c = 0`` is reduced to ``y (y + 1) = d``.  The map
``y -> y^2 + y`` is GF(2)-linear with kernel {0, 1}, so exactly half of
all ``d`` admit a root.  Whether a given ``d`` does is decided by a
single parity check ``z . d = 0``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

SUPPORTED_WIDTHS = (3, 4, 8, 16)  # widths with a default polynomial
MAX_WIDTH = 16

DEFAULT_POLYS = {
    3: 0b1011,  # x^3 + x + 1
    4: 0b10011,  # x^4 + x + 1
    8: 0x11D,  # x^8 + x^4 + x^3 + x^2 + 1
    16: 0x1100B,  # x^16 + x^12 + x^3 + x + 1
}


@dataclass(frozen=True)
class FieldSpec:
    m: int
    poly: int

    @classmethod
    def default(cls, m: int) -> "FieldSpec":
        if m not in DEFAULT_POLYS:
            raise ValueError(f"unsupported field width m={m}; choose one of {SUPPORTED_WIDTHS}")
        return cls(m, DEFAULT_POLYS[m])


def _gf2_nullspace(rows: list[int], ncols: int) -> list[int]:
    """Basis of {x : row . x = 0 for every row}; rows and x are bitmasks."""
    pivots: dict[int, int] = {}  # pivot column -> reduced row
    for r in rows:
        for col, prow in pivots.items():
            if r >> col & 1:
                r ^= prow
        if r == 0:
            continue
        col = r.bit_length() - 1
        for c in list(pivots):
            if pivots[c] >> col & 1:
                pivots[c] ^= r
        pivots[col] = r
    basis = []
    for free in range(ncols):
        if free in pivots:
            continue
        x = 1 << free
        for col, prow in pivots.items():
            if prow >> free & 1:
                x |= 1 << col
        basis.append(x)
    return basis


def gf2_rank(columns: list[int]) -> int:
    """Rank over GF(2) of a set of bitmask vectors."""
    basis: list[int] = []
    for v in columns:
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis.append(v)
    return len(basis)


class FieldTables:
    """A concrete GF(2^m); immutable once built.  Use :func:`make_field`."""

    def __init__(self, spec: FieldSpec):
        m, poly = spec.m, spec.poly
        if not 2 <= m <= MAX_WIDTH:
            raise ValueError(f"field width m={m} outside 2..{MAX_WIDTH}")
        if poly.bit_length() - 1 != m:
            raise ValueError(f"polynomial {poly:#x} does not have degree {m}")
        self.spec = spec
        self.m = m
        self.size = q = 1 << m
        self.order = q - 1

        exp = [0] * (2 * self.order)
        log = [0] * q
        x = 1
        for i in range(self.order):
            if i and x == 1:
                raise ValueError(f"polynomial {poly:#x} is not primitive over GF(2)")
            exp[i] = x
            log[x] = i
            x <<= 1
            if x & q:
                x ^= poly
        if x != 1:
            raise ValueError(f"polynomial {poly:#x} is not primitive over GF(2)")
        for i in range(self.order, 2 * self.order):
            exp[i] = exp[i - self.order]
        self.exp = exp
        self.log = log

        sqrt = [0] * q
        for a in range(q):
            sqrt[self._mul(a, a)] = a
        self.sqrt_table = sqrt

        # canonical root of y(y+1)=d has bit 0 clear; the other root is y0 ^ 1
        unit_quad: list[Optional[int]] = [None] * q
        for y in range(0, q, 2):
            unit_quad[self._mul(y, y) ^ y] = y
        self.unit_quad = unit_quad

        frob = [self._mul(1 << j, 1 << j) for j in range(m)]
        self.frobenius_columns = tuple(frob)
        # rows of (J+I)^T are the columns of J+I
        jpi_cols = [frob[j] ^ (1 << j) for j in range(m)]
        kernel = _gf2_nullspace(jpi_cols, m)
        if len(kernel) != 1:
            raise AssertionError("J+I must have a one-dimensional left kernel")
        self.z = kernel[0]

    def __repr__(self) -> str:
        return f"FieldTables(m={self.m}, poly={self.spec.poly:#x})"

    # raw multiply used while tables are being built
    def _mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self.exp[self.log[a] + self.log[b]]

    def add(self, a: int, b: int) -> int:
        return a ^ b

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self.exp[self.log[a] + self.log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in GF(2^m)")
        return self.exp[self.order - self.log[a]]

    def div(self, a: int, b: int) -> int:
        if b == 0:
            raise ZeroDivisionError("division by zero in GF(2^m)")
        if a == 0:
            return 0
        return self.exp[self.log[a] - self.log[b] + self.order]

    def pow(self, a: int, n: int) -> int:
        if a == 0:
            if n < 0:
                raise ZeroDivisionError("zero to a negative power")
            return 1 if n == 0 else 0
        return self.exp[(self.log[a] * n) % self.order]

    def sqrt(self, a: int) -> int:
        return self.sqrt_table[a]

    def lookup(self, table: dict, key):
        """Dictionary lookup; a separate hook so instrumented fields can count it."""
        return table.get(key)

    def is_unit_quadratic_solvable(self, d: int) -> bool:
        return bin(self.z & d).count("1") % 2 == 0

    def solve_unit_quadratic(self, d: int) -> Optional[tuple[int, int]]:
        """Roots of y(y+1) = d as (y0, y0 + 1), or None when there are none."""
        y0 = self.unit_quad[d]
        if y0 is None:
            return None
        return (y0, y0 ^ 1)

    def solve_quadratic(self, a: int, b: int, c: int) -> tuple[int, ...]:
        """All roots of a x^2 + b x + c = 0 (zero, one or two of them)."""
        if a == 0:
            raise ValueError("leading coefficient must be nonzero")
        b = self.div(b, a)
        c = self.div(c, a)
        if b == 0:
            return (self.sqrt(c),)
        roots = self.solve_unit_quadratic(self.div(c, self.mul(b, b)))
        if roots is None:
            return ()
        r0 = self.mul(b, roots[0])
        return (r0, self.add(r0, b))

    def elements(self) -> range:
        return range(self.size)


def make_field(spec: FieldSpec | int | None = None) -> FieldTables:
    """Build the tables for ``spec``; an int is taken as the width with its default polynomial."""
    if spec is None:
        spec = FieldSpec.default(8)
    elif isinstance(spec, int):
        spec = FieldSpec.default(spec)
    return FieldTables(spec)


def frobenius_matrix(f: FieldTables) -> list[list[int]]:
    """The m x m GF(2) matrix of squaring; column j holds the coordinates of D^(2j)."""
    return [[(f.frobenius_columns[j] >> i) & 1 for j in range(f.m)] for i in range(f.m)]


def apply_gf2_matrix(matrix: list[list[int]], a: int) -> int:
    out = 0
    for i, row in enumerate(matrix):
        bit = 0
        for j, entry in enumerate(row):
            bit ^= entry & (a >> j)
        out |= (bit & 1) << i
    return out


def cubic_roots_of_unity(f: FieldTables) -> tuple[int, ...]:
    """The roots of z^2 + z + 1, i.e. the cube roots of unity other than 1, ascending."""
    if f.order % 3:
        return ()
    w = f.exp[f.order // 3]
    return tuple(sorted((w, f.mul(w, w))))


@dataclass
class OpCounts:
    add: int = 0
    mul: int = 0
    div: int = 0
    lookup: int = 0

    def total(self) -> int:
        return self.add + self.mul + self.div + self.lookup

    def as_dict(self) -> dict[str, int]:
        return {"add": self.add, "mul": self.mul, "div": self.div, "lookup": self.lookup}


class CountingField(FieldTables):
    """A view of an existing field that tallies every operation it performs.

    Square roots and unit-quadratic roots are counted as table lookups, as are
    inversions and dictionary lookups.  One counter per instance, so give each
    decode its own instance.
    """

    def __init__(self, base: FieldTables):  # noqa: super().__init__ deliberately skipped
        self.__dict__.update(base.__dict__)
        self.counts = OpCounts()

    def add(self, a, b):
        self.counts.add += 1
        return a ^ b

    def mul(self, a, b):
        self.counts.mul += 1
        return FieldTables.mul(self, a, b)

    def div(self, a, b):
        self.counts.div += 1
        return FieldTables.div(self, a, b)

    def inv(self, a):
        self.counts.lookup += 1
        return FieldTables.inv(self, a)

    def pow(self, a, n):
        self.counts.mul += 1
        return FieldTables.pow(self, a, n)

    def sqrt(self, a):
        self.counts.lookup += 1
        return self.sqrt_table[a]

    def lookup(self, table, key):
        self.counts.lookup += 1
        return table.get(key)

    def solve_unit_quadratic(self, d):
        self.counts.lookup += 1
        y0 = self.unit_quad[d]
        if y0 is None:
            return None
        return (y0, y0 ^ 1)

    def reset(self) -> OpCounts:
        snapshot, self.counts = self.counts, OpCounts()
        return snapshot
