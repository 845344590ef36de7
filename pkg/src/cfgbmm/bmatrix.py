"""Square Boolean matrices and reference multiplication routines.

Rows are packed into Python ints: bit ``j - 1`` of ``rows[i - 1]`` holds
entry (i, j).  All public indexing is 1-based.

File format: first line is the dimension m, followed by m lines of exactly m
characters from {0, 1}.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Iterable, Sequence


class DimensionError(ValueError):
    """Operands have incompatible dimensions."""


class MatrixFormatError(ValueError):
    """Matrix text could not be parsed."""


@dataclass(frozen=True)
class BooleanMatrix:
    m: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if self.m < 1 or len(self.rows) != self.m:
            raise DimensionError(f"need m >= 1 and m rows, got m={self.m}")
        limit = 1 << self.m
        if any(r < 0 or r >= limit for r in self.rows):
            raise ValueError("row has bits outside the matrix")

    @classmethod
    def from_lists(cls, entries: Sequence[Sequence[int]]) -> "BooleanMatrix":
        m = len(entries)
        rows = []
        for row in entries:
            if len(row) != m:
                raise DimensionError("matrix is not square")
            packed = 0
            for j, v in enumerate(row):
                if v not in (0, 1, True, False):
                    raise ValueError(f"entry {v!r} is not Boolean")
                if v:
                    packed |= 1 << j
            rows.append(packed)
        return cls(m, tuple(rows))

    @classmethod
    def zeros(cls, m: int) -> "BooleanMatrix":
        return cls(m, (0,) * m)

    @classmethod
    def ones(cls, m: int) -> "BooleanMatrix":
        return cls(m, ((1 << m) - 1,) * m)

    @classmethod
    def identity(cls, m: int) -> "BooleanMatrix":
        return cls(m, tuple(1 << i for i in range(m)))

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        if not (1 <= i <= self.m and 1 <= j <= self.m):
            raise IndexError(f"({i}, {j}) outside a {self.m}x{self.m} matrix")
        return (self.rows[i - 1] >> (j - 1)) & 1

    def to_lists(self) -> list[list[int]]:
        return [[(r >> j) & 1 for j in range(self.m)] for r in self.rows]

    def nonzero(self) -> Iterable[tuple[int, int]]:
        """Yield the 1-based (i, j) of every nonzero entry in row-major order."""
        for i, r in enumerate(self.rows, 1):
            j = 1
            while r:
                if r & 1:
                    yield i, j
                r >>= 1
                j += 1

    def nnz(self) -> int:
        return sum(bin(r).count("1") for r in self.rows)

    def is_zero(self) -> bool:
        return not any(self.rows)

    def __str__(self) -> str:
        return format_matrix(self)


def matrices_equal(a: BooleanMatrix, b: BooleanMatrix) -> bool:
    return a.m == b.m and a.rows == b.rows


def _check_pair(a: BooleanMatrix, b: BooleanMatrix) -> None:
    if a.m != b.m:
        raise DimensionError(f"cannot multiply {a.m}x{a.m} by {b.m}x{b.m}")


def naive_bmm(a: BooleanMatrix, b: BooleanMatrix) -> BooleanMatrix:
    """c_ij = OR_k (a_ik AND b_kj), with the j loop done word-parallel."""
    _check_pair(a, b)
    out = []
    for ra in a.rows:
        acc = 0
        k = 0
        while ra:
            if ra & 1:
                acc |= b.rows[k]
            ra >>= 1
            k += 1
        out.append(acc)
    return BooleanMatrix(a.m, tuple(out))


def four_russians_bmm(a: BooleanMatrix, b: BooleanMatrix) -> BooleanMatrix:
    """Method of Four Russians.

    The k axis is cut into groups of t = ceil(log2 m) columns of ``a``.  For
    each group a table holds the OR of every subset of the matching rows of
    ``b``; each output row is then one table lookup per group.
    """
    _check_pair(a, b)
    m = a.m
    t = max(1, math.ceil(math.log2(m))) if m > 1 else 1
    out = [0] * m
    for lo in range(0, m, t):
        width = min(t, m - lo)
        group = b.rows[lo:lo + width]
        table = [0] * (1 << width)
        for mask in range(1, 1 << width):
            low = mask & -mask
            table[mask] = table[mask ^ low] | group[low.bit_length() - 1]
        sel = (1 << width) - 1
        for i, ra in enumerate(a.rows):
            key = (ra >> lo) & sel
            if key:
                out[i] |= table[key]
    return BooleanMatrix(m, tuple(out))


def random_matrix(m: int, density: float, seed: int) -> BooleanMatrix:
    """Each entry is 1 independently with probability ``density``."""
    if not 0.0 <= density <= 1.0:
        raise ValueError(f"density must lie in [0, 1], got {density}")
    rng = random.Random(seed)
    rows = []
    for _ in range(m):
        packed = 0
        for j in range(m):
            if rng.random() < density:
                packed |= 1 << j
        rows.append(packed)
    return BooleanMatrix(m, tuple(rows))


def format_matrix(a: BooleanMatrix) -> str:
    lines = [str(a.m)]
    lines.extend("".join("1" if (r >> j) & 1 else "0" for j in range(a.m)) for r in a.rows)
    return "\n".join(lines) + "\n"


def parse_matrix(text: str) -> BooleanMatrix:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise MatrixFormatError("empty matrix file")
    try:
        m = int(lines[0].strip())
    except ValueError:
        raise MatrixFormatError(f"first line must be the dimension, got {lines[0]!r}") from None
    if m < 1:
        raise MatrixFormatError(f"dimension must be >= 1, got {m}")
    body = lines[1:]
    if len(body) != m:
        raise MatrixFormatError(f"expected {m} rows, found {len(body)}")
    rows = []
    for lineno, line in enumerate(body, 2):
        line = line.rstrip("\r")
        if len(line) != m or set(line) - {"0", "1"}:
            raise MatrixFormatError(f"line {lineno}: need exactly {m} characters from {{0,1}}")
        rows.append(sum(1 << j for j, ch in enumerate(line) if ch == "1"))
    return BooleanMatrix(m, tuple(rows))


def read_matrix(path) -> BooleanMatrix:
    with open(path, encoding="utf-8") as fh:
        return parse_matrix(fh.read())


def write_matrix(path, a: BooleanMatrix) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(format_matrix(a))
