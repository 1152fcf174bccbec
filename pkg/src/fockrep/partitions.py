"""Young diagram and Maya diagram combinatorics.

Partitions are drawn in English notation: left-justified rows, row 1 on
top.  Boxes are addressed as (i, j) = (row, column), both 1-based.  A
charged partition (c, lambda) is the same data as a strictly decreasing
integer sequence i_1 > i_2 > ... with i_k = c - k + 1 eventually; the
two are related by

    lambda_k = i_k - c + k - 1.

All values are plain integers; everything here is immutable.
"""

from __future__ import annotations

import re
from functools import lru_cache
from typing import NamedTuple


class Box(NamedTuple):
    """A (row, column) position, 1-based; need not lie inside a diagram."""

    i: int
    j: int


class Partition:
    """A weakly decreasing sequence of positive integers (possibly empty)."""

    __slots__ = ("rows", "size", "_cols", "_hash")

    def __init__(self, rows=()):
        rows = tuple(int(r) for r in rows if r != 0)
        if any(r < 1 for r in rows):
            raise ValueError(f"partition rows must be positive: {rows}")
        if any(rows[i] < rows[i + 1] for i in range(len(rows) - 1)):
            raise ValueError(f"partition rows must weakly decrease: {rows}")
        self.rows = rows
        self.size = sum(rows)
        self._cols = None
        self._hash = hash(rows)

    def __len__(self):
        return len(self.rows)

    def __eq__(self, other):
        return isinstance(other, Partition) and self.rows == other.rows

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Partition({list(self.rows)})"

    def __str__(self):
        return "[" + ",".join(str(r) for r in self.rows) + "]"

    def row(self, i: int) -> int:
        """Length of row i (0 beyond the last row)."""
        return self.rows[i - 1] if 1 <= i <= len(self.rows) else 0

    @property
    def cols(self):
        """Column lengths (the conjugate partition), computed on demand."""
        if self._cols is None:
            rows = self.rows
            self._cols = tuple(
                sum(1 for r in rows if r >= j) for j in range(1, (rows[0] if rows else 0) + 1)
            )
        return self._cols

    def col(self, j: int) -> int:
        """Length of column j (0 for an empty column)."""
        cols = self.cols
        return cols[j - 1] if 1 <= j <= len(cols) else 0

    def contains(self, b: Box) -> bool:
        return 1 <= b[0] and 1 <= b[1] <= self.row(b[0])

    def boxes(self):
        for i, r in enumerate(self.rows, start=1):
            for j in range(1, r + 1):
                yield Box(i, j)

    def add_box(self, b: Box) -> "Partition":
        i, j = b
        rows = self.rows
        if j != self.row(i) + 1 or (i > 1 and self.row(i - 1) < j):
            raise ValueError(f"box {b} is not addable to {self}")
        if i <= len(rows):
            return Partition(rows[: i - 1] + (rows[i - 1] + 1,) + rows[i:])
        return Partition(rows + (1,))

    def remove_box(self, b: Box) -> "Partition":
        i, j = b
        rows = self.rows
        if j != self.row(i) or self.row(i + 1) >= j:
            raise ValueError(f"box {b} is not removable from {self}")
        return Partition(rows[: i - 1] + (rows[i - 1] - 1,) + rows[i:])

    def addable_boxes(self):
        """Corners where a box may be added, top row first."""
        rows = self.rows
        out = [Box(1, rows[0] + 1)] if rows else [Box(1, 1)]
        for i in range(2, len(rows) + 1):
            if rows[i - 1] < rows[i - 2]:
                out.append(Box(i, rows[i - 1] + 1))
        if rows:
            out.append(Box(len(rows) + 1, 1))
        return out

    def removable_boxes(self):
        """Corners where a box may be removed, top row first."""
        rows = self.rows
        out = []
        for i in range(1, len(rows) + 1):
            if self.row(i + 1) < rows[i - 1]:
                out.append(Box(i, rows[i - 1]))
        return out


EMPTY = Partition()


def arm(lam: Partition, b: Box) -> int:
    """Number of boxes strictly right of b in lam's row: lambda_i - j.

    b need not lie in lam; rows beyond the diagram count as length 0,
    so the value may be negative.
    """
    return lam.row(b[0]) - b[1]


def leg(mu: Partition, b: Box) -> int:
    """Number of boxes strictly below b in mu's column: mu'_j - i.

    An empty column has length 0, so for boxes outside the diagram the
    value may be negative.
    """
    return mu.col(b[1]) - b[0]


def relative_hook(lam: Partition, mu: Partition, b: Box) -> int:
    """arm(lam, b) + leg(mu, b) + 1; the ordinary hook when lam == mu."""
    return arm(lam, b) + leg(mu, b) + 1


def hook(lam: Partition, b: Box) -> int:
    return relative_hook(lam, lam, b)


def residue(b: Box) -> int:
    """The content j - i of the box."""
    return b[1] - b[0]


class ChargedPartition:
    """A charge c together with a partition shape.

    Equivalent to the strictly decreasing sequence i_k = lambda_k + c - k + 1;
    the energy is the box count of the shape.
    """

    __slots__ = ("charge", "shape", "_hash")

    def __init__(self, charge: int, shape: Partition):
        self.charge = charge
        self.shape = shape
        self._hash = hash((charge, shape.rows))

    @property
    def energy(self) -> int:
        return self.shape.size

    def __eq__(self, other):
        return (
            isinstance(other, ChargedPartition)
            and self.charge == other.charge
            and self.shape.rows == other.shape.rows
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"ChargedPartition({self.charge}, {self.shape!r})"

    def __str__(self):
        return f"{self.charge}:{self.shape}"

    def sort_key(self):
        return (self.charge, self.shape.rows)

    def monomial_indices(self, n: int):
        """First n entries i_k = lambda_k + c - k + 1 of the monomial."""
        rows, c = self.shape.rows, self.charge
        return [
            (rows[k - 1] if k <= len(rows) else 0) + c - k + 1 for k in range(1, n + 1)
        ]

    def index_position(self, i: int):
        """Position k with i_k == i, or None if i does not occur."""
        c, rows = self.charge, self.shape.rows
        d = i - c
        length = len(rows)
        if d <= -length:
            return 1 - d
        # i_k - c = rows[k-1] - (k-1) for the head rows, strictly decreasing
        for k in range(1, length + 1):
            key = rows[k - 1] - (k - 1)
            if key == d:
                return k
            if key < d:
                return None
        return None

    def contains_index(self, i: int) -> bool:
        return self.index_position(i) is not None

    def count_indices_above(self, i: int) -> int:
        """Number of monomial entries strictly greater than i."""
        c, rows = self.charge, self.shape.rows
        d = i - c
        length = len(rows)
        if d <= -length:
            return -d
        cnt = 0
        for k in range(length):
            if rows[k] - k > d:
                cnt += 1
            else:
                break
        return cnt

    def residue_counts(self, r: int):
        """Dimension vector: entry k counts boxes with residue == k - c (mod r)."""
        if r < 1:
            raise ValueError("modulus must be positive")
        v = [0] * r
        c = self.charge
        for i, row in enumerate(self.shape.rows, start=1):
            for j in range(1, row + 1):
                v[(j - i + c) % r] += 1
        return v


def addable_removable(cp: ChargedPartition, r: int, k: int):
    """Corners of cp.shape in residue class k, i.e. residue == k - c (mod r).

    Returns (addable, removable) as lists of boxes, top row first.
    """
    if not 0 <= k < r:
        raise ValueError(f"residue class {k} out of range for modulus {r}")
    cls = (k - cp.charge) % r
    lam = cp.shape
    addable = [b for b in lam.addable_boxes() if residue(b) % r == cls]
    removable = [b for b in lam.removable_boxes() if residue(b) % r == cls]
    return addable, removable


@lru_cache(maxsize=None)
def partitions_of(n: int):
    """All partitions of n, in descending lexicographic order of rows."""
    if n < 0:
        return ()
    return tuple(Partition(rows) for rows in _partition_rows(n, n))


@lru_cache(maxsize=None)
def _partition_rows(n: int, max_part: int):
    if n == 0:
        return ((),)
    out = []
    for first in range(min(n, max_part), 0, -1):
        for rest in _partition_rows(n - first, first):
            out.append((first,) + rest)
    return tuple(out)


_PARTITION_RE = re.compile(r"^\[\s*(?:(\d+)(?:\s*,\s*(\d+))*)?\s*\]$")


def parse_partition(text: str) -> Partition:
    """Parse a literal like "[3,1,1]" or "[]"."""
    text = text.strip()
    if not (text.startswith("[") and text.endswith("]")):
        raise ValueError(f"bad partition literal: {text!r}")
    inner = text[1:-1].strip()
    if not inner:
        return EMPTY
    try:
        rows = tuple(int(part) for part in inner.split(","))
    except ValueError:
        raise ValueError(f"bad partition literal: {text!r}") from None
    return Partition(rows)


def parse_charged(text: str) -> ChargedPartition:
    """Parse a literal like "0:[2,1]" or "-1:[]"."""
    head, sep, tail = text.partition(":")
    if not sep:
        raise ValueError(f"bad charged partition literal: {text!r}")
    try:
        charge = int(head.strip())
    except ValueError:
        raise ValueError(f"bad charge in {text!r}") from None
    return ChargedPartition(charge, parse_partition(tail))
