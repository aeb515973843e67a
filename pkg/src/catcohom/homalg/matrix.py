"""Dense exact matrices over int / rat / fp rings.

Row-major list-of-lists storage.  Products skip zero entries, which matters
because coboundary matrices are very sparse.  Column-vector convention
throughout: a matrix maps (cols)-vectors to (rows)-vectors.
"""

from __future__ import annotations

from .rings import Ring


class Mat:
    __slots__ = ("ring", "rows", "cols", "data")

    def __init__(self, ring: Ring, rows: int, cols: int, data=None, check=False):
        self.ring = ring
        self.rows = rows
        self.cols = cols
        if data is None:
            z = ring.zero()
            self.data = [[z] * cols for _ in range(rows)]
        else:
            if len(data) != rows or any(len(r) != cols for r in data):
                raise ValueError(f"matrix data is not {rows}x{cols}")
            if check:
                data = [[ring.canon(x) for x in row] for row in data]
            self.data = data

    @classmethod
    def zeros(cls, ring, rows, cols):
        return cls(ring, rows, cols)

    @classmethod
    def identity(cls, ring, n):
        m = cls(ring, n, n)
        one = ring.one()
        for i in range(n):
            m.data[i][i] = one
        return m

    @classmethod
    def from_rows(cls, ring, data):
        rows = len(data)
        cols = len(data[0]) if rows else 0
        return cls(ring, rows, cols, [list(r) for r in data], check=True)

    def copy(self):
        return Mat(self.ring, self.rows, self.cols, [row[:] for row in self.data])

    def __eq__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        return (self.ring == other.ring and self.rows == other.rows
                and self.cols == other.cols and self.data == other.data)

    def __repr__(self):
        return f"Mat({self.ring.tag()}, {self.rows}x{self.cols})"

    def is_zero(self) -> bool:
        return all(not x for row in self.data for x in row)

    def __add__(self, other):
        self._compat(other)
        add = self.ring.add
        data = [[add(a, b) for a, b in zip(ra, rb)] for ra, rb in zip(self.data, other.data)]
        return Mat(self.ring, self.rows, self.cols, data)

    def __sub__(self, other):
        self._compat(other)
        sub = self.ring.sub
        data = [[sub(a, b) for a, b in zip(ra, rb)] for ra, rb in zip(self.data, other.data)]
        return Mat(self.ring, self.rows, self.cols, data)

    def __neg__(self):
        neg = self.ring.neg
        return Mat(self.ring, self.rows, self.cols, [[neg(x) for x in row] for row in self.data])

    def scale(self, c):
        mul = self.ring.mul
        c = self.ring.canon(c)
        return Mat(self.ring, self.rows, self.cols, [[mul(c, x) for x in row] for row in self.data])

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        ring = self.ring
        out = Mat(ring, self.rows, other.cols)
        odata = out.data
        bdata = other.data
        fp = ring.p if ring.kind == "fp" else 0
        for i, arow in enumerate(self.data):
            orow = odata[i]
            for k, a in enumerate(arow):
                if not a:
                    continue
                brow = bdata[k]
                for j, b in enumerate(brow):
                    if b:
                        orow[j] += a * b
            if fp:
                odata[i] = [x % fp for x in orow]
        return out

    def mul_vec(self, v):
        if len(v) != self.cols:
            raise ValueError("vector length mismatch")
        ring = self.ring
        out = [ring.zero()] * self.rows
        for i, arow in enumerate(self.data):
            acc = ring.zero()
            for k, a in enumerate(arow):
                if a and v[k]:
                    acc += a * v[k]
            out[i] = acc % ring.p if ring.kind == "fp" else acc
        return out

    def transpose(self):
        data = [[self.data[i][j] for i in range(self.rows)] for j in range(self.cols)]
        return Mat(self.ring, self.cols, self.rows, data)

    def set_block(self, i0: int, j0: int, block: "Mat"):
        for i in range(block.rows):
            row = self.data[i0 + i]
            brow = block.data[i]
            for j in range(block.cols):
                row[j0 + j] = brow[j]

    def add_block(self, i0: int, j0: int, block: "Mat", sign=1):
        """Accumulate sign*block at offset (i0, j0); sign is +1 or -1."""
        ring = self.ring
        for i in range(block.rows):
            row = self.data[i0 + i]
            brow = block.data[i]
            for j in range(block.cols):
                x = brow[j]
                if x:
                    row[j0 + j] = ring.add(row[j0 + j], x if sign > 0 else ring.neg(x))

    def submatrix(self, r0, r1, c0, c1):
        data = [row[c0:c1] for row in self.data[r0:r1]]
        return Mat(self.ring, r1 - r0, c1 - c0, data)

    def column(self, j):
        return [row[j] for row in self.data]

    def columns(self):
        return [self.column(j) for j in range(self.cols)]

    def to_ring(self, ring: Ring) -> "Mat":
        """Re-read the entries in another ring (e.g. int -> rat or fp)."""
        data = [[ring.canon(x) for x in row] for row in self.data]
        return Mat(ring, self.rows, self.cols, data)

    def _compat(self, other):
        if self.rows != other.rows or self.cols != other.cols or self.ring != other.ring:
            raise ValueError("incompatible matrices")


def hstack_cols(ring: Ring, rows: int, col_lists) -> Mat:
    """Matrix whose columns are the given length-`rows` vectors."""
    cols = len(col_lists)
    m = Mat(ring, rows, cols)
    for j, col in enumerate(col_lists):
        if len(col) != rows:
            raise ValueError("column length mismatch")
        for i in range(rows):
            m.data[i][j] = col[i]
    return m
