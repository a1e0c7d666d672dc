"""Bit-packed GF(2) vectors and matrices.

Rows are stored as Python ints used as bitsets, so XORing one row into
another is a single big-int operation regardless of width.  Bit ``c`` of
row ``r`` is ``(data[r] >> c) & 1``.  Column operations walk the rows and
touch one bit each, which keeps them O(rows).
"""

from __future__ import annotations


class BitVector:
    """Fixed-length vector over GF(2), packed into one int."""

    __slots__ = ("n", "bits")

    def __init__(self, n: int, bits: int = 0):
        if n < 0:
            raise ValueError("length must be non-negative")
        mask = (1 << n) - 1
        if bits & ~mask:
            raise ValueError("bits outside vector range")
        self.n = n
        self.bits = bits

    @classmethod
    def from_bits(cls, values) -> "BitVector":
        values = list(values)
        bits = 0
        for i, v in enumerate(values):
            if v not in (0, 1):
                raise ValueError("entries must be 0 or 1")
            bits |= v << i
        return cls(len(values), bits)

    def get(self, i: int) -> int:
        self._check(i)
        return (self.bits >> i) & 1

    def set(self, i: int, value: int) -> None:
        self._check(i)
        if value not in (0, 1):
            raise ValueError("entries must be 0 or 1")
        if value:
            self.bits |= 1 << i
        else:
            self.bits &= ~(1 << i)

    def popcount(self) -> int:
        return self.bits.bit_count()

    def to_list(self) -> list[int]:
        return [(self.bits >> i) & 1 for i in range(self.n)]

    def copy(self) -> "BitVector":
        return BitVector(self.n, self.bits)

    def _check(self, i: int) -> None:
        if not 0 <= i < self.n:
            raise IndexError(f"index {i} out of range for length {self.n}")

    def __len__(self) -> int:
        return self.n

    def __eq__(self, other) -> bool:
        if not isinstance(other, BitVector):
            return NotImplemented
        return self.n == other.n and self.bits == other.bits

    def __hash__(self):
        return hash((self.n, self.bits))

    def __repr__(self) -> str:
        return f"BitVector({''.join(str(b) for b in self.to_list())})"


class BitMatrix:
    """Dense GF(2) matrix with int-bitset rows.

    ``xor_row_into`` is the workhorse: one whole-row XOR per call.  The
    column updates (``swap_columns``, ``xor_col_into``) exist for callers
    that maintain a transposed copy of some logical matrix and need the
    dual operations on it.
    """

    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows: int, cols: int, data: list[int] | None = None):
        if rows < 0 or cols < 0:
            raise ValueError("shape must be non-negative")
        self.rows = rows
        self.cols = cols
        if data is None:
            self.data = [0] * rows
        else:
            if len(data) != rows:
                raise ValueError("data length does not match row count")
            mask = (1 << cols) - 1
            for r, word in enumerate(data):
                if word & ~mask:
                    raise ValueError(f"row {r} has bits outside column range")
            self.data = list(data)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "BitMatrix":
        return cls(rows, cols)

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls(n, n, [1 << i for i in range(n)])

    @classmethod
    def from_rows(cls, rows) -> "BitMatrix":
        rows = [list(r) for r in rows]
        if not rows:
            return cls(0, 0)
        cols = len(rows[0])
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged rows")
        data = []
        for r in rows:
            word = 0
            for c, v in enumerate(r):
                if v not in (0, 1):
                    raise ValueError("entries must be 0 or 1")
                word |= v << c
            data.append(word)
        return cls(len(rows), cols, data)

    def get(self, r: int, c: int) -> int:
        self._check_row(r)
        self._check_col(c)
        return (self.data[r] >> c) & 1

    def set(self, r: int, c: int, value: int) -> None:
        self._check_row(r)
        self._check_col(c)
        if value not in (0, 1):
            raise ValueError("entries must be 0 or 1")
        if value:
            self.data[r] |= 1 << c
        else:
            self.data[r] &= ~(1 << c)

    def row(self, r: int) -> int:
        """Row ``r`` as an int bitset (bit c = entry at column c)."""
        self._check_row(r)
        return self.data[r]

    def column(self, c: int) -> int:
        """Column ``c`` as an int bitset (bit r = entry at row r)."""
        self._check_col(c)
        word = 0
        for r in range(self.rows):
            word |= ((self.data[r] >> c) & 1) << r
        return word

    def xor_row_into(self, src: int, dst: int) -> None:
        """Add row ``src`` into row ``dst`` over GF(2)."""
        self._check_row(src)
        self._check_row(dst)
        if src == dst:
            raise ValueError("src and dst rows must differ")
        self.data[dst] ^= self.data[src]

    def swap_rows(self, a: int, b: int) -> None:
        self._check_row(a)
        self._check_row(b)
        if a == b:
            raise ValueError("rows to swap must differ")
        self.data[a], self.data[b] = self.data[b], self.data[a]

    def swap_columns(self, a: int, b: int) -> None:
        self._check_col(a)
        self._check_col(b)
        if a == b:
            raise ValueError("columns to swap must differ")
        for r in range(self.rows):
            word = self.data[r]
            x = ((word >> a) ^ (word >> b)) & 1
            if x:
                self.data[r] = word ^ ((1 << a) | (1 << b))

    def xor_col_into(self, src: int, dst: int) -> None:
        """Add column ``src`` into column ``dst`` over GF(2)."""
        self._check_col(src)
        self._check_col(dst)
        if src == dst:
            raise ValueError("src and dst columns must differ")
        for r in range(self.rows):
            if (self.data[r] >> src) & 1:
                self.data[r] ^= 1 << dst

    def transposed(self) -> "BitMatrix":
        out = [0] * self.cols
        for r in range(self.rows):
            word = self.data[r]
            while word:
                c = (word & -word).bit_length() - 1
                out[c] |= 1 << r
                word &= word - 1
        return BitMatrix(self.cols, self.rows, out)

    def to_lists(self) -> list[list[int]]:
        return [[(w >> c) & 1 for c in range(self.cols)] for w in self.data]

    def copy(self) -> "BitMatrix":
        return BitMatrix(self.rows, self.cols, self.data)

    def _check_row(self, r: int) -> None:
        if not 0 <= r < self.rows:
            raise IndexError(f"row {r} out of range for {self.rows} rows")

    def _check_col(self, c: int) -> None:
        if not 0 <= c < self.cols:
            raise IndexError(f"column {c} out of range for {self.cols} columns")

    def __eq__(self, other) -> bool:
        if not isinstance(other, BitMatrix):
            return NotImplemented
        return (
            self.rows == other.rows
            and self.cols == other.cols
            and self.data == other.data
        )

    def __hash__(self):
        return hash((self.rows, self.cols, tuple(self.data)))

    def __repr__(self) -> str:
        body = "\n".join(
            "".join(str((w >> c) & 1) for c in range(self.cols)) for w in self.data
        )
        return f"BitMatrix {self.rows}x{self.cols}\n{body}"
