"""Clifford tableaus over {H, S, CNOT}.

Layout: a tableau on ``n`` qubits is a 2n x 2n binary table plus 2n sign
bits.  Rows 0..n-1 are destabilizers (the images U X_i U^dag), rows
n..2n-1 are stabilizers (U Z_i U^dag).  Columns 0..n-1 hold X bits,
columns n..2n-1 hold Z bits.  A row with bit masks (x, z) and sign bit s
represents the Pauli ``i^e prod_j X_j^{x_j} Z_j^{z_j}`` with
``e = 2s + popcount(x & z) mod 4``, so (x=1, z=1, s=0) on one qubit is +Y.

Appending a gate (circuit runs first, gate comes after) updates columns;
prepending updates rows.  Internally the table is kept transposed (stored
row q = logical column q), which turns every append into a handful of
whole-int XOR/AND operations.  The ``table`` property materializes the
logical row-major view.

Text serialization: a header line ``n=<int>`` followed by 2n lines of 2n
characters in {0,1} (X block then Z block) plus one sign character.
"""

from __future__ import annotations

from .bitmatrix import BitMatrix, BitVector
from .circuit import Circuit, Gate


def _pauli_mul(e1: int, x1: int, z1: int, e2: int, x2: int, z2: int):
    """Product of two Paulis in canonical form i^e X^x Z^z.

    Moving each X factor of the second operand past the Z factors of the
    first contributes (-1) per crossing, hence the 2*popcount term.
    """
    e = (e1 + e2 + 2 * (z1 & x2).bit_count()) & 3
    return e, x1 ^ x2, z1 ^ z2


class CliffordTableau:
    """Symplectic tableau with signs for an n-qubit Clifford unitary."""

    __slots__ = ("n", "_cols", "_signs")

    def __init__(self, n: int, _cols: BitMatrix | None = None, _signs: BitVector | None = None):
        if n < 0:
            raise ValueError("qubit count must be non-negative")
        self.n = n
        self._cols = BitMatrix.identity(2 * n) if _cols is None else _cols
        self._signs = BitVector(2 * n) if _signs is None else _signs

    # -- constructors -------------------------------------------------

    @classmethod
    def identity(cls, n: int) -> "CliffordTableau":
        return cls(n)

    @classmethod
    def from_circuit(cls, circuit: Circuit) -> "CliffordTableau":
        t = cls(circuit.n)
        for g in circuit:
            t.append_gate(g)
        return t

    @classmethod
    def _from_logical_rows(cls, n: int, rows: list[tuple[int, int]], signs: list[int]) -> "CliffordTableau":
        logical = BitMatrix(2 * n, 2 * n, [x | (z << n) for x, z in rows])
        return cls(n, logical.transposed(), BitVector.from_bits(signs))

    # -- views ---------------------------------------------------------

    @property
    def table(self) -> BitMatrix:
        """The logical 2n x 2n table, rows = destabilizers then stabilizers."""
        return self._cols.transposed()

    @property
    def signs(self) -> BitVector:
        return self._signs.copy()

    def x_bit(self, r: int, q: int) -> int:
        """X bit of row r at qubit q."""
        return (self._cols.data[q] >> r) & 1

    def z_bit(self, r: int, q: int) -> int:
        """Z bit of row r at qubit q."""
        return (self._cols.data[self.n + q] >> r) & 1

    def sign_bit(self, r: int) -> int:
        return self._signs.get(r)

    def row_masks(self, r: int) -> tuple[int, int]:
        """Row r as (x_mask, z_mask) ints over qubit positions."""
        if not 0 <= r < 2 * self.n:
            raise IndexError(f"row {r} out of range")
        cols = self._cols.data
        n = self.n
        x = z = 0
        for q in range(n):
            x |= ((cols[q] >> r) & 1) << q
            z |= ((cols[n + q] >> r) & 1) << q
        return x, z

    def row_pauli(self, r: int) -> str:
        """Row r as a human-readable signed Pauli string, e.g. '+XZY'."""
        x, z, s = *self.row_masks(r), self.sign_bit(r)
        chars = []
        for q in range(self.n):
            xb, zb = (x >> q) & 1, (z >> q) & 1
            chars.append("IXZY"[xb + 2 * zb])
        return ("-" if s else "+") + "".join(chars)

    # -- gate application (append: gate runs after the tableau) --------

    def append_gate(self, gate: Gate) -> None:
        if any(q >= self.n for q in gate.qubits):
            raise IndexError(f"gate {gate} out of range for {self.n} qubits")
        if gate.kind == "h":
            self.append_h(gate.qubits[0])
        elif gate.kind == "s":
            self.append_s(gate.qubits[0])
        else:
            self.append_cx(gate.qubits[0], gate.qubits[1])

    def append_h(self, q: int) -> None:
        self._check_qubit(q)
        cols = self._cols.data
        n = self.n
        xq, zq = cols[q], cols[n + q]
        self._signs.bits ^= xq & zq
        cols[q], cols[n + q] = zq, xq

    def append_s(self, q: int) -> None:
        self._check_qubit(q)
        cols = self._cols.data
        n = self.n
        xq, zq = cols[q], cols[n + q]
        self._signs.bits ^= xq & zq
        cols[n + q] = zq ^ xq

    def append_cx(self, c: int, t: int) -> None:
        self._check_qubit(c)
        self._check_qubit(t)
        if c == t:
            raise ValueError("cx control and target must differ")
        cols = self._cols.data
        n = self.n
        xc, zc = cols[c], cols[n + c]
        xt, zt = cols[t], cols[n + t]
        full = (1 << (2 * self.n)) - 1
        self._signs.bits ^= xc & zt & (xt ^ zc ^ full)
        cols[t] = xt ^ xc
        cols[n + c] = zc ^ zt

    # -- gate application (prepend: gate runs before the tableau) ------

    def prepend_gate(self, gate: Gate) -> None:
        """Mutate into the tableau of ``[gate] ++ circuit(self)``.

        Row bits follow the dual of the append rules; signs come from
        exact Pauli products, pinned by the property
        ``prepend_gate(from_circuit(c), g) == from_circuit([g] + c)``.
        """
        if any(q >= self.n for q in gate.qubits):
            raise IndexError(f"gate {gate} out of range for {self.n} qubits")
        n = self.n
        if gate.kind == "h":
            k = gate.qubits[0]
            self._cols.swap_columns(k, n + k)
            sk, snk = self._signs.get(k), self._signs.get(n + k)
            self._signs.set(k, snk)
            self._signs.set(n + k, sk)
        elif gate.kind == "s":
            # new destab row k = image of Y_k = i * D_k * S_k
            k = gate.qubits[0]
            self._write_logical_row(k, *self._row_product(1, k, n + k))
        else:
            c, t = gate.qubits
            new_c = self._row_product(0, c, t)
            new_nt = self._row_product(0, n + c, n + t)
            self._write_logical_row(c, *new_c)
            self._write_logical_row(n + t, *new_nt)

    def _row_product(self, e0: int, r1: int, r2: int) -> tuple[int, int, int]:
        """Canonical product i^e0 * row(r1) * row(r2) as (x, z, sign)."""
        x1, z1 = self.row_masks(r1)
        x2, z2 = self.row_masks(r2)
        e1 = (2 * self.sign_bit(r1) + (x1 & z1).bit_count()) & 3
        e2 = (2 * self.sign_bit(r2) + (x2 & z2).bit_count()) & 3
        e, x, z = _pauli_mul(e1, x1, z1, e2, x2, z2)
        e = (e + e0) & 3
        s2 = (e - (x & z).bit_count()) & 3
        if s2 & 1:
            raise AssertionError("product of Hermitian rows is not Hermitian")
        return x, z, s2 >> 1

    def _write_logical_row(self, r: int, x: int, z: int, s: int) -> None:
        cols = self._cols.data
        n = self.n
        m = 1 << r
        for q in range(n):
            if (((cols[q] >> r) ^ (x >> q)) & 1):
                cols[q] ^= m
            if (((cols[n + q] >> r) ^ (z >> q)) & 1):
                cols[n + q] ^= m
        self._signs.set(r, s)

    # -- whole-tableau operations --------------------------------------

    def conjugate_pauli(self, x: int, z: int, s: int) -> tuple[int, int, int]:
        """Image of the Hermitian Pauli (x, z, s) under this tableau.

        X_j factors map to destabilizer rows, Z_j factors to stabilizer
        rows; products are taken in ascending qubit order, X block first,
        with exact phase tracking.
        """
        n = self.n
        e = (2 * s + (x & z).bit_count()) & 3
        ae, ax, az = 0, 0, 0
        for base, mask in ((0, x), (n, z)):
            m = mask
            while m:
                j = (m & -m).bit_length() - 1
                m &= m - 1
                rx, rz = self.row_masks(base + j)
                re = (2 * self.sign_bit(base + j) + (rx & rz).bit_count()) & 3
                ae, ax, az = _pauli_mul(ae, ax, az, re, rx, rz)
        e = (e + ae) & 3
        s2 = (e - (ax & az).bit_count()) & 3
        if s2 & 1:
            raise AssertionError("conjugated Pauli is not Hermitian")
        return ax, az, s2 >> 1

    def compose(self, other: "CliffordTableau") -> "CliffordTableau":
        """Tableau of this circuit followed by ``other``'s circuit."""
        if self.n != other.n:
            raise ValueError("tableau sizes differ")
        rows = []
        signs = []
        for r in range(2 * self.n):
            x, z = self.row_masks(r)
            ax, az, s = other.conjugate_pauli(x, z, self.sign_bit(r))
            rows.append((ax, az))
            signs.append(s)
        return CliffordTableau._from_logical_rows(self.n, rows, signs)

    def inverse(self) -> "CliffordTableau":
        """Tableau of the adjoint unitary.

        The binary part is Omega M^T Omega (block form [[D^T, B^T],
        [C^T, A^T]]), which in transposed storage reads straight off the
        stored columns; each sign is then fixed so the inverse's rows
        conjugate through ``self`` to unsigned basis Paulis.
        """
        n = self.n
        mask_n = (1 << n) - 1
        cols = self._cols.data
        rows = []
        for i in range(n):
            w = cols[n + i]
            rows.append((w >> n, w & mask_n))
        for i in range(n):
            w = cols[i]
            rows.append((w >> n, w & mask_n))
        signs = []
        for r, (x, z) in enumerate(rows):
            ax, az, s = self.conjugate_pauli(x, z, 0)
            basis = 1 << (r if r < n else r - n)
            expect = (basis, 0) if r < n else (0, basis)
            if (ax, az) != expect:
                raise ValueError("tableau is not symplectic; cannot invert")
            signs.append(s)
        return CliffordTableau._from_logical_rows(n, rows, signs)

    def is_symplectic(self) -> bool:
        """Check the row commutation relations of a valid tableau.

        The symplectic product of rows a and b must be 1 exactly when
        {a, b} pairs destabilizer i with stabilizer n+i.
        """
        n = self.n
        rows = [self.row_masks(r) for r in range(2 * n)]
        for a in range(2 * n):
            xa, za = rows[a]
            for b in range(a + 1, 2 * n):
                xb, zb = rows[b]
                sp = ((xa & zb).bit_count() + (za & xb).bit_count()) & 1
                want = 1 if b == a + n else 0
                if sp != want:
                    return False
        return True

    # -- serialization --------------------------------------------------

    def to_text(self) -> str:
        lines = [f"n={self.n}"]
        logical = self._cols.transposed()
        for r in range(2 * self.n):
            w = logical.data[r]
            bits = "".join(str((w >> c) & 1) for c in range(2 * self.n))
            lines.append(bits + str(self.sign_bit(r)))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "CliffordTableau":
        """Parse the text form; validates shape and charset only."""
        lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
        if not lines or not lines[0].startswith("n="):
            raise ValueError("expected 'n=<int>' header")
        try:
            n = int(lines[0][2:])
        except ValueError:
            raise ValueError(f"bad qubit count in header {lines[0]!r}")
        if n < 0:
            raise ValueError("qubit count must be non-negative")
        if len(lines) != 1 + 2 * n:
            raise ValueError(f"expected {2 * n} rows, got {len(lines) - 1}")
        data = []
        signs = 0
        for r, line in enumerate(lines[1:]):
            if len(line) != 2 * n + 1 or set(line) - {"0", "1"}:
                raise ValueError(f"row {r}: expected {2 * n} bits plus a sign character")
            word = 0
            for c, ch in enumerate(line[: 2 * n]):
                word |= (ch == "1") << c
            data.append(word)
            signs |= (line[-1] == "1") << r
        logical = BitMatrix(2 * n, 2 * n, data)
        return cls(n, logical.transposed(), BitVector(2 * n, signs))

    # -- plumbing --------------------------------------------------------

    def copy(self) -> "CliffordTableau":
        return CliffordTableau(self.n, self._cols.copy(), self._signs.copy())

    def _check_qubit(self, q: int) -> None:
        if not 0 <= q < self.n:
            raise IndexError(f"qubit {q} out of range for {self.n} qubits")

    def __eq__(self, other) -> bool:
        if not isinstance(other, CliffordTableau):
            return NotImplemented
        return self.n == other.n and self._cols == other._cols and self._signs == other._signs

    def __repr__(self) -> str:
        return f"CliffordTableau(n={self.n})"
