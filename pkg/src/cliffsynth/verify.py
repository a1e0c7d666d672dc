"""Independent checks for synthesized circuits.

Two kinds of evidence are supported: exact tableau round-trips (rebuild a
tableau from the output circuit and compare, signs included), and dense
linear-algebra oracles that simulate small circuits as explicit state
vectors or 2^n x 2^n unitaries.  The oracles never touch the tableau
update rules, so they can arbitrate them.
"""

from __future__ import annotations

import numpy as np

from .architecture import CouplingGraph
from .circuit import Circuit, Gate
from .tableau import CliffordTableau

_MAX_ORACLE_QUBITS = 10

_SQRT_HALF = 1.0 / np.sqrt(2.0)


def _apply_gate(state: np.ndarray, gate: Gate, n: int) -> None:
    """Apply one gate in place; ``state``'s first axis is the 2^n basis axis.

    Basis index convention: qubit q is bit q of the index (qubit 0 is the
    least significant bit).
    """
    idx = np.arange(1 << n)
    if gate.kind == "h":
        q = gate.qubits[0]
        sel0 = idx[(idx >> q) & 1 == 0]
        sel1 = sel0 | (1 << q)
        a, b = state[sel0].copy(), state[sel1].copy()
        state[sel0] = (a + b) * _SQRT_HALF
        state[sel1] = (a - b) * _SQRT_HALF
    elif gate.kind == "s":
        q = gate.qubits[0]
        sel1 = idx[(idx >> q) & 1 == 1]
        state[sel1] = state[sel1] * 1j
    else:
        c, t = gate.qubits
        sel = idx[(idx >> c) & 1 == 1]
        state[sel] = state[sel ^ (1 << t)].copy()


def statevector_oracle(circuit: Circuit) -> np.ndarray:
    """Exact amplitudes of circuit|0...0>; refuses more than 10 qubits."""
    n = circuit.n
    if n > _MAX_ORACLE_QUBITS:
        raise ValueError(f"statevector oracle is limited to {_MAX_ORACLE_QUBITS} qubits")
    state = np.zeros(1 << n, dtype=complex)
    state[0] = 1.0
    for g in circuit:
        _apply_gate(state, g, n)
    return state


def unitary_of(circuit: Circuit) -> np.ndarray:
    """The full 2^n x 2^n unitary of a circuit; refuses more than 10 qubits."""
    n = circuit.n
    if n > _MAX_ORACLE_QUBITS:
        raise ValueError(f"unitary oracle is limited to {_MAX_ORACLE_QUBITS} qubits")
    u = np.eye(1 << n, dtype=complex)
    for g in circuit:
        _apply_gate(u, g, n)
    return u


_PAULI_1Q = {
    (0, 0): np.eye(2, dtype=complex),
    (1, 0): np.array([[0, 1], [1, 0]], dtype=complex),
    (0, 1): np.array([[1, 0], [0, -1]], dtype=complex),
    (1, 1): np.array([[0, -1], [1, 0]], dtype=complex),  # XZ
}


def pauli_matrix(n: int, x: int, z: int, sign: int) -> np.ndarray:
    """Dense matrix of the Pauli with bit masks (x, z) and sign bit.

    Same canonical form as tableau rows: i^(2*sign + popcount(x & z))
    times the X^x Z^z product, so (x=1, z=1, sign=0) is +Y.
    """
    if n > _MAX_ORACLE_QUBITS:
        raise ValueError(f"pauli oracle is limited to {_MAX_ORACLE_QUBITS} qubits")
    out = np.array([[1.0 + 0j]])
    for q in range(n - 1, -1, -1):
        out = np.kron(out, _PAULI_1Q[((x >> q) & 1, (z >> q) & 1)])
    e = (2 * sign + (x & z).bit_count()) & 3
    return (1j**e) * out


def tableau_matches_unitary(t: CliffordTableau, u: np.ndarray, atol: float = 1e-10) -> bool:
    """Check every tableau row against conjugation by the explicit unitary."""
    n = t.n
    udag = u.conj().T
    for i in range(n):
        for r, (bx, bz) in ((i, (1 << i, 0)), (n + i, (0, 1 << i))):
            basis = pauli_matrix(n, bx, bz, 0)
            x, z = t.row_masks(r)
            want = pauli_matrix(n, x, z, t.sign_bit(r))
            if not np.allclose(u @ basis @ udag, want, atol=atol):
                return False
    return True


def relabel_tableau(t: CliffordTableau, mapping: dict[int, int]) -> CliffordTableau:
    """Rewrite a physical-frame tableau into the logical frame.

    ``mapping`` sends logical qubit i to physical vertex mapping[i] and
    must be a bijection on range(n).  Logical row i is physical row
    mapping[i] with its qubit positions pulled back through the mapping.
    """
    n = t.n
    _check_mapping(mapping, n)
    rows = []
    signs = []
    for base in (0, n):
        for i in range(n):
            x, z = t.row_masks(base + mapping[i])
            nx = nz = 0
            for j in range(n):
                nx |= ((x >> mapping[j]) & 1) << j
                nz |= ((z >> mapping[j]) & 1) << j
            rows.append((nx, nz))
            signs.append(t.sign_bit(base + mapping[i]))
    return CliffordTableau._from_logical_rows(n, rows, signs)


def relabel_circuit(circuit: Circuit, mapping: dict[int, int]) -> Circuit:
    """Rewrite a physical-frame circuit onto logical wires through ``mapping``."""
    _check_mapping(mapping, circuit.n)
    inv = {v: q for q, v in mapping.items()}
    out = Circuit(circuit.n)
    for g in circuit:
        out.append(Gate(g.kind, tuple(inv[q] for q in g.qubits)))
    return out


def check_roundtrip(tableau: CliffordTableau, result) -> bool:
    """Exact round-trip: result.circuit under result.mapping rebuilds ``tableau``.

    ``result`` is anything with ``circuit`` and ``mapping`` attributes
    (a SynthesisResult in practice).  Signs are compared too.
    """
    rebuilt = CliffordTableau.from_circuit(result.circuit)
    return relabel_tableau(rebuilt, result.mapping) == tableau


def check_connectivity(circuit: Circuit, graph: CouplingGraph) -> list[int]:
    """Indices of CNOTs that do not sit on a coupling edge (empty = clean)."""
    if circuit.n != graph.num_qubits:
        raise ValueError(
            f"circuit has {circuit.n} qubits but architecture has {graph.num_qubits}"
        )
    violations = []
    for i, g in enumerate(circuit):
        if g.kind == "cx" and not graph.has_edge(g.qubits[0], g.qubits[1]):
            violations.append(i)
    return violations


def _check_mapping(mapping: dict[int, int], n: int) -> None:
    if sorted(mapping.keys()) != list(range(n)) or sorted(mapping.values()) != list(range(n)):
        raise ValueError("mapping must be a bijection on range(n)")
