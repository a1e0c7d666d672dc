"""Circuits over the {H, S, CNOT} gate set.

The native text format is one gate per line::

    qubits 3
    h 0
    s 1
    cx 0 2

Blank lines and ``#`` comments are ignored.  QASM 2.0 export is one-way;
there is no QASM importer.
"""

from __future__ import annotations

from dataclasses import dataclass

GATE_KINDS = ("h", "s", "cx")


@dataclass(frozen=True)
class Gate:
    """A single gate: kind in {"h", "s", "cx"} plus its qubit operands."""

    kind: str
    qubits: tuple[int, ...]

    def __post_init__(self):
        if self.kind not in GATE_KINDS:
            raise ValueError(f"unknown gate kind {self.kind!r}")
        arity = 2 if self.kind == "cx" else 1
        if len(self.qubits) != arity:
            raise ValueError(f"{self.kind} takes {arity} qubit(s)")
        if any(q < 0 for q in self.qubits):
            raise ValueError("qubit indices must be non-negative")
        if self.kind == "cx" and self.qubits[0] == self.qubits[1]:
            raise ValueError("cx control and target must differ")

    @classmethod
    def h(cls, q: int) -> "Gate":
        return cls("h", (q,))

    @classmethod
    def s(cls, q: int) -> "Gate":
        return cls("s", (q,))

    @classmethod
    def cx(cls, control: int, target: int) -> "Gate":
        return cls("cx", (control, target))

    def __str__(self) -> str:
        return f"{self.kind} {' '.join(str(q) for q in self.qubits)}"


@dataclass(frozen=True)
class GateCounts:
    h: int = 0
    s: int = 0
    cx: int = 0

    @property
    def total(self) -> int:
        return self.h + self.s + self.cx


class Circuit:
    """An ordered list of gates on ``n`` qubits."""

    __slots__ = ("n", "gates")

    def __init__(self, n: int, gates=()):
        if n < 0:
            raise ValueError("qubit count must be non-negative")
        self.n = n
        self.gates: list[Gate] = []
        for g in gates:
            self.append(g)

    def append(self, gate: Gate) -> None:
        if any(q >= self.n for q in gate.qubits):
            raise ValueError(f"gate {gate} out of range for {self.n} qubits")
        self.gates.append(gate)

    def extend(self, gates) -> None:
        for g in gates:
            self.append(g)

    def count_gates(self) -> GateCounts:
        """Per-kind gate counts; totals always add up to len(gates)."""
        h = s = cx = 0
        for g in self.gates:
            if g.kind == "h":
                h += 1
            elif g.kind == "s":
                s += 1
            else:
                cx += 1
        return GateCounts(h, s, cx)

    def inverse(self) -> "Circuit":
        """The adjoint circuit: gates reversed, each S replaced by S^3."""
        inv = Circuit(self.n)
        for g in reversed(self.gates):
            if g.kind == "s":
                q = g.qubits[0]
                inv.extend([Gate.s(q), Gate.s(q), Gate.s(q)])
            else:
                inv.append(g)
        return inv

    def append_inverse(self) -> "Circuit":
        """This circuit followed by its adjoint (composes to the identity)."""
        out = self.copy()
        out.extend(self.inverse().gates)
        return out

    def copy(self) -> "Circuit":
        return Circuit(self.n, self.gates)

    def to_gatelist(self) -> str:
        lines = [f"qubits {self.n}"]
        lines.extend(str(g) for g in self.gates)
        return "\n".join(lines) + "\n"

    @classmethod
    def from_gatelist(cls, text: str) -> "Circuit":
        """Parse the native gate-list format; raises ValueError on bad input."""
        circuit = None
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if circuit is None:
                if parts[0] != "qubits" or len(parts) != 2:
                    raise ValueError(f"line {lineno}: expected 'qubits <n>' header")
                try:
                    n = int(parts[1])
                except ValueError:
                    raise ValueError(f"line {lineno}: bad qubit count {parts[1]!r}")
                circuit = cls(n)
                continue
            kind = parts[0]
            if kind not in GATE_KINDS:
                raise ValueError(f"line {lineno}: unknown gate {kind!r}")
            try:
                args = tuple(int(p) for p in parts[1:])
            except ValueError:
                raise ValueError(f"line {lineno}: bad qubit index in {line!r}")
            try:
                circuit.append(Gate(kind, args))
            except ValueError as exc:
                raise ValueError(f"line {lineno}: {exc}")
        if circuit is None:
            raise ValueError("missing 'qubits <n>' header")
        return circuit

    def to_qasm(self) -> str:
        """Export as OPENQASM 2.0 (one-way)."""
        lines = [
            "OPENQASM 2.0;",
            'include "qelib1.inc";',
            f"qreg q[{self.n}];",
        ]
        for g in self.gates:
            if g.kind == "cx":
                lines.append(f"cx q[{g.qubits[0]}],q[{g.qubits[1]}];")
            else:
                lines.append(f"{g.kind} q[{g.qubits[0]}];")
        return "\n".join(lines) + "\n"

    def __len__(self) -> int:
        return len(self.gates)

    def __iter__(self):
        return iter(self.gates)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Circuit):
            return NotImplemented
        return self.n == other.n and self.gates == other.gates

    def __repr__(self) -> str:
        return f"Circuit(n={self.n}, gates={len(self.gates)})"
