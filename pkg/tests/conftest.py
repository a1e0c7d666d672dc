"""Shared strategies and helpers for the test suite."""

import random

from hypothesis import strategies as st

from cliffsynth.bench import random_clifford_circuit
from cliffsynth.circuit import Circuit, Gate


def make_circuit(n: int, gates: int, seed: int) -> Circuit:
    """Deterministic random circuit for table-driven tests."""
    return random_clifford_circuit(n, gates, random.Random(seed))


@st.composite
def circuits(draw, min_n=1, max_n=5, max_gates=40):
    """Random {H, S, CX} circuits; n=1 circuits contain no CX."""
    n = draw(st.integers(min_n, max_n))
    k = draw(st.integers(0, max_gates))
    kinds = ["h", "s", "cx"] if n >= 2 else ["h", "s"]
    c = Circuit(n)
    for _ in range(k):
        kind = draw(st.sampled_from(kinds))
        if kind == "cx":
            a = draw(st.integers(0, n - 1))
            b = draw(st.integers(0, n - 2))
            if b >= a:
                b += 1
            c.append(Gate.cx(a, b))
        else:
            c.append(Gate(kind, (draw(st.integers(0, n - 1)),)))
    return c
