"""Architecture-aware synthesis of Clifford tableaus.

Given a Clifford tableau (or a {H, S, CX} circuit) and a device coupling
graph, :func:`synthesize` emits an equivalent circuit whose every CNOT
lies on a coupling edge, keeping the CNOT count low with Steiner-tree
routing and pivot/placement heuristics.
"""

from .architecture import (
    BUILTIN_ARCHITECTURES,
    CouplingGraph,
    SteinerTree,
    floyd_warshall,
    load_graph,
    non_cutting,
    steiner_tree,
)
from .bench import (
    CONVERGENCE_GATES,
    ExperimentRow,
    ExperimentSpec,
    aggregate_routing_portion,
    random_clifford_circuit,
    routing_portion,
    run_experiment,
    summarize,
    trial_seed,
    write_rows_csv,
    write_summary_csv,
)
from .bitmatrix import BitMatrix, BitVector
from .circuit import Circuit, Gate, GateCounts
from .synthesis import (
    Placement,
    PlacementError,
    SynthesisConfig,
    SynthesisResult,
    pick_pivot,
    pivot_cost,
    remove_interactions_destab,
    remove_interactions_stab,
    sanitize_destab,
    sanitize_signs,
    sanitize_stab,
    synthesize,
)
from .tableau import CliffordTableau
from .verify import (
    check_connectivity,
    check_roundtrip,
    pauli_matrix,
    relabel_circuit,
    relabel_tableau,
    statevector_oracle,
    tableau_matches_unitary,
    unitary_of,
)

__version__ = "0.1.0"

__all__ = [
    "BUILTIN_ARCHITECTURES",
    "BitMatrix",
    "BitVector",
    "CONVERGENCE_GATES",
    "Circuit",
    "CliffordTableau",
    "CouplingGraph",
    "ExperimentRow",
    "ExperimentSpec",
    "Gate",
    "GateCounts",
    "Placement",
    "PlacementError",
    "SteinerTree",
    "SynthesisConfig",
    "SynthesisResult",
    "aggregate_routing_portion",
    "check_connectivity",
    "check_roundtrip",
    "floyd_warshall",
    "load_graph",
    "non_cutting",
    "pauli_matrix",
    "pick_pivot",
    "pivot_cost",
    "random_clifford_circuit",
    "relabel_circuit",
    "relabel_tableau",
    "remove_interactions_destab",
    "remove_interactions_stab",
    "routing_portion",
    "run_experiment",
    "sanitize_destab",
    "sanitize_signs",
    "sanitize_stab",
    "statevector_oracle",
    "steiner_tree",
    "summarize",
    "synthesize",
    "tableau_matches_unitary",
    "trial_seed",
    "unitary_of",
    "write_rows_csv",
    "write_summary_csv",
]
