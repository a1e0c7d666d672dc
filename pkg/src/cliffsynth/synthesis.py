"""Architecture-aware tableau synthesis.

The synthesizer inverts the target tableau and reduces the inverse to the
identity by eliminating one qubit per round; the gates recorded along the
way therefore rebuild the original tableau, and every CNOT lies on a
coupling edge.  A round picks a pivot whose removal keeps the remaining
(alive) subgraph connected, rewrites the pivot's destabilizer row to
X-only and its stabilizer row to Z-only form with single-qubit gates, and
clears the remaining interactions with CNOT cascades over Steiner trees:
a bottom-up fill pass first sets the routing waypoints, then a bottom-up
clear pass cancels everything below the pivot.  Once the table is the
identity, leftover signs are cleared with S.S (destabilizer rows) and
H.S.S.H (stabilizer rows).

Placement modes: ``identity`` fixes logical qubit i on physical vertex i;
``lazy`` binds qubits to vertices on first use, choosing free vertices
close to the qubits they must interact with.  Single-qubit gates on
still-unbound qubits are buffered and flushed at binding time, which is
sound because no CNOT can touch a qubit before it is bound.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .architecture import CouplingGraph, non_cutting, steiner_tree
from .circuit import Circuit, Gate, GateCounts
from .tableau import CliffordTableau

PLACEMENT_MODES = ("lazy", "identity")
PIVOT_RULES = ("heuristic", "fixed-order")


class PlacementError(RuntimeError):
    """Raised when a qubit/vertex binding is used inconsistently."""


@dataclass
class SynthesisConfig:
    placement: str = "lazy"
    pivot_rule: str = "heuristic"

    def __post_init__(self):
        if self.placement not in PLACEMENT_MODES:
            raise ValueError(f"placement must be one of {PLACEMENT_MODES}")
        if self.pivot_rule not in PIVOT_RULES:
            raise ValueError(f"pivot_rule must be one of {PIVOT_RULES}")


@dataclass
class SynthesisResult:
    """Physical circuit, total logical->physical mapping, and gate counts."""

    circuit: Circuit
    mapping: dict[int, int]
    counts: GateCounts


class Placement:
    """Partial bijection between logical qubits and physical vertices."""

    __slots__ = ("mode", "n", "mapping", "inv", "_buffers")

    def __init__(self, mode: str, n: int):
        if mode not in PLACEMENT_MODES:
            raise ValueError(f"placement must be one of {PLACEMENT_MODES}")
        self.mode = mode
        self.n = n
        if mode == "identity":
            self.mapping = {i: i for i in range(n)}
            self.inv = {i: i for i in range(n)}
        else:
            self.mapping = {}
            self.inv = {}
        self._buffers: dict[int, list[str]] = {}

    def is_mapped(self, q: int) -> bool:
        return q in self.mapping

    def phys(self, q: int) -> int:
        try:
            return self.mapping[q]
        except KeyError:
            raise PlacementError(f"qubit {q} is not mapped to a vertex")

    def vertex_logical(self, v: int):
        return self.inv.get(v)

    def free(self) -> list[int]:
        """Unoccupied vertices in ascending order (always alive)."""
        return [v for v in range(self.n) if v not in self.inv]

    def lowest_unmapped(self) -> int:
        for q in range(self.n):
            if q not in self.mapping:
                return q
        raise PlacementError("all qubits are already mapped")

    def buffer_gate(self, q: int, kind: str) -> None:
        if q in self.mapping:
            raise PlacementError(f"qubit {q} is mapped; emit its gates directly")
        self._buffers.setdefault(q, []).append(kind)

    def bind(self, q: int, v: int) -> list[Gate]:
        """Bind q to v and return the buffered gates, now on vertex v."""
        if self.mode != "lazy":
            raise PlacementError("binding only happens under lazy placement")
        if q in self.mapping:
            raise PlacementError(f"qubit {q} is already mapped")
        if v in self.inv:
            raise PlacementError(f"vertex {v} is already occupied")
        self.mapping[q] = v
        self.inv[v] = q
        return [Gate(kind, (v,)) for kind in self._buffers.pop(q, [])]


# -- pivot selection ----------------------------------------------------


class _LazyDistances:
    """Distance estimates under a partial mapping.

    Mapped pairs use the real distance; a term with an unmapped endpoint
    falls back to the optimistic minimum over free vertices.
    """

    def __init__(self, dist, mapping):
        self.dist = dist
        self.mapping = mapping
        occupied = set(mapping.values())
        self.free = [v for v in range(len(dist)) if v not in occupied]
        self._min_to_free: dict[int, int] = {}
        self._min_pair: int | None = None

    def _to_free(self, v: int) -> int:
        got = self._min_to_free.get(v)
        if got is None:
            row = self.dist[v]
            got = min((row[u] for u in self.free), default=0)
            self._min_to_free[v] = got
        return got

    def _free_pair(self) -> int:
        if self._min_pair is None:
            self._min_pair = min(
                (self.dist[u][w] for u, w in itertools.combinations(self.free, 2)),
                default=0,
            )
        return self._min_pair

    def estimate(self, r: int, i: int) -> int:
        vr = self.mapping.get(r)
        vi = self.mapping.get(i)
        if vr is not None and vi is not None:
            return self.dist[vr][vi]
        if vr is not None:
            return self._to_free(vr)
        if vi is not None:
            return self._to_free(vi)
        return self._free_pair()


def _interaction_weights(t: CliffordTableau, r: int) -> list[tuple[int, int]]:
    """(qubit, weight) pairs: how many of candidate r's two rows touch qubit i."""
    n = t.n
    xd, zd = t.row_masks(r)
    xs, zs = t.row_masks(n + r)
    dsup = xd | zd
    ssup = xs | zs
    out = []
    m = dsup | ssup
    while m:
        i = (m & -m).bit_length() - 1
        m &= m - 1
        out.append((i, ((dsup >> i) & 1) + ((ssup >> i) & 1)))
    return out


def pivot_cost(t: CliffordTableau, r: int, dist, mapping=None) -> int:
    """Interaction-weighted distance sum for candidate pivot r.

    Each qubit i that appears in r's destabilizer or stabilizer row
    contributes its distance to r once per row it appears in.  With
    ``mapping=None`` qubits sit on the vertices of the same index;
    a partial mapping dict switches to lazy-placement estimates.
    """
    weights = _interaction_weights(t, r)
    if mapping is None:
        return sum(w * dist[r][i] for i, w in weights if i != r)
    lazy = _LazyDistances(dist, mapping)
    return sum(w * lazy.estimate(r, i) for i, w in weights if i != r)


def pick_pivot(
    t: CliffordTableau,
    graph: CouplingGraph,
    alive,
    remaining=None,
    mapping=None,
    rule: str = "heuristic",
) -> int:
    """Choose the next pivot among ``remaining`` logical qubits.

    Eligible qubits are mapped to non-cutting vertices of the alive
    subgraph, or still unmapped while some free non-cutting vertex exists
    to receive them.  The heuristic rule minimizes pivot_cost; ties and
    the fixed-order rule take the lowest qubit index.
    """
    alive = set(alive)
    candidates = sorted(alive if remaining is None else remaining)
    noncut = non_cutting(graph, alive)
    if mapping is None:
        eligible = [q for q in candidates if q in noncut]
    else:
        occupied = set(mapping.values())
        free_noncut = any(v not in occupied for v in noncut)
        eligible = [
            q
            for q in candidates
            if (mapping[q] in noncut if q in mapping else free_noncut)
        ]
    if not eligible:
        raise RuntimeError("no eligible pivot; alive subgraph invariant broken")
    if rule == "fixed-order":
        return eligible[0]
    if rule != "heuristic":
        raise ValueError(f"pivot_rule must be one of {PIVOT_RULES}")
    dist = graph.dist
    lazy = None if mapping is None else _LazyDistances(dist, mapping)
    best_q = eligible[0]
    best_cost = None
    for q in eligible:
        if lazy is None:
            cost = sum(w * dist[q][i] for i, w in _interaction_weights(t, q) if i != q)
        else:
            cost = sum(w * lazy.estimate(q, i) for i, w in _interaction_weights(t, q) if i != q)
        if best_cost is None or cost < best_cost:
            best_cost = cost
            best_q = q
    return best_q


# -- row rewrites ---------------------------------------------------------


def sanitize_destab(t: CliffordTableau, p: int) -> list[Gate]:
    """Rewrite destabilizer row p into X-only form (H first, then S)."""
    x, z = t.row_masks(p)
    gates = []
    m = z & ~x
    while m:
        i = (m & -m).bit_length() - 1
        m &= m - 1
        t.append_h(i)
        gates.append(Gate.h(i))
    m = z & x
    while m:
        i = (m & -m).bit_length() - 1
        m &= m - 1
        t.append_s(i)
        gates.append(Gate.s(i))
    return gates


def sanitize_stab(t: CliffordTableau, p: int) -> list[Gate]:
    """Rewrite stabilizer row n+p into Z-only form.

    Requires destabilizer row p to already be the identity row.  The
    pivot itself may carry Y; H.S.H rotates it to Z without touching the
    already-clean destabilizer row.  Other qubits get H (for X) or S.H
    (for Y).
    """
    n = t.n
    x, z = t.row_masks(p)
    if x != 1 << p or z != 0:
        raise ValueError(f"destabilizer row {p} is not the identity row yet")
    gates = []
    if t.x_bit(n + p, p):
        for g in (Gate.h(p), Gate.s(p), Gate.h(p)):
            t.append_gate(g)
            gates.append(g)
    x, z = t.row_masks(n + p)
    m = x & ~z
    while m:
        i = (m & -m).bit_length() - 1
        m &= m - 1
        t.append_h(i)
        gates.append(Gate.h(i))
    m = x & z
    while m:
        i = (m & -m).bit_length() - 1
        m &= m - 1
        t.append_s(i)
        t.append_h(i)
        gates.extend((Gate.s(i), Gate.h(i)))
    return gates


def remove_interactions_destab(
    t: CliffordTableau, p: int, graph: CouplingGraph, alive, placement: Placement
) -> list[Gate]:
    """Clear destabilizer row p outside the pivot with routed CNOTs."""
    return _remove_interactions(t, p, graph, alive, placement, stab=False)


def remove_interactions_stab(
    t: CliffordTableau, p: int, graph: CouplingGraph, alive, placement: Placement
) -> list[Gate]:
    """Clear stabilizer row n+p outside the pivot; CNOT directions flip."""
    return _remove_interactions(t, p, graph, alive, placement, stab=True)


def _remove_interactions(t, p, graph, alive, placement, stab):
    n = t.n
    row = n + p if stab else p

    def row_bit(q: int) -> int:
        return t.z_bit(row, q) if stab else t.x_bit(row, q)

    x, z = t.row_masks(row)
    support = (z if stab else x) & ~(1 << p)
    if support == 0:
        return []
    gates: list[Gate] = []
    root = placement.phys(p)
    terminals = [root]
    unbound = []
    m = support
    while m:
        i = (m & -m).bit_length() - 1
        m &= m - 1
        if placement.is_mapped(i):
            terminals.append(placement.phys(i))
        else:
            unbound.append(i)
    for q in unbound:
        v = _best_free_vertex(graph, placement.free(), terminals)
        gates.extend(placement.bind(q, v))
        terminals.append(v)
    tree = steiner_tree(graph, alive, frozenset(terminals), root)
    for v in sorted(tree.vertices):
        if placement.vertex_logical(v) is None:
            gates.extend(placement.bind(placement.lowest_unmapped(), v))
    # fill pass: give every routing waypoint a 1 so the clear pass cascades
    for vpar, vch in tree.bottom_up:
        lp = placement.vertex_logical(vpar)
        lc = placement.vertex_logical(vch)
        if row_bit(lp) == 0:
            if stab:
                t.append_cx(lp, lc)
                gates.append(Gate.cx(vpar, vch))
            else:
                t.append_cx(lc, lp)
                gates.append(Gate.cx(vch, vpar))
    # clear pass: cancel every child against its parent, leaves first
    for vpar, vch in tree.bottom_up:
        lp = placement.vertex_logical(vpar)
        lc = placement.vertex_logical(vch)
        if stab:
            t.append_cx(lc, lp)
            gates.append(Gate.cx(vch, vpar))
        else:
            t.append_cx(lp, lc)
            gates.append(Gate.cx(vpar, vch))
    return gates


def _best_free_vertex(graph: CouplingGraph, free, refs) -> int:
    """Free vertex minimizing summed distance to refs; ties to lowest index."""
    dist = graph.dist
    best_v = None
    best = None
    for v in free:
        score = sum(dist[v][u] for u in refs)
        if best is None or score < best:
            best = score
            best_v = v
    if best_v is None:
        raise PlacementError("no free vertex available")
    return best_v


def sanitize_signs(t: CliffordTableau) -> list[Gate]:
    """Clear leftover sign bits once the binary table is the identity.

    A flipped stabilizer row is -Z_i, undone by conjugating with
    X_i = H.S.S.H; a flipped destabilizer row is -X_i, undone by
    Z_i = S.S.
    """
    n = t.n
    for r in range(2 * n):
        x, z = t.row_masks(r)
        want_x = 1 << r if r < n else 0
        want_z = 0 if r < n else 1 << (r - n)
        if x != want_x or z != want_z:
            raise ValueError("binary table must be the identity before sign fixes")
    gates = []
    for i in range(n):
        if t.sign_bit(n + i):
            for g in (Gate.h(i), Gate.s(i), Gate.s(i), Gate.h(i)):
                t.append_gate(g)
                gates.append(g)
    for i in range(n):
        if t.sign_bit(i):
            for g in (Gate.s(i), Gate.s(i)):
                t.append_gate(g)
                gates.append(g)
    return gates


# -- driver ---------------------------------------------------------------


def synthesize(
    tableau: CliffordTableau, graph: CouplingGraph, config: SynthesisConfig | None = None
) -> SynthesisResult:
    """Synthesize a connectivity-respecting circuit implementing ``tableau``.

    Rebuilding a tableau from the returned circuit and pulling it back
    through the returned mapping reproduces the input exactly, signs
    included.
    """
    config = config or SynthesisConfig()
    n = tableau.n
    if n != graph.num_qubits:
        raise ValueError(
            f"tableau has {n} qubits but architecture has {graph.num_qubits}"
        )
    if not tableau.is_symplectic():
        raise ValueError("input tableau is not symplectic")
    work = tableau.inverse()
    placement = Placement(config.placement, n)
    alive = set(range(n))
    remaining = set(range(n))
    circuit = Circuit(n)
    lazy_map = placement.mapping if placement.mode == "lazy" else None
    while remaining:
        p = pick_pivot(work, graph, alive, remaining, lazy_map, config.pivot_rule)
        if not placement.is_mapped(p):
            v = _pivot_binding_vertex(work, graph, alive, placement, p)
            circuit.extend(placement.bind(p, v))
        for g in sanitize_destab(work, p):
            _emit_single(circuit, placement, g)
        circuit.extend(remove_interactions_destab(work, p, graph, alive, placement))
        for g in sanitize_stab(work, p):
            _emit_single(circuit, placement, g)
        circuit.extend(remove_interactions_stab(work, p, graph, alive, placement))
        alive.remove(placement.phys(p))
        remaining.remove(p)
    for g in sanitize_signs(work):
        circuit.append(Gate(g.kind, (placement.phys(g.qubits[0]),)))
    return SynthesisResult(circuit, dict(placement.mapping), circuit.count_gates())


def _emit_single(circuit: Circuit, placement: Placement, g: Gate) -> None:
    q = g.qubits[0]
    if placement.is_mapped(q):
        circuit.append(Gate(g.kind, (placement.phys(q),)))
    else:
        placement.buffer_gate(q, g.kind)


def _pivot_binding_vertex(t, graph, alive, placement, p) -> int:
    """Free non-cutting vertex closest to the pivot's mapped interactors."""
    n = t.n
    xd, zd = t.row_masks(p)
    xs, zs = t.row_masks(n + p)
    sup = (xd | zd | xs | zs) & ~(1 << p)
    refs = []
    m = sup
    while m:
        i = (m & -m).bit_length() - 1
        m &= m - 1
        if placement.is_mapped(i):
            refs.append(placement.phys(i))
    noncut = non_cutting(graph, alive)
    candidates = [v for v in placement.free() if v in noncut]
    if not candidates:
        raise PlacementError("no free non-cutting vertex for the pivot")
    return _best_free_vertex(graph, candidates, refs)
