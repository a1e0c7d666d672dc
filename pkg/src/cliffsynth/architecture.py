"""Device coupling graphs and the routing primitives built on them.

A coupling graph is an undirected, connected graph whose vertices are
physical qubits; CNOTs may only be placed on its edges.  Graphs load from
bundled device names (``quito``, ``nairobi``, ``guadalupe``, ``mumbai``,
``ithaca``, ``brisbane``), parametric families (``complete-N``,
``line-N``), or a JSON file of the form::

    {"name": "...", "num_qubits": 5, "edges": [[0, 1], [1, 2], ...]}

All traversals iterate neighbors in ascending index so that every
derived object (distances, Steiner trees, orders) is deterministic.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path

BUILTIN_ARCHITECTURES = ("quito", "nairobi", "guadalupe", "mumbai", "ithaca", "brisbane")

_INF = 1 << 30


class CouplingGraph:
    """Undirected connected graph with precomputed hop distances."""

    __slots__ = ("name", "num_qubits", "edges", "adjacency", "_edge_set", "_dist")

    def __init__(self, name: str, num_qubits: int, edges):
        if num_qubits < 1:
            raise ValueError("architecture needs at least one qubit")
        seen = set()
        normalized = []
        for e in edges:
            u, v = e
            if not (0 <= u < num_qubits and 0 <= v < num_qubits):
                raise ValueError(f"edge {e} out of range for {num_qubits} qubits")
            if u == v:
                raise ValueError(f"self-loop on vertex {u}")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise ValueError(f"duplicate edge {key}")
            seen.add(key)
            normalized.append(key)
        self.name = name
        self.num_qubits = num_qubits
        self.edges = tuple(sorted(normalized))
        adjacency = [[] for _ in range(num_qubits)]
        for u, v in self.edges:
            adjacency[u].append(v)
            adjacency[v].append(u)
        self.adjacency = [sorted(nbrs) for nbrs in adjacency]
        self._edge_set = frozenset(self.edges)
        self._dist = None
        if not self._connected():
            raise ValueError(f"architecture {name!r} is not connected")

    def _connected(self) -> bool:
        seen = {0}
        stack = [0]
        while stack:
            v = stack.pop()
            for w in self.adjacency[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.num_qubits

    def neighbors(self, v: int) -> list[int]:
        return self.adjacency[v]

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self._edge_set

    @property
    def dist(self) -> list[list[int]]:
        """All-pairs hop distances, computed once on first access."""
        if self._dist is None:
            self._dist = floyd_warshall(self)
        return self._dist

    def diameter(self) -> int:
        return max(max(row) for row in self.dist)

    def __repr__(self) -> str:
        return f"CouplingGraph({self.name!r}, n={self.num_qubits}, edges={len(self.edges)})"


def floyd_warshall(graph: CouplingGraph) -> list[list[int]]:
    """Exact all-pairs hop distances by the classic triple loop."""
    n = graph.num_qubits
    dist = [[_INF] * n for _ in range(n)]
    for i in range(n):
        dist[i][i] = 0
    for u, v in graph.edges:
        dist[u][v] = 1
        dist[v][u] = 1
    for k in range(n):
        dk = dist[k]
        for i in range(n):
            di = dist[i]
            dik = di[k]
            if dik >= _INF:
                continue
            di[:] = [b if b <= (c := dik + a) else c for a, b in zip(dk, di)]
    return dist


def non_cutting(graph: CouplingGraph, alive=None) -> set[int]:
    """Vertices of the alive-induced subgraph whose removal keeps it connected.

    The induced subgraph must itself be connected.  A single remaining
    vertex counts as non-cutting.
    """
    alive = set(range(graph.num_qubits)) if alive is None else set(alive)
    if not alive:
        raise ValueError("alive set is empty")
    for v in alive:
        if not 0 <= v < graph.num_qubits:
            raise ValueError(f"vertex {v} out of range")
    start = min(alive)
    order = _dfs_reach(graph, alive, start)
    if len(order) != len(alive):
        raise ValueError("alive-induced subgraph is not connected")
    if len(alive) == 1:
        return set(alive)
    return alive - _articulation_points(graph, alive, start)


def _dfs_reach(graph: CouplingGraph, alive: set[int], start: int) -> list[int]:
    seen = {start}
    stack = [start]
    order = []
    while stack:
        v = stack.pop()
        order.append(v)
        for w in graph.adjacency[v]:
            if w in alive and w not in seen:
                seen.add(w)
                stack.append(w)
    return order


def _articulation_points(graph: CouplingGraph, alive: set[int], root: int) -> set[int]:
    """Iterative Tarjan lowpoint computation on the induced subgraph."""
    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    parent: dict[int, int | None] = {root: None}
    result: set[int] = set()
    counter = 0
    root_children = 0
    stack: list[tuple[int, int]] = [(root, 0)]
    disc[root] = low[root] = counter
    counter += 1
    while stack:
        v, ptr = stack[-1]
        nbrs = [w for w in graph.adjacency[v] if w in alive]
        if ptr < len(nbrs):
            stack[-1] = (v, ptr + 1)
            w = nbrs[ptr]
            if w not in disc:
                parent[w] = v
                if v == root:
                    root_children += 1
                disc[w] = low[w] = counter
                counter += 1
                stack.append((w, 0))
            elif w != parent[v]:
                low[v] = min(low[v], disc[w])
        else:
            stack.pop()
            p = parent[v]
            if p is not None:
                low[p] = min(low[p], low[v])
                if p != root and low[v] >= disc[p]:
                    result.add(p)
    if root_children > 1:
        result.add(root)
    return result


@dataclass(frozen=True)
class SteinerTree:
    """A routing tree: parent pointers toward ``root`` plus a bottom-up order.

    ``bottom_up`` lists every tree edge once as (parent, child), each
    child's edge appearing before its parent's own edge (reverse BFS).
    """

    root: int
    terminals: frozenset[int]
    parent: dict[int, int]
    bottom_up: tuple[tuple[int, int], ...]

    @property
    def vertices(self) -> set[int]:
        return {self.root} | set(self.parent)

    @property
    def edges(self) -> list[tuple[int, int]]:
        return [(p, c) for p, c in self.bottom_up]


def steiner_tree(graph: CouplingGraph, alive, terminals, root: int) -> SteinerTree:
    """Approximate Steiner tree over the alive-induced subgraph.

    Nearest-terminal attachment: repeatedly BFS from the current tree
    (inside the alive set) to the closest unattached terminal and graft
    the connecting path.  Ties go to the lower vertex index, both for the
    terminal chosen and for the path taken (neighbors expand in ascending
    order).  Leaves are always terminals.
    """
    alive = set(alive)
    terminals = set(terminals)
    if root not in alive:
        raise ValueError("root is not alive")
    if not terminals <= alive:
        raise ValueError("terminals must be alive")
    in_tree = {root}
    parent: dict[int, int] = {}
    remaining = terminals - {root}
    while remaining:
        prev = {v: None for v in sorted(in_tree)}
        frontier = sorted(in_tree)
        found = None
        while frontier and found is None:
            nxt = []
            for v in frontier:
                for w in graph.adjacency[v]:
                    if w in alive and w not in prev:
                        prev[w] = v
                        nxt.append(w)
            hits = sorted(w for w in nxt if w in remaining)
            if hits:
                found = hits[0]
            frontier = sorted(nxt)
        if found is None:
            raise ValueError("terminals are disconnected inside the alive set")
        path = [found]
        while prev[path[-1]] is not None:
            path.append(prev[path[-1]])
        path.reverse()  # tree vertex first, new terminal last
        for a, b in zip(path, path[1:]):
            parent[b] = a
            in_tree.add(b)
        remaining -= set(path)
    children: dict[int, list[int]] = {}
    for c, p in parent.items():
        children.setdefault(p, []).append(c)
    bfs_edges = []
    queue = [root]
    while queue:
        v = queue.pop(0)
        for c in sorted(children.get(v, ())):
            bfs_edges.append((v, c))
            queue.append(c)
    return SteinerTree(
        root=root,
        terminals=frozenset(terminals),
        parent=parent,
        bottom_up=tuple(reversed(bfs_edges)),
    )


def _parametric(name: str) -> CouplingGraph | None:
    for prefix in ("complete", "line"):
        if name.startswith(prefix + "-"):
            try:
                n = int(name.split("-", 1)[1])
            except ValueError:
                raise ValueError(f"bad size in architecture name {name!r}")
            if n < 1:
                raise ValueError(f"architecture {name!r} needs at least one qubit")
            if prefix == "complete":
                edges = [(i, j) for i in range(n) for j in range(i + 1, n)]
            else:
                edges = [(i, i + 1) for i in range(n - 1)]
            return CouplingGraph(name, n, edges)
    return None


@lru_cache(maxsize=None)
def _load_named(name: str) -> CouplingGraph:
    g = _parametric(name)
    if g is not None:
        return g
    if name in BUILTIN_ARCHITECTURES:
        text = resources.files("cliffsynth.data").joinpath(f"{name}.json").read_text()
        return _graph_from_json(text)
    raise ValueError(f"unknown architecture {name!r}")


def load_graph(source: str | Path) -> CouplingGraph:
    """Load by builtin name, parametric name, or JSON file path."""
    name = str(source)
    if isinstance(source, Path) or name.endswith(".json") or "/" in name:
        return _graph_from_json(Path(source).read_text())
    return _load_named(name)


def _graph_from_json(text: str) -> CouplingGraph:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"bad architecture JSON: {exc}")
    for key in ("name", "num_qubits", "edges"):
        if key not in obj:
            raise ValueError(f"architecture JSON missing {key!r}")
    if not isinstance(obj["name"], str):
        raise ValueError("architecture name must be a string")
    if not isinstance(obj["num_qubits"], int) or isinstance(obj["num_qubits"], bool):
        raise ValueError("num_qubits must be an integer")
    edges = [tuple(e) for e in obj["edges"]]
    if any(len(e) != 2 or not all(isinstance(v, int) for v in e) for e in edges):
        raise ValueError("edges must be [u, v] integer pairs")
    return CouplingGraph(obj["name"], obj["num_qubits"], edges)
