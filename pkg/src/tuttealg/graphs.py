"""Multigraphs with symbolic edge weights, induced subgraphs and blow-ups."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .errors import DomainError, RangeError, StructuralError
from .exactalg import MultiPoly, as_poly

Edge = tuple  # (u, v, weight: MultiPoly)


@dataclass(frozen=True)
class MultiGraph:
    """Undirected multigraph; loops and parallel edges are allowed.

    Edges are identified by their position in ``edges``.
    """

    vertices: tuple[str, ...]
    edges: tuple[Edge, ...] = ()
    name: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        verts = tuple(str(v) for v in self.vertices)
        if len(set(verts)) != len(verts):
            raise StructuralError(f"duplicate vertex ids in {verts}")
        known = set(verts)
        edges = []
        for e in self.edges:
            if len(e) != 3:
                raise StructuralError(f"edge {e!r} must be (u, v, weight)")
            u, v, w = str(e[0]), str(e[1]), as_poly(e[2])
            if u not in known or v not in known:
                raise StructuralError(f"edge {u}-{v} references an unknown vertex")
            edges.append((u, v, w))
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "edges", tuple(edges))

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def m(self) -> int:
        return len(self.edges)

    def weights(self) -> list[MultiPoly]:
        return [w for _, _, w in self.edges]

    def has_loop(self, vertex: str | None = None) -> bool:
        return any(u == v and (vertex is None or u == vertex) for u, v, _ in self.edges)

    def is_loopless(self) -> bool:
        return not self.has_loop()

    def is_simple(self) -> bool:
        seen = set()
        for u, v, _ in self.edges:
            if u == v:
                return False
            key = frozenset((u, v))
            if key in seen:
                return False
            seen.add(key)
        return True

    def neighbours(self, vertex: str) -> set[str]:
        out = set()
        for u, v, _ in self.edges:
            if u == vertex:
                out.add(v)
            if v == vertex:
                out.add(u)
        return out

    def adjacent(self, a: str, b: str) -> bool:
        return any({u, v} == {a, b} or (a == b and u == v == a) for u, v, _ in self.edges)

    def with_weights(self, weights: Sequence) -> "MultiGraph":
        if len(weights) != self.m:
            raise StructuralError("one weight per edge is required")
        return MultiGraph(self.vertices,
                          tuple((u, v, w) for (u, v, _), w in zip(self.edges, weights)),
                          self.name)

    def with_equal_weights(self, weight="v") -> "MultiGraph":
        w = MultiPoly.var(weight) if isinstance(weight, str) else as_poly(weight)
        return self.with_weights([w] * self.m)

    def substitute(self, mapping: Mapping) -> "MultiGraph":
        return self.with_weights([w.subs(mapping) for w in self.weights()])

    # -- serialisation ------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "edges": [[u, v, w.to_text()] for u, v, w in self.edges],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))

    def fingerprint(self) -> str:
        """Short content hash: stable across runs and processes."""
        digest = hashlib.sha256(self.dumps().encode()).hexdigest()[:12]
        return f"{self.name}:{digest}" if self.name else digest

    @classmethod
    def from_json(cls, data: Mapping, name: str = "") -> "MultiGraph":
        try:
            vertices = [str(v) for v in data["vertices"]]
            raw = data.get("edges", [])
        except (KeyError, TypeError) as exc:
            raise StructuralError(f"graph JSON needs 'vertices' and 'edges': {exc}") from None
        edges = []
        for idx, e in enumerate(raw):
            if not isinstance(e, (list, tuple)) or len(e) not in (2, 3):
                raise StructuralError(f"edge {idx} must be [u, v] or [u, v, weight]")
            weight = e[2] if len(e) == 3 else f"v:{idx}"
            if isinstance(weight, (int, float)) and not isinstance(weight, bool):
                weight = str(weight)
            if not isinstance(weight, str):
                raise StructuralError(f"edge {idx} weight must be a name or rational")
            edges.append((str(e[0]), str(e[1]), MultiPoly.parse(weight)))
        return cls(tuple(vertices), tuple(edges), name or str(data.get("name", "")))

    @classmethod
    def load(cls, path: str | Path) -> "MultiGraph":
        path = Path(path)
        try:
            data = json.loads(path.read_text())
        except json.JSONDecodeError as exc:
            raise StructuralError(f"{path}: invalid JSON ({exc})") from None
        return cls.from_json(data, name=data.get("name", path.stem))


def empty_graph() -> MultiGraph:
    return MultiGraph((), (), "empty")


# -- subgraphs --------------------------------------------------------------

def induced_subgraph(g: MultiGraph, subset: Iterable[str]) -> MultiGraph:
    """Vertices ``subset`` (in the order of ``g``) and every edge inside them."""
    keep = {str(v) for v in subset}
    missing = keep - set(g.vertices)
    if missing:
        raise DomainError(f"vertices {sorted(missing)} are not in the graph")
    verts = tuple(v for v in g.vertices if v in keep)
    edges = tuple(e for e in g.edges if e[0] in keep and e[1] in keep)
    return MultiGraph(verts, edges)


def induced_edge_indices(g: MultiGraph, subset: Iterable[str]) -> list[int]:
    keep = set(subset)
    return [i for i, (u, v, _) in enumerate(g.edges) if u in keep and v in keep]


def edge_boundary(g: MultiGraph, subset: Iterable[str], j: str) -> list[int]:
    """Indices of edges joining ``subset`` to the vertex ``j``."""
    subset = set(subset)
    if j in subset:
        raise DomainError(f"vertex {j} must lie outside the set")
    return [i for i, (u, v, _) in enumerate(g.edges)
            if (u == j and v in subset) or (v == j and u in subset)]


# -- components ---------------------------------------------------------------

class UnionFind:
    __slots__ = ("parent", "count")

    def __init__(self, n: int) -> None:
        self.parent = list(range(n))
        self.count = n

    def find(self, x: int) -> int:
        parent = self.parent
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[rb] = ra
        self.count -= 1
        return True


def _endpoint_indices(g: MultiGraph) -> list[tuple[int, int]]:
    pos = {v: i for i, v in enumerate(g.vertices)}
    return [(pos[u], pos[v]) for u, v, _ in g.edges]


def _check_edges(g: MultiGraph, edge_set: Iterable[int]) -> list[int]:
    out = []
    for i in edge_set:
        if not isinstance(i, int) or not 0 <= i < g.m:
            raise RangeError(f"edge index {i!r} out of range 0..{g.m - 1}")
        out.append(i)
    return out


def count_components(g: MultiGraph, edge_set: Iterable[int]) -> int:
    """k(A): components of the spanning subgraph (V, A)."""
    ends = _endpoint_indices(g)
    uf = UnionFind(g.n)
    for i in _check_edges(g, edge_set):
        uf.union(*ends[i])
    return uf.count


def component_labels(g: MultiGraph, edge_set: Iterable[int]) -> list[int]:
    """Root label per vertex for the spanning subgraph (V, A)."""
    ends = _endpoint_indices(g)
    uf = UnionFind(g.n)
    for i in _check_edges(g, edge_set):
        uf.union(*ends[i])
    return [uf.find(x) for x in range(g.n)]


def cyclomatic(g: MultiGraph, edge_set: Iterable[int]) -> int:
    edge_set = list(edge_set)
    return len(edge_set) - g.n + count_components(g, edge_set)


def is_connected(g: MultiGraph) -> bool:
    return g.n > 0 and count_components(g, range(g.m)) == 1


def is_independent(g: MultiGraph, subset: Iterable[str]) -> bool:
    subset = set(subset)
    return not any(u in subset and v in subset for u, v, _ in g.edges)


# -- blow-ups -----------------------------------------------------------------

def _blowup_vertices(g: MultiGraph, counts: Mapping[str, int]) -> dict[str, list[str]]:
    if not g.is_simple():
        raise DomainError("blow-ups need a loopless graph without parallel edges")
    unknown = set(counts) - set(g.vertices)
    if unknown:
        raise DomainError(f"multi-index names unknown vertices {sorted(unknown)}")
    copies = {}
    for v in g.vertices:
        k = int(counts.get(v, 0))
        if k < 0:
            raise DomainError(f"multi-index entry for {v} is negative")
        copies[v] = [f"{v}#{a}" for a in range(1, k + 1)]
    return copies


def _normalise_counts(g: MultiGraph, counts) -> dict[str, int]:
    if isinstance(counts, Mapping):
        return {str(k): int(v) for k, v in counts.items()}
    counts = list(counts)
    if len(counts) != g.n:
        raise StructuralError(f"multi-index has {len(counts)} entries for {g.n} vertices")
    return dict(zip(g.vertices, (int(c) for c in counts)))


def blowup_independent(g: MultiGraph, counts) -> MultiGraph:
    """G[n]: vertex i becomes an independent set of n_i copies."""
    counts = _normalise_counts(g, counts)
    copies = _blowup_vertices(g, counts)
    verts = tuple(x for v in g.vertices for x in copies[v])
    edges = []
    for u, v, w in g.edges:
        for a in copies[u]:
            for b in copies[v]:
                edges.append((a, b, w))
    return MultiGraph(verts, tuple(edges))


def blowup_clique(g: MultiGraph, counts, clique_weights: Mapping[str, object] | None = None) -> MultiGraph:
    """G'[n]: vertex i becomes a clique of n_i copies with edge weight w_i."""
    counts = _normalise_counts(g, counts)
    copies = _blowup_vertices(g, counts)
    base = blowup_independent(g, counts)
    edges = list(base.edges)
    for v in g.vertices:
        if clique_weights and v in clique_weights:
            w = as_poly(clique_weights[v])
        else:
            w = MultiPoly.var(f"w:{v}")
        for a, b in combinations(copies[v], 2):
            edges.append((a, b, w))
    return MultiGraph(base.vertices, tuple(edges))


# -- standard families -----------------------------------------------------------

def _labels(n: int, start: int = 1) -> tuple[str, ...]:
    return tuple(str(i) for i in range(start, start + n))


def _symbolic(pairs: Iterable[tuple[str, str]], weight=None) -> tuple[Edge, ...]:
    out = []
    for idx, (u, v) in enumerate(pairs):
        w = MultiPoly.var(f"v:{idx}") if weight is None else as_poly(
            MultiPoly.var(weight) if isinstance(weight, str) else weight)
        out.append((u, v, w))
    return tuple(out)


def complete_graph(n: int, weight=None) -> MultiGraph:
    verts = _labels(n)
    return MultiGraph(verts, _symbolic(combinations(verts, 2), weight), f"K{n}")


def complete_bipartite(a: int, b: int, weight=None) -> MultiGraph:
    left, right = _labels(a), _labels(b, a + 1)
    pairs = [(u, v) for u in left for v in right]
    return MultiGraph(left + right, _symbolic(pairs, weight), f"K{a},{b}")


def path_graph(n: int, weight=None) -> MultiGraph:
    verts = _labels(n)
    return MultiGraph(verts, _symbolic(zip(verts, verts[1:]), weight), f"P{n}")


def cycle_graph(n: int, weight=None) -> MultiGraph:
    verts = _labels(n)
    pairs = list(zip(verts, verts[1:])) + [(verts[-1], verts[0])]
    return MultiGraph(verts, _symbolic(pairs, weight), f"C{n}")


def star_graph(leaves: int, weight=None) -> MultiGraph:
    g = complete_bipartite(1, leaves, weight)
    return MultiGraph(g.vertices, g.edges, f"K1,{leaves}")


def multi_edge(m: int, weight=None) -> MultiGraph:
    """Two vertices joined by ``m`` parallel edges."""
    return MultiGraph(("1", "2"), _symbolic([("1", "2")] * m, weight), f"K2^({m})")


def complete_minus_edge(n: int, weight=None) -> MultiGraph:
    verts = _labels(n)
    pairs = [p for p in combinations(verts, 2) if p != (verts[0], verts[1])]
    return MultiGraph(verts, _symbolic(pairs, weight), f"K{n}-e")


def triangle_with_loop(weight=None) -> MultiGraph:
    pairs = [("1", "2"), ("1", "3"), ("2", "3"), ("1", "1")]
    return MultiGraph(("1", "2", "3"), _symbolic(pairs, weight), "K3+loop")


def edgeless_graph(n: int) -> MultiGraph:
    return MultiGraph(_labels(n), (), f"E{n}")
