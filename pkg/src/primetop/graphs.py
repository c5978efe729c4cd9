"""Finite simple graphs with integer vertex labels, and the divisibility graphs.

Graphs are immutable after construction.  Vertex identity is the integer label;
adjacency is stored as sorted index lists with label-level views precomputed.
All constructions are deterministic: vertices ascend, edges are emitted in
ascending lexicographic order, and derived graphs (refinement, product) label
their vertices by a canonical sort of the underlying simplices.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass

from .arithmetic import FactorSieve
from .errors import InternalConsistencyError, InvalidArgumentError


class Graph:
    """Immutable finite simple graph on distinct positive-integer labels."""

    def __init__(self, labels, edges, kind: str | None = None, param: int | None = None):
        labels = tuple(sorted(labels))
        if len(set(labels)) != len(labels):
            raise InvalidArgumentError("duplicate vertex labels")
        if labels and labels[0] < 1:
            raise InvalidArgumentError("vertex labels must be positive integers")
        index = {v: i for i, v in enumerate(labels)}
        nbrs: list[set[int]] = [set() for _ in labels]
        for a, b in edges:
            if a == b:
                raise InvalidArgumentError(f"self-loop at {a}")
            if a not in index or b not in index:
                raise InvalidArgumentError(f"edge ({a},{b}) uses unknown labels")
            nbrs[index[a]].add(b)
            nbrs[index[b]].add(a)
        self.labels = labels
        self.kind = kind
        self.param = param
        self._index = index
        self._nbr_labels = tuple(tuple(sorted(s)) for s in nbrs)
        self._nbr_sets = {v: frozenset(self._nbr_labels[i]) for i, v in enumerate(labels)}
        self.adjacency = tuple(tuple(index[u] for u in row) for row in self._nbr_labels)
        self._hash: int | None = None

    # --- basic queries -------------------------------------------------

    @property
    def n_vertices(self) -> int:
        return len(self.labels)

    def has_vertex(self, v: int) -> bool:
        return v in self._index

    def neighbors(self, v: int) -> tuple[int, ...]:
        if v not in self._index:
            raise InvalidArgumentError(f"unknown vertex label {v}")
        return self._nbr_labels[self._index[v]]

    def neighbor_set(self, v: int) -> frozenset[int]:
        if v not in self._nbr_sets:
            raise InvalidArgumentError(f"unknown vertex label {v}")
        return self._nbr_sets[v]

    def has_edge(self, a: int, b: int) -> bool:
        return b in self._nbr_sets.get(a, ())

    def edges(self) -> list[tuple[int, int]]:
        """All edges as (a, b) with a < b, in ascending lexicographic order."""
        out = []
        for v in self.labels:
            for u in self.neighbors(v):
                if v < u:
                    out.append((v, u))
        return out

    def degree(self, v: int) -> int:
        return len(self.neighbors(v))

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.labels == other.labels and self._nbr_labels == other._nbr_labels

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.labels, self._nbr_labels))
        return self._hash

    def __repr__(self):
        return f"Graph({self.n_vertices} vertices, {len(self.edges())} edges)"

    # --- export ---------------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "kind": self.kind,
            "param": self.param,
            "vertices": list(self.labels),
            "edges": [list(e) for e in self.edges()],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), separators=(", ", ": "))

    def to_dot(self) -> str:
        lines = ["graph G {"]
        for v in self.labels:
            lines.append(f"  {v};")
        for a, b in self.edges():
            lines.append(f"  {a} -- {b};")
        lines.append("}")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class GraphKind:
    """Family selector: integer/prime divisibility graphs or a divisor graph."""

    name: str  # "integer" | "prime" | "divisor"
    param: int

    def __post_init__(self):
        if self.name not in ("integer", "prime", "divisor"):
            raise InvalidArgumentError(f"unknown graph kind {self.name!r}")
        if self.param < 2:
            raise InvalidArgumentError(f"graph parameter must be >= 2, got {self.param}")

    @staticmethod
    def integer(n: int) -> "GraphKind":
        return GraphKind("integer", n)

    @staticmethod
    def prime(n: int) -> "GraphKind":
        return GraphKind("prime", n)

    @staticmethod
    def divisor(m: int) -> "GraphKind":
        return GraphKind("divisor", m)


def squarefree_divisors(m: int, sieve: FactorSieve) -> list[int]:
    """All squarefree divisors of m (including 1 and, if squarefree, m)."""
    sig = sieve.signature(m)
    divs = [1]
    for p in sig.factors:
        divs += [d * p for d in divs]
    return sorted(divs)


def _divisibility_edges(vertices: list[int]) -> list[tuple[int, int]]:
    present = set(vertices)
    top = max(vertices) if vertices else 0
    edges = []
    for a in vertices:
        b = 2 * a
        while b <= top:
            if b in present:
                edges.append((a, b))
            b += a
    return edges


def build_graph(kind: GraphKind, sieve: FactorSieve) -> Graph:
    """Divisibility graph of the requested kind; edge {a,b} iff a|b or b|a."""
    if kind.param > sieve.limit:
        raise InvalidArgumentError(f"parameter {kind.param} exceeds sieve limit {sieve.limit}")
    n = kind.param
    if kind.name == "integer":
        vertices = list(range(2, n + 1))
    elif kind.name == "prime":
        vertices = [v for v in range(2, n + 1) if sieve.is_squarefree(v)]
    else:
        vertices = [d for d in squarefree_divisors(n, sieve) if d != 1 and d != n]
    return Graph(vertices, _divisibility_edges(vertices), kind=kind.name, param=n)


def induced_subgraph(G: Graph, W) -> Graph:
    """Subgraph on W with every edge of G internal to W."""
    W = set(W)
    for w in W:
        if not G.has_vertex(w):
            raise InvalidArgumentError(f"unknown vertex label {w}")
    edges = [(a, b) for a in W for b in G.neighbor_set(a) & W if a < b]
    return Graph(W, edges)


def unit_sphere(G: Graph, x: int) -> Graph:
    """Induced subgraph on the neighbors of x (x itself excluded)."""
    return induced_subgraph(G, G.neighbor_set(x))


def components(G: Graph) -> list[set[int]]:
    """Connected components as label sets, ordered by smallest member."""
    seen: set[int] = set()
    out = []
    for v in G.labels:
        if v in seen:
            continue
        comp = {v}
        queue = deque([v])
        while queue:
            u = queue.popleft()
            for w in G.neighbors(u):
                if w not in comp:
                    comp.add(w)
                    queue.append(w)
        seen |= comp
        out.append(comp)
    return out


def bfs_distances(G: Graph, source: int, within: set[int] | None = None) -> dict[int, int]:
    """BFS distance map from source, optionally restricted to a vertex subset."""
    if not G.has_vertex(source):
        raise InvalidArgumentError(f"unknown vertex label {source}")
    dist = {source: 0}
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for w in G.neighbors(u):
            if w in dist or (within is not None and w not in within):
                continue
            dist[w] = dist[u] + 1
            queue.append(w)
    return dist


def component_diameter(G: Graph, anchor: int = 2) -> int:
    """Max BFS distance over vertex pairs in the anchor's component."""
    comp = bfs_distances(G, anchor).keys()
    best = 0
    for v in comp:
        ecc = max(bfs_distances(G, v).values())
        best = max(best, ecc)
    return best


def cliques(G: Graph, dim_cap: int | None = None) -> list[list[tuple[int, ...]]]:
    """All complete subgraphs of G, grouped by dimension (size-1).

    Returns per-dimension lists of ascending vertex tuples, each list in
    lexicographic order.  dim_cap bounds the simplex dimension if given.
    """
    by_dim: list[list[tuple[int, ...]]] = []
    if G.n_vertices == 0:
        return by_dim

    def grow(clique: tuple[int, ...], candidates: tuple[int, ...]):
        dim = len(clique) - 1
        while dim >= len(by_dim):
            by_dim.append([])
        by_dim[dim].append(clique)
        if dim_cap is not None and dim >= dim_cap:
            return
        for i, v in enumerate(candidates):
            nxt = tuple(u for u in candidates[i + 1 :] if G.has_edge(v, u))
            grow(clique + (v,), nxt)

    for v in G.labels:
        larger = tuple(u for u in G.neighbors(v) if u > v)
        grow((v,), larger)
    return by_dim


def barycentric_refinement(G: Graph) -> Graph:
    """Graph on the simplices of G, joined by strict containment.

    Fresh labels 1..N are assigned by sorting all simplices lexicographically
    as vertex tuples, which is stable across runs.
    """
    simplices = sorted(s for dim in cliques(G) for s in dim)
    label_of = {s: i + 1 for i, s in enumerate(simplices)}
    sets = [frozenset(s) for s in simplices]
    edges = []
    for i, si in enumerate(sets):
        for j in range(i + 1, len(sets)):
            sj = sets[j]
            if si < sj or sj < si:
                edges.append((label_of[simplices[i]], label_of[simplices[j]]))
    return Graph(range(1, len(simplices) + 1), edges)


def graph_product(G: Graph, H: Graph) -> Graph:
    """Simplex-pair product: vertices are (simplex of G, simplex of H) pairs.

    An edge joins two pairs when one is coordinatewise contained in the other.
    Labels 1..N follow the lexicographic order of the tuple pairs.
    """
    sg = sorted(s for dim in cliques(G) for s in dim)
    sh = sorted(s for dim in cliques(H) for s in dim)
    pairs = [(a, b) for a in sg for b in sh]
    label_of = {p: i + 1 for i, p in enumerate(pairs)}
    psets = [(frozenset(a), frozenset(b)) for a, b in pairs]
    edges = []
    for i, (ai, bi) in enumerate(psets):
        for j in range(i + 1, len(psets)):
            aj, bj = psets[j]
            if (ai <= aj and bi <= bj) or (aj <= ai and bj <= bi):
                edges.append((label_of[pairs[i]], label_of[pairs[j]]))
    return Graph(range(1, len(pairs) + 1), edges)


def kummer_involution(m: int, sieve: FactorSieve) -> dict[int, int]:
    """The map k -> m/k on the vertices of Divisor(m), verified as an automorphism."""
    sig = sieve.signature(m)
    if not sig.squarefree:
        raise InvalidArgumentError(f"{m} is not squarefree")
    if sig.nu < 2:
        raise InvalidArgumentError(f"{m} needs at least 2 prime factors")
    G = build_graph(GraphKind.divisor(m), sieve)
    perm = {v: m // v for v in G.labels}
    if sorted(perm.values()) != list(G.labels):
        raise InternalConsistencyError("k -> m/k does not permute the divisor vertices")
    for a, b in G.edges():
        if not G.has_edge(perm[a], perm[b]):
            raise InternalConsistencyError("k -> m/k is not a graph automorphism")
    return perm


def heteroclinic(G: Graph, x: int, y: int) -> set[int]:
    """Vertices z of a divisibility graph with x | z and z | y."""
    for v in (x, y):
        if not G.has_vertex(v):
            raise InvalidArgumentError(f"unknown vertex label {v}")
    return {z for z in G.labels if z % x == 0 and y % z == 0}


def complete_graph(k: int) -> Graph:
    """K_k on labels 1..k."""
    vs = range(1, k + 1)
    return Graph(vs, [(a, b) for a in vs for b in vs if a < b])


def cycle_graph(k: int) -> Graph:
    """C_k on labels 1..k (k >= 3)."""
    if k < 3:
        raise InvalidArgumentError(f"cycle needs >= 3 vertices, got {k}")
    return Graph(range(1, k + 1), [(i, i % k + 1) for i in range(1, k + 1)])


def path_graph(k: int) -> Graph:
    """Path on labels 1..k."""
    return Graph(range(1, k + 1), [(i, i + 1) for i in range(1, k)])


def verify_component_diameter_bound(G: Graph, n_max: int, bound: int = 5, anchor: int = 2) -> int | None:
    """First n in [4, n_max] where the anchor component's diameter exceeds bound.

    Returns None when the bound holds everywhere.  Distances between existing
    vertices only shrink as the filtration grows, so each pair needs checking
    only at the first n where both ends sit in the anchor's component; a BFS
    from every vertex at its own join time covers all pairs.
    """
    if not G.has_vertex(anchor):
        raise InvalidArgumentError(f"unknown anchor {anchor}")

    def in_component(v: int, n: int) -> bool:
        # squarefree divisibility graphs: composites attach on arrival, a
        # prime p joins when 2p arrives
        if v > n:
            return False
        return v == anchor or not _is_prime_label(v) or 2 * v <= n

    def joins_at(v: int) -> int:
        if v == anchor:
            return v
        return 2 * v if _is_prime_label(v) else v

    events: dict[int, list[int]] = {}
    for v in G.labels:
        events.setdefault(joins_at(v), []).append(v)
    for n in range(4, n_max + 1):
        for w in events.get(n, ()):
            if not in_component(w, n):
                continue
            members = {v for v in G.labels if in_component(v, n)}
            dist = bfs_distances(G, w, within=members)
            if len(dist) != len(members):
                raise InternalConsistencyError(f"anchor component disconnected at n={n}")
            if max(dist.values()) > bound:
                return n
    return None


def _is_prime_label(v: int) -> bool:
    if v < 2:
        return False
    p = 2
    while p * p <= v:
        if v % p == 0:
            return False
        p += 1
    return True
