"""Exchange graphs, induced C-constant graphs, and exact graph isomorphism.

Certificates come from color refinement with individualization backtracking,
so equal certificates mean isomorphic graphs, full stop.  Graphs in this
pipeline stay small (the largest named one has 42 vertices), which keeps the
exact search comfortably cheap.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from math import comb

from .cyclic import InvalidInputError, weakly_separated_masks
from .necklace import GrassmannNecklace, PositroidView, expected_collection_size
from .collection import (
    WSCollection,
    initial_maximal_collection,
    mutation_sites_masks,
)


class BudgetExceededError(RuntimeError):
    """BFS frontier grew past the configured vertex budget."""


class OracleUnavailableError(RuntimeError):
    """The brute-force guard C(n,k) <= 70 was exceeded."""


@dataclass(frozen=True)
class LabeledGraph:
    """A simple graph whose vertices carry opaque payloads in canonical order."""

    vertices: tuple
    edges: frozenset  # unordered index pairs (i, j) with i < j
    necklace: GrassmannNecklace | None = None

    def __post_init__(self):
        for i, j in self.edges:
            if not (0 <= i < j < len(self.vertices)):
                raise InvalidInputError(f"bad edge ({i}, {j})")

    @property
    def order(self) -> int:
        return len(self.vertices)

    @property
    def size(self) -> int:
        return len(self.edges)

    @cached_property
    def neighbor_masks(self) -> tuple[int, ...]:
        masks = [0] * self.order
        for i, j in self.edges:
            masks[i] |= 1 << j
            masks[j] |= 1 << i
        return tuple(masks)

    def adjacency_lists(self) -> dict[int, list[int]]:
        """1-indexed adjacency lists, the wire format used for named graphs."""
        out = {i + 1: [] for i in range(self.order)}
        for i, j in sorted(self.edges):
            out[i + 1].append(j + 1)
            out[j + 1].append(i + 1)
        return {v: sorted(ns) for v, ns in out.items()}

    def collections(self) -> list[WSCollection]:
        if self.necklace is None:
            raise InvalidInputError("graph has no necklace context")
        return [WSCollection(self.necklace, v) for v in self.vertices]

    def relabeled(self, perm: list[int]) -> "LabeledGraph":
        """Graph with vertex i moved to position perm[i]; payloads follow."""
        vertices = [None] * self.order
        for i, p in enumerate(perm):
            vertices[p] = self.vertices[i]
        edges = frozenset(tuple(sorted((perm[i], perm[j]))) for i, j in self.edges)
        return LabeledGraph(tuple(vertices), edges, self.necklace)


def from_adjacency(adj: dict[int, list[int]]) -> LabeledGraph:
    """Build a graph from 1-indexed adjacency lists, validating symmetry."""
    order = len(adj)
    if sorted(adj) != list(range(1, order + 1)):
        raise InvalidInputError("adjacency keys must be 1..order")
    edges = set()
    for v, ns in adj.items():
        for w in ns:
            if w == v or not 1 <= w <= order:
                raise InvalidInputError(f"bad neighbor {w} of {v}")
            if v not in adj[w]:
                raise InvalidInputError(f"asymmetric edge {v}-{w}")
            edges.add((min(v, w) - 1, max(v, w) - 1))
    return LabeledGraph(tuple(range(1, order + 1)), frozenset(edges))


def exchange_graph(
    necklace: GrassmannNecklace,
    budget: int = 10**6,
    verify: bool = False,
) -> LabeledGraph:
    """BFS closure of the initial collection under single square moves."""
    start = initial_maximal_collection(necklace, verify=verify).sets
    n = necklace.n
    boundary = necklace.mask_set
    index: dict[tuple, int] = {start: 0}
    keys = [start]
    edges = set()
    queue = deque([start])
    view = PositroidView(necklace) if verify else None
    while queue:
        current = queue.popleft()
        ci = index[current]
        cset = frozenset(current)
        for site in mutation_sites_masks(cset, current, n):
            neighbor = tuple(sorted(cset - {site.victim} | {site.replacement}))
            ni = index.get(neighbor)
            if ni is None:
                if len(keys) >= budget:
                    raise BudgetExceededError(
                        f"exchange graph exceeded {budget} vertices"
                    )
                ni = len(keys)
                index[neighbor] = ni
                keys.append(neighbor)
                queue.append(neighbor)
                if not boundary <= frozenset(neighbor):
                    raise AssertionError("mutation removed a boundary set")
                if verify:
                    WSCollection(necklace, neighbor).verify(view)
            edges.add((min(ci, ni), max(ci, ni)))
    # Canonical vertex order is by encoded payload, independent of BFS schedule.
    rank = {key: pos for pos, key in enumerate(sorted(keys))}
    remap = [rank[key] for key in keys]
    vertices = tuple(sorted(keys))
    edges = frozenset(tuple(sorted((remap[i], remap[j]))) for i, j in edges)
    return LabeledGraph(vertices, edges, necklace)


def cconstant_graph(
    necklace: GrassmannNecklace,
    constant,
    graph: LabeledGraph | None = None,
    budget: int = 10**6,
) -> LabeledGraph:
    """Induced subgraph on the maximal collections containing the given sets."""
    masks = frozenset(
        m.bits if hasattr(m, "bits") else m for m in constant
    )
    for a, b in combinations(sorted(masks), 2):
        if not weakly_separated_masks(a, b):
            raise InvalidInputError("constant collection is not weakly separated")
    view = PositroidView(necklace)
    for m in sorted(masks):
        if not view.contains_mask(m):
            raise InvalidInputError("constant collection leaves the positroid")
    if graph is None:
        graph = exchange_graph(necklace, budget=budget)
    keep = [i for i, v in enumerate(graph.vertices) if masks <= frozenset(v)]
    lookup = {old: new for new, old in enumerate(keep)}
    vertices = tuple(graph.vertices[i] for i in keep)
    edges = frozenset(
        (lookup[i], lookup[j]) for i, j in graph.edges if i in lookup and j in lookup
    )
    return LabeledGraph(vertices, edges, necklace)


def codimension(necklace: GrassmannNecklace, constant) -> int:
    return expected_collection_size(necklace.permutation) - len(set(constant))


@dataclass(frozen=True)
class CanonicalCertificate:
    """Exact isomorphism fingerprint: adjacency bytes under a canonical labeling."""

    order: int
    size: int
    canonical_adjacency: bytes

    def hex(self) -> str:
        return self.canonical_adjacency.hex()


def _refine(neighbor_masks: tuple[int, ...], colors: list[int]) -> list[int]:
    n = len(neighbor_masks)
    while True:
        buckets: dict[int, list[int]] = {}
        for v in range(n):
            buckets.setdefault(colors[v], []).append(v)
        signatures = []
        for v in range(n):
            counts: dict[int, int] = {}
            m = neighbor_masks[v]
            while m:
                low = m & -m
                m ^= low
                c = colors[low.bit_length() - 1]
                counts[c] = counts.get(c, 0) + 1
            signatures.append((colors[v], tuple(sorted(counts.items()))))
        order = {sig: i for i, sig in enumerate(sorted(set(signatures)))}
        new = [order[sig] for sig in signatures]
        if new == colors:
            return colors
        colors = new


def _adjacency_bytes(neighbor_masks: tuple[int, ...], perm: list[int]) -> bytes:
    # perm[v] = canonical position of v; emit the upper triangle row-major.
    n = len(neighbor_masks)
    inv = [0] * n
    for v, p in enumerate(perm):
        inv[p] = v
    bits = []
    for i in range(n):
        vi = inv[i]
        mask = neighbor_masks[vi]
        for j in range(i + 1, n):
            bits.append(bool(mask >> inv[j] & 1))
    out = bytearray((len(bits) + 7) // 8)
    for idx, bit in enumerate(bits):
        if bit:
            out[idx >> 3] |= 1 << (idx & 7)
    return bytes(out)


def _canonical_search(neighbor_masks: tuple[int, ...], colors: list[int], best: list) -> None:
    n = len(neighbor_masks)
    colors = _refine(neighbor_masks, colors)
    class_of: dict[int, list[int]] = {}
    for v in range(n):
        class_of.setdefault(colors[v], []).append(v)
    target = None
    for c in sorted(class_of):
        if len(class_of[c]) > 1:
            target = class_of[c]
            break
    if target is None:
        cert = _adjacency_bytes(neighbor_masks, colors)
        if best[0] is None or cert < best[0]:
            best[0] = cert
        return
    for v in target:
        branched = list(colors)
        branched[v] = -1  # unique minimal color individualizes v
        _canonical_search(neighbor_masks, branched, best)


def canonical_certificate(graph: LabeledGraph) -> CanonicalCertificate:
    best = [None]
    _canonical_search(graph.neighbor_masks, [0] * graph.order, best)
    cert = best[0] if best[0] is not None else b""
    return CanonicalCertificate(graph.order, graph.size, cert)


def isomorphic(g1: LabeledGraph, g2: LabeledGraph) -> bool:
    if g1.order != g2.order or g1.size != g2.size:
        return False
    return canonical_certificate(g1) == canonical_certificate(g2)


def cartesian_product(g1: LabeledGraph, g2: LabeledGraph) -> LabeledGraph:
    """Box product: move in exactly one coordinate along an edge of that factor."""
    n2 = g2.order
    vertices = tuple((v1, v2) for v1 in g1.vertices for v2 in g2.vertices)
    edges = set()
    for i, j in g1.edges:
        for t in range(n2):
            edges.add((i * n2 + t, j * n2 + t))
    for i, j in g2.edges:
        for s in range(g1.order):
            edges.add((s * n2 + i, s * n2 + j))
    return LabeledGraph(vertices, frozenset(edges))


def shape(graph: LabeledGraph):
    """Coarse shape: ("path", m), ("cycle", m), ("tree", None) or ("other", None)."""
    n = graph.order
    if n == 0:
        return ("other", None)
    degrees = [m.bit_count() for m in graph.neighbor_masks]
    seen = {0}
    stack = [0]
    while stack:
        m = graph.neighbor_masks[stack.pop()]
        while m:
            low = m & -m
            m ^= low
            w = low.bit_length() - 1
            if w not in seen:
                seen.add(w)
                stack.append(w)
    connected = len(seen) == n
    if not connected:
        return ("other", None)
    if graph.size == n - 1:
        return ("path", n) if max(degrees, default=0) <= 2 else ("tree", None)
    if graph.size == n and all(d == 2 for d in degrees):
        return ("cycle", n)
    return ("other", None)


def brute_force_maximal_collections(
    necklace: GrassmannNecklace, guard: int = 70
) -> list[tuple[int, ...]]:
    """Oracle: maximal cliques of the weak-separation graph on the positroid.

    Independent of the mutation machinery; used to cross-check BFS enumeration.
    """
    import networkx as nx

    n, k = necklace.n, necklace.k
    if comb(n, k) > guard:
        raise OracleUnavailableError(f"C({n},{k}) exceeds the oracle guard {guard}")
    members = PositroidView(necklace).element_masks()
    g = nx.Graph()
    g.add_nodes_from(members)
    for a, b in combinations(members, 2):
        if weakly_separated_masks(a, b):
            g.add_edge(a, b)
    boundary = necklace.mask_set
    out = []
    for clique in nx.find_cliques(g):
        if boundary <= set(clique):
            out.append(tuple(sorted(clique)))
    return sorted(out)
