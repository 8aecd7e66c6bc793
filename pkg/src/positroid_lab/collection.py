"""Maximal weakly separated collections, square-move mutation, and tiling faces.

A collection is kept as a sorted tuple of bitmasks plus a frozenset for
membership; the sorted tuple doubles as the canonical dedup key during graph
enumeration.  Faces of the plabic tiling are computed combinatorially: a white
face is a (k-1)-set whose superset clique in the collection has at least three
members, a black face a (k+1)-set with a subset clique of at least three.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations

from .cyclic import InvalidInputError, KSet, bits_of, weakly_separated_masks
from .necklace import (
    GrassmannNecklace,
    PositroidView,
    expected_collection_size,
)


class PurityError(AssertionError):
    """An inclusion-maximal collection missed the cardinality k(n-k)+1-A."""


@dataclass(frozen=True)
class WSCollection:
    """A weakly separated collection over a fixed necklace, canonically ordered."""

    necklace: GrassmannNecklace
    sets: tuple[int, ...]  # sorted masks

    def __post_init__(self):
        if tuple(sorted(self.sets)) != self.sets:
            raise InvalidInputError("collection masks must be sorted")

    @classmethod
    def over(cls, necklace: GrassmannNecklace, families) -> "WSCollection":
        masks = {KSet.of(f, necklace.n).bits if not isinstance(f, KSet) else f.bits for f in families}
        masks.update(necklace.mask_set)
        return cls(necklace, tuple(sorted(masks)))

    @property
    def n(self) -> int:
        return self.necklace.n

    @property
    def k(self) -> int:
        return self.necklace.k

    @cached_property
    def mask_set(self) -> frozenset[int]:
        return frozenset(self.sets)

    def ksets(self) -> list[KSet]:
        return [KSet(m, self.n) for m in self.sets]

    @cached_property
    def is_maximal(self) -> bool:
        return len(self.sets) == expected_collection_size(self.necklace.permutation)

    def interior_masks(self) -> tuple[int, ...]:
        boundary = self.necklace.mask_set
        return tuple(m for m in self.sets if m not in boundary)

    def verify(self, view: PositroidView | None = None):
        """Re-check weak separation, necklace containment, and membership."""
        masks = self.sets
        for a, b in combinations(masks, 2):
            if not weakly_separated_masks(a, b):
                raise InvalidInputError(f"collection not weakly separated: {a:b} {b:b}")
        if not self.necklace.mask_set <= self.mask_set:
            raise InvalidInputError("collection does not contain its necklace")
        scott = self.k * (self.n - self.k) + 1
        if len(masks) > scott:
            raise PurityError(f"collection of size {len(masks)} exceeds the bound {scott}")
        if view is not None:
            for m in masks:
                if not view.contains_mask(m):
                    raise InvalidInputError(f"set {bits_of(m)} outside the positroid")
        return self


@dataclass(frozen=True)
class MutationSite:
    """One applicable square move: victim = V+{a,c}, replacement = V+{b,d}."""

    victim: int
    replacement: int
    witnesses: tuple[int, int, int, int, int]  # (V mask, a, b, c, d)


def initial_maximal_collection(necklace: GrassmannNecklace, verify: bool = False) -> WSCollection:
    """Greedy inclusion-maximal collection over the positroid, canonical order."""
    view = PositroidView(necklace)
    chosen = sorted(necklace.mask_set)
    for cand in view.element_masks():
        if cand in necklace.mask_set:
            continue
        if all(weakly_separated_masks(cand, m) for m in chosen):
            chosen.append(cand)
            chosen.sort()
    coll = WSCollection(necklace, tuple(chosen))
    expected = expected_collection_size(necklace.permutation)
    if len(chosen) != expected:
        raise PurityError(
            f"greedy maximal collection has {len(chosen)} sets, expected {expected}"
        )
    if verify:
        coll.verify(view)
    return coll


def mutation_sites_masks(mask_set: frozenset[int], sets: tuple[int, ...], n: int) -> list[MutationSite]:
    """All square-move sites of a maximal collection, one per victim."""
    sites: dict[int, MutationSite] = {}
    for s in sets:
        labels = bits_of(s)
        for a, c in combinations(labels, 2):
            vmask = s & ~(1 << (a - 1)) & ~(1 << (c - 1))
            # b runs over the open arc a->c, d over the open arc c->a.
            for b in _arc(a, c, n):
                if not vmask >> (b - 1) & 1 and (vmask | (1 << (a - 1)) | (1 << (b - 1))) in mask_set:
                    if (vmask | (1 << (b - 1)) | (1 << (c - 1))) in mask_set:
                        for d in _arc(c, a, n):
                            if vmask >> (d - 1) & 1:
                                continue
                            if (vmask | (1 << (c - 1)) | (1 << (d - 1))) in mask_set and (
                                vmask | (1 << (d - 1)) | (1 << (a - 1))
                            ) in mask_set:
                                repl = vmask | (1 << (b - 1)) | (1 << (d - 1))
                                prev = sites.get(s)
                                if prev is None:
                                    sites[s] = MutationSite(s, repl, (vmask, a, b, c, d))
                                elif prev.replacement != repl:
                                    raise AssertionError(
                                        f"victim {bits_of(s)} admits two replacements"
                                    )
    return [sites[s] for s in sorted(sites)]


def _arc(x: int, y: int, n: int):
    """Labels strictly between x and y going cyclically upward from x."""
    p = x % n + 1
    while p != y:
        yield p
        p = p % n + 1


def mutation_sites(coll: WSCollection) -> list[MutationSite]:
    return mutation_sites_masks(coll.mask_set, coll.sets, coll.n)


def mutate(coll: WSCollection, site: MutationSite, verify: bool = False) -> WSCollection:
    """Apply one square move, returning a fresh collection of the same size."""
    if site.victim not in coll.mask_set or site.replacement in coll.mask_set:
        raise InvalidInputError("stale mutation site")
    masks = sorted(coll.mask_set - {site.victim} | {site.replacement})
    out = WSCollection(coll.necklace, tuple(masks))
    if verify:
        out.verify(PositroidView(coll.necklace))
    return out


def face_counts(mask_set, sets, k: int, n: int):
    """Clique sizes per candidate face label: (white map, black map)."""
    white: dict[int, int] = {}
    black: dict[int, int] = {}
    for s in sets:
        for x in bits_of(s):
            lab = s & ~(1 << (x - 1))
            white[lab] = white.get(lab, 0) + 1
        rest = ((1 << n) - 1) & ~s
        while rest:
            low = rest & -rest
            rest ^= low
            lab = s | low
            black[lab] = black.get(lab, 0) + 1
    return white, black


@dataclass(frozen=True)
class Tiling:
    """Black/white faces of a collection plus a deterministic planar embedding."""

    collection: WSCollection
    white_faces: dict[int, tuple[int, ...]]  # (k-1)-mask -> clique of member masks
    black_faces: dict[int, tuple[int, ...]]  # (k+1)-mask -> clique of member masks

    @cached_property
    def positions(self) -> dict[int, tuple[float, float]]:
        """Vertex embedding: sum of unit vectors fanned over the upper half-plane."""
        n = self.collection.n
        rays = {}
        for i in range(1, n + 1):
            theta = math.pi * (n + 1 - i) / (n + 1)
            rays[i] = (math.cos(theta), math.sin(theta))
        pos = {}
        for m in self.collection.sets:
            x = sum(rays[e][0] for e in bits_of(m))
            y = sum(rays[e][1] for e in bits_of(m))
            pos[m] = (x, y)
        return pos

    def faces_at(self, mask: int) -> tuple[int, int]:
        """(white, black) face counts around one vertex of the tiling."""
        w = sum(1 for f, clique in self.white_faces.items() if mask in clique)
        b = sum(1 for f, clique in self.black_faces.items() if mask in clique)
        return w, b


def tiling(coll: WSCollection) -> Tiling:
    white, black = face_counts(coll.mask_set, coll.sets, coll.k, coll.n)
    wf = {
        lab: tuple(s for s in coll.sets if lab & s == lab)
        for lab, cnt in sorted(white.items())
        if cnt >= 3
    }
    bf = {
        lab: tuple(s for s in coll.sets if s & lab == s)
        for lab, cnt in sorted(black.items())
        if cnt >= 3
    }
    return Tiling(coll, wf, bf)


def is_mutatable_by_faces(coll: WSCollection, subset: KSet | int) -> bool:
    """True iff the set is surrounded by exactly 2 white and 2 black faces.

    Boundary sets line the rim of the tiling, so part of their neighborhood
    is the outer region and they are never surrounded, even when exactly four
    interior faces happen to touch them.
    """
    mask = subset.bits if isinstance(subset, KSet) else subset
    if mask not in coll.mask_set:
        raise InvalidInputError("set not in the collection")
    if mask in coll.necklace.mask_set:
        return False
    w, b = tiling(coll).faces_at(mask)
    return w == 2 and b == 2


def adjacent_masks(white, black, s: int, t: int, k: int) -> bool:
    inter = s & t
    if inter.bit_count() != k - 1:
        return False
    return white.get(inter, 0) >= 3 and black.get(s | t, 0) >= 3


def adjacent(coll: WSCollection, s: KSet | int, t: KSet | int) -> bool:
    """Interior-edge test: the pair borders both a white and a black face."""
    sm = s.bits if isinstance(s, KSet) else s
    tm = t.bits if isinstance(t, KSet) else t
    if sm not in coll.mask_set or tm not in coll.mask_set:
        raise InvalidInputError("both sets must belong to the collection")
    white, black = face_counts(coll.mask_set, coll.sets, coll.k, coll.n)
    return adjacent_masks(white, black, sm, tm, coll.k)


def adjacency_edges(coll: WSCollection, members: tuple[int, ...]) -> list[tuple[int, int]]:
    white, black = face_counts(coll.mask_set, coll.sets, coll.k, coll.n)
    k = coll.k
    edges = []
    for i, s in enumerate(members):
        for j in range(i + 1, len(members)):
            if adjacent_masks(white, black, s, members[j], k):
                edges.append((i, j))
    return edges


def adjacency_graph(coll: WSCollection, subsets):
    """Adjacency graph on a sub-collection disjoint from the necklace."""
    from .graphs import LabeledGraph

    members = tuple(sorted(m.bits if isinstance(m, KSet) else m for m in subsets))
    for m in members:
        if m not in coll.mask_set:
            raise InvalidInputError("vertex outside the collection")
        if m in coll.necklace.mask_set:
            raise InvalidInputError("adjacency graph vertices must avoid the necklace")
    return LabeledGraph(vertices=members, edges=frozenset(adjacency_edges(coll, members)))


def adjacency_grouping(coll: WSCollection, subsets) -> list[tuple[int, ...]]:
    """Partition of the sub-collection by connected components of its adjacency graph."""
    g = adjacency_graph(coll, subsets)
    parent = list(range(len(g.vertices)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, j in g.edges:
        parent[find(i)] = find(j)
    blocks: dict[int, list[int]] = {}
    for idx, m in enumerate(g.vertices):
        blocks.setdefault(find(idx), []).append(m)
    return sorted(tuple(sorted(b)) for b in blocks.values())
