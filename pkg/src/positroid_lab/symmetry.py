"""Permutation symmetries of exchange graphs, gluing, and prime decomposition.

The equivalence class of a permutation is its closure under inverse,
label-reflections, between-label reflections (even ground sets only), and
rotations; all four leave the exchange graph unchanged up to isomorphism.
Splitting along quasi-adjacency chords of the necklace decomposes a graph
into a box product, which is what primality detects.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .cyclic import InvalidInputError, KSet
from .necklace import (
    GrassmannNecklace,
    Permutation,
    interior_size,
    necklace_from_permutation,
)


def _wrap(x: int, n: int) -> int:
    return (x - 1) % n + 1


def inverse_op(perm: Permutation) -> Permutation:
    return Permutation(perm.inverse_mapping)


def lr_op(perm: Permutation, two_i: int) -> Permutation:
    """Label reflection: j -> 2i - pi^{-1}(2i - j), everything modulo n."""
    if two_i % 2:
        raise InvalidInputError("label reflection takes an even parameter")
    n = perm.n
    inv = perm.inverse_mapping
    mapping = tuple(
        _wrap(two_i - inv[_wrap(two_i - j, n) - 1], n) for j in range(1, n + 1)
    )
    return Permutation(mapping)


def blr_op(perm: Permutation, odd: int) -> Permutation:
    """Between-label reflection, defined only for even ground sets."""
    if odd % 2 == 0:
        raise InvalidInputError("between-label reflection takes an odd parameter")
    if perm.n % 2:
        raise InvalidInputError("between-label reflection needs an even ground set")
    n = perm.n
    inv = perm.inverse_mapping
    mapping = tuple(
        _wrap(odd - inv[_wrap(odd - j, n) - 1], n) for j in range(1, n + 1)
    )
    return Permutation(mapping)


def rot_op(perm: Permutation, i: int) -> Permutation:
    """Rotation: j -> pi(j - i) + i modulo n."""
    n = perm.n
    mapping = tuple(
        _wrap(perm.mapping[_wrap(j - i, n) - 1] + i, n) for j in range(1, n + 1)
    )
    return Permutation(mapping)


def _raw_images(m: tuple[int, ...], n: int):
    """Generator images of one mapping under all four op families, unvalidated.

    Only ever fed bijections, whose images are again bijections, so the
    closure can skip per-element validation.
    """
    inv = [0] * n
    for pos, val in enumerate(m):
        inv[val - 1] = pos + 1
    yield tuple(inv)
    for i in range(1, n + 1):
        yield tuple((m[(j - i - 1) % n] + i - 1) % n + 1 for j in range(1, n + 1))
        t = 2 * i
        yield tuple((t - inv[(t - j - 1) % n] - 1) % n + 1 for j in range(1, n + 1))
        if n % 2 == 0:
            t = 2 * i - 1
            yield tuple((t - inv[(t - j - 1) % n] - 1) % n + 1 for j in range(1, n + 1))


def _orbit_mappings(mapping: tuple[int, ...]) -> frozenset[tuple[int, ...]]:
    n = len(mapping)
    seen = {mapping}
    frontier = [mapping]
    while frontier:
        nxt = []
        for m in frontier:
            for im in _raw_images(m, n):
                if im not in seen:
                    seen.add(im)
                    nxt.append(im)
        frontier = nxt
    return frozenset(seen)


@dataclass(frozen=True)
class EquivalenceClass:
    canonical: Permutation
    orbit: frozenset[tuple[int, ...]]

    @property
    def size(self) -> int:
        return len(self.orbit)

    def members(self) -> list[Permutation]:
        return [Permutation(m) for m in sorted(self.orbit)]


def orbit(perm: Permutation) -> EquivalenceClass:
    mappings = _orbit_mappings(perm.mapping)
    return EquivalenceClass(Permutation(min(mappings)), mappings)


def canonical_mapping(mapping: tuple[int, ...]) -> tuple[int, ...]:
    """Lex-least member of the orbit; the dedup key of the classification sweep."""
    return min(_orbit_mappings(mapping))


def canonical_rep(perm: Permutation) -> Permutation:
    return Permutation(canonical_mapping(perm.mapping))


def glue(p1: Permutation, p2: Permutation) -> Permutation:
    """Splice two boundary permutations into one on n + m - 2 labels.

    The box product of the two exchange graphs is the exchange graph of the
    result, and interior sizes add; the latter is asserted here.
    """
    n, m = p1.n, p2.n
    total = n + m - 2
    mapping = [0] * total
    for a in range(1, n):
        v = p1(a)
        mapping[a - 1] = p2(1) + n - 2 if v == n else v
    for a in range(2, m + 1):
        v = p2(a)
        mapping[n + a - 3] = p1(n) if v == 1 else v + n - 2
    glued = Permutation(tuple(mapping))
    got = interior_size(glued)
    want = interior_size(p1) + interior_size(p2)
    if got != want:
        raise AssertionError(
            f"interior sizes fail to add: {p1} + {p2} -> {glued} ({got} != {want})"
        )
    return glued


def unglue(perm: Permutation, u: int, v: int) -> tuple[Permutation, Permutation]:
    """Invert :func:`glue` at the circular interval [u, v] of positions.

    Requires exactly one image of the interval to land outside it.  Returns
    (outer, inner) so that gluing them back reproduces the rotated input.
    """
    total = perm.n
    shift = (total - v) % total
    rho = rot_op(perm, shift) if shift else perm
    length = (v - u) % total + 1
    if not 2 <= length <= total - 2:
        raise InvalidInputError("interval length out of range")
    m = length + 1
    n = total - length + 1
    inner_positions = range(n, total + 1)
    outer_mapping = [0] * n
    entry_pos = None
    for a in range(1, n):
        w = rho(a)
        if w >= n:
            if entry_pos is not None:
                raise InvalidInputError("interval image is not a single residue")
            entry_pos = a
            outer_mapping[a - 1] = n
        else:
            outer_mapping[a - 1] = w
    if entry_pos is None:
        raise InvalidInputError("no entry into the interval")
    residue = None
    inner_mapping = [0] * m
    for a in range(2, m + 1):
        w = rho(n + a - 2)
        if w >= n:
            inner_mapping[a - 1] = w - (n - 2)
        else:
            if residue is not None:
                raise InvalidInputError("interval image is not a single residue")
            residue = w
            inner_mapping[a - 1] = 1
    if residue is None:
        raise InvalidInputError("interval maps onto itself")
    outer_mapping[n - 1] = residue
    inner_mapping[0] = rho(entry_pos) - (n - 2)
    outer = Permutation(tuple(outer_mapping))
    inner = Permutation(tuple(inner_mapping))
    if glue(outer, inner).mapping != rho.mapping:
        raise AssertionError("unglue failed to invert glue")
    return outer, inner


def chord_pairs(necklace: GrassmannNecklace) -> list[tuple[int, int]]:
    """Quasi-adjacent, non-consecutive necklace index pairs (1-based)."""
    n, k = necklace.n, necklace.k
    out = []
    for i, j in combinations(range(1, n + 1), 2):
        if (j - i) % n in (1, n - 1):
            continue
        inter = necklace.sets[i - 1].bits & necklace.sets[j - 1].bits
        if inter.bit_count() == k - 1:
            out.append((i, j))
    return out


def _crosses(c1: tuple[int, int], c2: tuple[int, int]) -> bool:
    (a, b), (c, d) = c1, c2
    return (a < c < b < d) or (c < a < d < b)


def _accepted_chords(chords: list[tuple[int, int]]) -> tuple[list, list]:
    """Greedy laminar subfamily, shortest chord first; crossings are set aside."""
    accepted: list[tuple[int, int]] = []
    crossing: list[tuple[int, int]] = []
    for chord in sorted(chords, key=lambda c: (c[1] - c[0], c)):
        if any(_crosses(chord, other) for other in accepted):
            crossing.append(chord)
        else:
            accepted.append(chord)
    return accepted, crossing


def _faces(n: int, accepted: list[tuple[int, int]]) -> list[tuple[int, ...]]:
    children: dict[tuple[int, int] | None, list[tuple[int, int]]] = {None: []}
    for chord in sorted(accepted, key=lambda c: (-(c[1] - c[0]), c)):
        parent = None
        for other in accepted:
            if other == chord:
                continue
            if other[0] <= chord[0] and chord[1] <= other[1]:
                if parent is None or (
                    other[0] >= parent[0] and other[1] <= parent[1]
                ):
                    parent = other
        children.setdefault(chord, [])
        children.setdefault(parent, []).append(chord)
    faces = []
    outer = [
        p
        for p in range(1, n + 1)
        if not any(c[0] < p < c[1] for c in children[None])
    ]
    faces.append(tuple(outer))
    for chord in accepted:
        face = [
            p
            for p in range(chord[0], chord[1] + 1)
            if not any(c[0] < p < c[1] for c in children[chord])
        ]
        faces.append(tuple(face))
    return sorted(faces)


@dataclass(frozen=True)
class Decomposition:
    """Boundary cycle cut along quasi-adjacency chords."""

    necklace: GrassmannNecklace
    chords: tuple[tuple[KSet, KSet], ...]
    parts: tuple[tuple[KSet, ...], ...]
    part_interiors: tuple[int, ...] | None  # sorted; None when chords cross

    @property
    def is_prime(self) -> bool:
        return len(self.parts) == 1


def decomposition_set(necklace: GrassmannNecklace) -> Decomposition:
    chords = chord_pairs(necklace)
    accepted, crossing = _accepted_chords(chords)
    faces = _faces(necklace.n, accepted)
    parts = tuple(tuple(necklace.sets[p - 1] for p in face) for face in faces)
    chord_sets = tuple(
        (necklace.sets[i - 1], necklace.sets[j - 1]) for i, j in chords
    )
    interiors = None
    if not crossing:
        interiors = _split_interiors(necklace.permutation)
        if len(interiors) != len(parts) or sum(interiors) != interior_size(
            necklace.permutation
        ):
            raise AssertionError("part interiors disagree with the chord faces")
    return Decomposition(necklace, chord_sets, parts, interiors)


def prime_factor_interiors(perm: Permutation) -> tuple[int, ...]:
    """Interior sizes of the prime factors, via repeated unglue; sorted.

    Splits at the shortest chord first and re-derives the remaining chords
    from the outer factor, so it is defined even when the chord family is
    not laminar; the sizes always sum to the interior size of the input.
    """
    necklace = necklace_from_permutation(perm)
    chords = chord_pairs(necklace)
    if not chords:
        return (interior_size(perm),)
    p, q = min(chords, key=lambda c: (c[1] - c[0], c))
    outer, inner = unglue(perm, p, q - 1)
    return tuple(sorted(prime_factor_interiors(outer) + (interior_size(inner),)))


_split_interiors = prime_factor_interiors


def is_prime(necklace: GrassmannNecklace) -> bool:
    """A necklace is prime when no quasi-adjacency chord cuts its boundary."""
    return not chord_pairs(necklace)


def interval_nonprime_heuristic(perm: Permutation, max_length: int | None = None) -> bool:
    """True when some circular interval of length 2..max_length has a single residue.

    The default cap of n-2 makes the test agree with chord-based primality;
    ``max_length=n-1`` recovers the literal single-residue criterion, which
    also fires on some prime boundaries and is exposed only for comparison.
    """
    n = perm.n
    if max_length is None:
        max_length = n - 2
    for start in range(1, n + 1):
        inside = 0
        image: list[int] = []
        for length in range(1, min(max_length, n - 1) + 1):
            p = _wrap(start + length - 1, n)
            inside |= 1 << (p - 1)
            image.append(perm(p))
            if length < 2:
                continue
            outside = sum(1 for w in image if not inside >> (w - 1) & 1)
            if outside == 1:
                return True
    return False
