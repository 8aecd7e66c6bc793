"""Grassmann necklaces, decorated permutations, and the bijection between them.

Only connected boundary data is supported: constructors reject permutations
that fix a circular interval, so decorations (fixed-point colors) never occur.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations

from .cyclic import (
    InvalidInputError,
    KSet,
    bits_of,
    cyclic_key,
    kset_leq,
)


class DisconnectedPermutationError(InvalidInputError):
    """Raised for boundary data that splits into independent circular intervals."""


def is_connected_mapping(mapping: tuple[int, ...]) -> bool:
    """True iff no proper circular interval of positions is mapped onto itself."""
    n = len(mapping)
    for start in range(n):
        interval = 0
        image = 0
        for length in range(n - 1):
            p = (start + length) % n
            interval |= 1 << p
            image |= 1 << (mapping[p] - 1)
            if interval == image:
                return False
    return True


@dataclass(frozen=True)
class Permutation:
    """A connected decorated permutation of [n]; ``mapping[i-1]`` is the image of i."""

    mapping: tuple[int, ...]

    def __post_init__(self):
        n = len(self.mapping)
        if n < 3:
            raise InvalidInputError("ground set must have at least 3 labels")
        if sorted(self.mapping) != list(range(1, n + 1)):
            raise InvalidInputError(f"not a permutation of 1..{n}: {self.mapping}")
        if not is_connected_mapping(self.mapping):
            raise DisconnectedPermutationError(f"disconnected permutation {self.mapping}")

    @classmethod
    def from_string(cls, text: str) -> "Permutation":
        return cls(parse_permutation(text))

    @property
    def n(self) -> int:
        return len(self.mapping)

    def __call__(self, i: int) -> int:
        return self.mapping[(i - 1) % self.n]

    @cached_property
    def inverse_mapping(self) -> tuple[int, ...]:
        inv = [0] * self.n
        for i, j in enumerate(self.mapping, start=1):
            inv[j - 1] = i
        return tuple(inv)

    @cached_property
    def k(self) -> int:
        """Number of anti-exceedances; the subset size of the associated necklace."""
        return sum(1 for i, j in enumerate(self.mapping, start=1) if j < i)

    def __str__(self) -> str:
        return format_permutation(self.mapping)


def parse_permutation(text: str) -> tuple[int, ...]:
    """Parse the compact digit form, e.g. ``"3412"`` or ``"3(10)98712654"``."""
    values = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "(":
            close = text.find(")", i)
            if close < 0:
                raise InvalidInputError(f"unbalanced parenthesis in {text!r}")
            values.append(int(text[i + 1 : close]))
            i = close + 1
        elif ch.isdigit():
            values.append(int(ch))
            i += 1
        else:
            raise InvalidInputError(f"bad character {ch!r} in permutation {text!r}")
    return tuple(values)


def format_permutation(mapping) -> str:
    return "".join(str(v) if v < 10 else f"({v})" for v in mapping)


def alignment_count(perm: Permutation) -> int:
    """Number of unordered pairs {i, j} with i, pi(i), pi(j), j cyclically ordered."""
    return _alignment_count_raw(perm.mapping)


def _alignment_count_raw(mapping, cap: int | None = None) -> int:
    # For the ordered test 0 < u < v < w at most one orientation of a pair can
    # fire, so scanning ordered pairs counts each alignment exactly once.
    n = len(mapping)
    count = 0
    for i in range(1, n + 1):
        u = (mapping[i - 1] - i) % n
        if u == 0:
            continue
        for j in range(1, n + 1):
            if j == i:
                continue
            w = (j - i) % n
            if w == u:
                continue
            v = (mapping[j - 1] - i) % n
            if u < v < w:
                count += 1
                if cap is not None and count > cap:
                    return count
    return count


def expected_collection_size(perm: Permutation) -> int:
    """Cardinality of every maximal weakly separated collection: k(n-k)+1-A."""
    k = perm.k
    return k * (perm.n - k) + 1 - alignment_count(perm)


def interior_size(perm: Permutation) -> int:
    """Collection size minus the n boundary sets."""
    return expected_collection_size(perm) - perm.n


@dataclass(frozen=True)
class GrassmannNecklace:
    """Cyclic sequence I_1..I_n of k-subsets with I_{i+1} containing i+1 and I_i minus i."""

    sets: tuple[KSet, ...]

    def __post_init__(self):
        n = len(self.sets)
        if n < 3:
            raise InvalidInputError("necklace needs at least 3 entries")
        k = self.sets[0].k
        for idx, s in enumerate(self.sets):
            if s.n != n:
                raise InvalidInputError("necklace entry with wrong ground-set size")
            if s.k != k:
                raise InvalidInputError("necklace entries of unequal size")
            nxt = self.sets[(idx + 1) % n]
            i = idx + 1
            succ = i % n + 1
            if succ not in nxt:
                raise InvalidInputError(f"entry {succ} missing {succ}")
            if (s.bits & ~(1 << (i - 1))) & ~nxt.bits:
                raise InvalidInputError(f"entry {i+1} does not contain I_{i} minus {i}")
        # Rejects disconnected boundary data (also forces i in I_i throughout).
        permutation_from_necklace(self)

    @classmethod
    def of(cls, families, n: int) -> "GrassmannNecklace":
        return cls(tuple(KSet.of(fam, n) for fam in families))

    @property
    def n(self) -> int:
        return len(self.sets)

    @property
    def k(self) -> int:
        return self.sets[0].k

    @cached_property
    def mask_set(self) -> frozenset[int]:
        return frozenset(s.bits for s in self.sets)

    @cached_property
    def permutation(self) -> Permutation:
        return permutation_from_necklace(self)

    def __str__(self) -> str:
        return "(" + ", ".join("{" + str(s) + "}" for s in self.sets) + ")"


def permutation_from_necklace(necklace: GrassmannNecklace | tuple) -> Permutation:
    """The map pi(i) = j where I_{i+1} = (I_i minus i) union j."""
    sets = necklace.sets if isinstance(necklace, GrassmannNecklace) else necklace
    n = len(sets)
    mapping = []
    for idx, s in enumerate(sets):
        nxt = sets[(idx + 1) % n]
        added = nxt.bits & ~(s.bits & ~(1 << idx))
        if added == 0:
            # Repeated entry without i: the convention pi(i) = i applies and the
            # permutation constructor will reject it as disconnected.
            mapping.append(idx + 1)
        elif added.bit_count() == 1:
            mapping.append(added.bit_length())
        else:
            raise InvalidInputError("necklace step replaces more than one element")
    return Permutation(tuple(mapping))


def necklace_from_permutation(perm: Permutation) -> GrassmannNecklace:
    """The necklace I_i = { j : j <_i pi^{-1}(j) }."""
    n = perm.n
    inv = perm.inverse_mapping
    sets = []
    for i in range(1, n + 1):
        bits = 0
        for j in range(1, n + 1):
            if (j - i) % n < (inv[j - 1] - i) % n:
                bits |= 1 << (j - 1)
        sets.append(KSet(bits, n))
    return GrassmannNecklace(tuple(sets))


@dataclass(frozen=True)
class PositroidView:
    """Membership view of the positroid M_I; elements materialized only on request."""

    necklace: GrassmannNecklace
    _anchor_keys: tuple = field(init=False, repr=False, default=None)

    def __post_init__(self):
        n = self.necklace.n
        keys = tuple(
            tuple(sorted(s.elements(), key=cyclic_key(i + 1, n)))
            for i, s in enumerate(self.necklace.sets)
        )
        object.__setattr__(self, "_anchor_keys", keys)

    def contains(self, subset: KSet) -> bool:
        necklace = self.necklace
        if subset.n != necklace.n:
            raise InvalidInputError("mismatched ground sets")
        if subset.k != necklace.k:
            raise InvalidInputError("subset size differs from necklace size")
        return self.contains_mask(subset.bits)

    def contains_mask(self, bits: int) -> bool:
        n = self.necklace.n
        for i, entry in enumerate(self._anchor_keys, start=1):
            other = sorted(bits_of(bits), key=cyclic_key(i, n))
            for x, y in zip(entry, other):
                if (x - i) % n > (y - i) % n:
                    return False
        return True

    def elements(self) -> list[KSet]:
        """All positroid members in canonical (mask) order."""
        n = self.necklace.n
        return [KSet(m, n) for m in self.element_masks()]

    def element_masks(self) -> list[int]:
        n = self.necklace.n
        k = self.necklace.k
        out = []
        for combo in combinations(range(n), k):
            bits = 0
            for c in combo:
                bits |= 1 << c
            if self.contains_mask(bits):
                out.append(bits)
        out.sort()
        return out


def positroid_contains(view: PositroidView, subset: KSet) -> bool:
    return view.contains(subset)


def positroid_elements(view: PositroidView) -> list[KSet]:
    return view.elements()
