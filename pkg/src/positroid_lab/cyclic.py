"""Cyclic orders on [n], k-subsets as bitmasks, and the weak separation test.

Ground-set labels run 1..n.  A subset is stored as an integer bitmask where
bit (x-1) encodes label x; the canonical order on subsets is plain integer
order of the mask, which is what every tie-break in this package uses.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

MAX_GROUND_SET = 32


class InvalidInputError(ValueError):
    """Raised when an argument violates a documented precondition."""


def mask_of(elements, n: int) -> int:
    """Bitmask for an iterable of distinct labels in 1..n."""
    bits = 0
    for x in elements:
        if not 1 <= x <= n:
            raise InvalidInputError(f"label {x} outside 1..{n}")
        b = 1 << (x - 1)
        if bits & b:
            raise InvalidInputError(f"duplicate label {x}")
        bits |= b
    return bits


def bits_of(mask: int) -> tuple[int, ...]:
    """Ascending labels encoded by a mask."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length())
        mask ^= low
    return tuple(out)


@dataclass(frozen=True)
class KSet:
    """A subset of [n] with value semantics; k is the popcount of ``bits``."""

    bits: int
    n: int

    def __post_init__(self):
        if not 3 <= self.n <= MAX_GROUND_SET:
            raise InvalidInputError(f"ground set size {self.n} outside 3..{MAX_GROUND_SET}")
        if self.bits >> self.n:
            raise InvalidInputError("mask has bits above the ground set")

    @classmethod
    def of(cls, elements, n: int) -> "KSet":
        return cls(mask_of(elements, n), n)

    @property
    def k(self) -> int:
        return self.bits.bit_count()

    def elements(self) -> tuple[int, ...]:
        return bits_of(self.bits)

    def __contains__(self, x: int) -> bool:
        return 1 <= x <= self.n and bool(self.bits >> (x - 1) & 1)

    def __str__(self) -> str:
        return format_labels(self.elements())

    def __or__(self, other: "KSet") -> "KSet":
        self._check(other)
        return KSet(self.bits | other.bits, self.n)

    def __and__(self, other: "KSet") -> "KSet":
        self._check(other)
        return KSet(self.bits & other.bits, self.n)

    def __sub__(self, other: "KSet") -> "KSet":
        self._check(other)
        return KSet(self.bits & ~other.bits, self.n)

    def _check(self, other: "KSet"):
        if self.n != other.n:
            raise InvalidInputError("mismatched ground sets")


def format_labels(elements) -> str:
    """Space-separated ascending labels; labels >= 10 are parenthesized."""
    return " ".join(str(x) if x < 10 else f"({x})" for x in elements)


def parse_labels(text: str) -> tuple[int, ...]:
    """Inverse of :func:`format_labels`; accepts e.g. ``"1 2 4 9"`` or ``"3 (10)"``."""
    out = []
    for token in text.split():
        if token.startswith("(") and token.endswith(")"):
            token = token[1:-1]
        if not token.isdigit():
            raise InvalidInputError(f"bad label token {token!r}")
        out.append(int(token))
    return tuple(out)


def cyclically_ordered(seq) -> bool:
    """True iff some rotation of ``seq`` is strictly increasing (distinct labels)."""
    vals = list(seq)
    if len(set(vals)) != len(vals):
        raise InvalidInputError("elements must be distinct")
    if len(vals) <= 2:
        return True
    descents = sum(1 for a, b in zip(vals, vals[1:] + vals[:1]) if a > b)
    return descents == 1


def cyclic_key(anchor: int, n: int):
    """Sort key realizing the linear order <_anchor, i.e. anchor, anchor+1, .., anchor-1."""
    return lambda x: (x - anchor) % n


def cyclic_sort(anchor: int, s: KSet) -> tuple[int, ...]:
    """Elements of ``s`` sorted by the order <_anchor."""
    if s.bits == 0:
        raise InvalidInputError("empty set")
    return tuple(sorted(s.elements(), key=cyclic_key(anchor, s.n)))


def _transitions(amask: int, bmask: int) -> int:
    # Tag changes around the full circle of the symmetric difference.
    first = None
    prev = None
    count = 0
    d = amask | bmask
    while d:
        low = d & -d
        d ^= low
        tag = bool(low & amask)
        if first is None:
            first = tag
        elif tag != prev:
            count += 1
        prev = tag
    if prev != first:
        count += 1
    return count


def weakly_separated_masks(a: int, b: int) -> bool:
    """Chord test on raw masks: the two set differences occupy disjoint arcs."""
    da = a & ~b
    db = b & ~a
    if da.bit_count() <= 1 or db.bit_count() <= 1:
        return True
    return _transitions(da, db) <= 2


def weakly_separated(a: KSet, b: KSet, debug: bool = False) -> bool:
    """Weak separation of two subsets of the same ground set.

    The production path is the O(k) chord test; ``debug=True`` additionally
    runs the quadruple-witness search straight off the definition and insists
    the two agree.
    """
    if a.n != b.n:
        raise InvalidInputError("mismatched ground sets")
    result = weakly_separated_masks(a.bits, b.bits)
    if debug:
        witness = not _has_witness(a, b)
        if witness != result:
            raise AssertionError(
                f"chord test ({result}) disagrees with witness search ({witness}) "
                f"for {a} | {b}"
            )
    return result


def _has_witness(a: KSet, b: KSet) -> bool:
    # Quadruple x, y, x', y' cyclically ordered with x,x' in a\b and y,y' in b\a.
    da = (a - b).elements()
    db = (b - a).elements()
    n = a.n
    for x, x2 in combinations(da, 2):
        for y, y2 in combinations(db, 2):
            for p, q in ((y, y2), (y2, y)):
                u = (p - x) % n
                v = (x2 - x) % n
                w = (q - x) % n
                if 0 < u < v < w:
                    return True
    return False


def pairwise_weakly_separated(coll) -> bool:
    """True iff all pairs in the collection are weakly separated."""
    sets = list(coll)
    return all(weakly_separated(a, b) for a, b in combinations(sets, 2))


def kset_leq(anchor: int, v: KSet, w: KSet) -> bool:
    """Componentwise <=_anchor comparison after sorting both sets by <_anchor."""
    if v.n != w.n:
        raise InvalidInputError("mismatched ground sets")
    if v.k != w.k:
        raise InvalidInputError("size mismatch")
    key = cyclic_key(anchor, v.n)
    for x, y in zip(cyclic_sort(anchor, v), cyclic_sort(anchor, w)):
        if key(x) > key(y):
            return False
    return True


def quasi_adjacent(a: KSet, b: KSet) -> bool:
    """True iff the two k-sets share exactly k-1 elements."""
    if a.n != b.n:
        raise InvalidInputError("mismatched ground sets")
    return (a.bits & b.bits).bit_count() == a.k - 1 == b.k - 1
