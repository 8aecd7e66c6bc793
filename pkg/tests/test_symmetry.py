"""Equivalence operations, orbits, gluing, and prime decomposition."""

import pytest

from conftest import connected_permutations, necklace_of
from positroid_lab import (
    GrassmannNecklace,
    Permutation,
    blr_op,
    canonical_certificate,
    cartesian_product,
    decomposition_set,
    exchange_graph,
    glue,
    interval_nonprime_heuristic,
    inverse_op,
    is_prime,
    isomorphic,
    lr_op,
    orbit,
    rot_op,
    unglue,
)
from positroid_lab.cyclic import InvalidInputError
from positroid_lab.necklace import interior_size
from positroid_lab.symmetry import canonical_mapping


P365124 = Permutation.from_string("365124")


def test_worked_examples():
    assert str(inverse_op(P365124)) == "451632"
    assert str(lr_op(P365124, 8)) == "465213"
    assert str(blr_op(P365124, 7)) == "541623"
    assert str(rot_op(P365124, 2)) == "465213"


def test_ops_are_involutions_or_cyclic():
    assert inverse_op(inverse_op(P365124)) == P365124
    assert lr_op(lr_op(P365124, 8), 8) == P365124
    assert blr_op(blr_op(P365124, 7), 7) == P365124
    assert rot_op(P365124, 6) == P365124
    assert rot_op(P365124, 0) == P365124
    assert str(inverse_op(Permutation.from_string("3412"))) == "3412"


def test_blr_requires_even_ground_set():
    with pytest.raises(InvalidInputError):
        blr_op(Permutation.from_string("34512"), 7)
    with pytest.raises(InvalidInputError):
        blr_op(P365124, 8)
    with pytest.raises(InvalidInputError):
        lr_op(P365124, 7)


def test_orbit_contains_worked_examples():
    cls = orbit(P365124)
    members = {str(p) for p in cls.members()}
    assert {"365124", "451632", "465213", "541623"} <= members
    assert str(cls.canonical) == min(members)


def test_orbit_closure_under_generators():
    cls = orbit(Permutation.from_string("34512"))
    n = 5
    for member in cls.members():
        images = [inverse_op(member)]
        for i in range(1, n + 1):
            images.append(rot_op(member, i))
            images.append(lr_op(member, 2 * i))
        for img in images:
            assert img.mapping in cls.orbit


def test_canonical_rep_idempotent():
    rep = canonical_mapping(P365124.mapping)
    assert canonical_mapping(rep) == rep


def test_orbit_of_312():
    cls = orbit(Permutation.from_string("312"))
    assert {str(p) for p in cls.members()} == {"231", "312"}


def test_glue_examples():
    glued = glue(Permutation.from_string("34512"), Permutation.from_string("3412"))
    assert str(glued) == "3461725"
    assert interior_size(glued) == 3
    small = glue(Permutation.from_string("3412"), Permutation.from_string("312"))
    assert str(small) == "35124"
    assert interior_size(small) == 1


def test_glued_graph_is_a_box_product():
    glued = necklace_of("3461725")
    product = cartesian_product(
        exchange_graph(necklace_of("34512")), exchange_graph(necklace_of("3412"))
    )
    g = exchange_graph(glued)
    assert g.order == 10
    assert isomorphic(g, product)


def test_glue_additivity_exhaustive():
    # glue() itself asserts that interior sizes add; sweeping all pairs of
    # small connected permutations exercises every branch of the splice.
    pool = {n: list(connected_permutations(n)) for n in range(3, 7)}
    for n in range(3, 7):
        for m in range(3, 7):
            for p1 in pool[n]:
                for p2 in pool[m]:
                    glue(p1, p2)


def test_unglue_inverts_glue():
    p1 = Permutation.from_string("34512")
    p2 = Permutation.from_string("3412")
    glued = glue(p1, p2)
    outer, inner = unglue(glued, p1.n, glued.n)
    assert outer.mapping == p1.mapping
    assert inner.mapping == p2.mapping


def test_decomposition_worked_example():
    nk = GrassmannNecklace.of(
        [
            (1, 2, 3, 4), (2, 3, 4, 5), (3, 4, 5, 8), (4, 5, 7, 8),
            (5, 6, 7, 8), (1, 6, 7, 8), (1, 4, 7, 8), (1, 3, 4, 8),
        ],
        8,
    )
    dec = decomposition_set(nk)
    part_families = [tuple(s.elements() for s in part) for part in dec.parts]
    assert part_families == [
        ((1, 2, 3, 4), (2, 3, 4, 5), (3, 4, 5, 8), (1, 3, 4, 8)),
        ((3, 4, 5, 8), (4, 5, 7, 8), (1, 4, 7, 8), (1, 3, 4, 8)),
        ((4, 5, 7, 8), (5, 6, 7, 8), (1, 6, 7, 8), (1, 4, 7, 8)),
    ]
    assert dec.part_interiors == (1, 1, 1)
    assert len(dec.chords) == 2
    assert not dec.is_prime


def test_decomposition_small_cases():
    one = decomposition_set(necklace_of("34512"))
    assert one.is_prime and one.chords == () and len(one.parts) == 1
    two = decomposition_set(necklace_of("351624"))
    assert not two.is_prime and len(two.parts) == 2
    assert [(a.elements(), b.elements()) for a, b in two.chords] == [
        ((1, 2, 4), (1, 4, 5))
    ]
    assert two.part_interiors == (1, 1)


def test_part_interiors_sum_to_interior():
    for text in ["3461725", "35124", "351624", "3456712"]:
        nk = necklace_of(text)
        dec = decomposition_set(nk)
        assert sum(dec.part_interiors) == interior_size(nk.permutation)


def test_is_prime_examples():
    assert is_prime(necklace_of("34512"))
    assert is_prime(necklace_of("312"))
    assert not is_prime(necklace_of("351624"))


def test_interval_heuristic_examples():
    assert interval_nonprime_heuristic(Permutation.from_string("351624"))
    assert not interval_nonprime_heuristic(Permutation.from_string("34512"))
    assert not interval_nonprime_heuristic(Permutation.from_string("3456712"))
    # Read without the length cap the single-residue criterion also fires on
    # a prime boundary, which is why the cap is the default.
    assert interval_nonprime_heuristic(Permutation.from_string("34512"), max_length=4)


def test_heuristic_agrees_with_chords_small():
    for n in range(3, 7):
        for perm in connected_permutations(n):
            nk = necklace_of(str(perm))
            assert interval_nonprime_heuristic(perm) == (not is_prime(nk))


def test_generators_preserve_certificates_n6():
    # Every generator application fixes the exchange-graph certificate.
    certs = {}
    for n in range(3, 7):
        for perm in connected_permutations(n):
            certs[perm.mapping] = canonical_certificate(
                exchange_graph(necklace_of(str(perm)))
            )
    for mapping, cert in certs.items():
        perm = Permutation(mapping)
        n = perm.n
        images = [inverse_op(perm)]
        for i in range(1, n + 1):
            images.append(rot_op(perm, i))
            images.append(lr_op(perm, 2 * i))
            if n % 2 == 0:
                images.append(blr_op(perm, 2 * i - 1))
        for image in images:
            assert certs[image.mapping] == cert
