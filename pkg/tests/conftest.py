"""Shared fixtures: the running 9-label example and small enumeration helpers."""

from __future__ import annotations

from itertools import permutations

import pytest

from positroid_lab import (
    GrassmannNecklace,
    Permutation,
    WSCollection,
    necklace_from_permutation,
)
from positroid_lab.necklace import is_connected_mapping

ACCEPTANCE_LINES: list[str] = []


def record_criterion(number: int, verdict: str, detail: str = ""):
    line = f"criterion {number:2d}: {verdict}"
    if detail:
        line += f" — {detail}"
    ACCEPTANCE_LINES.append(line)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(set(ACCEPTANCE_LINES)):
        terminalreporter.write_line(line)

EX9_NECKLACE = [
    (1, 2, 3, 4), (2, 3, 4, 5), (3, 4, 5, 6), (4, 5, 6, 7), (5, 6, 7, 8),
    (6, 7, 8, 9), (1, 7, 8, 9), (1, 2, 8, 9), (1, 2, 3, 9),
]

EX9_INTERIOR = [
    (5, 6, 7, 9), (1, 5, 6, 7), (1, 6, 7, 9), (1, 6, 8, 9), (1, 2, 6, 9),
    (1, 2, 4, 9), (1, 2, 4, 6), (1, 3, 4, 6), (1, 3, 4, 5), (3, 4, 6, 7),
    (1, 2, 6, 7), (1, 4, 6, 7),
]


@pytest.fixture(scope="session")
def ex9_necklace() -> GrassmannNecklace:
    return GrassmannNecklace.of(EX9_NECKLACE, 9)


@pytest.fixture(scope="session")
def ex9_collection(ex9_necklace) -> WSCollection:
    return WSCollection.over(ex9_necklace, EX9_NECKLACE + EX9_INTERIOR)


def connected_mappings(n: int):
    for mapping in permutations(range(1, n + 1)):
        if any(v == i for i, v in enumerate(mapping, start=1)):
            continue
        if is_connected_mapping(mapping):
            yield mapping


def connected_permutations(n: int):
    for mapping in connected_mappings(n):
        yield Permutation(mapping)


def necklace_of(text: str) -> GrassmannNecklace:
    return necklace_from_permutation(Permutation.from_string(text))
