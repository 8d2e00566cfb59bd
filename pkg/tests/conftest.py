import json
from pathlib import Path

import pytest

from klein_magic.documents import labeling_from_csv
from klein_magic.grid import GridDims
from klein_magic.search_graph import PathPartition

FIXTURES = Path(__file__).parent / "fixtures"


def load_table(number: int):
    return labeling_from_csv((FIXTURES / f"table{number}.csv").read_text())


def figure_partition(name: str) -> PathPartition:
    fig = json.loads((FIXTURES / "figures.json").read_text())[name]
    return PathPartition(GridDims(fig["m"], fig["n"]), tuple(fig["seq"]), tuple(tuple(p) for p in fig["paths"]))


@pytest.fixture(scope="session")
def figures():
    return json.loads((FIXTURES / "figures.json").read_text())


@pytest.fixture(scope="session")
def tables():
    return {k: load_table(k) for k in (1, 2, 3, 4)}


@pytest.fixture(scope="session")
def magic_3x6():
    from klein_magic.enumeration import brute_force_all

    return list(brute_force_all(GridDims(3, 6)))


@pytest.fixture(scope="session")
def magic_3x4():
    from klein_magic.enumeration import brute_force_all

    return list(brute_force_all(GridDims(3, 4)))
