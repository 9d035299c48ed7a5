import pytest

from shadowlab.curves import PolyChain

# Open 6-vertex lattice chain whose three shadows all classify as Cycle.
# Closing it stays simple but degrades the axis-2 shadow to Other, which
# is the closed-curve theorem showing its teeth.
SIX_VERTEX = ((1, 0, 1), (0, 0, 0), (1, 1, 0), (0, 3, 0), (2, 0, 2), (1, 0, 0))

# Closed 24-vertex unit-step cycle found by the tree-shadow search at
# seed 0 (grid 4, max length 24) and frozen here; each of its three
# shadows is a tree with exactly two branch points. Smallest known base
# for the suspension builds in the sphere tests.
TREE_WITNESS = (
    (1, 2, 2), (2, 2, 2), (2, 3, 2), (2, 4, 2), (1, 4, 2), (1, 4, 1),
    (2, 4, 1), (3, 4, 1), (3, 4, 2), (3, 3, 2), (3, 3, 1), (3, 3, 0),
    (3, 4, 0), (2, 4, 0), (2, 3, 0), (2, 2, 0), (3, 2, 0), (3, 2, 1),
    (2, 2, 1), (1, 2, 1), (1, 2, 0), (1, 3, 0), (1, 3, 1), (1, 3, 2),
)


@pytest.fixture(scope="session")
def six_chain() -> PolyChain:
    return PolyChain(SIX_VERTEX, closed=False)


@pytest.fixture(scope="session")
def tree_witness() -> PolyChain:
    return PolyChain(TREE_WITNESS, closed=True)
