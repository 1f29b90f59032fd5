import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from k3pol.lattice import k3n_lattice, mukai_lattice, standard_lattice  # noqa: E402


@pytest.fixture
def U():
    return standard_lattice("U")


@pytest.fixture
def k3n5():
    return k3n_lattice(5)


@pytest.fixture
def mukai():
    return mukai_lattice()


@pytest.fixture
def worked_lambda(k3n5):
    """2e3 + 2f3 + l at n = 5."""
    return k3n5.from_labels({"e3": 2, "f3": 2, "l": 1})
