# conftest.py

import os
import sys

import numpy as np
import pytest

# Add repository root to path to import config and src
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

from src.diagonal_engine import BaseAlgebra, TensorAlgebra
from src.semigroup_core import cyclic_group, max_semilattice, symmetric_inverse_monoid


@pytest.fixture
def rng():
    return np.random.default_rng(0)


@pytest.fixture
def max2():
    return max_semilattice(2)


@pytest.fixture
def c2():
    return cyclic_group(2)


@pytest.fixture
def i2():
    return symmetric_inverse_monoid(2)


@pytest.fixture
def max2_tensor(max2):
    return TensorAlgebra(BaseAlgebra.from_semigroup(max2))


@pytest.fixture
def c2_tensor(c2):
    return TensorAlgebra(BaseAlgebra.from_semigroup(c2))
