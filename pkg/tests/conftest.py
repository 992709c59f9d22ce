import numpy as np
import pytest

from modalfit.data_model import NormalizationParams, NormalizedTable


def identity_table(values, names=None) -> NormalizedTable:
    """Wrap raw coordinates as an already-normalized table (offset 0, span 1)."""
    values = np.asarray(values, dtype=np.float64)
    ncol = values.shape[1]
    params = NormalizationParams(offsets=np.zeros(ncol), spans=np.ones(ncol))
    names = tuple(names) if names else tuple(f"c{i}" for i in range(ncol))
    return NormalizedTable(names, values, params)


@pytest.fixture
def rng():
    return np.random.Generator(np.random.Philox(424242))
