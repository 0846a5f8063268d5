"""Shared fixtures: the three-sector reference economy and its change.

Arrays are written out literally here rather than imported from the
package's embedded example, so tests would still catch an accidental
edit of the embedded data.
"""

import numpy as np
import pytest

from okishio_lab import TechChange, Technology, WageBundle


@pytest.fixture
def ref_inputs():
    return np.array(
        [
            [0.35, 0.05, 0.25],
            [0.15, 0.45, 0.05],
            [0.15, 0.15, 0.35],
        ]
    )


@pytest.fixture
def ref_tech(ref_inputs):
    return Technology(ref_inputs, np.array([0.2, 0.15, 0.25]))


@pytest.fixture
def ref_bundle():
    return WageBundle(np.array([1.0, 1.0, 1.0]) / 3.0)


@pytest.fixture
def ref_change():
    return TechChange(
        sector=2, new_column=np.array([0.27, 0.07, 0.37]), new_labor=0.18
    )


@pytest.fixture
def one_sector_tech():
    return Technology(np.array([[0.5]]), np.array([1.0]))


@pytest.fixture
def one_sector_bundle():
    return WageBundle(np.array([0.25]))


@pytest.fixture
def equal_organic_tech():
    # Every sector has the same input/labor proportions, so all
    # price-value ratios coincide and there is no admissibility headroom.
    return Technology(np.full((3, 3), 1.0 / 6.0), np.full(3, 0.2))


@pytest.fixture
def equal_organic_bundle():
    return WageBundle(np.full(3, 0.5))
