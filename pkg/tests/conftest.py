from pathlib import Path

import numpy as np
import pytest

from cone_fixpoint import ConeMetricSpace, ConeVector, Potential, SetValuedMap
from cone_fixpoint.ordered_space import LinearMap, OrderedSpace

REPO_ROOT = Path(__file__).resolve().parent.parent
FIXTURE_DIR = REPO_ROOT / "fixtures"


@pytest.fixture
def std2() -> OrderedSpace:
    return OrderedSpace.standard(2)


@pytest.fixture
def skew2() -> OrderedSpace:
    # columns (1, 0) and (1, 1): a genuinely non-componentwise order
    return OrderedSpace(2, ((1.0, 1.0), (0.0, 1.0)))


@pytest.fixture
def line_cms(std2) -> ConeMetricSpace:
    # three collinear points at 0, 1 and 3, scaled by the weight (1, 2)
    rho = np.array([[0.0, 1.0, 3.0], [1.0, 0.0, 2.0], [3.0, 2.0, 0.0]])
    return ConeMetricSpace.from_scaled_scalar(std2, ("p0", "p1", "p2"), rho, ConeVector.of(1.0, 2.0))


@pytest.fixture
def line_phi() -> Potential:
    return Potential.from_rows([[5.0, 10.0], [4.0, 8.0], [0.0, 0.0]])


@pytest.fixture
def line_tmap() -> SetValuedMap:
    return SetValuedMap.from_lists([[0], [0], [0, 1]])


@pytest.fixture
def half_identity(std2):
    cert = std2.shrinking_factor(LinearMap.scaled_identity(2, 0.5))
    assert cert is not None
    return cert


@pytest.fixture
def incomparable_cms(std2) -> ConeMetricSpace:
    # d(x,a) and d(x,b) are order-incomparable; their infimum is unattained
    v = ConeVector.of
    table = (
        (v(0.0, 0.0), v(1.0, 2.0), v(2.0, 1.0)),
        (v(1.0, 2.0), v(0.0, 0.0), v(1.0, 1.0)),
        (v(2.0, 1.0), v(1.0, 1.0), v(0.0, 0.0)),
    )
    return ConeMetricSpace(std2, ("x", "a", "b"), table)


@pytest.fixture
def boundary_cms(std2) -> ConeMetricSpace:
    # distances sit on the cone boundary: d(z, {b1, b2}) is zero although z is in neither
    v = ConeVector.of
    table = (
        (v(0.0, 0.0), v(0.0, 1.0), v(1.0, 0.0)),
        (v(0.0, 1.0), v(0.0, 0.0), v(1.0, 1.0)),
        (v(1.0, 0.0), v(1.0, 1.0), v(0.0, 0.0)),
    )
    return ConeMetricSpace(std2, ("z", "b1", "b2"), table)


@pytest.fixture
def line_fixture_path() -> Path:
    return FIXTURE_DIR / "line_fixture.json"


@pytest.fixture
def incomparable_fixture_path() -> Path:
    return FIXTURE_DIR / "incomparable_fixture.json"
