"""Non-commutative checks on D(S3), where the small fixtures are too symmetric to tell conventions apart."""

import pytest

from hopfx.braided_dual import check_k_reflection
from hopfx.doubles import build_elliptic, build_heisenberg, elliptic_witness

pytestmark = pytest.mark.slow


@pytest.fixture(scope="module")
def E0(ds3):
    return build_elliptic(ds3, 0, samples=2_000)


def test_swapping_X_and_Y_is_caught(ds3, E0):
    assert elliptic_witness(ds3, E0.X, E0.Y) is None
    assert elliptic_witness(ds3, E0.Y, E0.X) is not None


def test_heisenberg_double_DS3(ds3):
    DH = build_heisenberg(ds3, samples=2_000)
    assert check_k_reflection(ds3, 0, X=DH.X).ok
    assert check_k_reflection(ds3, 0, X=DH.Y)["k_reflection[k=0]"].holds
    assert elliptic_witness(ds3, DH.X, DH.Y) is None
