import numpy as np
import pytest

from flatfront import verify
from flatfront.meromorphic import MeroFn


def test_singular_radius_formula():
    assert verify.singular_radius(1 / 3, 1.0) == pytest.approx((4 / 3) ** 0.25)
    # |rho| = c^4 |alpha| / (1 - alpha)^2 r^{2(1 + alpha)/(1 - alpha)} = 1
    a, c = 3.0, 2.0
    r = verify.singular_radius(a, c)
    assert c ** 4 * a / (1 - a) ** 2 * r ** (2 * (1 + a) / (1 - a)) == pytest.approx(1)


def test_random_rational_plants_multiplicities():
    rng = np.random.default_rng(0)
    for _ in range(20):
        f, alpha, planted = verify.random_rational(rng)
        assert f.deg_den <= f.deg_num <= 6
        for r, _ in planted:
            assert abs(f.eval(r) - alpha) < 1e-8 * max(1, abs(alpha))


def test_island_oracle_detects_triple_point():
    f = MeroFn([1, 3, 3, 1])  # (z + 1)^3
    assert verify.island_oracle(f, 0, 1e-3) == [3]


def test_gamma_and_model_checks_pass():
    assert verify.check_gamma().passed
    assert verify.check_model_identities(1000).passed


def test_check_lines():
    c = verify.Check("x", False, "detail")
    assert c.line() == "[FAIL] x: detail"
