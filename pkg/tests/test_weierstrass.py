import cmath

import numpy as np
import pytest

from flatfront.errors import BadParams, DuplicatePoints, NotAnEnd, TooManyPoints
from flatfront.meromorphic import INF, MeroFn
from flatfront.weierstrass import (
    WeierstrassData, custom_data, end_order, hopf, parse_points, ratio, revolution_data,
    voss_data,
)

W = np.array([0.1 + 0.2j, -0.7 + 2.5j, 0.9 - 3.0j])


def zpow(w, s):
    return np.exp(s * w)


@pytest.mark.parametrize("alpha", [1 / 3, -1.0, 0.0, 3.0, 0.25, -2.5])
@pytest.mark.parametrize("c", [1.0, 2.0, -0.5])
def test_revolution_coefficients(alpha, c):
    d = revolution_data(alpha, c)
    k = 1 - alpha
    h = -zpow(W, -2 / k) / c ** 2
    t = c ** 2 * alpha / k ** 2 * zpow(W, 2 * alpha / k)
    np.testing.assert_allclose(d.h.eval_log(W), h, rtol=1e-12)
    np.testing.assert_allclose(d.t.eval_log(W), t, rtol=1e-12, atol=1e-300)
    # rho = t / h
    rho = -c ** 4 * alpha / k ** 2 * zpow(W, 2 * (1 + alpha) / k)
    np.testing.assert_allclose(d.rho_at(W), rho, rtol=1e-12, atol=1e-300)
    assert d.is_consistent()


def test_revolution_horosphere():
    d = revolution_data(0.0, 1.0)
    np.testing.assert_allclose(d.h.eval_log(W), -zpow(W, -2))
    assert d.t.is_zero() and ratio(d).is_constant()
    assert [str(e) for e in d.ends] == ["0j"]


def test_revolution_cylinder_has_constant_ratio():
    for c in (1.0, 2.0):
        rho = ratio(revolution_data(-1.0, c))
        assert rho.is_constant()
        assert rho.eval(1.0) == pytest.approx(c ** 4 / 4)


def test_revolution_one_third_ratio():
    rho = ratio(revolution_data(1 / 3, 1.0))
    assert rho.allclose(MeroFn([0, 0, 0, 0, -0.75]))


@pytest.mark.parametrize("alpha,c", [(1.0, 1.0), (0.5, 0.0)])
def test_revolution_bad_params(alpha, c):
    with pytest.raises(BadParams):
        revolution_data(alpha, c)


def test_voss_examples():
    assert voss_data("inf").h.allclose(MeroFn([1.0]))
    assert voss_data("0,inf").h.allclose(MeroFn([1.0], [0, 1]))
    d = voss_data("1,-1,inf")
    assert d.h.allclose(MeroFn([1.0], [-1, 0, 1]))
    assert ratio(d).allclose(MeroFn([0, 1]))
    assert d.mobius is None


def test_voss_rejects_four_points_unless_forced():
    with pytest.raises(TooManyPoints):
        voss_data("1,-1,2,inf")
    assert voss_data("1,-1,2,inf", force=True).params["q"] == 4


def test_voss_rejects_duplicates():
    with pytest.raises(DuplicatePoints):
        voss_data("1,1,inf")


def test_voss_mobius_normalization():
    d = voss_data("0,1")
    a, b, c, dd = (complex(*v) if isinstance(v, list) else v for row in d.mobius for v in row)
    # z -> 1/(z - 1) sends the last point to infinity and 0 to -1
    assert (a * 0 + b) / (c * 0 + dd) == pytest.approx(-1)
    assert c * 1 + dd == 0
    assert any(e == INF for e in d.ends)


def test_parse_points():
    assert parse_points("1+2i, inf") == [1 + 2j, INF]


def test_hopf_revolution_has_no_umbilics():
    for alpha in (1 / 3, 3.0, -1.0):
        d = revolution_data(alpha, 2.0)
        q = hopf(d).q
        np.testing.assert_allclose(q.eval_log(W), -alpha / (1 - alpha) ** 2 * zpow(W, -2),
                                   rtol=1e-12)
        assert hopf(d).umbilics() == []


def test_hopf_zero_when_t_vanishes():
    assert hopf(revolution_data(0.0, 1.0)).q.is_zero()


def test_hopf_voss():
    q = hopf(voss_data("1,-1,inf"))
    assert q.q.allclose(MeroFn([0, 1], [1, 0, -2, 0, 1]))
    umb = q.umbilics()
    assert len(umb) == 1 and abs(umb[0][0]) < 1e-12 and umb[0][1] == 1


def test_end_order_examples():
    assert end_order(revolution_data(0.0, 1.0), 0) == -2
    assert end_order(revolution_data(1 / 3, 1.0), 0) == pytest.approx(-3)
    assert end_order(voss_data("1,-1,inf"), INF) == -1


@pytest.mark.parametrize("alpha", [1 / 3, -1.0, 0.0, 3.0, 0.25, -4.0])
def test_revolution_ends_certify(alpha):
    d = revolution_data(alpha, 1.0)
    for e in d.ends:
        assert end_order(d, e) <= -1


def test_end_order_rejects_non_end():
    with pytest.raises(NotAnEnd):
        end_order(voss_data("1,-1,inf"), 5.0)


def test_ratio_times_h_is_t():
    for d in (revolution_data(1 / 3, 2.0), voss_data("1j,2"), voss_data("0,inf")):
        np.testing.assert_allclose(d.rho_at(W) * d.coefficients(W)[0], d.coefficients(W)[1],
                                   rtol=1e-12)


def test_custom_data_and_json_round_trip():
    d = custom_data(MeroFn([1.0], [0, 1]), MeroFn([0, 0, 1]), ends=[0, INF])
    e = WeierstrassData.from_json(d.to_json())
    assert e.h.allclose(d.h) and e.rho.allclose(d.rho) and e.ends == d.ends
    for d in (revolution_data(0.25, 2.0), voss_data("0,1")):
        e = WeierstrassData.from_json(d.to_json())
        np.testing.assert_allclose(e.coefficients(W), d.coefficients(W))
        assert e.family == d.family and e.params == d.params


def test_chart_maps_invert():
    d = revolution_data(1 / 3, 1.0)
    z = d.z_from_chart(0.3 + 0.4j)
    assert z == pytest.approx(cmath.exp(0.3 + 0.4j))
    assert d.chart_from_z(z) == pytest.approx(0.3 + 0.4j)
