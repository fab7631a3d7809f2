import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from flatfront.errors import ConstantFunction, EpsilonTooLarge, OutsideDomain
from flatfront.meromorphic import (
    INF, Domain, MeroFn, RamificationProfile, alpha_points, chordal, gamma_sum,
    island_threshold, islands, omitted_values, parse_value, poly_from_roots, poly_roots,
    ramification_floor,
)
from flatfront.verify import island_oracle, random_rational
from flatfront.weierstrass import voss_data

Z2 = MeroFn([0, 0, 1])
values = st.one_of(
    st.just(INF),
    st.builds(complex, st.floats(-50, 50), st.floats(-50, 50)),
)


def test_eval_examples():
    assert Z2.eval(1 + 1j) == pytest.approx(2j)
    assert MeroFn([1], [0, 1]).eval(0) == INF
    f = MeroFn([0, 0, 0, 0, -0.5])
    assert f.eval(2 ** 0.25) == pytest.approx(-1)


def test_eval_outside_domain():
    f = MeroFn([0, 1], domain=Domain("disk", radius=1.0))
    with pytest.raises(OutsideDomain):
        f.eval(2.0)


def test_parse_value():
    assert parse_value("1-2i") == 1 - 2j
    assert parse_value("inf") == INF
    assert parse_value(" 3 ") == 3


def test_chordal_examples():
    assert chordal(0, INF) == pytest.approx(1)
    assert chordal(1, -1) == pytest.approx(1)
    assert chordal(0.3 + 2j, 0.3 + 2j) == 0


@given(values, values)
def test_chordal_symmetric_and_bounded(a, b):
    assert chordal(a, b) == pytest.approx(chordal(b, a))
    assert 0 <= chordal(a, b) <= 1 + 1e-12


def test_alpha_points_examples():
    np.testing.assert_equal([m for _, m in alpha_points(Z2, 0)], [2])
    f = MeroFn([0, 0, 0, 0, -0.5])
    pts = alpha_points(f, 0)
    assert len(pts) == 1 and pts[0][1] == 4 and abs(pts[0][0]) < 1e-12


def test_alpha_points_at_omitted_values_of_voss_ratio():
    d = voss_data("1,-1,inf")
    for a in (1.0, -1.0, INF):
        assert alpha_points(d.rho, a) == []


def test_alpha_points_constant_raises():
    with pytest.raises(ConstantFunction):
        alpha_points(MeroFn([3.0]), 1.0)


def test_alpha_points_at_infinity_uses_chart():
    # 1/(z - 1) takes the value 0 once, at z = inf
    pts = alpha_points(MeroFn([1], [-1, 1]), 0)
    assert pts == [(INF, 1)]


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2 ** 32 - 1))
def test_degree_invariance(seed):
    rng = np.random.default_rng(seed)
    num = rng.normal(size=rng.integers(1, 7)) + 1j * rng.normal(size=1)
    den = rng.normal(size=rng.integers(1, 7)) + 1j * rng.normal(size=1)
    f = MeroFn(num, den)
    if f.is_constant():
        return
    alpha = complex(*rng.normal(size=2)) if rng.random() < 0.8 else INF
    total = sum(m for _, m in alpha_points(f, alpha))
    assert total == max(f.deg_num, f.deg_den)


@pytest.mark.parametrize("m", range(1, 11))
def test_poly_roots_multiplicity(m):
    c = poly_from_roots(1.0, [(0.3 + 0.2j, m), (-1.0, 1)])
    roots = poly_roots(c)
    assert sorted(k for _, k in roots) == sorted([m, 1])
    r, k = min(roots, key=lambda p: abs(p[0] - (0.3 + 0.2j)))
    assert k == m and abs(r - (0.3 + 0.2j)) < 1e-6


def test_poly_roots_separates_close_simple_roots():
    roots = poly_roots(poly_from_roots(1.0, [(0.5, 1), (0.501, 1)]))
    np.testing.assert_allclose(sorted(z.real for z, _ in roots), [0.5, 0.501], atol=1e-10)


def test_gamma_examples():
    assert gamma_sum([2] * 7) == pytest.approx(3.5)
    assert gamma_sum([INF] * 4) == pytest.approx(4)
    p = RamificationProfile([0, 1, INF], [INF] * 3)
    assert p.gamma == pytest.approx(3) and not p.gate_passed()
    assert RamificationProfile([0, 1, -1, INF], [INF] * 4).gate_passed()


@given(st.lists(st.integers(1, 20), min_size=1, max_size=8), st.integers(0, 7))
def test_gamma_monotone(ms, i):
    i %= len(ms)
    bigger = list(ms)
    bigger[i] += 1
    assert gamma_sum(bigger) > gamma_sum(ms)
    assert gamma_sum(ms + [2]) > gamma_sum(ms)


def test_ramification_floor_examples():
    assert ramification_floor(Z2, [0]) == [2]
    d = voss_data("0,inf")
    assert ramification_floor(d.rho, [0, INF]) == [INF, INF]
    assert ramification_floor(MeroFn([0, 1, 0, 1]), [0]) == [1]


def test_ramification_floor_real_power_monomial():
    f = MeroFn([2.0], power=1 / 3)
    assert ramification_floor(f, [1.0, 0, INF]) == [1, INF, INF]


def test_omitted_values_voss():
    omitted = omitted_values(voss_data("1,-1,inf").rho)
    assert set(map(str, omitted)) == {str(v) for v in (1 + 0j, -1 + 0j, INF)}


def test_islands_examples():
    rep = islands(MeroFn([0, 1]), 0, 0.1)
    assert rep.simple_count == 1 and rep.total_multiplicity == 1
    rep = islands(Z2, 0, 0.01)
    assert [m for _, m in rep.islands] == [2] and rep.simple_count == 0
    rep = islands(MeroFn([-1, 0, 1]), 0, 0.01)
    assert rep.simple_count == 2
    np.testing.assert_allclose(sorted(z.real for z, _ in rep.islands), [-1, 1], atol=1e-12)


def test_islands_rejects_large_eps():
    f = MeroFn([-1, 0, 1])
    with pytest.raises(EpsilonTooLarge):
        islands(f, 0, 2 * island_threshold(f, 0))


def test_islands_total_matches_alpha_points():
    rng = np.random.default_rng(5)
    for _ in range(10):
        f, alpha, _ = random_rational(rng)
        eps = 0.5 * min(island_threshold(f, alpha), 1.0)
        total = sum(m for _, m in alpha_points(f, alpha))
        assert islands(f, alpha, eps).total_multiplicity == total


def test_island_oracle_on_double_root():
    assert island_oracle(Z2, 0, 1e-3) == [2]
    assert island_oracle(MeroFn([-1, 0, 1]), 0, 1e-3) == [1, 1]


def test_json_round_trip():
    f = MeroFn([1, 2j], [3, 0, 1], power=0.5, domain=Domain("sphere", (0j, INF)))
    g = MeroFn.from_json(f.to_json())
    assert g.allclose(f) and g.power == f.power and g.domain == f.domain


def test_reduction_cancels_common_roots():
    f = MeroFn(poly_from_roots(1, [(1, 1), (2, 1)]), poly_from_roots(1, [(1, 1)]))
    assert f.deg_num == 1 and f.deg_den == 0
    assert f.eval(5) == pytest.approx(3)


def test_shifted_matches_translation():
    f = MeroFn([1, 2, 3], [1, 0, 1])
    g = f.shifted(1 + 1j)
    assert g.eval(0.25) == pytest.approx(f.eval(1.25 + 1j))


def test_log_chart_evaluation():
    f = MeroFn([2.0], power=math.pi)
    w = 0.3 + 7.0j
    assert f.eval_log(w) == pytest.approx(2 * np.exp(math.pi * w))
