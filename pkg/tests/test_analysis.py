import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from flatfront import analysis as an
from flatfront.errors import NotWeaklyComplete, PoleAtPoint, SingularSample
from flatfront.grid import SampleGrid
from flatfront.meromorphic import INF
from flatfront.weierstrass import WeierstrassData, revolution_data, voss_data

R_SING = (4 / 3) ** 0.25  # |rho| = 1 for revolution(1/3, 1), rho = -3 z^4 / 4
FAMILIES = ([revolution_data(a, c) for a in (1 / 3, -1.0, 0.0, 3.0) for c in (1.0, 2.0)]
            + [voss_data(E) for E in ("inf", "0,inf", "1,-1,inf")])


def label(d):
    return f"{d.family}-{d.params.get('alpha', d.params.get('q'))}-{d.params.get('c', '')}"


def test_forms_horosphere():
    d = revolution_data(0.0, 1.0)
    w = 0.3 + 0.2j
    fa = an.forms_at(d, w)
    h2 = abs(d.coefficients(w)[0]) ** 2
    np.testing.assert_allclose(fa.II, [-h2, 0, -h2])
    assert not fa.singular and fa.abs_rho == 0


def test_forms_singular_flag_on_circle():
    d = revolution_data(1 / 3, 1.0)
    assert an.forms_at(d, math.log(R_SING) + 0.7j).singular
    assert not an.forms_at(d, math.log(R_SING) + 0.01 + 0.7j).singular


def test_forms_at_pole():
    with pytest.raises(PoleAtPoint):
        an.forms_at(voss_data("0,inf"), 0.0)


@settings(max_examples=100)
@given(st.sampled_from(range(len(FAMILIES))), st.floats(-1, 1), st.floats(-3, 3))
def test_det_identity(i, x, y):
    d = FAMILIES[i]
    w = complex(x, y) + (0 if d.chart == "log" else 0.05 + 0.05j)
    F = an.forms_arrays(d, w)
    ref = (abs(F["h"]) ** 2 - abs(F["t"]) ** 2) ** 2
    if ref < 1e-12:
        return
    assert an.form_det(F["I"]) == pytest.approx(ref, rel=1e-9)
    assert an.form_det(F["II"]) == pytest.approx(ref, rel=1e-9)


@pytest.mark.parametrize("d", FAMILIES, ids=label)
def test_first_form_semidefinite_and_lambda_positive(d):
    w = an.regular_samples(d, 200, np.random.default_rng(0), margin=0.0, rel_margin=0.0)
    F = an.forms_arrays(d, w)
    I = F["I"]
    assert np.all(I[:, 0] + I[:, 2] >= 0)
    assert np.all(an.form_det(I) >= -1e-12 * (I[:, 0] + I[:, 2]) ** 2)
    assert np.all(F["lam"] > 0)
    np.testing.assert_allclose(an.gauss_equation_defect(d, w), 0, atol=1e-9)


def test_singular_set_horosphere_empty():
    d = revolution_data(0.0, 1.0)
    assert an.singular_set(d, SampleGrid((-2, 2), (-2, 2), (128, 128), "plane")) == []


def test_singular_set_revolution_radius():
    d = revolution_data(1 / 3, 1.0)
    curves = an.singular_set(d, SampleGrid((-2, 2), (-2, 2), (512, 512), "plane"))
    assert len(curves) == 1
    c = curves[0]
    assert abs(c[0] - c[-1]) < 1e-9
    assert abs(np.mean(np.abs(c)) - R_SING) < 1e-3


def test_singular_set_rotation_invariant():
    d = revolution_data(1 / 3, 1.0)
    for rot in (0.0, 0.3, 1.1):
        g = SampleGrid((-2, 2), (-2, 2), (256, 256), "plane", rotation=rot)
        (c,) = an.singular_set(d, g)
        assert abs(np.mean(np.abs(c)) - R_SING) < 1e-3


def test_singular_set_voss_unit_circle():
    curves = an.singular_set(voss_data("0,inf"),
                             SampleGrid((-2, 2), (-2, 2), (256, 256), "plane"))
    pts = np.concatenate(curves)
    np.testing.assert_allclose(np.abs(pts), 1, atol=1e-3)


def test_singular_set_log_chart():
    d = revolution_data(1 / 3, 1.0)
    curves = an.singular_set(d, SampleGrid((-1, 1), (-math.pi, math.pi), (256, 256)))
    pts = np.concatenate(curves)
    np.testing.assert_allclose(pts.real, math.log(R_SING), atol=1e-4)


def test_ds11_length_monotone_and_log_growth():
    d = voss_data("1,-1,inf")
    cut = 2.0 * np.logspace(0, 4, 33)
    L = an.ds11_length(d, an.radial_ray(), cut)
    assert L[0] == 0 and np.all(np.diff(L) > 0)
    g = an.classify_growth(cut, L)
    assert g["verdict"] == "divergent"
    # integrand sqrt(1 + r^2) / (r^2 - 1) ~ 1/r
    assert g["log_slope"] == pytest.approx(1.0, rel=1e-3)


def test_ds11_length_matches_closed_form_for_q1():
    # rho = xi, h = 1 along the real ray: int sqrt(1 + r^2) dr
    d = voss_data("inf")
    cut = np.array([0.0, 1.0, 3.0])
    L = an.ds11_length(d, an.radial_ray(), cut)

    def F(r):
        return 0.5 * (r * math.sqrt(1 + r * r) + math.asinh(r))

    np.testing.assert_allclose(L, [0, F(1), F(3)], rtol=1e-10)


def test_ds11_length_converges_for_forced_q4():
    d = voss_data("1,-1,2,inf", force=True)
    cut = 1e3 * np.logspace(0, 6, 25)
    L = an.ds11_length(d, an.radial_ray(), cut)
    assert abs(L[-1] - L[-2]) < 1e-6
    assert an.classify_growth(cut, L)["verdict"] == "convergent"


def test_classify_growth_synthetic():
    R = np.logspace(1, 6, 41)
    assert an.classify_growth(R, 0.5 * np.log(R))["verdict"] == "divergent"
    assert an.classify_growth(R, 2.0 - 1.0 / R)["verdict"] == "convergent"


@pytest.mark.parametrize("alpha", [0.0, -1.0, 1 / 3, 3.0])
def test_completeness_revolution(alpha):
    v = an.completeness_probe(revolution_data(alpha, 1.0))
    assert an.is_weakly_complete(v)
    if alpha == 0.0:
        assert v[0].order == -2


@pytest.mark.parametrize("E", ["inf", "0,inf", "1,-1,inf", "1j,2", "0,1,2"])
def test_completeness_voss(E):
    assert all(v.verdict == an.COMPLETE for v in an.completeness_probe(voss_data(E)))


def test_completeness_forced_q4_incomplete_at_infinity():
    v = {str(x.end): x for x in an.completeness_probe(voss_data("1,-1,2,inf", force=True))}
    assert v["inf"].verdict == an.INCOMPLETE
    assert v["inf"].growth["limit_estimate"] == pytest.approx(0.160588, abs=1e-5)


def test_flatness_sweep_one_third():
    d = revolution_data(1 / 3, 1.0)
    s = an.regular_samples(d, 50, np.random.default_rng(0))
    k2, k3 = an.flatness_check(d, s, 1e-2), an.flatness_check(d, s, 1e-3)
    assert k3 < 1e-4 and k2 >= 10 * k3


def test_flatness_horosphere():
    d = revolution_data(0.0, 1.0)
    s = an.regular_samples(d, 50, np.random.default_rng(0))
    assert an.flatness_check(d, s, 1e-3) < 1e-4


@pytest.mark.parametrize("d", [d for d in FAMILIES if not d.rho.is_constant()], ids=label)
def test_flatness_convergence_order(d):
    s = an.regular_samples(d, 5, np.random.default_rng(1))
    k1 = an.flatness_check(d, s, 2e-3, dps=30)
    k2 = an.flatness_check(d, s, 1e-3, dps=30)
    assert k1 < 1e-4
    # polynomial metrics are differenced exactly; K is then pure round-off
    assert max(k1, k2) < an.FLAT_FLOOR or math.log2(k1 / k2) >= 1.5


def test_flatness_negative_control():
    d = revolution_data(1 / 3, 1.0)
    bad = WeierstrassData(h=d.h, rho=d.rho, t=d.t * 2.0, chart=d.chart, ends=d.ends)
    s = an.regular_samples(d, 20, np.random.default_rng(0))
    assert an.flatness_check(bad, s, 1e-3) > 0.1


def test_flatness_rejects_singular_sample():
    d = revolution_data(1 / 3, 1.0)
    with pytest.raises(SingularSample):
        an.flatness_check(d, [math.log(R_SING) + 0.3j], 1e-3)


@pytest.mark.parametrize("alpha,surface", [(0.0, "horosphere"), (-1.0, "hyperbolic cylinder")])
def test_classify_constant_ratio(alpha, surface):
    for c in (1.0, 2.0):
        v = an.classify(revolution_data(alpha, c))
        assert v.verdict == an.HORO_OR_CYL and v.is_rho_constant and v.surface == surface


@pytest.mark.parametrize("alpha", [1 / 3, 3.0])
def test_classify_nontrivial_revolution(alpha):
    v = an.classify(revolution_data(alpha, 1.0))
    assert v.verdict == an.NONTRIVIAL and v.gamma == 2.0


def test_classify_voss_sharpness():
    v = an.classify(voss_data("1,-1,inf"), targets=[1.0, -1.0, INF])
    assert v.gamma == 3.0 and not v.gate_passed and v.verdict == an.NONTRIVIAL


def test_classify_never_violates():
    for d in FAMILIES:
        assert an.classify(d).verdict != an.VIOLATION


def test_classify_requires_completeness():
    with pytest.raises(NotWeaklyComplete):
        an.classify(voss_data("1,-1,2,inf", force=True))


def test_analyze_report_shape():
    rep = an.analyze(voss_data("0,inf"), n_flat=5)
    assert set(rep) >= {"data", "ends", "completeness", "classification", "flatness",
                        "singular_curves"}
    assert rep["flatness"]["fd_steps"] == [1e-3, 1e-4]
    assert all(v["verdict"] == an.COMPLETE for v in rep["completeness"])
    m = rep["monodromy"][0]["matrix"]
    M = np.array([[complex(*x) for x in row] for row in m])
    assert abs(np.trace(M) - 2) < 1e-8
