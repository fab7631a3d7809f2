"""Verification suites behind ``flatfront verify``.

Each suite returns a list of :class:`Check` records.  The island suite
carries its own oracle: preimages of a small circle around ``alpha`` are
continued once around the circle and the cycle lengths of the resulting
permutation are the island multiplicities.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import linear_sum_assignment

from . import analysis as an
from .errors import TooManyPoints
from .grid import SampleGrid
from .h3_model import act, in_h3, lorentz_inner, random_h3, random_sl2
from .legendrian import closed_form_lift, integrate_lift, lift_at
from .meromorphic import INF, MeroFn, gamma_sum, islands, island_threshold, poly_from_roots
from .weierstrass import revolution_data, voss_data

REVOLUTION_ALPHAS = (1 / 3, -1.0, 0.0, 3.0)
VOSS_SETS = ("inf", "0,inf", "1,-1,inf")


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""

    def line(self):
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.name}: {self.detail}"


def example_matrix():
    out = [revolution_data(a, c) for a in REVOLUTION_ALPHAS for c in (1.0, 2.0)]
    out += [voss_data(E) for E in VOSS_SETS]
    return out


def singular_radius(alpha, c):
    """Chart radius where ``|rho| = 1`` for revolution data (from rho = theta/omega)."""
    k = 1.0 - alpha
    coeff = c ** 4 * abs(alpha) / k ** 2
    s = 2.0 * (1.0 + alpha) / k
    return coeff ** (-1.0 / s)


# -- individual checks ----------------------------------------------------------

def check_model_identities(n=10 ** 5, seed=0):
    rng = np.random.default_rng(seed)
    a = random_sl2(rng, n, 0.5)
    X = random_h3(rng, n, 0.5)
    Y = random_h3(rng, n, 0.5)
    aX, aY = act(a, X), act(a, Y)
    ok_h3 = bool(np.all(in_h3(aX, 1e-10)))
    ref = lorentz_inner(X, Y)
    err = np.abs(lorentz_inner(aX, aY) - ref) / np.maximum(1.0, np.abs(ref))
    return Check("model identities", ok_h3 and err.max() <= 1e-10,
                 f"n={n}, in_h3={ok_h3}, max rel inner-product error={err.max():.2e}")


def check_closed_form(n_end=100, alphas=REVOLUTION_ALPHAS, cs=(1.0, 2.0), seed=0):
    rng = np.random.default_rng(seed)
    worst = 0.0
    for a in alphas:
        for c in cs:
            d = revolution_data(a, c)
            F0 = closed_form_lift(a, c, 0.0)
            for _ in range(n_end):
                w1 = complex(rng.uniform(-1, 1), rng.uniform(-3, 3))
                E = lift_at(d, [0.0, w1], F0)
                ref = closed_form_lift(a, c, w1)
                worst = max(worst, np.linalg.norm(E - ref) / np.linalg.norm(ref))
    return Check("closed-form lift oracle", worst <= 1e-8, f"max rel error={worst:.2e}")


def check_det_drift(n_steps=10 ** 4):
    d = revolution_data(-1.0, 1.0)
    # 10^4 steps of 0.05 around the log chart of the cylinder
    frames = integrate_lift(d, [0.0, 0.05j * n_steps], max_step=0.05)
    drift = max(fr.det_err for fr in frames)
    return Check("det E drift", len(frames) - 1 >= n_steps and drift <= 1e-9,
                 f"steps={len(frames) - 1}, max |det E - 1|={drift:.2e}")


def check_flatness(n=50, seed=0, fd_steps=(1e-3, 1e-4), bound=1e-4):
    """Brioschi curvature must be small and shrink tenfold with the step.

    Stencils are evaluated in extended precision.  Data whose metric has no
    truncation error give ``|K|`` at the working-precision floor for every
    step; for those the ratio test is vacuous and skipped.
    """
    rng = np.random.default_rng(seed)
    details, ok = [], True
    for d in example_matrix():
        s = an.regular_samples(d, n, rng)
        k = [an.flatness_check(d, s, h, dps=an.FLAT_DPS) for h in fd_steps]
        good = k[0] < bound and (k[0] >= 10 * k[1] or max(k) < an.FLAT_FLOOR)
        ok &= good
        details.append(f"{_label(d)}:{k[0]:.1e}->{k[1]:.1e}")
    d = revolution_data(1 / 3, 1.0)
    bad = an.WeierstrassData(h=d.h, rho=d.rho, t=d.t * 2.0, chart=d.chart, ends=d.ends)
    kb = an.flatness_check(bad, an.regular_samples(d, n, rng), fd_steps[0])
    ok &= kb > 0.1
    return Check("flatness (Brioschi)", ok, ", ".join(details) + f"; corrupted max|K|={kb:.2e}")


def _label(d):
    p = d.params
    if d.family == "revolution":
        return f"rev({p['alpha']:.4g},{p['c']:g})"
    return f"voss(q={p['q']})"


def check_singular_radius(alpha=1 / 3, c=1.0, res=512, expected=None, tol=1e-3):
    d = revolution_data(alpha, c)
    g = SampleGrid(x=(-2, 2), y=(-2, 2), shape=(res, res), coords="plane")
    curves = an.singular_set(d, g)
    expected = singular_radius(alpha, c) if expected is None else expected
    if len(curves) != 1:
        return Check("singular contour radius", False, f"{len(curves)} contours")
    r = float(np.mean(np.abs(curves[0])))
    return Check("singular contour radius", abs(r - expected) <= tol,
                 f"mean radius={r:.8f}, expected={expected:.8f}")


def check_det_identity(n=10 ** 4, seed=0):
    rng = np.random.default_rng(seed)
    worst = 0.0
    for d in example_matrix():
        w = an.regular_samples(d, n, rng)
        F = an.forms_arrays(d, w)
        ref = (np.abs(F["h"]) ** 2 - np.abs(F["t"]) ** 2) ** 2
        e1 = np.abs(an.form_det(F["I"]) - ref) / ref
        e2 = np.abs(an.form_det(F["II"]) - ref) / ref
        worst = max(worst, e1.max(), e2.max())
    return Check("det I = det II identity", worst <= 1e-9, f"max rel error={worst:.2e}")


def check_classification():
    bad, lines = [], []
    for d in example_matrix():
        v = an.classify(d)
        if d.family == "revolution":
            want = an.HORO_OR_CYL if d.params["alpha"] in (0.0, -1.0) else an.NONTRIVIAL
        else:
            want = an.NONTRIVIAL
        if v.verdict != want:
            bad.append(d.params)
        lines.append(v.verdict)
    return Check("classification matrix", not bad and an.VIOLATION not in lines,
                 f"{len(lines)} data, mismatches={bad}")


def check_gamma():
    cases = [([2] * 7, 3.5, True), ([INF] * 4, 4.0, True), ([INF] * 3, 3.0, False)]
    ok = all(abs(gamma_sum(m) - g) < 1e-12 and (gamma_sum(m) > 3) == gate for m, g, gate in cases)
    return Check("ramification arithmetic", ok,
                 ", ".join(f"gamma={gamma_sum(m):g}" for m, _, _ in cases))


def check_voss_complete():
    bad = []
    for E in VOSS_SETS:
        for v in an.completeness_probe(voss_data(E)):
            if v.verdict != an.COMPLETE:
                bad.append((E, v.end))
    return Check("voss q<=3 weakly complete", not bad, f"failing ends={bad}")


def q3_log_slope(decades=6, per_decade=8):
    d = voss_data("1,-1,inf")
    path = an.radial_ray()
    cut = 2.0 * np.logspace(0, decades, decades * per_decade + 1)
    L = an.ds11_length(d, path, cut)
    return an.classify_growth(cut, L)["log_slope"]


def check_q3_slope(expected=1.0, rel=0.05):
    s = q3_log_slope()
    return Check("voss q=3 log growth", abs(s - expected) <= rel * expected,
                 f"slope={s:.4f}, expected={expected}")


def q4_lengths(start=1e3, decades=6, per_decade=4):
    d = voss_data("1,-1,2,inf", force=True)
    cut = start * np.logspace(0, decades, decades * per_decade + 1)
    L = an.ds11_length(d, an.radial_ray(), cut)
    return cut, L


def check_q4_incomplete():
    d = voss_data("1,-1,2,inf", force=True)
    inf_end = [v for v in an.completeness_probe(d) if v.end is INF or v.end == INF][0]
    cut, L = q4_lengths()
    inc = float(abs(L[-1] - L[-2]))
    ok = inf_end.verdict == an.INCOMPLETE and inc < 1e-6
    try:
        voss_data("1,-1,2,inf")
        rejects = False
    except TooManyPoints:
        rejects = True
    return Check("forced q=4 not weakly complete", ok and rejects,
                 f"inf-end={inf_end.verdict}, last increment={inc:.2e}, "
                 f"limit~{inf_end.growth.get('limit_estimate')}, rejects q=4={rejects}")


def check_voss_gamma():
    v = an.classify(voss_data("1,-1,inf"), targets=[1.0, -1.0, INF])
    return Check("voss q=3 sharpness gamma", v.gamma == 3.0 and not v.gate_passed
                 and v.verdict == an.NONTRIVIAL, f"gamma={v.gamma}, verdict={v.verdict}")


# -- islands ----------------------------------------------------------------------

def random_rational(rng, max_degree=6):
    """``alpha + P/D`` with planted alpha-point multiplicities, ``deg D <= deg P``.

    Returns ``(f, alpha, planted)`` where ``planted`` lists ``(root, m)``.
    """
    while True:
        deg_p = int(rng.integers(1, max_degree + 1))
        planted, left = [], deg_p
        while left:
            m = int(rng.integers(1, left + 1))
            planted.append((complex(*rng.normal(size=2)), m))
            left -= m
        roots = [r for r, _ in planted]
        if min((abs(a - b) for i, a in enumerate(roots) for b in roots[i + 1:]), default=1) < 0.2:
            continue
        deg_d = int(rng.integers(0, deg_p + 1))
        den_roots = [(complex(*rng.normal(size=2)), 1) for _ in range(deg_d)]
        if any(abs(a - r) < 0.2 for a, _ in den_roots for r in roots):
            continue
        alpha = complex(*rng.normal(size=2))
        P = poly_from_roots(complex(*rng.normal(size=2)), planted)
        D = poly_from_roots(1.0, den_roots)
        num = np.polynomial.polynomial.polyadd(P, alpha * D)
        return MeroFn(num, D), alpha, planted


def island_oracle(f, alpha, radius, n_steps=720):
    """Cycle lengths of the permutation of ``f^{-1}(alpha + radius e^{i phi})``
    obtained by continuing the preimages once around the circle."""
    P = np.polynomial.polynomial

    def pre(phi):
        v = alpha + radius * np.exp(1j * phi)
        return np.roots(P.polysub(f.num, v * f.den)[::-1])

    start = pre(0.0)
    cur = start.copy()
    for k in range(1, n_steps + 1):
        nxt = pre(2 * math.pi * k / n_steps)
        cost = np.abs(cur[:, None] - nxt[None, :])
        _, col = linear_sum_assignment(cost)
        cur = nxt[col]
    # cur[i] is where start[i] ended up
    perm = [int(np.argmin(np.abs(start - z))) for z in cur]
    seen, cycles = set(), []
    for i in range(len(perm)):
        if i in seen:
            continue
        n, j = 0, i
        while j not in seen:
            seen.add(j)
            j = perm[j]
            n += 1
        cycles.append(n)
    return sorted(cycles)


def check_islands(n=50, seed=0):
    rng = np.random.default_rng(seed)
    mismatches = 0
    for _ in range(n):
        f, alpha, planted = random_rational(rng)
        eps = 0.5 * min(island_threshold(f, alpha), 1.0)
        rep = islands(f, alpha, eps)
        got = sorted(m for _, m in rep.islands)
        oracle = island_oracle(f, alpha, 0.5 * eps)
        if got != oracle or got != sorted(m for _, m in planted):
            mismatches += 1
    return Check("islands vs preimage continuation", mismatches == 0,
                 f"{n} random functions, mismatches={mismatches}")


# -- suites -------------------------------------------------------------------------

def suite_examples():
    return [check_model_identities(10 ** 4), check_closed_form(10), check_det_drift(),
            check_flatness(10), check_singular_radius(), check_det_identity(10 ** 3),
            check_classification(), check_gamma()]


def suite_sharpness():
    return [check_voss_complete(), check_q3_slope(), check_q4_incomplete(), check_voss_gamma()]


def suite_islands():
    return [check_islands()]


SUITES = {"paper-examples": suite_examples, "sharpness": suite_sharpness,
          "islands": suite_islands}
