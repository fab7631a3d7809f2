"""Fundamental forms, singular sets, ds11 lengths, completeness probes,
flatness checks and the classification verdict for Weierstrass data.

With ``omega = h dw`` and ``theta = t dw`` in the working chart:

* first fundamental form ``I = lam |dw|^2 + Q + conj(Q)`` with
  ``lam = (1 + |rho|^2) |h|^2`` (the ds11 conformal factor) and ``Q = h t dw^2``;
* second fundamental form ``II = (|t|^2 - |h|^2) |dw|^2``;
* singular points are where ``|rho| = 1``.
"""

import math
from dataclasses import asdict, dataclass, field

import numpy as np
from scipy import integrate
from skimage import measure

from .config import DEFAULT
from .errors import NotWeaklyComplete, PoleAtPoint, QuadratureFailure, SingularSample
from .grid import SampleGrid, default_grid
from .legendrian import monodromy
from .meromorphic import (INF, critical_values, gamma_sum, is_inf, omitted_values,
                          ramification_floor, value_to_json)
from .weierstrass import WeierstrassData, end_order, ratio

COMPLETE = "complete-certified"
INCOMPLETE = "incomplete-certified"
INCONCLUSIVE = "inconclusive"


# -- fundamental forms -------------------------------------------------------

def forms_arrays(d, w):
    """Vectorized forms: dict of arrays ``I`` (..., 3), ``II`` (..., 3), ``lam``,
    ``abs_rho``."""
    h, t = d.coefficients(w)
    rho = d.rho_at(w)
    with np.errstate(invalid="ignore", over="ignore"):
        ah2 = np.abs(h) ** 2
        at2 = np.abs(t) ** 2
        lam = (1.0 + np.abs(rho) ** 2) * ah2
        q = h * t
        I = np.stack([lam + 2 * q.real, -2 * q.imag, lam - 2 * q.real], axis=-1)
        g = at2 - ah2
        II = np.stack([g, np.zeros_like(g), g], axis=-1)
    return {"I": I, "II": II, "lam": lam, "abs_rho": np.abs(rho), "h": h, "t": t}


def form_det(F):
    F = np.asarray(F)
    return F[..., 0] * F[..., 2] - F[..., 1] ** 2


@dataclass
class FormsAtPoint:
    I: tuple
    II: tuple
    lam: float
    abs_rho: float
    singular: bool

    @property
    def det_I(self):
        return self.I[0] * self.I[2] - self.I[1] ** 2

    @property
    def det_II(self):
        return self.II[0] * self.II[2] - self.II[1] ** 2


def forms_at(d, w, tau_sing=DEFAULT.tau_sing):
    """First/second fundamental forms, ds11 factor and singular flag at ``w``.

    Raises
    ------
    PoleAtPoint
        If ``h`` or ``t`` has a pole at ``w``.
    """
    F = forms_arrays(d, complex(w))
    vals = [F["h"], F["t"], F["lam"]]
    if not all(np.isfinite(v) for v in vals):
        raise PoleAtPoint(f"coefficients are singular at {w}")
    a = float(F["abs_rho"])
    return FormsAtPoint(I=tuple(map(float, F["I"])), II=tuple(map(float, F["II"])),
                        lam=float(F["lam"]), abs_rho=a, singular=abs(a - 1.0) <= tau_sing)


def gauss_equation_defect(d, w):
    """``|det II / det I - 1|``: extrinsic curvature minus one, which is the
    intrinsic curvature of a front in H^3 (zero for flat fronts)."""
    F = forms_arrays(d, w)
    return np.abs(form_det(F["II"]) / form_det(F["I"]) - 1.0)


# -- singular set -------------------------------------------------------------

def abs_rho_on_grid(d, grid):
    p = grid.points()
    w = d.chart_from_z(p) if grid.coords == "plane" else p
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        return np.abs(d.rho_at(w))


def singular_set(d, grid):
    """Curves ``|rho| = 1`` by marching squares; polylines in grid coordinates.

    Constant ``|rho|`` yields an empty list unless it is exactly one.
    """
    a = abs_rho_on_grid(d, grid)
    field_ = a - 1.0
    bad = ~np.isfinite(field_) | grid.vertex_mask()
    if np.all(bad):
        return []
    finite = field_[~bad]
    if finite.min() > 0 or finite.max() < 0:
        return []
    field_ = np.where(bad, 1.0, field_)
    curves = measure.find_contours(field_, 0.0, mask=~bad)
    return [grid.from_index(c[:, 0], c[:, 1]) for c in curves if len(c) > 1]


# -- lengths and completeness ---------------------------------------------------

@dataclass
class ProbePath:
    """A curve ``gamma(s)`` in the working chart with derivative ``dgamma``.

    ``log_param`` asks the quadrature to work in ``log s`` (for rays running
    over many decades).
    """

    gamma: object
    dgamma: object
    log_param: bool = True


def radial_ray(center=0j, angle=0.0, chart="plane"):
    """``s -> center + s e^{i angle}``; in a log chart ``s -> log s + i angle``."""
    u = np.exp(1j * angle)
    if chart == "log":
        return ProbePath(lambda s: np.log(s) + 1j * angle, lambda s: 1.0 / s)
    return ProbePath(lambda s: center + s * u, lambda s: u)


def _ds11_density(d, w):
    h, _ = d.coefficients(w)
    rho = d.rho_at(w)
    return np.sqrt(1.0 + np.abs(rho) ** 2) * np.abs(h)


def ds11_length(d, path, cutoffs, epsabs=1e-13, epsrel=1e-11):
    """Cumulative ds11-length of ``path`` from ``cutoffs[0]`` to each cutoff.

    Returns an array the length of ``cutoffs`` starting at 0.

    Raises
    ------
    QuadratureFailure
        When an adaptive panel does not meet its tolerance.
    """
    cutoffs = np.asarray(cutoffs, dtype=float)
    if np.any(np.diff(cutoffs) <= 0):
        raise ValueError("cutoffs must increase")

    def dens(s):
        return float(_ds11_density(d, path.gamma(s)) * abs(path.dgamma(s)))

    out = [0.0]
    for s0, s1 in zip(cutoffs[:-1], cutoffs[1:]):
        if path.log_param and s0 > 0:
            fn, a, b = (lambda u: dens(math.exp(u)) * math.exp(u)), math.log(s0), math.log(s1)
        else:
            fn, a, b = dens, s0, s1
        val, err, *info = integrate.quad(fn, a, b, epsabs=epsabs, epsrel=epsrel,
                                         limit=200, full_output=1)
        if not math.isfinite(val) or err > max(1e3 * epsabs, 1e-8 * abs(val)):
            raise QuadratureFailure(f"quadrature on [{s0:g}, {s1:g}] failed: err={err:g}")
        out.append(out[-1] + val)
    return np.array(out)


def classify_growth(cutoffs, lengths, cauchy=DEFAULT.cauchy, window=10.0):
    """Divergent/convergent verdict for partial lengths ``L(R)``.

    Two models are fitted on the last ``window`` factor of ``R``:
    ``L = a + b log R`` and ``L = c + d / R``.  Divergence needs the log model
    to fit at least as well with a significant positive slope *and* the last
    increment to fail the Cauchy test; convergence needs the last increment
    to pass it.
    """
    R = np.asarray(cutoffs, dtype=float)
    L = np.asarray(lengths, dtype=float)
    sel = R >= R[-1] / window
    if sel.sum() < 3:
        sel = np.zeros_like(sel)
        sel[-3:] = True
    x, y = R[sel], L[sel]
    out = {}
    fits = {}
    for name, basis in (("log", np.log(x)), ("inv", 1.0 / x)):
        A = np.stack([np.ones_like(x), basis], axis=1)
        coef, *_ = np.linalg.lstsq(A, y, rcond=None)
        resid = y - A @ coef
        rss = float(resid @ resid)
        dof = max(len(x) - 2, 1)
        cov = rss / dof * np.linalg.pinv(A.T @ A)
        se = math.sqrt(max(cov[1, 1], 0.0))
        fits[name] = (coef, rss, se)
    (a, b), rss_log, se_b = fits["log"]
    (c, dcoef), rss_inv, _ = fits["inv"]
    tstat = math.inf if se_b == 0 else b / se_b
    incr = float(abs(L[-1] - L[-2]))
    cauchy_ok = incr < cauchy
    if cauchy_ok:
        verdict = "convergent"
    elif b > 0 and rss_log <= rss_inv and tstat > 10:
        verdict = "divergent"
    else:
        verdict = "inconclusive"
    out.update(verdict=verdict, log_slope=float(b), log_tstat=float(tstat),
               rss_log=rss_log, rss_inv=rss_inv, last_increment=incr,
               limit_estimate=float(c) if cauchy_ok else None)
    return out


def end_probe_path(d, end, n_angles=32):
    """A ray running into ``end``, parametrized by ``R = 1/|local coordinate|``.

    Returns ``(data, path, R0)``: the data to integrate (re-centered at a
    finite end of a plane chart), the path, and a safe starting parameter.
    """
    if d.chart == "log":
        sign = 1.0 if is_inf(end) else -1.0
        phi = 0.1
        return d, ProbePath(lambda R: sign * math.log(R) + 1j * phi,
                            lambda R: sign / R), 1.0
    others = [complex(p) for p in d.ends if not is_inf(p) and not (p == end)]
    others += [p for p in d.chart_poles() if is_inf(end) or abs(p - end) > 1e-12]
    angles = 2 * math.pi * (np.arange(n_angles) + 0.5) / n_angles
    if is_inf(end):
        R0 = 2.0 * max([abs(p) for p in others] + [0.0]) + 2.0

        def clearance(phi):
            u = np.exp(1j * phi)
            rs = R0 * np.geomspace(0.5, 1e3, 50)
            return min([np.min(np.abs(rs * u - p)) for p in others] + [np.inf])

        phi = max(angles, key=clearance)
        u = complex(np.exp(1j * phi))
        return d, ProbePath(lambda R: R * u, lambda R: u), R0
    end = complex(end)
    near = min([abs(p - end) for p in others] + [2.0])
    r0 = min(0.5, 0.5 * near)

    def clearance(phi):
        u = np.exp(1j * phi)
        rs = np.linspace(0, r0, 50)
        return min([np.min(np.abs(end + rs * u - p)) for p in others] + [np.inf])

    phi = max(angles, key=clearance)
    u = complex(np.exp(1j * phi))
    local = WeierstrassData(h=d.h.shifted(end), rho=d.rho.shifted(end), t=d.t.shifted(end),
                            chart="plane")
    return local, ProbePath(lambda R: u / R, lambda R: -u / R ** 2), 1.0 / r0


@dataclass
class EndVerdict:
    end: object
    order: float
    probe: str
    verdict: str
    cutoffs: list = field(default_factory=list)
    lengths: list = field(default_factory=list)
    growth: dict = field(default_factory=dict)

    def to_json(self):
        out = asdict(self)
        out["end"] = value_to_json(self.end)
        out["order"] = None if math.isinf(self.order) else self.order
        return out


def completeness_probe(d, decades=9, per_decade=4, cauchy=DEFAULT.cauchy):
    """Per-end weak-completeness verdicts.

    An end order below -1 certifies completeness and above -1 incompleteness
    (the length element behaves like ``|zeta|**order``).  At order exactly -1
    (logarithmic ends) and to back an incompleteness verdict with a finite
    length, ds11-lengths along a probe ray are computed out to
    ``R0 * 10**decades`` and classified by :func:`classify_growth`.
    """
    out = []
    for end in d.ends:
        k = end_order(d, end)
        rec = EndVerdict(end=end, order=float(k), probe="analytic order",
                         verdict=COMPLETE if k < -1 else INCOMPLETE if k > -1 else INCONCLUSIVE)
        if k >= -1:
            local, path, R0 = end_probe_path(d, end)
            cut = R0 * np.logspace(0, decades, decades * per_decade + 1)
            L = ds11_length(local, path, cut)
            g = classify_growth(cut, L, cauchy)
            rec.cutoffs, rec.lengths, rec.growth = cut.tolist(), L.tolist(), g
            rec.probe = "numeric quadrature" if k == -1 else "analytic order + numeric quadrature"
            if k == -1:
                rec.verdict = {"divergent": COMPLETE, "convergent": INCOMPLETE}.get(
                    g["verdict"], INCONCLUSIVE)
            elif g["verdict"] == "divergent":
                rec.verdict = INCONCLUSIVE
        out.append(rec)
    return out


def is_weakly_complete(verdicts):
    return all(v.verdict == COMPLETE for v in verdicts)


# -- flatness -----------------------------------------------------------------

_D1 = np.array([1.0, -8.0, 0.0, 8.0, -1.0]) / 12.0
_D2 = np.array([-1.0, 16.0, -30.0, 16.0, -1.0]) / 12.0


def _brioschi(E0, F0, G0, Eu, Ev, Fu, Fv, Gu, Gv, Evv, Fuv, Guu):
    a = -0.5 * Evv + Fuv - 0.5 * Guu
    M1 = ((a, 0.5 * Eu, Fu - 0.5 * Ev), (Fv - 0.5 * Gu, E0, F0), (0.5 * Gv, F0, G0))
    M2 = ((0 * a, 0.5 * Ev, 0.5 * Gu), (0.5 * Ev, E0, F0), (0.5 * Gu, F0, G0))
    return (_det3(M1) - _det3(M2)) / (E0 * G0 - F0 ** 2) ** 2


def _det3(m):
    return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))


def _stencil_derivatives(E, F, G, step, d1=_D1, d2=_D2):
    """Brioschi inputs from 5x5 stencil values ``A[..., i, j]`` at ``w + x_i + i y_j``."""
    def dx(A):
        return sum(d1[k] * A[..., k, 2] for k in range(5)) / step

    def dy(A):
        return sum(d1[k] * A[..., 2, k] for k in range(5)) / step

    def dxx(A):
        return sum(d2[k] * A[..., k, 2] for k in range(5)) / step ** 2

    def dyy(A):
        return sum(d2[k] * A[..., 2, k] for k in range(5)) / step ** 2

    def dxy(A):
        return sum(d1[i] * d1[j] * A[..., i, j] for i in range(5) for j in range(5)) / step ** 2

    return (E[..., 2, 2], F[..., 2, 2], G[..., 2, 2], dx(E), dy(E), dx(F), dy(F),
            dx(G), dy(G), dyy(E), dxy(F), dxx(G))


def _mero_mp(f, z, w=None):
    from mpmath import mp

    num = den = mp.mpc(0)
    for a in reversed(f.num):
        num = num * z + mp.mpc(a.real, a.imag)
    for a in reversed(f.den):
        den = den * z + mp.mpc(a.real, a.imag)
    v = num / den
    if f.power:
        v *= mp.exp(f.power * (mp.log(z) if w is None else w))
    return v


def _metric_mp(d, w):
    from mpmath import mp

    if d.chart == "log":
        z = mp.exp(w)
        h, t, rho = (_mero_mp(f, z, w) for f in (d.h, d.t, d.rho))
        h, t = h * z, t * z
    else:
        h, t, rho = (_mero_mp(f, w) for f in (d.h, d.t, d.rho))
    lam = (1 + abs(rho) ** 2) * abs(h) ** 2
    q = h * t
    return lam + 2 * q.real, -2 * q.imag, lam - 2 * q.real


# working precision for the curvature sweep and the level below which K is zero
FLAT_DPS = 30
FLAT_FLOOR = 1e-20


def gaussian_curvature(d, w, fd_step, dps=None):
    """Intrinsic curvature of ``I`` by the Brioschi formula, derivatives from
    fourth-order central differences on a 5x5 stencil.

    With ``dps`` set, the stencil is evaluated in ``dps``-digit arithmetic
    (mpmath) so that small steps are not swamped by round-off.
    """
    w = np.atleast_1d(np.asarray(w, dtype=complex))
    if dps is None:
        off = np.arange(-2, 3) * fd_step
        # stencil[..., i, j] = w + x_i + i y_j
        st = w[:, None, None] + off[None, :, None] + 1j * off[None, None, :]
        I = forms_arrays(d, st)["I"]
        return _brioschi(*_stencil_derivatives(I[..., 0], I[..., 1], I[..., 2], fd_step))
    from mpmath import mp

    out = np.empty(w.shape)
    with mp.workdps(dps):
        step = mp.mpf(fd_step)
        d1 = [mp.mpf(v) / 12 for v in (1, -8, 0, 8, -1)]
        d2 = [mp.mpf(v) / 12 for v in (-1, 16, -30, 16, -1)]
        for n, p in enumerate(w):
            c = mp.mpc(p.real, p.imag)
            vals = [[_metric_mp(d, c + (i - 2) * step + 1j * (j - 2) * step) for j in range(5)]
                    for i in range(5)]
            E, F, G = (np.array([[v[k] for v in row] for row in vals], dtype=object)
                       for k in range(3))
            out[n] = float(_brioschi(*_stencil_derivatives(E, F, G, step, d1, d2)))
    return out


def flatness_check(d, samples, fd_step, margin=0.05, dps=None):
    """``max |K|`` of the intrinsic curvature of ``I`` over regular samples.

    Raises
    ------
    SingularSample
        If a sample is within ``margin`` of the singular set ``|rho| = 1``.
    """
    samples = np.atleast_1d(np.asarray(samples, dtype=complex))
    a = np.abs(d.rho_at(samples))
    if np.any(np.abs(a - 1.0) < margin):
        raise SingularSample("sample too close to the singular set")
    K = gaussian_curvature(d, samples, fd_step, dps)
    return float(np.max(np.abs(K)))


def regular_samples(d, n, rng, grid=None, margin=0.05, rel_margin=1e-2):
    """Random chart points of ``grid`` away from masks, poles and ``|rho| = 1``."""
    grid = default_grid(d) if grid is None else grid
    out = []
    poles = d.chart_poles()
    while len(out) < n:
        p = complex(rng.uniform(*grid.x), rng.uniform(*grid.y))
        if any(x0 < p.real < x1 and y0 < p.imag < y1 for x0, x1, y0, y1 in grid.masks):
            continue
        if any(abs(p - q) < 0.1 for q in poles):
            continue
        a = abs(complex(d.rho_at(p)))
        if abs(a - 1.0) < max(margin, rel_margin):
            continue
        out.append(p)
    return np.array(out)


# -- classification -----------------------------------------------------------

HORO_OR_CYL = "horosphere-or-cylinder"
NONTRIVIAL = "nontrivial"
VIOLATION = "violates-theorem"


@dataclass
class ClassificationVerdict:
    is_rho_constant: bool
    gamma: float
    gate_passed: bool
    verdict: str
    targets: list = field(default_factory=list)
    floors: list = field(default_factory=list)
    surface: str = None

    def to_json(self):
        return {"is_rho_constant": self.is_rho_constant, "gamma": self.gamma,
                "gate_passed": self.gate_passed, "verdict": self.verdict,
                "targets": [value_to_json(a) for a in self.targets],
                "floors": ["inf" if is_inf(m) else int(m) for m in self.floors],
                "surface": self.surface}


def auto_targets(rho):
    """Omitted values followed by the remaining critical values of ``rho``."""
    out = list(omitted_values(rho))
    for v in critical_values(rho):
        if not any((is_inf(v) and is_inf(u)) or (not is_inf(v) and not is_inf(u) and abs(v - u) < 1e-9)
                   for u in out):
            out.append(v)
    return out


def classify(d, targets=None, completeness=None, tol=DEFAULT):
    """Constant-ratio and ramification verdict for weakly complete data.

    Raises
    ------
    NotWeaklyComplete
        Unless every end is certified complete.
    """
    if completeness is None:
        completeness = completeness_probe(d, cauchy=tol.cauchy)
    if not is_weakly_complete(completeness):
        bad = [value_to_json(v.end) for v in completeness if v.verdict != COMPLETE]
        raise NotWeaklyComplete(f"ends not certified complete: {bad}")
    rho = ratio(d)
    if rho.is_constant():
        surface = None
        if d.family == "revolution":
            surface = {0.0: "horosphere", -1.0: "hyperbolic cylinder"}.get(d.params.get("alpha"))
        return ClassificationVerdict(True, 0.0, False, HORO_OR_CYL, surface=surface)
    targets = auto_targets(rho) if targets is None else list(targets)
    floors = ramification_floor(rho, targets, tol=tol.tau_root) if targets else []
    gamma = gamma_sum(floors)
    gate = gamma > 3.0
    return ClassificationVerdict(False, gamma, gate, VIOLATION if gate else NONTRIVIAL,
                                 targets=targets, floors=floors)


# -- report ---------------------------------------------------------------------

def analyze(d, grid=None, fd_steps=(1e-3, 1e-4), n_flat=20, seed=0, dps=FLAT_DPS,
            tol=DEFAULT):
    """Verification report as a JSON-ready dict."""
    grid = default_grid(d, shape=(128, 128)) if grid is None else grid
    comp = completeness_probe(d, cauchy=tol.cauchy)
    try:
        cls = classify(d, completeness=comp, tol=tol).to_json()
    except NotWeaklyComplete as exc:
        cls = {"verdict": None, "error": exc.code, "message": str(exc)}
    rng = np.random.default_rng(seed)
    samples = regular_samples(d, n_flat, rng, grid)
    flat = {"fd_steps": list(fd_steps),
            "max_K": [flatness_check(d, samples, h, dps=dps) for h in fd_steps]}
    curves = singular_set(d, grid)
    mono = []
    if d.chart == "plane":
        for p in d.ends:
            if is_inf(p):
                continue
            others = [abs(q - p) for q in d.ends if not is_inf(q) and q != p]
            radius = 0.25 * min(others + [2.0])
            M = monodromy(d, p, radius, rtol=tol.rtol, atol=tol.atol, tol=tol.tau_lift)
            mono.append({"puncture": value_to_json(p), "radius": radius,
                         "matrix": [[value_to_json(x) for x in row] for row in M]})
    return {
        "data": d.to_json(),
        "ends": [value_to_json(e) for e in d.ends],
        "completeness": [v.to_json() for v in comp],
        "classification": cls,
        "flatness": flat,
        "singular_curves": [[[float(p.real), float(p.imag)] for p in c] for c in curves],
        "monodromy": mono,
    }
