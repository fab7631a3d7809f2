"""Holomorphic Legendrian lifts ``E: chart -> SL(2, C)`` with
``E^{-1} dE = [[0, theta], [omega, 0]]``, the front ``f = E E^*``, its unit
normal ``n = E e3 E^*`` and parallel fronts.

The lift is integrated with an adaptive Dormand-Prince 5(4) pair on the
complex linear system, each accepted step followed by the retraction
``E <- E / sqrt(det E)`` back onto SL(2, C).  The system matrix is traceless,
so ``det E`` is a first integral and the retraction only removes round-off
and truncation drift.
"""

import cmath
import csv
import math
from dataclasses import dataclass

import numpy as np

from .config import DEFAULT
from .errors import BadParams, NotUnimodular, PoleOnPath, StepUnderflow
from .h3_model import E3, det2, lorentz_inner

# Dormand-Prince 5(4) tableau
_C = (0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0)
_A = (
    (),
    (1 / 5,),
    (3 / 40, 9 / 40),
    (44 / 45, -56 / 15, 32 / 9),
    (19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729),
    (9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656),
    (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84),
)
_B5 = (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0)
_B4 = (5179 / 57600, 0.0, 7571 / 16695, 393 / 640, -92097 / 339200, 187 / 2100, 1 / 40)
_BERR = tuple(b5 - b4 for b5, b4 in zip(_B5, _B4))


@dataclass(frozen=True)
class LiftFrame:
    w: complex
    E: np.ndarray

    @property
    def det_err(self):
        return abs(complex(det2(self.E)) - 1.0)


@dataclass(frozen=True)
class FrontPoint:
    f: np.ndarray
    n: np.ndarray


def _dist_to_segment(p, a, b):
    ab = b - a
    L2 = abs(ab) ** 2
    if L2 == 0:
        return abs(p - a)
    s = min(1.0, max(0.0, ((p - a) * ab.conjugate()).real / L2))
    return abs(p - (a + s * ab))


def _segment(coeffs, E, a, b, poles, rtol, atol, record, out, max_step, pole_guard):
    """Integrate one straight segment ``a -> b``; returns the end state."""
    length = abs(b - a)
    if length == 0:
        return E
    for p in poles:
        if _dist_to_segment(p, a, b) <= pole_guard * max(1.0, abs(p)):
            raise PoleOnPath(f"path segment {a} -> {b} meets a pole at {p}")
    u = (b - a) / length
    e11, e12, e21, e22 = E
    s = 0.0
    h = min(0.05 * length, max_step)
    tiny = 1e-14 * max(1.0, length)

    def rhs(w, x11, x12, x21, x22):
        hw, tw = coeffs(w)
        hw *= u
        tw *= u
        return x12 * hw, x11 * tw, x22 * hw, x21 * tw

    k1 = rhs(a, e11, e12, e21, e22)
    while s < length:
        cap = max_step
        if poles:
            here = a + s * u
            cap = min(cap, 0.5 * min(abs(here - p) for p in poles))
        h = min(h, cap, length - s)
        if h < tiny and length - s > tiny:
            raise StepUnderflow(f"step size underflow at {a + s * u}")
        ks = [k1]
        for i in range(1, 7):
            ai = _A[i]
            x = [e11, e12, e21, e22]
            for j, aij in enumerate(ai):
                if aij:
                    kj = ks[j]
                    for m in range(4):
                        x[m] += h * aij * kj[m]
            ks.append(rhs(a + (s + _C[i] * h) * u, *x))
        y = [e11, e12, e21, e22]
        err = [0j, 0j, 0j, 0j]
        for j in range(7):
            b5, be = _B5[j], _BERR[j]
            kj = ks[j]
            for m in range(4):
                if b5:
                    y[m] += h * b5 * kj[m]
                if be:
                    err[m] += h * be * kj[m]
        old = (e11, e12, e21, e22)
        en = max(abs(err[m]) / (atol + rtol * max(abs(old[m]), abs(y[m]))) for m in range(4))
        if en <= 1.0 or h <= tiny:
            s += h
            det = y[0] * y[3] - y[1] * y[2]
            r = cmath.sqrt(det)
            e11, e12, e21, e22 = y[0] / r, y[1] / r, y[2] / r, y[3] / r
            # FSAL: the last stage is the derivative at the (unprojected) new
            # point; rescale it to the projected state
            k7 = ks[6]
            k1 = (k7[0] / r, k7[1] / r, k7[2] / r, k7[3] / r)
            if record:
                out.append((a + s * u, (e11, e12, e21, e22), abs(det - 1.0)))
            fac = 5.0 if en == 0 else min(5.0, max(0.2, 0.9 * en ** -0.2))
        else:
            fac = max(0.2, 0.9 * en ** -0.25)
        h *= fac
    return e11, e12, e21, e22


def integrate_lift(d, path, E0=None, rtol=DEFAULT.rtol, atol=DEFAULT.atol,
                   max_step=math.inf, record=True, pole_guard=1e-9, tol=DEFAULT.tau_lift):
    """Integrate ``dE = E [[0, t], [h, 0]] dw`` along a polyline of chart points.

    Parameters
    ----------
    d : WeierstrassData
    path : sequence of complex
        Polyline vertices in the working chart; must avoid poles.
    E0 : array_like, optional
        Unimodular initial frame at ``path[0]`` (identity by default).
    record : bool
        Return every accepted step (True) or only the final frame.

    Returns
    -------
    list of LiftFrame
        Starting with ``E0``.
    """
    path = [complex(w) for w in np.atleast_1d(path)]
    E0 = np.eye(2, dtype=complex) if E0 is None else np.asarray(E0, dtype=complex)
    if abs(complex(det2(E0)) - 1) > tol:
        raise NotUnimodular("initial frame is not unimodular")
    coeffs = d.scalar_coefficients()
    poles = d.chart_poles()
    state = (complex(E0[0, 0]), complex(E0[0, 1]), complex(E0[1, 0]), complex(E0[1, 1]))
    raw = []
    for a, b in zip(path[:-1], path[1:]):
        state = _segment(coeffs, state, a, b, poles, rtol, atol, record, raw, max_step,
                         pole_guard)
    frames = [LiftFrame(path[0], E0.copy())]
    if record:
        frames += [LiftFrame(w, np.array([[e[0], e[1]], [e[2], e[3]]])) for w, e, _ in raw]
    elif len(path) > 1:
        frames.append(LiftFrame(path[-1], np.array([[state[0], state[1]], [state[2], state[3]]])))
    return frames


def lift_at(d, path, E0=None, **kw):
    """End frame of :func:`integrate_lift` as a 2x2 array."""
    return integrate_lift(d, path, E0, record=False, **kw)[-1].E


def closed_form_lift(alpha, c, w):
    """Explicit lift of the front of revolution at ``z = exp(w)``::

        [[z**(-a/(1-a)) / c,   c a z**(1/(1-a)) / (1-a)],
         [z**(-1/(1-a)) / c,   c z**(a/(1-a)) / (1-a)  ]]

    with every power taken on the log chart.
    """
    alpha, c = float(alpha), float(c)
    if alpha == 1.0 or c == 0.0:
        raise BadParams("need alpha != 1 and c != 0")
    w = np.asarray(w, dtype=complex)
    k = 1.0 - alpha
    E = np.empty(w.shape + (2, 2), dtype=complex)
    E[..., 0, 0] = np.exp(-alpha / k * w) / c
    E[..., 0, 1] = c * alpha * np.exp(w / k) / k
    E[..., 1, 0] = np.exp(-w / k) / c
    E[..., 1, 1] = c * np.exp(alpha / k * w) / k
    return E


def front_from_lift(E, tol=DEFAULT.tau_lift):
    """``f = E E^*`` and ``n = E e3 E^*``; broadcasts over leading axes."""
    E = np.asarray(E, dtype=complex)
    if np.any(np.abs(det2(E) - 1) > tol):
        raise NotUnimodular("lift frame is not unimodular")
    Eh = np.conj(np.swapaxes(E, -1, -2))
    return FrontPoint(E @ Eh, E @ E3 @ Eh)


def parallel_front(fp, t):
    """The front at signed distance ``t`` along the unit normal."""
    ch, sh = math.cosh(t), math.sinh(t)
    return FrontPoint(ch * fp.f + sh * fp.n, ch * fp.n + sh * fp.f)


def front_defects(fp):
    """``(|<f,f> + 1|, |<n,n> - 1|, |<f,n>|)``."""
    return (np.abs(lorentz_inner(fp.f, fp.f) + 1), np.abs(lorentz_inner(fp.n, fp.n) - 1),
            np.abs(lorentz_inner(fp.f, fp.n)))


def monodromy(d, center, radius, base=None, n=128, **kw):
    """Right monodromy ``Phi`` of a loop around ``center``: continuing a lift
    ``E`` once around the loop gives ``E @ Phi``.

    The loop runs from ``base`` radially to the circle, counterclockwise
    around it, and back.
    """
    base = d.base_point() if base is None else complex(base)
    center = complex(center)
    direction = base - center
    start = center + radius * (direction / abs(direction) if direction else 1.0)
    phi0 = cmath.phase(start - center)
    ring = [center + radius * cmath.exp(1j * (phi0 + 2 * math.pi * k / n)) for k in range(n + 1)]
    return lift_at(d, [base] + ring + [base], **kw)


def write_trajectory_csv(frames, path):
    """Dump frames as ``w_re, w_im, E11_re, E11_im, ..., E22_im, det_err``."""
    cols = ["w_re", "w_im"]
    for name in ("E11", "E12", "E21", "E22"):
        cols += [name + "_re", name + "_im"]
    cols.append("det_err")
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(cols)
        for fr in frames:
            row = [fr.w.real, fr.w.imag]
            for v in fr.E.ravel():
                row += [v.real, v.imag]
            row.append(fr.det_err)
            writer.writerow(["%.9g" % x for x in row])
