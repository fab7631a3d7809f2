"""Weierstrass-type data ``(omega, theta) = (h dz, t dz)`` with ratio
``rho = t / h`` and Hopf differential ``Q = h t dz^2``, plus the two explicit
families: fronts of revolution and Voss-type fronts.

Data live on a *working chart*:

``"plane"``
    the coordinate ``z`` itself;
``"log"``
    ``z = exp(w)``, the universal cover of C minus the origin.  Real powers
    ``z**s = exp(s w)`` are single valued there.  Chart coefficients carry the
    Jacobian ``dz = exp(w) dw``.

Ends are recorded in the ``z`` coordinate (``INF`` for the point at infinity).
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import BadParams, DuplicatePoints, NotAnEnd, TooManyPoints
from .meromorphic import (INF, Domain, MeroFn, chordal, degree, is_inf, parse_value,
                          taylor_at, value_from_json, value_to_json)


@dataclass
class WeierstrassData:
    h: MeroFn
    rho: MeroFn
    t: MeroFn = None
    chart: str = "plane"
    ends: list = field(default_factory=list)
    family: str = "custom"
    params: dict = field(default_factory=dict)
    #: Moebius normalization z -> (a z + b) / (c z + d) applied to the input
    #: points, as a 2x2 nested list, or None
    mobius: list = None

    def __post_init__(self):
        if self.h.is_zero():
            raise BadParams("omega must not vanish identically")
        if self.chart not in ("plane", "log"):
            raise BadParams(f"unknown chart {self.chart!r}")
        if self.t is None:
            self.t = self.rho * self.h

    @property
    def domain(self):
        return self.h.domain

    def is_consistent(self, tol=1e-9):
        """Whether ``rho * h == t`` identically."""
        return (self.rho * self.h).allclose(self.t, tol)

    # chart evaluation -------------------------------------------------------
    def coefficients(self, w):
        """``(h, t)`` as coefficients of ``dw`` at chart points ``w``."""
        w = np.asarray(w, dtype=complex)
        if self.chart == "log":
            jac = np.exp(w)
            return self.h.eval_log(w) * jac, self.t.eval_log(w) * jac
        return self.h(w), self.t(w)

    def rho_at(self, w):
        w = np.asarray(w, dtype=complex)
        return self.rho.eval_log(w) if self.chart == "log" else self.rho(w)

    def scalar_coefficients(self):
        """Fast scalar ``w -> (h, t)`` for the lift integrator."""
        hf = self.h.scalar_fn(log_chart=self.chart == "log")
        tf = self.t.scalar_fn(log_chart=self.chart == "log")
        if self.chart == "log":
            import cmath
            exp = cmath.exp

            def coeffs(w):
                j = exp(w)
                return hf(w) * j, tf(w) * j
        else:
            def coeffs(w):
                return hf(w), tf(w)
        return coeffs

    def chart_from_z(self, z):
        z = np.asarray(z, dtype=complex)
        return np.log(z) if self.chart == "log" else z

    def z_from_chart(self, w):
        w = np.asarray(w, dtype=complex)
        return np.exp(w) if self.chart == "log" else w

    def chart_poles(self, wrap=3):
        """Poles of the chart coefficients (used to bound integration steps)."""
        pts = []
        for f in (self.h, self.t):
            if f.is_zero():
                continue
            for z, _ in f.poles():
                if self.chart == "log":
                    if abs(z) == 0:
                        continue
                    base = complex(np.log(z))
                    pts += [base + 2j * math.pi * k for k in range(-wrap, wrap + 1)]
                else:
                    pts.append(complex(z))
        return pts

    def base_point(self):
        """Canonical base point of the working chart for lift integration."""
        if self.chart == "log":
            return 0j
        bad = [p for p in self.ends if not is_inf(p)] + self.chart_poles()
        for cand in (0j, 0.5j, 0.5 + 0.5j, -0.5 + 0.5j, 2j, 0.25 + 0.75j):
            if all(abs(cand - p) > 0.25 for p in bad):
                return cand
        return 0.123 + 0.456j

    # serialization -----------------------------------------------------------
    def to_json(self):
        return {
            "family": self.family,
            "params": self.params,
            "chart": self.chart,
            "ends": [value_to_json(p) for p in self.ends],
            "h": self.h.to_json(),
            "rho": self.rho.to_json(),
            "t": self.t.to_json(),
            "mobius": self.mobius,
        }

    @classmethod
    def from_json(cls, obj):
        h = MeroFn.from_json(obj["h"])
        rho = MeroFn.from_json(obj["rho"])
        t = MeroFn.from_json(obj["t"]) if obj.get("t") else None
        return cls(h=h, rho=rho, t=t, chart=obj.get("chart", "plane"),
                   ends=[value_from_json(p) for p in obj.get("ends", [])],
                   family=obj.get("family", "custom"), params=obj.get("params", {}),
                   mobius=obj.get("mobius"))


@dataclass
class HopfDifferential:
    """``Q = q dz**2``; its zeros are the umbilic points."""

    q: MeroFn

    def umbilics(self):
        if self.q.is_zero():
            return None  # totally umbilic
        return [(z, m) for z, m in self.q.zeros() if self.q.domain.contains(z)]


# -- families ----------------------------------------------------------------

def revolution_data(alpha, c):
    """Flat front of revolution.

    ``omega = -(1/c**2) z**(-2/(1-alpha)) dz`` and
    ``theta = c**2 alpha/(1-alpha)**2 z**(2 alpha/(1-alpha)) dz``,
    so ``rho = -c**4 alpha/(1-alpha)**2 z**(2(1+alpha)/(1-alpha))``.
    ``alpha = 0`` gives a horosphere and ``alpha = -1`` a hyperbolic cylinder.
    """
    alpha, c = float(alpha), float(c)
    if alpha == 1.0 or not math.isfinite(alpha):
        raise BadParams("alpha must be a real number different from 1")
    if c == 0.0 or not math.isfinite(c):
        raise BadParams("c must be a nonzero real number")
    punct = (0j,) if alpha == 0 else (0j, INF)
    dom = Domain(punctures=punct)
    k = 1.0 - alpha
    h = MeroFn.monomial(-1.0 / c ** 2, -2.0 / k, dom)
    t = MeroFn.monomial(c ** 2 * alpha / k ** 2, 2.0 * alpha / k, dom)
    rho = MeroFn.monomial(-(c ** 4) * alpha / k ** 2, 2.0 * (1.0 + alpha) / k, dom)
    return WeierstrassData(h=h, rho=rho, t=t, chart="log", ends=list(punct),
                           family="revolution", params={"alpha": alpha, "c": c})


def parse_points(points):
    if isinstance(points, str):
        points = [p for p in points.split(",") if p.strip()]
    return [parse_value(p) if isinstance(p, str) else (INF if is_inf(p) else complex(p))
            for p in points]


def voss_data(points, force=False):
    """Voss-type front whose ratio ``rho = xi`` omits exactly the given points.

    With ``E = {a_1, ..., a_q}`` and ``a_q = INF``:
    ``omega = d xi / prod_{i<q} (xi - a_i)``.  When infinity is not in ``E``
    the points are first moved by ``z -> 1/(z - a_q)``; the normalized set is
    what ``rho`` omits and the map is stored in ``mobius``.

    ``force=True`` admits ``q = 4`` (the data are then not weakly complete).
    """
    pts = parse_points(points)
    q = len(pts)
    if q == 0:
        raise BadParams("need at least one omitted value")
    for i in range(q):
        for j in range(i + 1, q):
            if chordal(pts[i], pts[j]) < 1e-12:
                raise DuplicatePoints(f"repeated point {pts[i]}")
    if q > 3 and not (force and q == 4):
        raise TooManyPoints(f"q = {q} > 3: the resulting front is not weakly complete")
    mobius = None
    if not any(is_inf(p) for p in pts):
        aq = pts[-1]
        mobius = [[[0.0, 0.0], [1.0, 0.0]], [[1.0, 0.0], value_to_json(-aq)]]
        pts = [1.0 / (p - aq) for p in pts[:-1]] + [INF]
    finite = [complex(p) for p in pts if not is_inf(p)]
    finite.sort(key=lambda z: (z.real, z.imag))
    ends = finite + [INF]
    dom = Domain(punctures=tuple(ends))
    den = np.array([1.0 + 0j])
    for a in finite:
        den = np.polynomial.polynomial.polymul(den, [-a, 1.0])
    h = MeroFn([1.0], den, domain=dom)
    rho = MeroFn.identity(dom)
    return WeierstrassData(h=h, rho=rho, chart="plane", ends=ends, family="voss",
                           params={"points": [value_to_json(p) for p in ends],
                                   "q": q, "forced": bool(force and q == 4)},
                           mobius=mobius)


def custom_data(h, rho, ends=(), chart="plane", t=None):
    return WeierstrassData(h=h, rho=rho, t=t, chart=chart, ends=list(ends))


def hopf(d):
    return HopfDifferential(d.h * d.t)


def ratio(d):
    """``theta / omega`` in reduced form."""
    if d.t.is_zero():
        return MeroFn.constant(0.0, d.domain)
    return d.t / d.h


# -- orders at ends ----------------------------------------------------------

def _mult_at(c, p, tol=1e-9):
    if degree(c) < 0:
        return math.inf
    b = taylor_at(c, p)
    scale = np.abs(taylor_at(np.abs(c), abs(p))).real
    k = 0
    while k < len(b) and abs(b[k]) <= tol * max(scale[k], 1e-300):
        k += 1
    return k


def coefficient_order(f, p):
    """Order at ``p`` of the 1-form ``f(z) dz`` in a local coordinate vanishing
    at ``p`` (``1/z`` at infinity, Jacobian included); may be non-integral."""
    if f.is_zero():
        return math.inf
    if is_inf(p):
        return -(f.power + f.deg_num - f.deg_den) - 2.0
    p = complex(p)
    order = _mult_at(f.num, p) - _mult_at(f.den, p)
    if p == 0:
        order += f.power
    return float(order)


def find_end(d, p):
    for e in d.ends:
        if chordal(e, p) < 1e-9:
            return e
    raise NotAnEnd(f"{p} is not a declared end")


def end_order(d, p):
    """``min(ord_p h, ord_p t)``; at most -1 means infinite ds11-length into p."""
    p = find_end(d, p)
    return min(coefficient_order(d.h, p), coefficient_order(d.t, p))
