"""Rational functions (times an optional real power of z) and their value
distribution: alpha-points with multiplicity, chordal distance, ramification
sums, omitted values and small-disk islands.

Polynomial coefficients are stored in ascending order (``c[k]`` multiplies
``z**k``).  The point at infinity is the float ``INF``; any value with
infinite modulus is treated as infinity.
"""

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .config import DEFAULT
from .errors import ConstantFunction, EpsilonTooLarge, OutsideDomain

INF = math.inf


def is_inf(v):
    try:
        return math.isinf(abs(v))
    except TypeError:
        return False


def parse_value(text):
    """Parse ``"a+bi"``-style literals; ``"inf"`` (or ``"oo"``) is infinity."""
    s = str(text).strip().lower().replace(" ", "")
    if s in ("inf", "infinity", "oo", "∞"):
        return INF
    return complex(s.replace("i", "j"))


def value_to_json(v):
    if is_inf(v):
        return "inf"
    v = complex(v)
    return [v.real, v.imag]


def value_from_json(obj):
    if isinstance(obj, str):
        return parse_value(obj)
    if isinstance(obj, (list, tuple)):
        return complex(obj[0], obj[1])
    return complex(obj)


def chordal(a, b):
    """Half the chord length between the stereographic preimages of a and b."""
    a_inf, b_inf = is_inf(a), is_inf(b)
    if a_inf and b_inf:
        return 0.0
    if a_inf:
        return 1.0 / math.sqrt(1.0 + abs(b) ** 2)
    if b_inf:
        return 1.0 / math.sqrt(1.0 + abs(a) ** 2)
    return abs(a - b) / (math.sqrt(1.0 + abs(a) ** 2) * math.sqrt(1.0 + abs(b) ** 2))


# -- polynomial helpers ------------------------------------------------------

def trim(c, rel=0.0):
    c = np.atleast_1d(np.asarray(c, dtype=complex))
    if c.size == 0:
        return np.zeros(1, dtype=complex)
    cut = rel * np.abs(c).max() if rel else 0.0
    nz = np.nonzero(np.abs(c) > cut)[0]
    if nz.size == 0:
        return np.zeros(1, dtype=complex)
    return c[: nz[-1] + 1].copy()


def degree(c):
    c = trim(c)
    return -1 if (c.size == 1 and c[0] == 0) else c.size - 1


def horner(c, z):
    acc = 0j
    for a in reversed(c):
        acc = acc * z + a
    return acc


def taylor_at(c, z0, n=None):
    """Taylor coefficients ``P^{(j)}(z0) / j!`` for ``j = 0..n-1`` by repeated
    synthetic division."""
    work = [complex(a) for a in c]
    n = len(work) if n is None else min(n, len(work))
    out = []
    for _ in range(n):
        acc = 0j
        rem = []
        for a in reversed(work):
            acc = acc * z0 + a
            rem.append(acc)
        out.append(rem[-1])
        work = list(reversed(rem[:-1]))
    return np.array(out, dtype=complex)


def _taylor_scale(c, z0, n):
    return np.abs(taylor_at(np.abs(np.asarray(c)), abs(z0), n)).real


def _vanishes(c, z0, k, tol):
    """True when the first ``k`` Taylor coefficients at z0 are negligible."""
    b = taylor_at(c, z0, k)
    s = _taylor_scale(c, z0, k)
    return bool(np.all(np.abs(b) <= tol * np.maximum(s, 1e-300)))


def _newton_polish(c, r, iters=30):
    dc = np.polynomial.polynomial.polyder(c)
    best, best_res = r, abs(horner(c, r))
    x = r
    for _ in range(iters):
        d = horner(dc, x)
        if d == 0:
            break
        x = x - horner(c, x) / d
        res = abs(horner(c, x))
        if res < best_res:
            best, best_res = x, res
        else:
            break
    return best


def poly_roots(c, tol=DEFAULT.tau_root, deriv_tol=DEFAULT.tau_deriv):
    """Roots of a polynomial with multiplicities.

    Companion-matrix eigenvalues are merged agglomeratively: two clusters join when they are close and the
    polynomial's Taylor coefficients at the joint centroid vanish up to the
    joint size (a multiple root spreads into a ring of radius ~eps**(1/m),
    so proximity alone cannot decide).  Simple roots are Newton-polished;
    an m-fold root is refined as a simple root of the (m-1)th derivative.

    Returns a list of ``(root, multiplicity)`` sorted by (real, imag).
    """
    c = trim(c)
    deg = c.size - 1
    if deg <= 0:
        return []
    out = []
    nzero = 0
    while nzero < deg and c[nzero] == 0:
        nzero += 1
    if nzero:
        out.append((0j, nzero))
        c = c[nzero:]
        deg -= nzero
    if deg == 0:
        return out
    raw = np.roots(c[::-1])
    # polishing moves the members of a multiple-root ring unevenly and spoils
    # the centroid, so only singletons are polished (at the end)
    clusters = [[complex(r)] for r in raw]

    def centroid(cl):
        return complex(np.mean(cl))

    def scale(z):
        return max(1.0, abs(z))

    # unconditional merge of coincident polished roots
    merged = True
    while merged:
        merged = False
        for i in range(len(clusters)):
            for j in range(i + 1, len(clusters)):
                ci, cj = centroid(clusters[i]), centroid(clusters[j])
                if abs(ci - cj) <= tol * scale(ci):
                    clusters[i] += clusters.pop(j)
                    merged = True
                    break
            if merged:
                break

    rejected = set()
    while True:
        best = None
        for i in range(len(clusters)):
            for j in range(i + 1, len(clusters)):
                key = (tuple(sorted(clusters[i], key=_key)), tuple(sorted(clusters[j], key=_key)))
                if key in rejected:
                    continue
                ci, cj = centroid(clusters[i]), centroid(clusters[j])
                dist = abs(ci - cj)
                if dist > 0.05 * scale(ci):
                    continue
                if best is None or dist < best[0]:
                    best = (dist, i, j, key)
        if best is None:
            break
        _, i, j, key = best
        joint = clusters[i] + clusters[j]
        if _vanishes(c, centroid(joint), len(joint), deriv_tol):
            clusters[i] = joint
            clusters.pop(j)
            continue
        # partial rings fail at their own centroid; grow towards the full ring
        members = {i, j}
        grown = None
        while True:
            z0 = centroid(joint)
            near = sorted((abs(centroid(clusters[k]) - z0), k) for k in range(len(clusters))
                          if k not in members)
            near = [k for dist, k in near if dist <= 0.05 * scale(z0)]
            if not near:
                break
            members.add(near[0])
            joint = joint + clusters[near[0]]
            if _vanishes(c, centroid(joint), len(joint), deriv_tol):
                grown = sorted(members)
                break
        if grown is None:
            rejected.add(key)
            continue
        clusters[grown[0]] = joint
        for k in reversed(grown[1:]):
            clusters.pop(k)

    for cl in clusters:
        m = len(cl)
        z = centroid(cl)
        if m > 1:
            # the (m-1)th derivative has a simple root here
            dm = np.polynomial.polynomial.polyder(c, m - 1)
            z2 = _newton_polish(dm, z)
            if abs(z2 - z) < 0.05 * scale(z):
                z = z2
        else:
            z = _newton_polish(c, cl[0])
        out.append((complex(z), m))
    out.sort(key=lambda p: _key(p[0]))
    return out


def _key(z):
    return (round(z.real, 9), round(z.imag, 9))


def poly_from_roots(lead, roots):
    c = np.array([lead], dtype=complex)
    for r, m in roots:
        for _ in range(m):
            c = np.polynomial.polynomial.polymul(c, [-r, 1])
    return c


# -- domains -----------------------------------------------------------------

@dataclass(frozen=True)
class Domain:
    """Where a function lives.

    ``kind`` is ``"sphere"`` (Riemann sphere minus ``punctures``), ``"disk"``
    (``|z| < radius``) or ``"strip"`` (a rectangle ``re x im`` on the log chart
    ``z = exp(w)``; only meaningful for real-power monomials).
    """

    kind: str = "sphere"
    punctures: tuple = ()
    radius: float = INF
    re: tuple = (-INF, INF)
    im: tuple = (-INF, INF)

    def includes_infinity(self):
        return self.kind == "sphere" and not any(is_inf(p) for p in self.punctures)

    def contains(self, z, tol=1e-9):
        if self.kind == "strip":
            return self.re[0] <= z.real <= self.re[1] and self.im[0] <= z.imag <= self.im[1]
        if is_inf(z):
            return self.includes_infinity()
        if self.kind == "disk":
            return abs(z) < self.radius
        return all(is_inf(p) or abs(z - p) > tol * max(1.0, abs(p)) for p in self.punctures)

    def to_json(self):
        if self.kind == "disk":
            return {"kind": "disk", "radius": self.radius}
        if self.kind == "strip":
            return {"kind": "strip", "re": list(self.re), "im": list(self.im)}
        return {"kind": "sphere", "punctures": [value_to_json(p) for p in self.punctures]}

    @classmethod
    def from_json(cls, obj):
        if obj is None:
            return cls()
        kind = obj.get("kind", "sphere")
        if kind == "disk":
            return cls(kind="disk", radius=float(obj["radius"]))
        if kind == "strip":
            return cls(kind="strip", re=tuple(obj["re"]), im=tuple(obj["im"]))
        return cls(punctures=tuple(value_from_json(p) for p in obj.get("punctures", [])))


SPHERE = Domain()


# -- meromorphic functions ---------------------------------------------------

class MeroFn:
    """``z**power * num(z) / den(z)`` with complex polynomial coefficients.

    An integral ``power`` is folded into the polynomials.  A non-integral
    power is evaluated as ``exp(power * log z)``: on the principal branch by
    :meth:`__call__`, single-valuedly on the log chart by :meth:`eval_log`.
    """

    def __init__(self, num, den=(1.0,), power=0.0, domain=SPHERE, reduce=True):
        num, den = trim(num), trim(den)
        if degree(den) < 0:
            raise ValueError("denominator is identically zero")
        power = float(power)
        k = round(power)
        if abs(power - k) < 1e-12:
            if k > 0:
                num = np.concatenate([np.zeros(k, dtype=complex), num])
            elif k < 0:
                den = np.concatenate([np.zeros(-k, dtype=complex), den])
            power = 0.0
        if degree(num) < 0:
            den = np.ones(1, dtype=complex)
            power = 0.0
        self.num, self.den, self.power, self.domain = num, den, power, domain
        if reduce:
            self._reduce()

    # construction helpers
    @classmethod
    def constant(cls, value, domain=SPHERE):
        return cls([value], [1.0], domain=domain)

    @classmethod
    def identity(cls, domain=SPHERE):
        return cls([0.0, 1.0], [1.0], domain=domain)

    @classmethod
    def monomial(cls, coeff, power, domain=SPHERE):
        return cls([coeff], [1.0], power=power, domain=domain)

    def with_domain(self, domain):
        out = MeroFn(self.num, self.den, self.power, domain, reduce=False)
        return out

    def _reduce(self):
        dn, dd = degree(self.num), degree(self.den)
        if dn <= 0 or dd <= 0:
            self._normalize()
            return
        rn = poly_roots(self.num)
        rd = poly_roots(self.den)
        changed = False
        for i, (a, ma) in enumerate(rn):
            for j, (b, mb) in enumerate(rd):
                if mb and ma and abs(a - b) <= 1e-7 * max(1.0, abs(a)):
                    k = min(ma, mb)
                    ma -= k
                    mb -= k
                    rn[i] = (a, ma)
                    rd[j] = (b, mb)
                    changed = True
        if changed:
            self.num = poly_from_roots(self.num[-1], [(r, m) for r, m in rn if m])
            self.den = poly_from_roots(self.den[-1], [(r, m) for r, m in rd if m])
        self._normalize()

    def _normalize(self):
        lead = self.den[-1]
        self.num = self.num / lead
        self.den = self.den / lead

    # structure
    @property
    def deg_num(self):
        return degree(self.num)

    @property
    def deg_den(self):
        return degree(self.den)

    @property
    def degree(self):
        """Global degree ``max(deg num, deg den)`` of a reduced rational function."""
        return max(self.deg_num, self.deg_den, 0)

    def is_zero(self):
        return self.deg_num < 0

    def is_rational(self):
        return self.power == 0.0

    def is_constant(self):
        if self.is_zero():
            return True
        return self.power == 0.0 and self.deg_num == 0 and self.deg_den == 0

    def is_monomial(self):
        return self.deg_num <= 0 and self.deg_den == 0

    def poles(self):
        """Finite poles (roots of the denominator, plus 0 for negative powers)."""
        out = [(r, m) for r, m in poly_roots(self.den)]
        return out

    def zeros(self):
        return [(r, m) for r, m in poly_roots(self.num)]

    # evaluation
    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        with np.errstate(divide="ignore", invalid="ignore"):
            n = np.polynomial.polynomial.polyval(z, self.num)
            d = np.polynomial.polynomial.polyval(z, self.den)
            val = n / d
            if self.power:
                val = val * np.exp(self.power * np.log(z))
        val = np.where(d == 0, INF, val)
        return val[()] if val.ndim == 0 else val

    def eval(self, z):
        """Scalar evaluation with domain check; poles return ``INF``."""
        if not self.domain.contains(z):
            raise OutsideDomain(f"{z} is outside the declared domain")
        if is_inf(z):
            return self.at_infinity()
        z = complex(z)
        d = horner(self.den, z)
        if d == 0:
            return INF
        v = horner(self.num, z) / d
        if self.power:
            if z == 0:
                return INF if self.power < 0 else 0j
            v *= cmath.exp(self.power * cmath.log(z))
        return v

    def eval_log(self, w):
        """Evaluate at ``z = exp(w)`` with ``z**power = exp(power * w)``."""
        w = np.asarray(w, dtype=complex)
        z = np.exp(w)
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            val = (np.polynomial.polynomial.polyval(z, self.num)
                   / np.polynomial.polynomial.polyval(z, self.den))
            if self.power:
                val = val * np.exp(self.power * w)
        return val[()] if val.ndim == 0 else val

    def scalar_fn(self, log_chart=False):
        """Fast pure-Python evaluator ``z -> value`` for tight loops."""
        num = [complex(a) for a in self.num]
        den = [complex(a) for a in self.den]
        s = self.power
        exp = cmath.exp

        if log_chart:
            def f(w):
                z = exp(w)
                v = horner(num, z) / horner(den, z)
                return v * exp(s * w) if s else v
        elif s:
            log = cmath.log

            def f(z):
                return horner(num, z) / horner(den, z) * exp(s * log(z))
        else:
            def f(z):
                return horner(num, z) / horner(den, z)
        return f

    def at_infinity(self):
        if self.is_zero():
            return 0j
        if self.power:
            return INF if self.power + self.deg_num - self.deg_den > 0 else 0j
        dn, dd = self.deg_num, self.deg_den
        if dn > dd:
            return INF
        if dn == dd:
            return complex(self.num[-1] / self.den[-1])
        return 0j

    # arithmetic
    def __mul__(self, other):
        if not isinstance(other, MeroFn):
            return MeroFn(self.num * complex(other), self.den, self.power, self.domain)
        P = np.polynomial.polynomial
        return MeroFn(P.polymul(self.num, other.num), P.polymul(self.den, other.den),
                      self.power + other.power, self.domain)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, MeroFn):
            return self * (1.0 / complex(other))
        if other.is_zero():
            raise ZeroDivisionError("division by the zero function")
        P = np.polynomial.polynomial
        return MeroFn(P.polymul(self.num, other.den), P.polymul(self.den, other.num),
                      self.power - other.power, self.domain)

    def __sub__(self, other):
        if not isinstance(other, MeroFn):
            other = MeroFn.constant(other, self.domain)
        if self.power or other.power:
            raise ValueError("subtraction of real-power functions is not supported")
        P = np.polynomial.polynomial
        num = P.polysub(P.polymul(self.num, other.den), P.polymul(other.num, self.den))
        return MeroFn(num, P.polymul(self.den, other.den), 0.0, self.domain)

    def derivative(self):
        P = np.polynomial.polynomial
        N, D, s = self.num, self.den, self.power
        core = P.polysub(P.polymul(P.polyder(N), D), P.polymul(N, P.polyder(D)))
        if not s:
            return MeroFn(core, P.polymul(D, D), 0.0, self.domain)
        # d/dz z^s N/D = z^(s-1) (s N D + z (N'D - N D')) / D^2
        top = P.polyadd(s * P.polymul(N, D), P.polymul([0, 1], core))
        return MeroFn(top, P.polymul(D, D), s - 1.0, self.domain)

    def shifted(self, p):
        """``zeta -> f(p + zeta)`` with exactly re-expanded polynomials, so that
        evaluation near ``p`` suffers no cancellation in ``z - p``."""
        p = complex(p)
        if self.power and p != 0:
            raise ValueError("cannot re-center a real-power function away from 0")
        return MeroFn(taylor_at(self.num, p), taylor_at(self.den, p), self.power,
                      Domain(punctures=tuple(INF if is_inf(q) else q - p
                                             for q in self.domain.punctures))
                      if self.domain.kind == "sphere" else self.domain, reduce=False)

    def allclose(self, other, tol=1e-9):
        """Identity test as functions: compare on sample points of the log chart."""
        w = np.array([0.3 + 0.2j, -0.4 + 1.1j, 0.7 - 0.9j, -0.2 - 2.0j, 0.05 + 2.9j])
        a, b = self.eval_log(w), other.eval_log(w)
        return bool(np.all(np.abs(a - b) <= tol * np.maximum(1.0, np.abs(b))))

    # serialization
    def to_json(self):
        return {
            "num": [value_to_json(a) for a in self.num],
            "den": [value_to_json(a) for a in self.den],
            "power": self.power,
            "domain": self.domain.to_json(),
        }

    @classmethod
    def from_json(cls, obj):
        return cls([value_from_json(a) for a in obj["num"]],
                   [value_from_json(a) for a in obj.get("den", [[1, 0]])],
                   obj.get("power", 0.0), Domain.from_json(obj.get("domain")))

    def __repr__(self):
        s = f", power={self.power:g}" if self.power else ""
        return f"MeroFn(num={np.round(self.num, 6).tolist()}, den={np.round(self.den, 6).tolist()}{s})"


# -- value distribution ------------------------------------------------------

def _monomial_alpha_points(f, alpha, region):
    if is_inf(alpha) or alpha == 0:
        return []
    if region.kind != "strip" or not all(map(math.isfinite, region.re + region.im)):
        raise ValueError("a real-power monomial takes every nonzero value infinitely "
                         "often; pass a bounded strip region on the log chart")
    k, s = complex(f.num[0]), f.power
    base = cmath.log(alpha / k)
    # w = (base + 2 pi i n) / s; only the imaginary part of w depends on n
    lo, hi = region.im
    n_vals = [(lo * s - base.imag) / (2 * math.pi), (hi * s - base.imag) / (2 * math.pi)]
    out = []
    for n in range(math.floor(min(n_vals)) - 1, math.ceil(max(n_vals)) + 2):
        w = (base + 2j * math.pi * n) / s
        if region.contains(w):
            out.append((w, 1))
    return out


def alpha_points(f, alpha, region=None, tol=DEFAULT.tau_root):
    """Solutions of ``f = alpha`` in ``region`` with multiplicities.

    ``alpha = INF`` returns poles.  The point at infinity is examined through
    the chart ``w = 1/z`` when the region contains it.

    Raises
    ------
    ConstantFunction
        If ``f`` is constant.
    """
    region = f.domain if region is None else region
    if f.is_constant():
        raise ConstantFunction("alpha-points of a constant function are undefined")
    if f.power:
        if not f.is_monomial():
            raise ValueError("alpha-points need a rational function or a pure monomial")
        return _monomial_alpha_points(f, alpha, region)
    P = np.polynomial.polynomial
    if is_inf(alpha):
        poly = f.den
        at_inf = f.deg_num - f.deg_den
    else:
        poly = trim(P.polysub(f.num, complex(alpha) * f.den), rel=1e-15)
        at_inf = f.deg_den - degree(poly)
        if degree(poly) < 0:
            raise ConstantFunction("f is identically alpha")
    pts = [(r, m) for r, m in poly_roots(poly, tol) if region.contains(r)]
    if at_inf > 0 and region.contains(INF):
        pts.append((INF, at_inf))
    return pts


def ramification_floor(f, targets, region=None, tol=DEFAULT.tau_root):
    """Minimum multiplicity of the alpha-points for each target (INF when omitted)."""
    out = []
    for a in targets:
        if f.power and f.is_monomial() and not (is_inf(a) or a == 0) and region is None:
            # every nonzero value is taken, always simply
            out.append(1)
            continue
        pts = alpha_points(f, a, region, tol)
        out.append(min(m for _, m in pts) if pts else INF)
    return out


def gamma_sum(floors):
    """``sum(1 - 1/m)``, with ``1 - 1/INF = 1``."""
    total = 0.0
    for m in floors:
        if is_inf(m):
            total += 1.0
        else:
            if m < 1:
                raise ValueError("multiplicity floors must be positive")
            total += 1.0 - 1.0 / m
    return total


@dataclass
class RamificationProfile:
    targets: list
    floors: list

    def __post_init__(self):
        if len(self.targets) != len(self.floors):
            raise ValueError("targets and floors differ in length")
        for i, a in enumerate(self.targets):
            for b in self.targets[i + 1:]:
                if chordal(a, b) <= 0:
                    raise ValueError("targets must be pairwise distinct")

    @property
    def gamma(self):
        return gamma_sum(self.floors)

    def gate_passed(self, threshold=3.0):
        return self.gamma > threshold


def critical_points(f, region=None):
    """Points of ``region`` where ``f`` fails to be locally injective."""
    region = f.domain if region is None else region
    if f.is_constant():
        raise ConstantFunction("constant function")
    if f.power:
        return []
    d = f.derivative()
    pts = [(z, m + 1) for z, m in poly_roots(d.num) if region.contains(z)]
    pts += [(z, m) for z, m in poly_roots(f.den) if m > 1 and region.contains(z)]
    if region.contains(INF):
        v = f.at_infinity()
        mult = (f.deg_num - f.deg_den) if is_inf(v) else \
            next((m for z, m in alpha_points(f, v, region) if is_inf(z)), 1)
        if mult > 1:
            pts.append((INF, mult))
    return pts


def critical_values(f, region=None):
    out = []
    for z, _ in critical_points(f, region):
        v = f.at_infinity() if is_inf(z) else f.eval(z) if f.domain.contains(z) else f(z)
        if not any(chordal(v, u) < 1e-9 for u in out):
            out.append(v)
    return out


def omitted_values(f, region=None):
    """Values never taken in ``region``.

    For a rational function on a punctured sphere the only candidates are the
    values at the punctures (the global degree is otherwise attained); a
    real-power monomial omits 0 and infinity.
    """
    region = f.domain if region is None else region
    if f.is_constant():
        raise ConstantFunction("constant function")
    if f.power:
        return [0j, INF] if f.is_monomial() else []
    cands = []
    for p in region.punctures if region.kind == "sphere" else ():
        v = f.at_infinity() if is_inf(p) else f(p)
        v = INF if is_inf(v) else complex(v)
        if not any(chordal(v, u) < 1e-9 for u in cands):
            cands.append(v)
    return [v for v in cands if not alpha_points(f, v, region)]


# -- islands -----------------------------------------------------------------

@dataclass
class IslandReport:
    alpha: complex
    eps: float
    islands: list = field(default_factory=list)  # (location, multiplicity)
    threshold: float = INF

    @property
    def simple_count(self):
        return sum(1 for _, m in self.islands if m == 1)

    @property
    def total_multiplicity(self):
        return sum(m for _, m in self.islands)

    def to_json(self):
        return {"alpha": value_to_json(self.alpha), "eps": self.eps,
                "threshold": self.threshold, "simple_count": self.simple_count,
                "islands": [[value_to_json(z), m] for z, m in self.islands]}


def island_threshold(f, alpha, region=None, boundary_samples=4096):
    """Largest ``eps`` for which the small-disk cluster picture is valid.

    Below it ``D(alpha, eps)`` contains no critical value of ``f`` other than
    ``alpha``, no value at a puncture or boundary point, and every component
    of ``f^{-1}(D)`` sits inside a disk of half the separation between
    distinct alpha-points (checked with the leading Taylor term).
    """
    region = f.domain if region is None else region
    pts = alpha_points(f, alpha, region)
    bounds = []
    for v in critical_values(f, region):
        if not is_inf(v) and abs(v - alpha) > 1e-9 * max(1.0, abs(alpha)):
            bounds.append(abs(v - alpha))
    if region.kind == "sphere":
        for p in region.punctures:
            v = f.at_infinity() if is_inf(p) else f(p)
            if not is_inf(v):
                bounds.append(abs(v - alpha))
    elif region.kind == "disk" and math.isfinite(region.radius):
        ring = region.radius * np.exp(2j * np.pi * np.arange(boundary_samples) / boundary_samples)
        bounds.append(float(np.min(np.abs(f(ring) - alpha))))
    finite = [(z, m) for z, m in pts if not is_inf(z)]
    if len(finite) > 1:
        zs = np.array([z for z, _ in finite])
        gaps = np.abs(zs[:, None] - zs[None, :]) + np.diag(np.full(len(zs), np.inf))
        half = 0.5 * gaps.min()
        P = np.polynomial.polynomial
        poly = P.polysub(f.num, complex(alpha) * f.den)
        for z, m in finite:
            # leading Taylor coefficient of f - alpha at z
            bm = abs(taylor_at(poly, z, m + 1)[m] / horner(f.den, z))
            bounds.append(0.5 * bm * half ** m)
    return min(bounds) if bounds else INF


def islands(f, alpha, eps, region=None):
    """Islands of ``f`` over the disk ``D(alpha, eps)`` for small ``eps``.

    Each alpha-point of multiplicity ``m`` carries exactly one island of
    multiplicity ``m``.  This is the small-disk picture only; it is not a
    general covering-surface computation.

    Raises
    ------
    EpsilonTooLarge
        When ``eps`` is not below :func:`island_threshold`.
    """
    region = f.domain if region is None else region
    if is_inf(alpha):
        raise ValueError("islands are computed over disks around finite values")
    if f.power:
        raise ValueError("islands need a rational function")
    thr = island_threshold(f, alpha, region)
    if not eps < thr:
        raise EpsilonTooLarge(f"eps={eps:g} exceeds the separation threshold {thr:g}")
    pts = alpha_points(f, alpha, region)
    return IslandReport(alpha=complex(alpha), eps=float(eps), islands=pts, threshold=thr)
