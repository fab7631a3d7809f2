"""Hyperbolic 3-space as unimodular positive Hermitian 2x2 matrices.

A Minkowski vector ``(x0, x1, x2, x3)`` with signature ``(-,+,+,+)`` is
identified with the Hermitian matrix::

    [[x0 + x3,     x1 + i x2],
     [x1 - i x2,   x0 - x3  ]]

so that ``det X = x0**2 - x1**2 - x2**2 - x3**2``.  H^3 is the sheet
``det X = 1, trace X > 0`` and SL(2, C) acts isometrically by ``X -> a X a^*``.

All functions broadcast over leading axes: matrices have shape ``(..., 2, 2)``
and Minkowski vectors ``(..., 4)``.
"""

import numpy as np

from .config import DEFAULT
from .errors import NonHermitian, NotUnimodular

E3 = np.array([[1, 0], [0, -1]], dtype=complex)
ETA = np.array([-1.0, 1.0, 1.0, 1.0])


def herm_from_minkowski(v):
    v = np.asarray(v, dtype=float)
    x0, x1, x2, x3 = np.moveaxis(v, -1, 0)
    out = np.empty(v.shape[:-1] + (2, 2), dtype=complex)
    out[..., 0, 0] = x0 + x3
    out[..., 0, 1] = x1 + 1j * x2
    out[..., 1, 0] = x1 - 1j * x2
    out[..., 1, 1] = x0 - x3
    return out


def hermitian_defect(X):
    X = np.asarray(X, dtype=complex)
    return np.abs(X - np.conj(np.swapaxes(X, -1, -2))).max(axis=(-2, -1))


def minkowski_from_herm(X, tol=DEFAULT.tau_herm):
    """Inverse of :func:`herm_from_minkowski`.

    Raises
    ------
    NonHermitian
        If ``X`` differs from its conjugate transpose by more than ``tol``
        (absolute, scaled by ``max(1, |X|)``).
    """
    X = np.asarray(X, dtype=complex)
    scale = np.maximum(1.0, np.abs(X).max(axis=(-2, -1)))
    if np.any(hermitian_defect(X) > tol * scale):
        raise NonHermitian("matrix is not Hermitian within tolerance")
    a = X[..., 0, 0].real
    d = X[..., 1, 1].real
    b = 0.5 * (X[..., 0, 1] + np.conj(X[..., 1, 0]))
    return np.stack([(a + d) / 2, b.real, b.imag, (a - d) / 2], axis=-1)


def minkowski_inner(u, v):
    """Signature (-,+,+,+) inner product of Minkowski vectors."""
    return np.sum(ETA * np.asarray(u) * np.asarray(v), axis=-1)


def lorentz_inner(X, Y):
    """``-1/2 trace(X adj(Y))`` for Hermitian ``X, Y``.

    With ``X == Y`` this is ``-det X``.
    """
    X = np.asarray(X, dtype=complex)
    Y = np.asarray(Y, dtype=complex)
    tr = (X[..., 0, 0] * Y[..., 1, 1] + X[..., 1, 1] * Y[..., 0, 0]
          - X[..., 0, 1] * Y[..., 1, 0] - X[..., 1, 0] * Y[..., 0, 1])
    return -0.5 * tr.real


def det2(X):
    X = np.asarray(X)
    return X[..., 0, 0] * X[..., 1, 1] - X[..., 0, 1] * X[..., 1, 0]


def in_h3(X, tol=DEFAULT.tau_det):
    X = np.asarray(X, dtype=complex)
    det = det2(X)
    trace = (X[..., 0, 0] + X[..., 1, 1]).real
    return (np.abs(det - 1) <= tol) & (trace > 0)


def check_unimodular(a, tol=DEFAULT.tau_det):
    a = np.asarray(a, dtype=complex)
    if np.any(np.abs(det2(a) - 1) > tol):
        raise NotUnimodular("det a != 1 within tolerance")
    return a


def act(a, X, tol=DEFAULT.tau_det):
    """Apply the isometry ``X -> a X a^*``.

    The sign of ``a`` is irrelevant, so SL(2, C) representatives stand in
    for elements of PSL(2, C).
    """
    a = check_unimodular(a, tol)
    X = np.asarray(X, dtype=complex)
    return a @ X @ np.conj(np.swapaxes(a, -1, -2))


def ball_project(X):
    """Poincare-ball coordinates ``(x1, x2, x3) / (1 + x0)``."""
    v = minkowski_from_herm(X)
    return v[..., 1:] / (1.0 + v[..., :1])


def random_sl2(rng, size=None, scale=1.0):
    """Random unimodular matrices ``exp(scale * N)`` for Gaussian traceless ``N``.

    Generated in closed form: for traceless ``N`` with ``N @ N = s**2 I``,
    ``exp(N) = cosh(s) I + sinh(s)/s N``.
    """
    shape = () if size is None else (size,) if np.isscalar(size) else tuple(size)
    g = (rng.standard_normal(shape + (3,)) + 1j * rng.standard_normal(shape + (3,)))
    g *= scale / np.sqrt(2)
    n = np.empty(shape + (2, 2), dtype=complex)
    n[..., 0, 0] = g[..., 0]
    n[..., 1, 1] = -g[..., 0]
    n[..., 0, 1] = g[..., 1]
    n[..., 1, 0] = g[..., 2]
    s = np.sqrt(g[..., 0] ** 2 + g[..., 1] * g[..., 2])
    small = np.abs(s) < 1e-8
    sinhc = np.where(small, 1.0 + s ** 2 / 6, np.sinh(s) / np.where(small, 1.0, s))
    out = sinhc[..., None, None] * n
    out[..., 0, 0] += np.cosh(s)
    out[..., 1, 1] += np.cosh(s)
    return out


def random_h3(rng, size=None, scale=1.0):
    a = random_sl2(rng, size, scale)
    return a @ np.conj(np.swapaxes(a, -1, -2))


class HPoint:
    """A point of H^3, stored as Minkowski coordinates.

    The matrix form is a view computed on demand.
    """

    __slots__ = ("coords",)

    def __init__(self, coords, tol=DEFAULT.tau_det):
        coords = np.asarray(coords, dtype=float)
        if coords.shape != (4,):
            raise ValueError("expected 4 Minkowski coordinates")
        if not in_h3(herm_from_minkowski(coords), tol):
            raise ValueError("point does not lie on H^3")
        self.coords = coords

    @classmethod
    def from_matrix(cls, X, tol=DEFAULT.tau_det):
        return cls(minkowski_from_herm(X), tol)

    @property
    def matrix(self):
        return herm_from_minkowski(self.coords)

    def __repr__(self):
        return "HPoint({:.6g}, {:.6g}, {:.6g}, {:.6g})".format(*self.coords)
