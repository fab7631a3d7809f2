"""Points of H^3 as Hermitian matrices, SL(2,C) acting on them, and the
Poincare ball chart used for export."""

# %%
import numpy as np

from flatfront.h3_model import (
    act, ball_project, herm_from_minkowski, in_h3, lorentz_inner, minkowski_from_herm,
    random_h3, random_sl2,
)

rng = np.random.default_rng(0)

# %% A point (x0, x1, x2, x3) with -x0^2 + |x|^2 = -1 becomes a unimodular
# Hermitian matrix with positive trace.
t = 0.8
X = herm_from_minkowski([np.cosh(t), 0, 0, np.sinh(t)])
print("X =\n", X)
print("det X =", np.linalg.det(X).real, " in H3:", in_h3(X))

# %% The inner product is -1/2 tr(X adj Y); on H^3 it is -cosh(distance).
O = np.eye(2)
print("<O, X> =", lorentz_inner(O, X), " -cosh t =", -np.cosh(t))

# %% a X a* moves points and keeps inner products.
a = random_sl2(rng, 5)
P, Q = random_h3(rng, 5), random_h3(rng, 5)
print("inner products before:", np.round(lorentz_inner(P, Q), 6))
print("inner products after: ", np.round(lorentz_inner(act(a, P), act(a, Q)), 6))

# %% The ball chart sends the origin to 0 and the boost above to (0, 0, tanh(t/2)).
print("ball(X) =", ball_project(X), " tanh(t/2) =", np.tanh(t / 2))
far = random_h3(rng, 10000, scale=3.0)
print("max ball norm of 10^4 random points:", np.linalg.norm(ball_project(far), axis=1).max())
print("coordinates survive a round trip:", np.allclose(minkowski_from_herm(X), [np.cosh(t), 0, 0, np.sinh(t)]))
