"""alpha-points, multiplicities and small-disk islands of rational functions."""

# %%
import numpy as np

from flatfront.meromorphic import (
    MeroFn, alpha_points, gamma_sum, island_threshold, islands, ramification_floor,
)
from flatfront.verify import island_oracle, random_rational

# %% z^3 + z has a simple zero at 0, so its floor over [0] is 1.
f = MeroFn([0, 1, 0, 1])
print("zeros of z^3+z:", alpha_points(f, 0), " floor:", ramification_floor(f, [0]))

# %% For a small disk around alpha each alpha-point of multiplicity m carries
# one island of degree m.  The threshold bounds how small is small.
g = MeroFn([-1, 0, 1]) * MeroFn([-1, 0, 1])  # (z^2 - 1)^2
thr = island_threshold(g, 0)
rep = islands(g, 0, 0.5 * thr)
print("threshold:", thr, " islands:", rep.islands, " simple:", rep.simple_count)

# %% Independent check: continue the preimages of a circle around alpha once
# around; the cycle lengths of the resulting permutation are the degrees.
print("continuation cycles:", island_oracle(g, 0, 0.25 * thr))

rng = np.random.default_rng(7)
for _ in range(3):
    h, alpha, planted = random_rational(rng)
    eps = 0.5 * min(island_threshold(h, alpha), 1.0)
    print("planted", sorted(m for _, m in planted),
          "islands", sorted(m for _, m in islands(h, alpha, eps).islands),
          "oracle", island_oracle(h, alpha, 0.5 * eps))

# %% Ramification sums.
print("seven double values:", gamma_sum([2] * 7), " four omitted:", gamma_sum([float("inf")] * 4))
