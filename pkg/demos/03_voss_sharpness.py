"""Ratio rho = xi omitting q points: complete for q <= 3, a finite-length
divergent path for q = 4."""

# %%
import numpy as np

from flatfront import analysis as an
from flatfront.meromorphic import INF
from flatfront.weierstrass import voss_data

# %% Every end of the q <= 3 data is certified complete.
for E in ("inf", "0,inf", "1,-1,inf"):
    verdicts = an.completeness_probe(voss_data(E))
    print(f"E = {E:10s}", [(str(v.end), v.verdict, v.probe) for v in verdicts])

# %% Along the positive real axis the length grows like log R when q = 3 ...
d3 = voss_data("1,-1,inf")
R = 2.0 * np.logspace(0, 5, 11)
L3 = an.ds11_length(d3, an.radial_ray(), R)
print("q=3 lengths:", np.round(L3, 4))
print("slope against log R:", np.polyfit(np.log(R[2:]), L3[2:], 1)[0])

# %% ... but converges once a fourth point is omitted.
d4 = voss_data("1,-1,2,inf", force=True)
R4 = 1e3 * np.logspace(0, 6, 13)
L4 = an.ds11_length(d4, an.radial_ray(), R4)
print("q=4 increments:", [f"{x:.1e}" for x in np.diff(L4)])
end = [v for v in an.completeness_probe(d4) if v.end == INF][0]
print("q=4 end at infinity:", end.verdict, " limit", end.growth["limit_estimate"])

# %% Three omitted values give gamma = 3, which does not pass the gate.
v = an.classify(d3, targets=[1.0, -1.0, INF])
print("gamma =", v.gamma, " gate:", v.gate_passed, " verdict:", v.verdict)
try:
    voss_data("1,-1,2,inf")
except Exception as exc:
    print("q = 4 without force:", type(exc).__name__)
