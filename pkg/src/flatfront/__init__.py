"""Flat fronts in hyperbolic 3-space from holomorphic data."""

from .analysis import analyze, classify, completeness_probe, forms_at, singular_set
from .h3_model import HPoint, act, ball_project, in_h3, lorentz_inner
from .legendrian import front_from_lift, integrate_lift, parallel_front
from .meromorphic import INF, MeroFn, alpha_points, chordal, gamma_sum, islands
from .mesh import export_mesh, mesh_front
from .weierstrass import WeierstrassData, custom_data, revolution_data, voss_data

__version__ = "0.1.0"

__all__ = [
    "INF", "HPoint", "MeroFn", "WeierstrassData", "act", "alpha_points", "analyze",
    "ball_project", "chordal", "classify", "completeness_probe", "custom_data",
    "export_mesh", "forms_at", "front_from_lift", "gamma_sum", "in_h3", "integrate_lift",
    "islands", "lorentz_inner", "mesh_front", "parallel_front", "revolution_data",
    "singular_set", "voss_data",
]
