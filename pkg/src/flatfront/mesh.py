"""Front meshes in the Poincare ball and their OBJ / PLY export.

The lift is integrated along a breadth-first spanning tree of the sampling
grid, so every vertex costs one short integration; a random sample of grid
cells is then integrated around as a holomorphy (loop-closure) audit.
"""

import math
import struct
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .analysis import abs_rho_on_grid, singular_set
from .config import DEFAULT, max_threads
from .errors import IoError
from .grid import SampleGrid, default_grid
from .h3_model import ball_project, minkowski_from_herm
from .legendrian import front_from_lift, lift_at, parallel_front


@dataclass
class FrontMesh:
    vertices: np.ndarray                     # (N, 3) ball coordinates
    faces: np.ndarray                        # (M, 3) vertex indices
    scalars: dict = field(default_factory=dict)   # name -> (N,) array
    overlays: list = field(default_factory=list)  # (k, 3) ball polylines
    h3: np.ndarray = None                    # (N, 4) Minkowski coordinates of f_t
    chart_points: np.ndarray = None          # (N,) complex
    frames: np.ndarray = None                # (N, 2, 2) lifts
    audit: dict = field(default_factory=dict)

    @classmethod
    def empty(cls):
        return cls(np.zeros((0, 3)), np.zeros((0, 3), dtype=np.int64))


def _rel_err(A, B):
    return float(np.linalg.norm(A - B) / max(1.0, np.linalg.norm(B)))


def mesh_front(d, grid=None, t=0.0, audit_fraction=0.01, seed=0, tol=DEFAULT,
               overlay=True):
    """Sample the parallel front ``f_t`` of ``d`` over ``grid``.

    Vertices near chart poles or inside grid masks are dropped, as are
    vertices the spanning tree cannot reach.  Per-vertex scalars: ``abs_rho``,
    ``lam`` (ds11 factor) and ``singular`` (1 where a grid edge at the vertex
    crosses ``|rho| = 1``).
    """
    grid = default_grid(d) if grid is None else grid
    pts = grid.points()
    ny, nx = pts.shape
    dx, dy = grid.spacing
    masked = grid.vertex_mask()
    for p in d.chart_poles():
        masked |= np.abs(pts - p) < 1.5 * max(dx, dy)
    kw = {"rtol": tol.rtol, "atol": tol.atol}

    base_pt = d.base_point()
    free = np.argwhere(~masked)
    if free.size == 0:
        return FrontMesh.empty()
    dist = np.abs(pts[~masked] - base_pt)
    root = tuple(free[int(np.argmin(dist))])
    frames = np.full((ny, nx, 2, 2), np.nan, dtype=complex)
    frames[root] = lift_at(d, [base_pt, pts[root]], **kw)

    # breadth-first spanning tree, one level at a time
    level = [root]
    seen = np.zeros_like(masked)
    seen[root] = True
    parent = {}
    workers = max_threads()
    pool = ThreadPoolExecutor(workers) if workers > 1 else None
    try:
        while level:
            edges = []
            for r, c in level:
                for rr, cc in ((r + 1, c), (r - 1, c), (r, c + 1), (r, c - 1)):
                    if 0 <= rr < ny and 0 <= cc < nx and not masked[rr, cc] and not seen[rr, cc]:
                        seen[rr, cc] = True
                        parent[(rr, cc)] = (r, c)
                        edges.append(((r, c), (rr, cc)))

            def run(e):
                a, b = e
                return lift_at(d, [pts[a], pts[b]], frames[a], **kw)

            results = list(pool.map(run, edges)) if pool else [run(e) for e in edges]
            for (_, b), E in zip(edges, results):
                frames[b] = E
            level = [b for _, b in edges]
    finally:
        if pool:
            pool.shutdown()
    valid = seen

    # loop-closure audit on random cells
    cells = [(r, c) for r in range(ny - 1) for c in range(nx - 1)
             if valid[r, c] and valid[r + 1, c] and valid[r, c + 1] and valid[r + 1, c + 1]]
    rng = np.random.default_rng(seed)
    n_audit = min(len(cells), max(1, int(round(audit_fraction * len(cells))))) if cells else 0
    picks = rng.choice(len(cells), size=n_audit, replace=False) if n_audit else []
    worst = 0.0
    for i in sorted(picks):
        r, c = cells[i]
        a, b, e, f = (r, c), (r, c + 1), (r + 1, c + 1), (r + 1, c)
        via_x = lift_at(d, [pts[a], pts[b], pts[e]], frames[a], **kw)
        via_y = lift_at(d, [pts[a], pts[f], pts[e]], frames[a], **kw)
        worst = max(worst, _rel_err(via_x, frames[e]), _rel_err(via_y, frames[e]))

    idx = -np.ones((ny, nx), dtype=np.int64)
    idx[valid] = np.arange(int(valid.sum()))
    E = frames[valid]
    fp = parallel_front(front_from_lift(E, tol=1e-6), t)
    verts = ball_project(fp.f)
    faces = []
    for r in range(ny - 1):
        for c in range(nx - 1):
            v00, v01, v11, v10 = idx[r, c], idx[r, c + 1], idx[r + 1, c + 1], idx[r + 1, c]
            if min(v00, v01, v11, v10) < 0:
                continue
            faces.append((v00, v01, v11))
            faces.append((v00, v11, v10))
    faces = np.array(faces, dtype=np.int64).reshape(-1, 3)

    chart_grid = SampleGrid(x=grid.x, y=grid.y, shape=grid.shape, coords="chart",
                            masks=grid.masks, rotation=grid.rotation)
    a = abs_rho_on_grid(d, chart_grid)
    sign = np.sign(a - 1.0)
    sing = np.zeros_like(valid)
    flip_x = sign[:, 1:] != sign[:, :-1]
    flip_y = sign[1:, :] != sign[:-1, :]
    sing[:, 1:] |= flip_x
    sing[:, :-1] |= flip_x
    sing[1:, :] |= flip_y
    sing[:-1, :] |= flip_y
    hw, _ = d.coefficients(pts)
    with np.errstate(invalid="ignore", over="ignore"):
        lam = (1 + a ** 2) * np.abs(hw) ** 2

    overlays = []
    if overlay:
        fine = SampleGrid(x=grid.x, y=grid.y, shape=(min(4 * nx, 512), min(4 * ny, 512)),
                          coords="chart", masks=grid.masks, rotation=grid.rotation)
        vp = pts[valid]
        for curve in singular_set(d, fine):
            out = []
            for w in curve[:: max(1, len(curve) // 256)]:
                j = int(np.argmin(np.abs(vp - w)))
                if abs(vp[j] - w) > 2 * max(dx, dy):
                    continue
                Ew = lift_at(d, [vp[j], w], E[j], **kw)
                out.append(ball_project(parallel_front(front_from_lift(Ew, tol=1e-6), t).f))
            if len(out) > 1:
                overlays.append(np.array(out))

    return FrontMesh(
        vertices=verts, faces=faces,
        scalars={"abs_rho": a[valid], "lam": lam[valid], "singular": sing[valid].astype(np.uint8)},
        overlays=overlays, h3=minkowski_from_herm(fp.f), chart_points=pts[valid], frames=E,
        audit={"cells": int(n_audit), "max_rel_err": worst})


# -- export ---------------------------------------------------------------------

def _fmt(x):
    return "%.9g" % x


def quantize_rho(abs_rho):
    """``|rho|`` in ``[0, 2]`` mapped linearly to 0..255 (clamped)."""
    a = np.nan_to_num(np.asarray(abs_rho, dtype=float), nan=2.0, posinf=2.0)
    return np.rint(255.0 * np.clip(a / 2.0, 0.0, 1.0)).astype(np.uint8)


def export_mesh(m, fmt, path, overlays=False):
    """Write ``m`` as ASCII OBJ or binary little-endian PLY.

    Output is a pure function of the mesh: fixed ``%.9g`` formatting in OBJ,
    float32 / uint8 records in PLY.  With ``overlays=True`` the OBJ gets the
    singular curves appended as extra ``v`` records joined by ``l`` records.
    """
    fmt = fmt.lower()
    try:
        if fmt == "obj":
            lines = ["# flatfront front mesh"]
            lines += ["v " + " ".join(_fmt(x) for x in v) for v in m.vertices]
            lines += ["f %d %d %d" % tuple(int(i) + 1 for i in f) for f in m.faces]
            if overlays:
                n = len(m.vertices)
                for curve in m.overlays:
                    lines += ["v " + " ".join(_fmt(x) for x in v) for v in curve]
                    lines.append("l " + " ".join(str(n + k + 1) for k in range(len(curve))))
                    n += len(curve)
            with open(path, "w", encoding="ascii", newline="\n") as fh:
                fh.write("\n".join(lines) + "\n")
        elif fmt == "ply":
            nv, nf = len(m.vertices), len(m.faces)
            header = ("ply\nformat binary_little_endian 1.0\ncomment flatfront front mesh\n"
                      f"element vertex {nv}\nproperty float x\nproperty float y\nproperty float z\n"
                      "property uchar red\nproperty uchar green\nproperty uchar blue\n"
                      f"element face {nf}\nproperty list uchar int vertex_indices\nend_header\n")
            vdt = np.dtype([("x", "<f4"), ("y", "<f4"), ("z", "<f4"),
                            ("r", "u1"), ("g", "u1"), ("b", "u1")])
            vert = np.zeros(nv, dtype=vdt)
            if nv:
                vert["x"], vert["y"], vert["z"] = m.vertices.T
                q = quantize_rho(m.scalars.get("abs_rho", np.zeros(nv)))
                vert["r"] = vert["g"] = vert["b"] = q
            fdt = np.dtype([("n", "u1"), ("i", "<i4", (3,))])
            face = np.zeros(nf, dtype=fdt)
            face["n"] = 3
            if nf:
                face["i"] = m.faces
            with open(path, "wb") as fh:
                fh.write(header.encode("ascii"))
                fh.write(vert.tobytes())
                fh.write(face.tobytes())
        else:
            raise ValueError(f"unknown mesh format {fmt!r}")
    except OSError as exc:
        raise IoError(str(exc)) from exc


def read_obj(path):
    verts, faces = [], []
    with open(path, encoding="ascii") as fh:
        for line in fh:
            parts = line.split()
            if not parts:
                continue
            if parts[0] == "v":
                verts.append([float(x) for x in parts[1:4]])
            elif parts[0] == "f":
                faces.append([int(x.split("/")[0]) - 1 for x in parts[1:]])
    return np.array(verts).reshape(-1, 3), np.array(faces, dtype=np.int64).reshape(-1, 3)


def read_ply(path):
    """Parse the PLY layout written by :func:`export_mesh`.

    Returns ``(vertices, colors, faces)``.
    """
    with open(path, "rb") as fh:
        blob = fh.read()
    end = blob.index(b"end_header\n") + len(b"end_header\n")
    header = blob[:end].decode("ascii").splitlines()
    nv = int(next(l for l in header if l.startswith("element vertex")).split()[-1])
    nf = int(next(l for l in header if l.startswith("element face")).split()[-1])
    vdt = np.dtype([("x", "<f4"), ("y", "<f4"), ("z", "<f4"),
                    ("r", "u1"), ("g", "u1"), ("b", "u1")])
    vert = np.frombuffer(blob, dtype=vdt, count=nv, offset=end)
    fdt = np.dtype([("n", "u1"), ("i", "<i4", (3,))])
    face = np.frombuffer(blob, dtype=fdt, count=nf, offset=end + nv * vdt.itemsize)
    xyz = np.stack([vert["x"], vert["y"], vert["z"]], axis=1).astype(float)
    rgb = np.stack([vert["r"], vert["g"], vert["b"]], axis=1)
    return xyz, rgb, face["i"].astype(np.int64)


def horosphere_fit(h3):
    """Least-squares ``v`` with ``<f_i, v> = 1`` for Minkowski points ``f_i``.

    Returns ``(v, max_residual)``; ``v`` is null when the points lie on a
    horosphere.
    """
    A = np.asarray(h3) * np.array([-1.0, 1.0, 1.0, 1.0])
    v, *_ = np.linalg.lstsq(A, np.ones(len(A)), rcond=None)
    return v, float(np.max(np.abs(A @ v - 1.0)))
