import math

import numpy as np
import pytest

from flatfront.errors import IoError
from flatfront.grid import SampleGrid, default_grid
from flatfront.h3_model import in_h3, herm_from_minkowski
from flatfront.mesh import (
    FrontMesh, export_mesh, horosphere_fit, mesh_front, quantize_rho, read_obj, read_ply,
)
from flatfront.weierstrass import revolution_data, voss_data


@pytest.fixture(scope="module")
def horosphere_mesh():
    return mesh_front(revolution_data(0.0, 1.0))


def test_horosphere_mesh_lies_on_horosphere(horosphere_mesh):
    v, resid = horosphere_fit(horosphere_mesh.h3)
    assert abs(v[0] ** 2 - v[1] ** 2 - v[2] ** 2 - v[3] ** 2) < 1e-9 * v[0] ** 2
    assert resid < 1e-6


def test_mesh_points_are_in_h3_and_ball(horosphere_mesh):
    X = herm_from_minkowski(horosphere_mesh.h3)
    assert np.all(in_h3(X, 1e-6))
    assert np.all(np.linalg.norm(horosphere_mesh.vertices, axis=1) < 1)


def test_faces_index_valid_vertices(horosphere_mesh):
    f = horosphere_mesh.faces
    assert f.min() >= 0 and f.max() < len(horosphere_mesh.vertices)


@pytest.mark.parametrize("E", ["1,-1,inf", "0,inf", "1j,2"])
def test_loop_closure_audit_voss(E):
    m = mesh_front(voss_data(E), default_grid(voss_data(E), shape=(40, 40)), audit_fraction=0.05)
    assert m.audit["cells"] > 0 and m.audit["max_rel_err"] < 1e-6
    assert np.all(np.linalg.norm(m.vertices, axis=1) < 1)


def test_singular_overlay_revolution():
    d = revolution_data(1 / 3, 1.0)
    m = mesh_front(d)
    assert len(m.overlays) == 1
    assert np.any(m.scalars["singular"] == 1)
    flagged = m.chart_points[m.scalars["singular"] == 1]
    np.testing.assert_allclose(flagged.real, math.log((4 / 3) ** 0.25), atol=2 * 2 / 63)


def test_parallel_fronts_differ_and_stay_inside():
    d = revolution_data(3.0, 1.0)
    g = default_grid(d, shape=(24, 24))
    a, b = mesh_front(d, g, t=0.0), mesh_front(d, g, t=0.5)
    assert np.abs(a.vertices - b.vertices).max() > 1e-3
    assert np.all(np.linalg.norm(b.vertices, axis=1) < 1)


def test_thread_count_does_not_change_output(monkeypatch):
    d = voss_data("1,-1,inf")
    g = default_grid(d, shape=(24, 24))
    monkeypatch.setenv("FLATFRONT_THREADS", "1")
    a = mesh_front(d, g)
    monkeypatch.setenv("FLATFRONT_THREADS", "4")
    b = mesh_front(d, g)
    np.testing.assert_array_equal(a.vertices, b.vertices)


def test_export_empty_mesh(tmp_path):
    for fmt in ("obj", "ply"):
        p = tmp_path / f"empty.{fmt}"
        export_mesh(FrontMesh.empty(), fmt, p)
        if fmt == "obj":
            v, f = read_obj(p)
            assert "v " not in p.read_text()
        else:
            v, rgb, f = read_ply(p)
        assert len(v) == 0 and len(f) == 0


def test_obj_round_trip(tmp_path, horosphere_mesh):
    p = tmp_path / "m.obj"
    export_mesh(horosphere_mesh, "obj", p)
    v, f = read_obj(p)
    assert len(v) == len(horosphere_mesh.vertices)
    np.testing.assert_allclose(v[0], horosphere_mesh.vertices[0], rtol=1e-8)
    np.testing.assert_allclose(v[-1], horosphere_mesh.vertices[-1], rtol=1e-8)
    np.testing.assert_array_equal(f, horosphere_mesh.faces)


def test_ply_colors_are_quantized_abs_rho(tmp_path):
    d = revolution_data(1 / 3, 1.0)
    m = mesh_front(d, default_grid(d, shape=(32, 32)))
    p = tmp_path / "m.ply"
    export_mesh(m, "ply", p)
    v, rgb, f = read_ply(p)
    expected = np.rint(255 * np.clip(m.scalars["abs_rho"] / 2, 0, 1)).astype(np.uint8)
    np.testing.assert_array_equal(rgb[:, 0], expected)
    np.testing.assert_allclose(v, m.vertices, atol=1e-7)
    np.testing.assert_array_equal(f, m.faces)


def test_quantize_rho():
    np.testing.assert_array_equal(quantize_rho([0, 1, 2, 5, 0.5]), [0, 128, 255, 255, 64])


def test_export_is_deterministic(tmp_path):
    d = voss_data("1,-1,inf")
    g = default_grid(d, shape=(24, 24))
    for fmt in ("obj", "ply"):
        a, b = tmp_path / f"a.{fmt}", tmp_path / f"b.{fmt}"
        export_mesh(mesh_front(d, g), fmt, a, overlays=True)
        export_mesh(mesh_front(d, g), fmt, b, overlays=True)
        assert a.read_bytes() == b.read_bytes()


def test_export_io_error(tmp_path):
    with pytest.raises(IoError):
        export_mesh(FrontMesh.empty(), "obj", tmp_path / "missing" / "m.obj")


def test_grid_points_and_masks():
    g = SampleGrid((0, 1), (0, 2), (3, 5), masks=((0.4, 0.6, -1, 3),))
    p = g.points()
    assert p.shape == (5, 3)
    assert p[0, 0] == 0 and p[-1, -1] == 1 + 2j
    assert g.vertex_mask()[:, 1].all() and not g.vertex_mask()[:, 0].any()
    with pytest.raises(ValueError):
        SampleGrid(shape=(1, 4))
