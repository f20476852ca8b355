import json
import math

import pytest

import cosurf


def test_catalog_lists_surfaces():
    names = cosurf.catalog_names()
    for n in ("plane", "catenoid", "helicoid", "enneper", "h2_in_h3", "hyperbolic_catenoid", "sphere"):
        assert n in names


def test_space_form_helpers():
    r3 = cosurf.SpaceForm(0.0, 3)
    assert cosurf.disk_area(r3, 2.0) == pytest.approx(4 * math.pi, rel=1e-12)
    h3 = cosurf.SpaceForm(-1.0, 3)
    assert cosurf.circle_length(h3, 1.0) == pytest.approx(2 * math.pi * math.sinh(1.0), rel=1e-12)
    assert cosurf.sphere_mean_curvature(h3, 1.0) == pytest.approx(1 / math.tanh(1.0), rel=1e-12)


def test_unknown_surface_raises():
    with pytest.raises(cosurf.Error):
        cosurf.make_surface("nosuch")


def test_plane_ball():
    s = cosurf.make_surface("plane")
    assert s.minimal
    f = cosurf.build_field(s, t_max=4.0, grid=128)
    assert f.pole_on_surface
    b = cosurf.extract_ball(f, 1.0)
    assert b.area == pytest.approx(math.pi, rel=1e-6)
    assert b.boundary_length == pytest.approx(2 * math.pi, rel=1e-6)
    assert b.components == 1
    assert cosurf.gauss_bonnet_chi(f, b) == pytest.approx(1.0, abs=1e-6)
    formula, direct = cosurf.geodesic_curvatures(f, b)
    assert len(formula) == b.sample_count > 0
    assert max(abs(a - d) for a, d in zip(formula, direct)) < 1e-5


def test_series_and_verdicts():
    s = cosurf.make_surface("plane")
    f = cosurf.build_field(s, t_max=4.0, grid=128)
    out = cosurf.series(f, [0.5, 1.0, 2.0, 4.0])
    assert len(out["records"]) == 4
    assert out["chi"] == 1
    assert out["exit_code"] == 0
    assert all(v["pass"] for v in out["verdicts"] if v["applicable"])


def test_run_config_helicoid_exit_two():
    config = {"surface": "helicoid", "grid": {"nu": 128, "nv": 128},
              "schedule": {"t_min": 0.5, "t_max": 8, "count": 12}}
    code, report = cosurf._core.run(json.dumps(config), False)
    doc = json.loads(report)
    assert code == 2
    assert doc["schema_version"] == cosurf.REPORT_SCHEMA_VERSION
    assert doc["status"] == "hypothesis_violated"
