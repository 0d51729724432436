"""End-to-end smoke checks for the python module and the CLI binary.

Run via ctest, which points PYTHONPATH at the build tree and exports
TOPOTEX_CLI / TOPOTEX_SCHEMA for the subprocess round-trip test.
"""

import json
import math
import os
import subprocess

import jsonschema
import numpy as np
import pytest

import topotex


def test_version_and_exports():
    assert topotex.__version__
    for name in topotex.__all__:
        assert hasattr(topotex, name)


def test_generate_and_persistence():
    g = topotex.generate(overlap=0.25, n=4, pixels=300)
    assert g.shape == (300, 300)
    assert g.min() >= 0.0 and g.max() <= 1.0

    d0 = topotex.sublevel_h0(g)
    assert d0.ndim == 2 and d0.shape[1] == 7
    essential = d0[np.isinf(d0[:, 2])]
    assert essential.shape[0] == 1

    ring = np.ones((5, 5))
    ring[1, 1:4] = 0.0
    ring[3, 1:4] = 0.0
    ring[2, 1] = 0.0
    ring[2, 3] = 0.0
    d1 = topotex.sublevel_h1(ring)
    assert d1.shape == (1, 7)
    assert d1[0, 1] == 0.0 and d1[0, 2] == 1.0


def test_noise_is_seeded():
    g = topotex.gaussian_bumps(bumps_per_side=3, pixels=120)
    a = topotex.add_noise(g, 30.0, seed=7)
    b = topotex.add_noise(g, 30.0, seed=7)
    c = topotex.add_noise(g, 30.0, seed=8)
    assert np.array_equal(a, b)
    assert not np.array_equal(a, c)
    n = topotex.normalize(a)
    assert n.min() == 0.0 and n.max() == 1.0


def test_distance_transform_and_emd():
    g = np.ones((3, 3))
    g[0, 0] = 0.0
    dt = topotex.distance_transform(g, 0.5)
    assert dt[0, 0] == 1.0
    assert dt[1, 1] == 0.0

    assert topotex.emd([0.0], [1.0]) == pytest.approx(1.0)
    assert topotex.emd([0.0, 1.0], [0.5]) == pytest.approx(0.5)


def test_closed_forms():
    assert topotex.rice_bins(361) == 15
    assert topotex.nominal_radius(0.25) == pytest.approx(0.1875)
    assert topotex.merge_height(0.25) == pytest.approx(0.33856, abs=1e-4)
    assert topotex.critical_overlap() == pytest.approx(1.0 - math.sqrt(0.5))
    assert topotex.sigma_at(0.125, 0.25) == pytest.approx(0.21651, abs=1e-4)
    h = topotex.merge_height(0.25, 0.1875)
    assert topotex.intersection_height_a(1.1 * h, 0.1875, 0.25) == pytest.approx(
        0.0391684, abs=1e-4
    )
    assert topotex.diagonal_height(0.5) == pytest.approx(0.29289, abs=1e-4)


def test_analysis_scores_nominal_textures():
    depth = topotex.analyze_depth(topotex.generate(overlap=0.25, n=4, pixels=500), 0.25, 4)
    assert depth["depth_score"] > 0.95
    assert depth["n_pairs_kept"] == 16
    assert depth["roundness_spherical"] is None
    assert {s["name"] for s in depth["filter_log"]} == {"lifetime_cutoff", "birth_trim"}

    roundness = topotex.analyze_roundness(
        topotex.generate(overlap=0.25, n=4, pixels=300),
        0.25,
        4,
        keep_zero_births=True,
        threads=2,
    )
    assert roundness["depth_score"] is None
    assert roundness["roundness_spherical"] > 0.9
    assert roundness["reference_height"] < 0.05


@pytest.mark.skipif("TOPOTEX_CLI" not in os.environ, reason="needs the CLI path from ctest")
def test_cli_report_round_trip(tmp_path):
    cli = os.environ["TOPOTEX_CLI"]
    grid = topotex.generate(overlap=0.25, n=4, pixels=300)
    csv = tmp_path / "grid.csv"
    np.savetxt(csv, grid, fmt="%.17g", delimiter=",")

    reports = []
    for name in ("r1.json", "r2.json"):
        out = tmp_path / name
        subprocess.run(
            [cli, "analyze", "depth", "--in", str(csv), "--overlap", "0.25", "--n", "4",
             "--report", str(out)],
            check=True,
        )
        reports.append(out.read_bytes())
    assert reports[0] == reports[1]

    report = json.loads(reports[0])
    schema_path = os.environ.get("TOPOTEX_SCHEMA")
    if schema_path:
        with open(schema_path) as f:
            jsonschema.validate(report, json.load(f))
    assert report["depth_score"] > 0.95
    assert report["n_pairs_kept"] == 16
