import math

import numpy as np
import pytest

import pavss


def test_reference_config_defaults():
    c = pavss.reference_config(10, 2)
    assert c.n_antennas == 10
    assert c.n_users == 2
    assert c.feed_x == -25.0
    assert math.isclose(pavss.dbm_to_watts(-90.0), 1e-12, rel_tol=1e-15)
    c.refractive_index = 0.5
    with pytest.raises(ValueError):
        c.validate()


def test_channel_matrix_geometry():
    c = pavss.reference_config(8, 2)
    users = pavss.sample_users(3, c)
    assert users == pavss.sample_users(3, c)
    B = pavss.build_channel_matrix(c, users)
    assert (B.n_users, B.n_antennas) == (2, 8)
    g = B.gains
    assert g.shape == (2, 8)
    pas = pavss.pa_positions(c)
    for m, u in enumerate(users):
        for n, p in enumerate(pas):
            assert abs(g[m, n]) * math.dist(u, p) == pytest.approx(1.0, rel=1e-12)


def test_metric_from_numpy():
    B = pavss.ChannelMatrix(np.array([[1.0, 1.0], [1.0, -1.0]], dtype=complex))
    assert pavss.maxmin_metric(B, [1, 1]) == 0.0
    assert pavss.maxmin_metric(B, [1, 0]) == 1.0
    with pytest.raises(ValueError):
        pavss.ChannelMatrix(np.array([[1.0, 0.0]], dtype=complex))


def test_vss_never_beats_brute_force():
    for seed in range(10):
        c = pavss.reference_config(10, 1 + seed % 2)
        B = pavss.build_channel_matrix(c, pavss.sample_users(seed, c))
        v = pavss.vss_select(B, 4)
        b = pavss.brute_force_select(B)
        p = pavss.greedy_pgga_select(B)
        assert v["metric"] <= b["metric"] * (1 + 1e-12)
        assert p["metric"] <= b["metric"] * (1 + 1e-12)
        assert pavss.maxmin_metric(B, v["activation"]) == pytest.approx(v["metric"], rel=1e-12)
        assert v["metric_evaluations"] <= 4 ** c.n_users * 100
        assert b["evaluations"] == 2**10 - 1


def test_quantizer_reference_values():
    assert pavss.quantize_phase(0.0, 4) == 2
    assert pavss.quantize_phase(math.pi, 4) == 0
    assert pavss.quantize_phase(-math.pi, 4) == 0


def test_sweep_and_convergence():
    rows = pavss.run_sweep(pavss.reference_config(1, 1), [5, 10], ["vss", "pgga"], 3, 7)
    assert [(r["N"], r["solver"]) for r in rows] == [(5, "vss"), (5, "pgga"), (10, "vss"), (10, "pgga")]
    curve = pavss.run_convergence(pavss.reference_config(30, 1), 4, 7)
    rates = curve["mean_rate"]
    assert rates == sorted(rates)


def test_verify_reports_every_default_criterion():
    results = pavss.verify(quick=True)
    assert [r["id"] for r in results] == [1, 2, 3, 7, 8]
    for r in results:
        assert r["detail"]
