import math

import numpy as np
import pytest

import hdgrid as hg


def test_delta_constants_match_closed_forms():
    for dim in (1, 2, 3):
        value, _ = hg.compute_delta(dim)
        assert value == pytest.approx(hg.delta_closed_form(dim), abs=1e-8)
    assert hg.delta_closed_form(2) == pytest.approx(2 / 3 * math.sqrt(5 - math.sqrt(7)))


def test_field_shape_and_layout():
    g = hg.Grid(2, [-1.5, -2.0], 0.5, [7, 9])
    f = hg.sample_exact_sd(g, hg.Shape.ball(2, [0, 0], 1.0))
    assert f.values.shape == (9, 7)
    # values[j, i] is the node at origin + (i h, j h)
    assert f.values[6, 4] == pytest.approx(math.hypot(0.5, 1.0) - 1.0)


def test_interval_example():
    a = hg.Shape.box(1, [0], [1])
    b = hg.Shape.box(1, [0], [3])
    g = hg.Grid(1, [-2.0], 0.25, [29])
    rep = hg.dh_approx(hg.sample_exact_distance(g, a), hg.sample_exact_distance(g, b))
    assert rep["d_tilde"] == pytest.approx(2.0)
    assert hg.dh_oracle(a, b, 1e-3)["dh"] == pytest.approx(2.0, abs=1e-3)


def test_lower_bound_against_oracle():
    a = hg.Shape.union([hg.Shape.ball(2, [0, 0], 1.0), hg.Shape.ball(2, [1.5, 0], 0.5)], exact=True)
    b = hg.Shape.ball(2, [0.2, 0.1], 1.2)
    g = hg.Grid(2, [-2.5, -2.5], 0.1, [51, 51])
    rep = hg.dh_approx(hg.sample_exact_distance(g, a), hg.sample_exact_distance(g, b))
    oracle = hg.dh_oracle(a, b, 0.02)
    assert rep["d_tilde"] <= oracle["dh"] + oracle["error_bound"]
    assert oracle["dh"] - rep["d_tilde"] <= rep["worst_case_bound"] - rep["d_tilde"] + oracle["error_bound"]


def test_fast_march_round_trip():
    g = hg.Grid(2, [-2, -2], 0.1, [41, 41])
    ball = hg.Shape.ball(2, [0, 0], 1.0)
    sd = hg.fast_march(hg.sample_level_set(g, ball))
    exact = hg.sample_exact_sd(g, ball)
    assert np.max(np.abs(sd.values - exact.values)) <= 0.2


def test_maximal_error_scene():
    s = hg.maximal_error_scene(1.0, 0.05)
    rep = hg.dh_approx(s["dA"], s["dB"])
    assert s["expected_dh"] - rep["d_tilde"] == pytest.approx(hg.delta_closed_form(2), abs=1e-9)


def test_circle_in_ring_and_sweep():
    scene = hg.circle_in_ring(2, [3.0, 0.0])
    assert scene["dh"] == pytest.approx(6.0)
    assert scene["max_r"] == pytest.approx(2.0)
    records, slope = hg.sweep_h(2, [3.0, 0.0], hg.geometric_spacings(0.2, 0.025, 4))
    assert len(records) == 4
    assert 1.5 <= slope <= 3.0


def test_ensemble_is_deterministic():
    hs = hg.geometric_spacings(0.2, 0.05, 3)
    first = hg.randomized_ensemble(2, 4, hs, seed=11)
    second = hg.randomized_ensemble(2, 4, hs, seed=11, threads=2)
    assert first["records"] == second["records"]
    assert len(first["slopes"]) == 4


def test_stochastic_helpers():
    res = hg.analyze_iterates(0.1, (math.sqrt(5) - 1) / 2, 20)
    assert not res["rational"]
    assert res["epsilon"] <= 1 / 20
    assert hg.expected_min_distance(2, 9) == pytest.approx(0.1)
    mean, stderr = hg.simulate_min_distance(2, 9, 4000, seed=1)
    assert abs(mean - 0.1) <= 4 * stderr


def test_errors_are_translated():
    with pytest.raises(hg.Error):
        hg.Shape.ball(2, [0, 0], -1.0)
    with pytest.raises(ValueError):
        hg.ScalarField(hg.Grid(1, [0.0], 1.0, [3]), np.zeros(4))
