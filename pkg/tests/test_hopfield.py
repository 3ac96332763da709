import itertools

import numpy as np
import pytest

import tsphnn as T
from tsphnn.hopfield import (
    build_weights,
    grid_to_text,
    random_grid,
    text_to_grid,
)
from tsphnn.svg import render_grid_svg

ROUTE_MATRIX = np.array(
    [
        [0, 1, 0, 0],
        [1, 0, 0, 0],
        [0, 0, 0, 1],
        [0, 0, 1, 0],
    ]
)


@pytest.fixture(scope="module")
def m5():
    return T.normalize_distances(T.distance_matrix(T.generate_random_instance(5, seed=2)))


def test_zero_penalties_give_zero_weights(m5):
    w = build_weights(m5, T.HopfieldParams(a_pen=0, b_pen=0, c_pen=0, d_pen=0))
    assert np.all(w.w == 0)
    assert np.all(w.bias == 0)


def test_same_city_non_adjacent_positions_weight(m5):
    p = T.HopfieldParams(a_pen=50.0, b_pen=60.0, c_pen=30.0, d_pen=40.0)
    w = build_weights(m5, p)
    n = 5
    # unit (city 2, pos 0) vs (city 2, pos 2): same city, positions not
    # cyclically adjacent, and d[x][x] = 0
    u, v = 2 * n + 0, 2 * n + 2
    assert w.w[u, v] == pytest.approx(-(p.a_pen + p.c_pen), abs=1e-12)


def test_weights_symmetric_with_zero_diagonal():
    m = T.normalize_distances(T.distance_matrix(T.generate_random_instance(4, seed=6)))
    w = build_weights(m, T.HopfieldParams())
    assert np.array_equal(w.w, w.w.T)
    assert np.all(np.diagonal(w.w) == 0)


def test_energy_all_zero_grid_count_term():
    m = T.DistanceMatrix(np.zeros((4, 4)))
    p = T.HopfieldParams(a_pen=0, b_pen=0, c_pen=90.0, d_pen=0)
    assert T.energy(np.zeros((4, 4)), m, p) == pytest.approx(720.0, abs=1e-12)


def test_energy_equals_d_times_length_on_permutation_grids(rng):
    for n in range(4, 9):
        m = T.distance_matrix(T.generate_random_instance(n, seed=n))
        for _ in range(20):
            t = T.Tour.random(n, rng)
            p = T.HopfieldParams(
                a_pen=float(rng.random() * 300),
                b_pen=float(rng.random() * 300),
                c_pen=float(rng.random() * 300),
                d_pen=123.0,
            )
            e = T.energy(T.tour_to_matrix(t).astype(float), m, p)
            assert e == pytest.approx(123.0 * T.tour_length(m, t), abs=1e-9)


def test_energy_identity_grid_matrix4(matrix4_m):
    p = T.HopfieldParams(a_pen=7.0, b_pen=11.0, c_pen=13.0, d_pen=100.0)
    e = T.energy(np.eye(4), matrix4_m, p)
    assert e == pytest.approx(7100.0, abs=1e-9)


def test_energy_terms_on_permutation_grid(paper8_m, rng):
    t = T.Tour.random(8, rng)
    row, col, count, dist = T.energy_terms(T.tour_to_matrix(t).astype(float), paper8_m)
    assert row == 0 and col == 0 and count == 0
    assert dist == pytest.approx(2 * T.tour_length(paper8_m, t), abs=1e-9)


def test_energy_terms_duplicated_city():
    m = T.DistanceMatrix(np.zeros((3, 3)))
    g = np.array([[1.0, 1.0, 0.0], [0.0, 0.0, 0.0], [0.0, 0.0, 1.0]])
    row, _, _, _ = T.energy_terms(g, m)
    assert row > 0


def test_first_three_terms_zero_iff_permutation_exhaustive():
    m = T.distance_matrix(T.generate_random_instance(3, seed=1))
    for bits in itertools.product([0.0, 1.0], repeat=9):
        g = np.array(bits).reshape(3, 3)
        row, col, count, _ = T.energy_terms(g, m)
        assert ((row == 0) and (col == 0) and (count == 0)) == (
            T.is_valid_permutation_matrix(g.astype(int))
        )


def test_unit_update_zero_net_turns_on(m5):
    w = build_weights(m5, T.HopfieldParams(a_pen=0, b_pen=0, c_pen=0, d_pen=0))
    g = np.zeros((5, 5))
    assert T.unit_update(g, w, (0, 0), threshold=0.0) == 1
    assert T.unit_update(g, w, (0, 0), threshold=1.0) == 0


def test_unit_flip_energy_matches_local_field(rng):
    """Flipping one unit changes the energy by -dv * net exactly."""
    inst = T.generate_random_instance(4, seed=12)
    m = T.normalize_distances(T.distance_matrix(inst))
    p = T.HopfieldParams(a_pen=83.0, b_pen=61.0, c_pen=47.0, d_pen=29.0)
    w = build_weights(m, p)
    for _ in range(100):
        g = (rng.random((4, 4)) < 0.4).astype(float)
        x, i = int(rng.integers(4)), int(rng.integers(4))
        u = x * 4 + i
        net = float(w.w[u] @ g.ravel() + w.bias[u])
        flipped = g.copy()
        flipped[x, i] = 1.0 - flipped[x, i]
        dv = flipped[x, i] - g[x, i]
        assert T.energy(flipped, m, p) - T.energy(g, m, p) == pytest.approx(
            -dv * net, abs=1e-9
        )


def test_run_reconverges_on_fixed_point(cityset1_m):
    m = T.normalize_distances(cityset1_m)
    res = T.run_hopfield(m, T.HopfieldParams(d_pen=10.0, seed=1))
    assert res.converged and res.valid  # a valid permutation grid, stable
    again = T.run_hopfield(m, T.HopfieldParams(d_pen=10.0, seed=99), init=res.grid)
    assert again.converged
    assert again.sweeps_used == 1
    assert np.array_equal(again.grid, res.grid)


def test_energy_trace_non_increasing_and_updates_descend():
    inst = T.generate_random_instance(6, seed=5)
    m = T.normalize_distances(T.distance_matrix(inst))
    for seed in range(200):
        res = T.run_hopfield(m, T.HopfieldParams(seed=seed))
        assert res.max_update_delta_e <= 1e-9
        assert np.all(np.diff(res.energy_trace) <= 1e-9)
        assert res.converged


def test_run_reports_validity_and_length(cityset1_m):
    m = T.normalize_distances(cityset1_m)
    res = T.run_hopfield(m, T.HopfieldParams(d_pen=10.0, seed=3))
    assert res.valid == (res.tour is not None)
    if res.valid:
        assert T.is_valid_permutation_matrix(res.grid.astype(int))
        assert res.length == pytest.approx(T.tour_length(m, res.tour), rel=1e-12)


def test_run_max_sweeps_zero_is_reported_unconverged(cityset1_m):
    m = T.normalize_distances(cityset1_m)
    res = T.run_hopfield(m, T.HopfieldParams(max_sweeps=0, seed=0))
    assert not res.converged
    assert res.sweeps_used == 0
    assert len(res.energy_trace) == 0


def test_run_determinism(cityset1_m):
    m = T.normalize_distances(cityset1_m)
    a = T.run_hopfield(m, T.HopfieldParams(seed=7))
    b = T.run_hopfield(m, T.HopfieldParams(seed=7))
    assert np.array_equal(a.grid, b.grid)
    assert np.array_equal(a.energy_trace, b.energy_trace)
    assert a.sweeps_used == b.sweeps_used


def test_decode_route_matrix():
    t = T.decode(ROUTE_MATRIX)
    assert t is not None and t.order == (1, 0, 3, 2)


def test_decode_all_zero_grid_is_none():
    assert T.decode(np.zeros((4, 4))) is None


def test_decode_inverts_tour_to_matrix():
    for perm in itertools.permutations(range(4)):
        assert T.decode(T.tour_to_matrix(T.Tour(perm))).order == perm


def test_random_grid_expected_ones(rng):
    g = random_grid(30, rng)
    assert set(np.unique(g)) <= {0.0, 1.0}
    assert abs(g.sum() - 30) < 30  # loose: expectation is n


def test_grid_text_round_trip(rng):
    g = random_grid(6, rng)
    assert np.array_equal(text_to_grid(grid_to_text(g)), g)


def test_grid_svg_counts(rng):
    g = random_grid(5, rng)
    svg = render_grid_svg(g)
    # one background rect plus one per cell; filled cells are black
    assert svg.count("<rect") == 1 + 25
    assert svg.count('fill="black"') == int(g.sum())
