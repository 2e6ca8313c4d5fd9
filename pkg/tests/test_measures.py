import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import matmeasure as mm
from conftest import random_measure, random_weights

HALF = 0.5


# ---------------------------------------------------------------------------
# construction and canonicalization
# ---------------------------------------------------------------------------

def test_atoms_sorted_lexicographically():
    mu = mm.WeightedPointMeasure([[1.0, 0.0], [0.0, 3.0]], [HALF, HALF])
    assert mu.points.tolist() == [[0.0, 3.0], [1.0, 0.0]]


def test_coinciding_atoms_merged():
    mu = mm.WeightedPointMeasure([[1.0, 2.0], [1.0 + 1e-13, 2.0], [0.0, 0.0]],
                                 [0.25, 0.25, 0.5])
    assert mu.atom_count == 2
    assert mu.weights.tolist() == [0.5, 0.5]


def test_weights_must_be_positive_and_normalized():
    with pytest.raises(ValueError):
        mm.WeightedPointMeasure([[0.0]], [0.0])
    with pytest.raises(ValueError):
        mm.WeightedPointMeasure([[0.0], [1.0]], [0.5, 0.6])
    with pytest.raises(ValueError):
        mm.WeightedPointMeasure(np.empty((0, 2)), [])


def test_one_dimensional_input_is_r1():
    mu = mm.WeightedPointMeasure([3.0, 1.0, 2.0], [1 / 3] * 3)
    assert mu.dim == 1
    assert mu.points.ravel().tolist() == [1.0, 2.0, 3.0]


def test_text_round_trip():
    rng = np.random.default_rng(0)
    mu = random_measure(rng, dim=3, max_atoms=4)
    again = mm.WeightedPointMeasure.from_text(mu.to_text())
    assert mm.measure_equal(mu, again, 1e-15)


# ---------------------------------------------------------------------------
# measure_equal
# ---------------------------------------------------------------------------

def test_equal_to_itself():
    mu = mm.WeightedPointMeasure([[1.0, 0.0], [0.0, 3.0]], [HALF, HALF])
    assert mm.measure_equal(mu, mu, 1e-12)


def test_equal_regardless_of_atom_order():
    mu = mm.WeightedPointMeasure([[1.0, 0.0], [0.0, 3.0]], [HALF, HALF])
    nu = mm.WeightedPointMeasure([[0.0, 3.0], [1.0, 0.0]], [HALF, HALF])
    assert mm.measure_equal(mu, nu, 1e-12)


def test_different_supports_not_equal():
    mu = mm.WeightedPointMeasure([[1.0, 0.0], [0.0, 3.0]], [HALF, HALF])
    assert not mm.measure_equal(mu, mm.dirac([1.0, 0.0]), 1e-12)


def test_dimension_mismatch_raises():
    with pytest.raises(ValueError):
        mm.measure_equal(mm.dirac([0.0]), mm.dirac([0.0, 0.0]))


# ---------------------------------------------------------------------------
# lp_feasible / lp_distance, frozen examples
# ---------------------------------------------------------------------------

def test_feasibility_threshold_of_shifted_diracs():
    mu, nu = mm.dirac([0.0, 0.0]), mm.dirac([0.3, 0.0])
    assert mm.lp_feasible(mu, nu, 0.3)
    assert not mm.lp_feasible(mu, nu, 0.29)


def test_identity_coupling_at_zero():
    mu = mm.WeightedPointMeasure([[0.0, 1.0], [2.0, 0.0]], [HALF, HALF])
    assert mm.lp_feasible(mu, mu, 0.0)


def test_feasibility_with_unmatched_mass():
    mu = mm.WeightedPointMeasure([[0.0, 0.0], [1.0, 0.0]], [HALF, HALF])
    nu = mm.dirac([0.0, 0.0])
    assert mm.lp_feasible(mu, nu, 0.5)
    assert not mm.lp_feasible(mu, nu, 0.49)


def test_negative_eps_rejected():
    with pytest.raises(ValueError):
        mm.lp_feasible(mm.dirac([0.0]), mm.dirac([0.0]), -0.1)


def test_distance_identical_measures():
    mu = mm.WeightedPointMeasure([[0.0, 1.0], [2.0, 0.0]], [HALF, HALF])
    assert mm.lp_distance(mu, mu) == 0.0


def test_distance_shifted_diracs():
    assert mm.lp_distance(mm.dirac([0.0, 0.0]), mm.dirac([0.3, 0.0])) == 0.3


def test_distance_unmatched_mass():
    mu = mm.WeightedPointMeasure([[0.0, 0.0], [1.0, 0.0]], [HALF, HALF])
    assert mm.lp_distance(mu, mm.dirac([0.0, 0.0])) == 0.5


def test_distance_capped_at_one():
    assert mm.lp_distance(mm.dirac([0.0, 0.0]), mm.dirac([50.0, 0.0])) == 1.0


def test_chebyshev_metric_selectable():
    mu, nu = mm.dirac([0.0, 0.0]), mm.dirac([0.3, 0.2])
    assert mm.lp_distance(mu, nu, "chebyshev") == pytest.approx(0.3, abs=1e-15)
    assert mm.lp_distance(mu, nu, "euclidean") == pytest.approx(np.hypot(0.3, 0.2), abs=1e-15)
    with pytest.raises(ValueError):
        mm.lp_distance(mu, nu, "manhattan")


# ---------------------------------------------------------------------------
# lp_oracle
# ---------------------------------------------------------------------------

def test_oracle_frozen_examples():
    assert mm.lp_oracle(mm.dirac([0.0, 0.0]), mm.dirac([0.0, 0.0])) == 0.0
    assert mm.lp_oracle(mm.dirac([0.0, 0.0]), mm.dirac([0.3, 0.0])) == 0.3
    near_far = mm.WeightedPointMeasure([[0.1, 0.0], [10.0, 0.0]], [HALF, HALF])
    assert mm.lp_oracle(near_far, mm.dirac([0.0, 0.0])) == 0.5
    far_far = mm.WeightedPointMeasure([[5.0, 0.0], [10.0, 0.0]], [HALF, HALF])
    assert mm.lp_oracle(far_far, mm.dirac([0.0, 0.0])) == 1.0


def test_oracle_rejects_large_supports():
    rng = np.random.default_rng(1)
    mu = mm.WeightedPointMeasure(rng.uniform(-1, 1, (10, 2)), np.full(10, 0.1))
    nu = mm.WeightedPointMeasure(rng.uniform(-1, 1, (10, 2)), np.full(10, 0.1))
    with pytest.raises(ValueError):
        mm.lp_oracle(mu, nu)


def test_oracle_matches_flow_on_random_pairs():
    rng = np.random.default_rng(2024)
    for _ in range(60):
        scale = float(rng.choice([0.25, 1.0, 2.5]))
        mu = random_measure(rng, scale=scale)
        nu = random_measure(rng, scale=scale)
        for metric in mm.measures.METRICS:
            assert abs(mm.lp_distance(mu, nu, metric)
                       - mm.lp_oracle(mu, nu, metric)) <= 1e-12


# ---------------------------------------------------------------------------
# metric axioms
# ---------------------------------------------------------------------------

def test_symmetry_is_exact():
    rng = np.random.default_rng(5)
    for _ in range(60):
        mu = random_measure(rng, max_atoms=6)
        nu = random_measure(rng, max_atoms=6)
        assert mm.lp_distance(mu, nu) == mm.lp_distance(nu, mu)


def test_triangle_inequality():
    rng = np.random.default_rng(6)
    for _ in range(120):
        a = random_measure(rng, max_atoms=6)
        b = random_measure(rng, max_atoms=6)
        c = random_measure(rng, max_atoms=6)
        assert (mm.lp_distance(a, c)
                <= mm.lp_distance(a, b) + mm.lp_distance(b, c) + 1e-9)


def test_identity_of_indiscernibles_matches_measure_equal():
    rng = np.random.default_rng(7)
    for _ in range(80):
        mu = random_measure(rng, max_atoms=4)
        nu = mu if rng.random() < 0.3 else random_measure(rng, max_atoms=4)
        assert (mm.lp_distance(mu, nu) == 0.0) == mm.measure_equal(mu, nu)


def test_distance_bounded_by_one():
    rng = np.random.default_rng(8)
    for _ in range(60):
        mu = random_measure(rng, scale=float(rng.choice([1.0, 10.0])))
        nu = random_measure(rng, scale=float(rng.choice([1.0, 10.0])))
        assert 0.0 <= mm.lp_distance(mu, nu) <= 1.0


@given(st.integers(min_value=0, max_value=2 ** 32 - 1),
       st.floats(min_value=0.0, max_value=1.0),
       st.floats(min_value=0.0, max_value=1.0))
@settings(max_examples=60, deadline=None)
def test_feasibility_monotone_in_eps(seed, eps_a, eps_b):
    rng = np.random.default_rng(seed)
    mu = random_measure(rng)
    nu = random_measure(rng)
    lo, hi = sorted((eps_a, eps_b))
    if mm.lp_feasible(mu, nu, lo):
        assert mm.lp_feasible(mu, nu, hi)


@given(st.integers(min_value=0, max_value=2 ** 32 - 1))
@settings(max_examples=60, deadline=None)
def test_canonical_form_ignores_atom_input_order(seed):
    rng = np.random.default_rng(seed)
    m = int(rng.integers(1, 6))
    points = rng.uniform(-1, 1, (m, 2))
    weights = random_weights(rng, m)
    mu = mm.WeightedPointMeasure(points, weights)
    order = rng.permutation(m)
    nu = mm.WeightedPointMeasure(points[order], weights[order])
    assert mm.measure_equal(mu, nu, 1e-15)


# ---------------------------------------------------------------------------
# Hausdorff distance
# ---------------------------------------------------------------------------

def test_hausdorff_self_distance_zero():
    rng = np.random.default_rng(9)
    x = mm.MeasureSet.from_measures(random_measure(rng) for _ in range(5))
    assert mm.hausdorff_distance(x, x) == 0.0


def test_hausdorff_singletons_reduce_to_lp():
    x = mm.MeasureSet.from_measures([mm.dirac([0.0, 0.0])])
    y = mm.MeasureSet.from_measures([mm.dirac([0.3, 0.0])])
    assert mm.hausdorff_distance(x, y) == 0.3


def test_hausdorff_directed_sup_inf_by_hand():
    x = mm.MeasureSet.from_measures([mm.dirac([0.0, 0.0]), mm.dirac([1.0, 0.0])])
    y = mm.MeasureSet.from_measures([mm.dirac([0.0, 0.0])])
    assert mm.hausdorff_distance(x, y) == 1.0


def test_hausdorff_bounded_by_one_and_symmetric():
    rng = np.random.default_rng(10)
    x = mm.MeasureSet.from_measures(
        random_measure(rng, scale=5.0) for _ in range(4))
    y = mm.MeasureSet.from_measures(
        random_measure(rng, scale=5.0) for _ in range(6))
    d = mm.hausdorff_distance(x, y)
    assert 0.0 <= d <= 1.0
    assert d == mm.hausdorff_distance(y, x)


def test_hausdorff_dimension_mismatch():
    x = mm.MeasureSet.from_measures([mm.dirac([0.0])])
    y = mm.MeasureSet.from_measures([mm.dirac([0.0, 0.0])])
    with pytest.raises(ValueError):
        mm.hausdorff_distance(x, y)


# ---------------------------------------------------------------------------
# MeasureSet semantics
# ---------------------------------------------------------------------------

def test_measure_set_dedup():
    mu = mm.WeightedPointMeasure([[1.0, 0.0], [0.0, 3.0]], [HALF, HALF])
    wiggled = mm.WeightedPointMeasure([[1.0 + 1e-11, 0.0], [0.0, 3.0]], [HALF, HALF])
    distinct = mm.dirac([1.0, 0.0])
    s = mm.MeasureSet.from_measures([mu, wiggled, distinct, mu])
    assert len(s) == 2
    assert s.contains(mu) and s.contains(distinct)


def test_measure_set_rejects_mixed_dimensions():
    with pytest.raises(ValueError):
        mm.MeasureSet.from_measures([mm.dirac([0.0]), mm.dirac([0.0, 0.0])])


def test_measure_sets_equal():
    rng = np.random.default_rng(11)
    members = [random_measure(rng) for _ in range(4)]
    x = mm.MeasureSet.from_measures(members)
    y = mm.MeasureSet.from_measures(reversed(members))
    assert mm.measure_sets_equal(x, y)
    z = mm.MeasureSet.from_measures(members[:3])
    assert not mm.measure_sets_equal(x, z)


# ---------------------------------------------------------------------------
# pushforward bound
# ---------------------------------------------------------------------------

def test_pushforward_bound_zero_for_equal_vectors():
    x = [[0.5, -0.5], [0.1, 0.2]]
    assert mm.pushforward_distance_bound(x, x, [0.5, 0.5]) == 0.0


def test_pushforward_bound_unit_case():
    assert mm.pushforward_distance_bound([[0.0]], [[1.0]], [1.0]) == 1.0


def test_pushforward_bound_formula():
    bound = mm.pushforward_distance_bound([[0.0, 0.0]], [[0.25, 0.25]], [1.0])
    assert bound == pytest.approx(0.5 * 2 ** 0.75, abs=1e-15)


def test_pushforward_bound_dominates_lp():
    rng = np.random.default_rng(12)
    for _ in range(150):
        k = int(rng.integers(1, 5))
        m = int(rng.integers(2, 9))
        w = random_weights(rng, m)
        x = rng.uniform(-1, 1, (m, k))
        y = x + rng.uniform(-0.5, 0.5, (m, k))
        lhs = mm.lp_distance(mm.WeightedPointMeasure(x, w),
                             mm.WeightedPointMeasure(y, w))
        assert lhs <= mm.pushforward_distance_bound(x, y, w) + 1e-12


def test_pushforward_bound_length_mismatch():
    with pytest.raises(ValueError):
        mm.pushforward_distance_bound([[0.0]], [[0.0], [1.0]], [1.0])
