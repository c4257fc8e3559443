import json

import numpy as np
import pytest

from cases import basis_for, round_trip_problem, sample_points
from stokes_eigen.coords import CoordPoint, SystemId
from stokes_eigen.eigen import eval_series
from stokes_eigen.errors import EmptyGridError, RankDeficiencyError
from stokes_eigen.fit import (
    BasisEntry,
    CollocationProblem,
    coordinate_surface_samples,
    fit_to_expansion,
    solve_collocation,
)

P, T, C = SystemId.PARABOLIC, SystemId.TANGENT_SPHERE, SystemId.CARDIOID


@pytest.mark.parametrize("system", list(SystemId))
def test_round_trip_recovers_coefficients(system):
    problem, truth = round_trip_problem(system)
    res = solve_collocation(problem)
    assert np.max(np.abs(np.array(res.coefficients) - truth)) < 1e-8
    assert res.residual_norm < 1e-10
    assert np.isfinite(res.condition_estimate)


@pytest.mark.parametrize("system", list(SystemId))
def test_expansion_reproduces_targets(system):
    problem, _ = round_trip_problem(system, seed=7)
    s = fit_to_expansion(problem, solve_collocation(problem))
    assert len(s.terms) == len(problem.mode_basis)
    for p, target in problem.samples:
        assert eval_series(s, p) == pytest.approx(target, rel=1e-9, abs=1e-10)


def test_zero_targets_give_zero_coefficients():
    rng = np.random.default_rng(1)
    pts = sample_points(P, 20, rng)
    res = solve_collocation(CollocationProblem(P, basis_for(P), [(p, 0.0) for p in pts]))
    assert all(abs(c) < 1e-14 for c in res.coefficients)
    assert res.residual_norm == 0.0


def test_duplicate_basis_is_rank_deficient():
    rng = np.random.default_rng(2)
    entry = BasisEntry(1.0, "I1", "J1")
    pts = sample_points(C, 10, rng)
    with pytest.raises(RankDeficiencyError) as info:
        solve_collocation(CollocationProblem(C, [entry, entry], [(p, 1.0) for p in pts]))
    assert info.value.condition_estimate > 1e13


def test_ridge_handles_duplicate_basis():
    rng = np.random.default_rng(2)
    entry = BasisEntry(1.0, "I1", "J1")
    pts = sample_points(C, 10, rng)
    mode = entry.mode(C)
    res = solve_collocation(CollocationProblem(C, [entry, entry], [(p, mode.value(p.mu, p.nu)) for p in pts], 1e-10))
    # the penalty splits the weight evenly between identical columns
    assert res.coefficients == pytest.approx((0.5, 0.5), abs=1e-6)


def test_underdetermined_needs_regularization():
    with pytest.raises(ValueError):
        CollocationProblem(P, basis_for(P), [(CoordPoint(1.0, 1.0), 1.0)])
    res = solve_collocation(CollocationProblem(P, basis_for(P), [(CoordPoint(1.0, 1.0), 1.0)], 1e-6))
    assert res.residual_norm < 1e-3


def test_nested_bases_do_not_increase_residual():
    rng = np.random.default_rng(3)
    pts = sample_points(T, 60, rng)
    samples = [(p, p.mu * p.mu * np.exp(-p.nu)) for p in pts]
    full = basis_for(T, ns=(1.0, 2.0, 3.0))
    norms = [solve_collocation(CollocationProblem(T, full[:k], samples)).residual_norm for k in (2, 4, 8, 12)]
    assert all(b <= a * (1 + 1e-12) for a, b in zip(norms, norms[1:]))


def test_targets_scale_linearly():
    problem, _ = round_trip_problem(P, seed=4)
    scaled = CollocationProblem(P, problem.mode_basis, [(p, 3.0 * t) for p, t in problem.samples])
    c1 = np.array(solve_collocation(problem).coefficients)
    c3 = np.array(solve_collocation(scaled).coefficients)
    assert np.allclose(c3, 3.0 * c1, rtol=1e-12, atol=1e-12)


def test_surface_samples_examples():
    pts = coordinate_surface_samples(P, "mu", 1.0, (0.5, 2.0), 7)
    assert len(pts) == 7
    assert all(p.mu == 1.0 for p in pts)
    assert [p.nu for p in pts] == pytest.approx(list(np.linspace(0.5, 2.0, 7)))
    # the nu = 0 end touches the axis and is dropped
    assert len(coordinate_surface_samples(C, "nu", 1.0, (0.0, 2.0), 5)) == 4


def test_surface_on_axis_is_empty():
    with pytest.raises(EmptyGridError):
        coordinate_surface_samples(C, "mu", 0.0, (0.2, 2.0), 10)
    with pytest.raises(ValueError):
        coordinate_surface_samples(C, "phi", 1.0, (0.2, 2.0), 10)


def test_problem_json_round_trip():
    problem, _ = round_trip_problem(C, seed=5, count=12)
    again = CollocationProblem.from_dict(json.loads(json.dumps(problem.to_dict())))
    assert again == problem


def test_basis_must_match_system():
    with pytest.raises(ValueError):
        CollocationProblem(T, [BasisEntry(1.0, "I1", "J1")], [(CoordPoint(1.0, 0.5), 1.0)])
