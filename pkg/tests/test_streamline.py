import pytest

from cases import round_trip_problem
from stokes_eigen.coords import CoordPoint, SystemId
from stokes_eigen.eigen import SeriesExpansion, SeriesTerm, eval_series
from stokes_eigen.errors import DomainError, SingularPointError
from stokes_eigen.fit import fit_to_expansion, solve_collocation
from stokes_eigen.streamline import trace_streamline

P, T, C = SystemId.PARABOLIC, SystemId.TANGENT_SPHERE, SystemId.CARDIOID
SEEDS = {P: CoordPoint(1.0, 1.0), T: CoordPoint(1.0, 0.2), C: CoordPoint(1.0, 1.0)}


def fitted(system):
    problem, _ = round_trip_problem(system)
    return fit_to_expansion(problem, solve_collocation(problem))


def test_zero_field_stays_put():
    line = trace_streamline(SeriesExpansion(P, []), CoordPoint(1.0, 1.0), max_steps=5)
    assert line.stop_reason == "max_steps"
    assert len(line.points) == 6
    assert all(p == CoordPoint(1.0, 1.0) for p in line.points)


@pytest.mark.parametrize("system", list(SystemId))
def test_psi_is_conserved(system):
    s = fitted(system)
    line = trace_streamline(s, SEEDS[system], step=1e-3, max_steps=1000)
    psi0 = eval_series(s, line.points[0])
    drift = max(abs(eval_series(s, p) - psi0) for p in line.points)
    assert drift <= 1e-4 * abs(psi0)
    assert len(line.points) > 10


def test_unnormalized_rate_conserves_psi():
    s = SeriesExpansion(C, [SeriesTerm(1.0, 1.0, 0.0, 1.0, 0.0)])
    seed = CoordPoint(0.8, 0.9)

    def drift(step):
        # the raw rate grows like 1/varpi, so keep the trace clear of the axis
        line = trace_streamline(s, seed, step=step, max_steps=5000, normalize=False, bounds=(0.5, 1.5, 0.5, 1.5))
        psi0 = eval_series(s, seed)
        return max(abs(eval_series(s, p) - psi0) for p in line.points) / abs(psi0)

    coarse, fine = drift(4e-3), drift(1e-3)
    assert fine < 1e-6
    assert coarse / fine > 4.0**3


def test_reverse_retraces_forward_path():
    s = fitted(T)
    fwd = trace_streamline(s, SEEDS[T], step=1e-3, max_steps=200)
    back = trace_streamline(s, fwd.points[-1], step=1e-3, max_steps=200, reverse=True)
    end = back.points[-1]
    assert (end.mu, end.nu) == pytest.approx((SEEDS[T].mu, SEEDS[T].nu), abs=1e-8)


def test_bounds_stop_the_trace():
    s = SeriesExpansion(P, [SeriesTerm(1.0, 1.0, 0.0, 1.0, 0.0)])
    line = trace_streamline(s, CoordPoint(1.0, 1.0), step=1e-2, max_steps=10_000, bounds=(0.9, 1.1, 0.9, 1.1))
    assert line.stop_reason == "domain"
    assert all(0.9 <= p.mu <= 1.1 and 0.9 <= p.nu <= 1.1 for p in line.points)


def test_seed_on_axis_is_rejected():
    s = SeriesExpansion(P, [SeriesTerm(1.0, 1.0, 0.0, 1.0, 0.0)])
    with pytest.raises(SingularPointError):
        trace_streamline(s, CoordPoint(1.0, 0.0))
    with pytest.raises(SingularPointError):
        trace_streamline(s, CoordPoint(1.0, 0.01))


def test_seed_outside_domain_is_rejected():
    with pytest.raises(DomainError):
        trace_streamline(SeriesExpansion(T, []), CoordPoint(-1.0, 0.0))


def test_rows_report_cartesian_and_psi():
    s = fitted(P)
    line = trace_streamline(s, SEEDS[P], max_steps=3)
    rows = line.rows(s)
    assert [r[0] for r in rows] == [0, 1, 2, 3]
    step, mu, nu, x, z, psi = rows[0]
    assert (x, z) == pytest.approx((1.0, 0.0))
    assert psi == eval_series(s, CoordPoint(mu, nu))
