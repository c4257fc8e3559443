import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracle
from stokes_eigen import special
from stokes_eigen.errors import BesselOverflowError, DomainError
from stokes_eigen.special import BesselKind, bessel_derivative, bessel_eval

KINDS = ["J1", "Y1", "I1", "K1"]

# dense near zero, uniform out to 50, plus points hugging every crossover
SWEEP = sorted(
    set(np.geomspace(1e-6, 1.0, 40).tolist() + np.linspace(0.05, 50.0, 400).tolist()
        + [c + d for c in (special.JY_SERIES_MAX, special.JY_ASYMPTOTIC_MIN,
                           special.I_SERIES_MAX, special.K_SERIES_MAX)
           for d in (-1e-9, 0.0, 1e-9)])
)


def scale(kind, x):
    """Error scale: |f| for I1/K1, the J1/Y1 modulus for the oscillatory pair."""
    if kind in ("J1", "Y1"):
        return float(oracle.modulus(x))
    return abs(float(oracle.value(kind, x)))


def test_values_at_zero():
    assert bessel_eval("J1", 0.0) == 0.0
    assert bessel_eval("I1", 0.0) == 0.0


def test_j1_of_one():
    assert bessel_eval("J1", 1.0) == pytest.approx(0.440050585744933, rel=1e-14)
    assert bessel_eval("J1", 1.0) == pytest.approx(float(oracle.value("J1", 1.0)), rel=1e-15)


@pytest.mark.parametrize("kind", KINDS)
def test_matches_oracle_across_sweep(kind):
    worst = 0.0
    for x in SWEEP:
        err = abs(bessel_eval(kind, x) - float(oracle.value(kind, x))) / scale(kind, x)
        worst = max(worst, err)
    assert worst < 1e-12


@pytest.mark.parametrize("kind", ["I1", "K1"])
def test_modified_pair_is_pointwise_relative(kind):
    for x in np.linspace(0.1, 50.0, 60):
        ref = float(oracle.value(kind, x))
        assert abs(bessel_eval(kind, x) - ref) <= 1e-12 * abs(ref)


@pytest.mark.parametrize("kind", KINDS)
@pytest.mark.parametrize(
    "crossover",
    [special.JY_SERIES_MAX, special.JY_ASYMPTOTIC_MIN, special.I_SERIES_MAX, special.K_SERIES_MAX],
)
def test_continuous_across_crossovers(kind, crossover):
    below = bessel_eval(kind, math.nextafter(crossover, 0.0))
    above = bessel_eval(kind, math.nextafter(crossover, math.inf))
    assert abs(above - below) <= 1e-13 * scale(kind, crossover)


@pytest.mark.parametrize("kind", ["J1", "I1"])
def test_derivative_at_origin_is_half(kind):
    assert bessel_derivative(kind, 0.0) == 0.5
    assert bessel_derivative(kind, 1e-8) == pytest.approx(0.5, abs=1e-15)


def test_k1_derivative_against_oracle():
    ref = float(oracle.derivative("K1", 1.0))
    assert ref == pytest.approx(-1.0229316684379429, rel=1e-15)
    assert bessel_derivative("K1", 1.0) == pytest.approx(ref, rel=1e-10)


@pytest.mark.parametrize("kind", KINDS)
def test_first_derivative_against_oracle(kind):
    for x in (0.3, 1.7, 4.5, 9.0, 22.0, 41.0):
        ref = float(oracle.derivative(kind, x))
        # modulus of (J1', Y1') for the oscillatory pair
        if kind in ("J1", "Y1"):
            sc = math.hypot(float(oracle.derivative("J1", x)), float(oracle.derivative("Y1", x)))
        else:
            sc = abs(ref)
        assert abs(bessel_derivative(kind, x, 1) - ref) <= 1e-10 * sc


@pytest.mark.parametrize("kind", KINDS)
def test_second_derivative_matches_finite_difference(kind):
    h = 1e-5
    for x in (0.4, 1.3, 3.9, 8.2, 17.0, 33.0):
        fd = (bessel_derivative(kind, x + h, 1) - bessel_derivative(kind, x - h, 1)) / (2 * h)
        sc = max(abs(fd), abs(bessel_eval(kind, x)), 1e-300)
        assert abs(bessel_derivative(kind, x, 2) - fd) <= 1e-6 * sc


@settings(max_examples=300, deadline=None)
@given(st.floats(min_value=0.1, max_value=50.0))
def test_bessel_wronskian(x):
    w = bessel_eval("J1", x) * bessel_derivative("Y1", x) - bessel_derivative("J1", x) * bessel_eval("Y1", x)
    expected = 2.0 / (math.pi * x)
    assert abs(w - expected) <= 1e-10 * expected


@settings(max_examples=300, deadline=None)
@given(st.floats(min_value=0.1, max_value=50.0))
def test_modified_wronskian(x):
    w = bessel_eval("I1", x) * bessel_derivative("K1", x) - bessel_derivative("I1", x) * bessel_eval("K1", x)
    expected = -1.0 / x
    assert abs(w - expected) <= 1e-10 * abs(expected)


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(KINDS), st.floats(min_value=0.05, max_value=50.0))
def test_defining_equation_residual(kind, x):
    z = bessel_eval(kind, x)
    dz = bessel_derivative(kind, x, 1)
    # second derivative by Richardson-extrapolated differencing, so the
    # check does not reuse the identity the implementation is built on
    h = 1e-3 * min(1.0, x)

    def central(step):
        return (bessel_derivative(kind, x + step, 1) - bessel_derivative(kind, x - step, 1)) / (2 * step)

    ddz = (4.0 * central(h / 2) - central(h)) / 3.0
    sign = -1.0 if BesselKind(kind).modified else 1.0
    terms = (x * x * ddz, x * dz, (sign * x * x - 1.0) * z)
    assert abs(sum(terms)) <= 1e-8 * max(abs(t) for t in terms)


@pytest.mark.parametrize("kind", ["Y1", "K1"])
@pytest.mark.parametrize("x", [0.0, -1.0])
def test_singular_kinds_reject_nonpositive(kind, x):
    with pytest.raises(DomainError):
        bessel_eval(kind, x)
    with pytest.raises(DomainError):
        bessel_derivative(kind, x)


@pytest.mark.parametrize("kind", ["J1", "I1"])
def test_regular_kinds_reject_negative(kind):
    with pytest.raises(DomainError):
        bessel_eval(kind, -0.5)


def test_i1_overflow_is_named():
    assert math.isfinite(bessel_eval("I1", 700.0))
    with pytest.raises(BesselOverflowError):
        bessel_eval("I1", 720.0)
    with pytest.raises(OverflowError):
        bessel_eval("I1", 1e4)


def test_bad_derivative_order():
    with pytest.raises(ValueError):
        bessel_derivative("J1", 1.0, order=3)


def test_scalar_wrappers_agree():
    x = 3.3
    assert special.j1(x) == bessel_eval("J1", x)
    assert special.y1(x) == bessel_eval("Y1", x)
    assert special.i1(x) == bessel_eval("I1", x)
    assert special.k1(x) == bessel_eval("K1", x)
    assert special.j0(x) == pytest.approx(float(oracle.j(0, x)), abs=1e-15)
    assert special.k0(x) == pytest.approx(float(oracle.k(0, x)), rel=1e-13)
