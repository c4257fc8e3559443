"""First-order Bessel functions J1, Y1 and modified Bessel functions I1, K1.

The order-zero companions (J0, Y0, I0, K0) are computed alongside since the
derivative identities need them:

    J1' = J0 - J1/x        Y1' = Y0 - Y1/x
    I1' = I0 - I1/x        K1' = -K0 - K1/x

Second derivatives come from the defining equations
``x^2 Z'' + x Z' + (x^2 - 1) Z = 0`` (J1, Y1) and
``x^2 Z'' + x Z' - (x^2 + 1) Z = 0`` (I1, K1).

Evaluation regimes
------------------
J, Y
    ascending series for ``x <= JY_SERIES_MAX``; Miller backward recurrence
    for J with Neumann series for Y up to ``JY_ASYMPTOTIC_MIN``; Hankel
    asymptotic expansion beyond.
I
    ascending series for ``x <= I_SERIES_MAX``; asymptotic expansion beyond.
K
    ascending series with logarithmic part for ``x <= K_SERIES_MAX``;
    Steed's continued fraction (Temme's CF2) beyond.
"""

import enum
import math

from .errors import BesselOverflowError, DomainError

__all__ = [
    "BesselKind",
    "bessel_eval",
    "bessel_derivative",
    "bessel_pair",
    "j0",
    "j1",
    "y0",
    "y1",
    "i0",
    "i1",
    "k0",
    "k1",
]

EULER_GAMMA = 0.57721566490153286061
_EPS = 2.0**-53

# Crossovers, chosen by the sweep in tests/test_special.py.
JY_SERIES_MAX = 4.0
JY_ASYMPTOTIC_MIN = 20.0
I_SERIES_MAX = 25.0
K_SERIES_MAX = 2.0

_LOG_FLOAT_MAX = math.log(1.7976931348623157e308)


class BesselKind(enum.Enum):
    J1 = "J1"
    Y1 = "Y1"
    I1 = "I1"
    K1 = "K1"

    @property
    def modified(self):
        return self in (BesselKind.I1, BesselKind.K1)


def _check_positive(x, name):
    if not x > 0.0:
        raise DomainError(f"{name} requires x > 0, got {x!r}")


def _check_nonnegative(x, name):
    if not x >= 0.0:
        raise DomainError(f"{name} requires x >= 0, got {x!r}")


# ---------------------------------------------------------------------------
# J and Y
# ---------------------------------------------------------------------------


def _jy_series(x):
    """J0, J1, Y0, Y1 by ascending series (small x)."""
    q = 0.25 * x * x
    # J0 = sum (-q)^k/(k!)^2 ; Y0 harmonic-weighted part
    t = 1.0
    j0s = 1.0
    y0s = 0.0
    h = 0.0
    k = 0
    while True:
        k += 1
        t *= -q / (k * k)
        h += 1.0 / k
        j0s += t
        y0s -= t * h
        if abs(t) * (1.0 + h) < _EPS * abs(j0s) * 1e-2 or k > 200:
            break
    # J1 = (x/2) sum (-q)^k/(k!(k+1)!)
    # Y1 series: sum [psi(k+1)+psi(k+2)] (-q)^k/(k!(k+1)!)
    t = 1.0
    j1s = 1.0
    hk = 0.0  # H_k
    hk1 = 1.0  # H_{k+1}
    y1s = hk + hk1
    k = 0
    while True:
        k += 1
        t *= -q / (k * (k + 1))
        hk += 1.0 / k
        hk1 += 1.0 / (k + 1)
        j1s += t
        y1s += t * (hk + hk1)
        if abs(t) * (1.0 + hk + hk1) < _EPS * 1e-2 * abs(j1s) or k > 200:
            break
    half = 0.5 * x
    j0v = j0s
    j1v = half * j1s
    log_term = math.log(half) + EULER_GAMMA
    y0v = (2.0 / math.pi) * (log_term * j0v + y0s)
    # psi(k+1) + psi(k+2) = H_k + H_{k+1} - 2*gamma
    y1v = (
        -2.0 / (math.pi * x)
        + (2.0 / math.pi) * math.log(half) * j1v
        - (half / math.pi) * (y1s - 2.0 * EULER_GAMMA * j1s)
    )
    return j0v, j1v, y0v, y1v


def _jy_miller(x):
    """J0, J1 by Miller's backward recurrence; Y0, Y1 by Neumann series."""
    start = int(x + 12.0 * x ** (1.0 / 3.0) + 30.0)
    start += start % 2
    jvals = [0.0] * (start + 2)
    jvals[start] = 1e-300
    two_over_x = 2.0 / x
    for k in range(start, 0, -1):
        jvals[k - 1] = k * two_over_x * jvals[k] - jvals[k + 1]
        if abs(jvals[k - 1]) > 1e250:
            for i in range(k - 1, start + 1):
                jvals[i] *= 1e-250
    norm = jvals[0] + 2.0 * sum(jvals[2 : start + 1 : 2])
    scale = 1.0 / norm
    jv = [v * scale for v in jvals]
    # Neumann sums
    s0 = 0.0
    s1 = 0.0
    for k in range(1, start // 2 + 1):
        sign = -1.0 if k % 2 else 1.0
        s0 += sign * jv[2 * k] / k
        s1 += sign * (jv[2 * k - 1] - jv[2 * k + 1]) / k
    log_term = math.log(0.5 * x) + EULER_GAMMA
    j0v, j1v = jv[0], jv[1]
    y0v = (2.0 / math.pi) * log_term * j0v - (4.0 / math.pi) * s0
    y1v = (2.0 / math.pi) * (-j0v / x + log_term * j1v + s1)
    return j0v, j1v, y0v, y1v


def _hankel_pq(nu, x):
    """Asymptotic P, Q factors of the Hankel expansion for order nu."""
    mu = 4.0 * nu * nu
    p = 1.0
    q = 0.0
    term = 1.0
    last = math.inf
    k = 0
    while k < 60:
        k += 1
        term *= (mu - (2 * k - 1) ** 2) / (k * 8.0 * x)
        mag = abs(term)
        if mag >= last or mag == 0.0:
            break
        last = mag
        # a_k/x^k contributes to Q for odd k, P for even k, alternating signs
        if k % 2:
            q += term if (k // 2) % 2 == 0 else -term
        else:
            p += -term if (k // 2) % 2 else term
        if mag < _EPS * 1e-3:
            break
    return p, q


def _jy_asymptotic(x):
    amp = math.sqrt(2.0 / (math.pi * x))
    p0, q0 = _hankel_pq(0.0, x)
    p1, q1 = _hankel_pq(1.0, x)
    chi0 = x - 0.25 * math.pi
    chi1 = x - 0.75 * math.pi
    c0, s0 = math.cos(chi0), math.sin(chi0)
    c1, s1 = math.cos(chi1), math.sin(chi1)
    return (
        amp * (p0 * c0 - q0 * s0),
        amp * (p1 * c1 - q1 * s1),
        amp * (p0 * s0 + q0 * c0),
        amp * (p1 * s1 + q1 * c1),
    )


def _jy(x):
    if x <= JY_SERIES_MAX:
        return _jy_series(x)
    if x < JY_ASYMPTOTIC_MIN:
        return _jy_miller(x)
    return _jy_asymptotic(x)


# ---------------------------------------------------------------------------
# I and K
# ---------------------------------------------------------------------------


def _i_series(x):
    q = 0.25 * x * x
    t0 = 1.0
    s0 = 1.0
    t1 = 1.0
    s1 = 1.0
    k = 0
    while True:
        k += 1
        t0 *= q / (k * k)
        t1 *= q / (k * (k + 1))
        s0 += t0
        s1 += t1
        if t0 < _EPS * 1e-2 * s0 and t1 < _EPS * 1e-2 * s1:
            break
    return s0, 0.5 * x * s1


def _i_asymptotic_scaled(x):
    """e^-x I0(x), e^-x I1(x) from the large-argument expansion."""
    out = []
    for nu in (0.0, 1.0):
        mu = 4.0 * nu * nu
        total = 1.0
        term = 1.0
        last = math.inf
        k = 0
        while k < 60:
            k += 1
            term *= -(mu - (2 * k - 1) ** 2) / (k * 8.0 * x)
            mag = abs(term)
            if mag >= last:
                break
            last = mag
            total += term
            if mag < _EPS * 1e-3:
                break
        out.append(total / math.sqrt(2.0 * math.pi * x))
    return out[0], out[1]


def _i(x):
    if x <= I_SERIES_MAX:
        return _i_series(x)
    if x > 2.0 * _LOG_FLOAT_MAX:
        raise BesselOverflowError(f"I1({x!r}) overflows double precision")
    s0, s1 = _i_asymptotic_scaled(x)
    # split exp to delay overflow to the final multiply
    e = math.exp(0.5 * x)
    v0 = (s0 * e) * e
    v1 = (s1 * e) * e
    if math.isinf(v1) or math.isinf(v0):
        raise BesselOverflowError(f"I1({x!r}) overflows double precision")
    return v0, v1


def _k_series(x):
    q = 0.25 * x * x
    half = 0.5 * x
    i0v, i1v = _i_series(x)
    log_half = math.log(half)
    # K0 = -(ln(x/2)+gamma) I0 + sum H_k q^k/(k!)^2
    t = 1.0
    h = 0.0
    s0 = 0.0
    k = 0
    while True:
        k += 1
        t *= q / (k * k)
        h += 1.0 / k
        s0 += t * h
        if t * h < _EPS * 1e-2 * abs(s0):
            break
    k0v = -(log_half + EULER_GAMMA) * i0v + s0
    # K1 = 1/x + ln(x/2) I1 - (x/4) sum [psi(k+1)+psi(k+2)] q^k/(k!(k+1)!)
    t = 1.0
    hk = 0.0
    hk1 = 1.0
    s1 = (hk + hk1 - 2.0 * EULER_GAMMA) * t
    k = 0
    while True:
        k += 1
        t *= q / (k * (k + 1))
        hk += 1.0 / k
        hk1 += 1.0 / (k + 1)
        inc = t * (hk + hk1 - 2.0 * EULER_GAMMA)
        s1 += inc
        if abs(inc) < _EPS * 1e-2 * abs(s1):
            break
    k1v = 1.0 / x + log_half * i1v - 0.5 * half * s1
    return k0v, k1v


def _k_steed(x):
    """K0, K1 by Steed's evaluation of Temme's continued fraction CF2."""
    b = 2.0 * (1.0 + x)
    d = 1.0 / b
    h = delh = d
    q1 = 0.0
    q2 = 1.0
    a1 = 0.25
    q = c = a1
    a = -a1
    s = 1.0 + q * delh
    for i in range(2, 10000):
        a -= 2 * (i - 1)
        c = -a * c / i
        qnew = (q1 - b * q2) / a
        q1 = q2
        q2 = qnew
        q += c * qnew
        b += 2.0
        d = 1.0 / (b + a * d)
        delh = (b * d - 1.0) * delh
        h += delh
        dels = q * delh
        s += dels
        if abs(dels / s) < _EPS * 0.5:
            break
    h = a1 * h
    k0v = math.sqrt(math.pi / (2.0 * x)) * math.exp(-x) / s
    k1v = k0v * (x + 0.5 - h) / x
    return k0v, k1v


def _k(x):
    if x <= K_SERIES_MAX:
        return _k_series(x)
    return _k_steed(x)


# ---------------------------------------------------------------------------
# public scalar functions
# ---------------------------------------------------------------------------


def j0(x):
    _check_nonnegative(x, "J0")
    return 1.0 if x == 0.0 else _jy(x)[0]


def j1(x):
    _check_nonnegative(x, "J1")
    return 0.0 if x == 0.0 else _jy(x)[1]


def y0(x):
    _check_positive(x, "Y0")
    return _jy(x)[2]


def y1(x):
    _check_positive(x, "Y1")
    return _jy(x)[3]


def i0(x):
    _check_nonnegative(x, "I0")
    return 1.0 if x == 0.0 else _i(x)[0]


def i1(x):
    _check_nonnegative(x, "I1")
    return 0.0 if x == 0.0 else _i(x)[1]


def k0(x):
    _check_positive(x, "K0")
    return _k(x)[0]


def k1(x):
    _check_positive(x, "K1")
    return _k(x)[1]


def bessel_pair(kind, x):
    """Return ``(Z0(x), Z1(x))`` for the family of `kind` (order 0 and 1).

    ``x == 0`` is accepted for J1 and I1 only.
    """
    kind = BesselKind(kind)
    if kind in (BesselKind.Y1, BesselKind.K1):
        _check_positive(x, kind.value)
    else:
        _check_nonnegative(x, kind.value)
        if x == 0.0:
            return 1.0, 0.0
    if kind is BesselKind.J1:
        return _jy(x)[0:2]
    if kind is BesselKind.Y1:
        return _jy(x)[2:4]
    if kind is BesselKind.I1:
        return _i(x)
    return _k(x)


def bessel_eval(kind, x):
    """Evaluate the first-order function `kind` at `x`."""
    return bessel_pair(kind, x)[1]


def bessel_derivatives(kind, x):
    """Return ``(Z, Z', Z'')`` for the first-order function `kind` at `x`."""
    kind = BesselKind(kind)
    z0, z = bessel_pair(kind, x)
    if x == 0.0:
        # J1 and I1 are odd with leading term x/2
        return 0.0, 0.5, 0.0
    if kind is BesselKind.K1:
        dz = -z0 - z / x
    else:
        dz = z0 - z / x
    if kind.modified:
        ddz = -dz / x + (1.0 + 1.0 / (x * x)) * z
    else:
        ddz = -dz / x - (1.0 - 1.0 / (x * x)) * z
    return z, dz, ddz


def bessel_derivative(kind, x, order=1):
    """First or second derivative of the first-order function `kind` at `x`."""
    if order not in (1, 2):
        raise ValueError(f"order must be 1 or 2, got {order!r}")
    return bessel_derivatives(kind, x)[order]
