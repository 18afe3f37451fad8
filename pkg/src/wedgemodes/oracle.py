"""Independent brute-force checks for the analytic machinery.

Two deliberately-simple cross-checks that share no code path with the
primary implementations:

* ``legendre_spectrum_fd`` -- a second-order finite-difference
  Sturm-Liouville eigensolver for the theta-equation, confirming that the
  eigenvalue ladder sits at nu = m + k without any ladder-operator or
  hypergeometric machinery.
* ``bessel_series_reference`` -- the ascending Bessel series accumulated
  in double-double (split) arithmetic, certifying series values to well
  beyond double precision so cancellation bugs in the fast path cannot
  hide.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .specfun import ln_gamma

__all__ = ["EigenResult", "legendre_spectrum_fd", "bessel_series_reference"]


# ---------------------------------------------------------------------------
# Finite-difference eigensolver for the theta-equation
# ---------------------------------------------------------------------------

_FD_EPS = 1e-3  # Dirichlet truncation distance from the poles


@dataclass(frozen=True)
class EigenResult:
    """Lowest eigenvalues of the theta-equation at azimuthal weight m."""

    m: float
    lambdas: tuple[float, ...]
    nus: tuple[float, ...]
    grid_size: int


def legendre_spectrum_fd(m: float, grid_size: int, count: int) -> EigenResult:
    """Lowest `count` eigenvalues of the singular Sturm-Liouville problem.

    Discretizes -(1/sin t)(sin t u')' + (m^2/sin^2 t) u = lambda u on
    [eps, pi - eps] with eps = 1e-3 and homogeneous Dirichlet ends (the
    regular solutions vanish like t^m for m > 0).  Conservative central
    differences in flux form give a generalized symmetric problem
    A u = lambda B u with diagonal B = sin(t); the similarity transform
    B^(-1/2) A B^(-1/2) keeps it symmetric tridiagonal.  Eigen-indices nu
    are recovered from lambda = nu(nu+1).
    """
    if grid_size < 500:
        raise ValueError(f"grid_size must be >= 500, got {grid_size}")
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    if not m > 0.0:
        raise ValueError(f"m must be > 0 on the truncated interval, got {m}")

    n = int(grid_size)
    h = (math.pi - 2.0 * _FD_EPS) / (n + 1)
    theta = _FD_EPS + h * np.arange(1, n + 1)
    sin_t = np.sin(theta)
    s_minus = np.sin(theta - 0.5 * h)
    s_plus = np.sin(theta + 0.5 * h)

    diag_a = (s_minus + s_plus) / h**2 + m**2 / sin_t
    off_a = -s_plus[:-1] / h**2  # couples node i to node i+1

    diag = diag_a / sin_t
    off = off_a / np.sqrt(sin_t[:-1] * sin_t[1:])

    lambdas = eigh_tridiagonal(
        diag, off, eigvals_only=True, select="i", select_range=(0, count - 1)
    )
    nus = 0.5 * (-1.0 + np.sqrt(1.0 + 4.0 * lambdas))
    return EigenResult(
        m=float(m),
        lambdas=tuple(float(v) for v in lambdas),
        nus=tuple(float(v) for v in nus),
        grid_size=n,
    )


# ---------------------------------------------------------------------------
# Double-double series reference for Bessel J
# ---------------------------------------------------------------------------

_SPLITTER = 134217729.0  # 2^27 + 1, Dekker splitting constant


def _two_sum(a: float, b: float) -> tuple[float, float]:
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


def _quick_two_sum(a: float, b: float) -> tuple[float, float]:
    # requires |a| >= |b|
    s = a + b
    return s, b - (s - a)


def _split(a: float) -> tuple[float, float]:
    t = _SPLITTER * a
    hi = t - (t - a)
    return hi, a - hi


def _two_prod(a: float, b: float) -> tuple[float, float]:
    p = a * b
    ah, al = _split(a)
    bh, bl = _split(b)
    err = ((ah * bh - p) + ah * bl + al * bh) + al * bl
    return p, err


def _dd_add(xh: float, xl: float, yh: float, yl: float) -> tuple[float, float]:
    s, e = _two_sum(xh, yh)
    e += xl + yl
    return _quick_two_sum(s, e)


def _dd_mul(xh: float, xl: float, yh: float, yl: float) -> tuple[float, float]:
    p, e = _two_prod(xh, yh)
    e += xh * yl + xl * yh
    return _quick_two_sum(p, e)


def _dd_div_double(xh: float, xl: float, d: float) -> tuple[float, float]:
    q1 = xh / d
    p, e = _two_prod(q1, d)
    rh, rl = _dd_add(xh, xl, -p, -e)
    q2 = (rh + rl) / d
    return _quick_two_sum(q1, q2)


def bessel_series_reference(nu: float, x: float, terms: int) -> float:
    """Ascending Bessel series accumulated in double-double arithmetic.

    Evaluates the same series as the fast path but carries both the term
    recurrence and the running sum as (hi, lo) double-double pairs, so the
    alternating-sum cancellation that limits the double-precision path is
    pushed ~16 digits further down.  The leading coefficient
    (x/2)^nu / Gamma(nu+1) is taken in working precision: it scales the
    whole series uniformly and is shared with the fast path, so the
    comparison isolates accumulation error.  Used to certify series values
    recorded in the test fixtures.
    """
    if terms < 40:
        raise ValueError(f"terms must be >= 40, got {terms}")
    if not 0.0 < x <= 20.0:
        raise ValueError(f"reference domain is 0 < x <= 20, got x={x}")
    half_x = 0.5 * x
    qh, ql = _two_prod(half_x, half_x)
    t0 = math.exp(nu * math.log(half_x) - ln_gamma(nu + 1.0))
    th, tl = t0, 0.0
    sh, sl = t0, 0.0
    for k in range(1, terms + 1):
        th, tl = _dd_mul(th, tl, -qh, -ql)
        th, tl = _dd_div_double(th, tl, k * (k + nu))
        sh, sl = _dd_add(sh, sl, th, tl)
        if abs(th) < 1e-34 * abs(sh):
            break
    return sh + sl
