"""Eigenmode enumeration for a spherical cavity with a conducting radial wedge.

A perfectly conducting sphere of radius ``a`` carrying a radial wedge of
opening ``wedge_angle`` leaves the azimuthal domain ``phi in (0, Phi)`` with
``Phi = 2 pi - wedge_angle``.  The wedge walls quantise the azimuthal index
to ``m_n = n pi / Phi`` — generally non-integer — and each angular degree
``nu = m + k`` (``k`` a non-negative integer) admits a tower of radial
roots:

* TM modes: zeros of ``d/dx [x j_nu(x)]`` (electric wall at ``r = a``),
* TE modes: zeros of ``j_nu(x)``,

with resonant frequencies ``f = c x / (2 pi a)``.  Modes fall into three
families: sectoral (``nu = m > 0``), tesseral (``nu > m > 0``) and zonal
(``m = 0``).  The azimuthally constant TE tower starts at ``nu = 1``: the
``nu = m = 0`` solution has a non-trivial potential but an identically zero
field, so the enumerator never emits it.

Roots are located by a fixed-step scan (step 0.05 — consecutive roots of
interest are separated by more than one unit, so no sign change can be
skipped) refined by bisection to a relative width of 1e-12, giving
deterministic, reproducible spectra.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .specfun import BESSEL_X_MAX, riccati_derivative, spherical_j
from .specfun import legendre_theta

__all__ = [
    "SPEED_OF_LIGHT",
    "RootNotFoundError",
    "WedgeConfig",
    "ModeId",
    "ModeRecord",
    "azimuthal_index",
    "te_root",
    "tm_root",
    "frequency",
    "classify",
    "enumerate_spectrum",
    "te_field_shape",
    "null_field_check",
]

#: Exact vacuum speed of light, m/s.  The tabulated GHz values round-trip
#: only with the exact constant.
SPEED_OF_LIGHT = 299_792_458.0

_SCAN_STEP = 0.05
_SCAN_START = 0.05
_BISECT_REL_WIDTH = 1e-12


class RootNotFoundError(LookupError):
    """No qualifying root below the evaluation cap ``x = BESSEL_X_MAX``."""


@dataclass(frozen=True)
class WedgeConfig:
    """Cavity geometry: sphere radius and wedge opening.

    Parameters
    ----------
    radius_a : float
        Sphere radius in meters.
    wedge_angle : float
        Wedge opening in radians, within [0, 2 pi).  Zero recovers the
        full sphere.
    domain_phi : float
        Azimuthal extent ``2 pi - wedge_angle`` of the field domain.
        Derived automatically when omitted.
    """

    radius_a: float
    wedge_angle: float
    domain_phi: float = float("nan")

    def __post_init__(self) -> None:
        if math.isnan(self.domain_phi):
            object.__setattr__(self, "domain_phi", 2.0 * math.pi - self.wedge_angle)
        if self.radius_a <= 0.0:
            raise ValueError("radius_a must be positive")
        if not 0.0 <= self.wedge_angle < 2.0 * math.pi:
            raise ValueError("wedge_angle must lie in [0, 2*pi)")
        if self.domain_phi <= 0.0:
            raise ValueError("domain_phi must be positive")
        if abs(self.domain_phi + self.wedge_angle - 2.0 * math.pi) > 1e-9:
            raise ValueError("domain_phi and wedge_angle must add up to 2*pi")

    @classmethod
    def from_degrees(cls, wedge_deg: float, radius_a: float) -> "WedgeConfig":
        """Build a config from a wedge opening in degrees."""
        return cls(radius_a=radius_a, wedge_angle=math.radians(wedge_deg))


@dataclass(frozen=True)
class ModeId:
    """Quantum numbers of a cavity mode.

    ``m = n pi / Phi`` is the azimuthal index forced by the wedge walls and
    ``nu = m + k`` the angular degree; ``s`` counts radial roots from 1.
    TM modes require ``n >= 1`` (the azimuthally constant TM candidate is
    excluded by the wall conditions), TE modes admit ``n >= 0``.
    """

    polarisation: str
    n: int
    k: int
    s: int
    m: float
    nu: float

    def __post_init__(self) -> None:
        if self.polarisation not in ("TM", "TE"):
            raise ValueError("polarisation must be 'TM' or 'TE'")
        if self.polarisation == "TM" and self.n < 1:
            raise ValueError("TM modes require n >= 1")
        if self.n < 0 or self.k < 0 or self.s < 1:
            raise ValueError("indices must satisfy n >= 0, k >= 0, s >= 1")
        if self.m < 0.0:
            raise ValueError("azimuthal index m must be non-negative")
        if abs(self.nu - self.m - self.k) > 1e-9:
            raise ValueError("nu - m must equal the integer k")


@dataclass(frozen=True)
class ModeRecord:
    """A resolved mode: identity, dimensionless root ``x = ka``, frequency
    in hertz (``f = c x / (2 pi a)`` with the exact speed of light), and
    trichotomy family."""

    id: ModeId
    x: float
    freq_hz: float
    family: str

    def __post_init__(self) -> None:
        if self.x <= 0.0 or self.freq_hz <= 0.0:
            raise ValueError("root and frequency must be positive")
        if self.family not in ("sectoral", "tesseral", "zonal"):
            raise ValueError("family must be sectoral, tesseral or zonal")


def azimuthal_index(n: int, config: WedgeConfig) -> float:
    """Wall-quantised azimuthal index ``m_n = n pi / Phi``."""
    if n < 0:
        raise ValueError("harmonic number n must be non-negative")
    return n * math.pi / config.domain_phi


def _bisect(func, lo: float, hi: float) -> float:
    """Refine a bracketed sign change to relative width 1e-12."""
    f_lo = func(lo)
    while hi - lo > _BISECT_REL_WIDTH * hi:
        mid = 0.5 * (lo + hi)
        f_mid = func(mid)
        if f_mid == 0.0:
            return mid
        if (f_lo < 0.0) == (f_mid < 0.0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _scan_root(func, s: int) -> float:
    """The s-th positive zero of ``func``, by scan plus bisection."""
    if s < 1:
        raise ValueError("root index s counts from 1")
    found = 0
    x_prev = _SCAN_START
    f_prev = func(x_prev)
    x = x_prev + _SCAN_STEP
    while x <= BESSEL_X_MAX:
        f_here = func(x)
        if f_here == 0.0:
            found += 1
            if found == s:
                return x
        elif (f_prev < 0.0) != (f_here < 0.0):
            found += 1
            if found == s:
                return _bisect(func, x_prev, x)
        x_prev, f_prev = x, f_here
        x += _SCAN_STEP
    raise RootNotFoundError(
        f"fewer than s={s} roots below the x={BESSEL_X_MAX:g} evaluation cap"
    )


@lru_cache(maxsize=None)
def te_root(nu: float, s: int) -> float:
    """The s-th zero of ``j_nu`` — TE resonance condition ``j_nu(ka) = 0``."""
    if nu < 0.0:
        raise ValueError("order nu must be non-negative")
    return _scan_root(lambda x: spherical_j(nu, x), s)


@lru_cache(maxsize=None)
def tm_root(nu: float, s: int) -> float:
    """The s-th zero of ``d/dx [x j_nu(x)]`` — TM resonance condition."""
    if nu < 0.0:
        raise ValueError("order nu must be non-negative")
    return _scan_root(lambda x: riccati_derivative(nu, x), s)


def frequency(x: float, radius_a: float) -> float:
    """Resonant frequency in hertz for a dimensionless root ``x = ka``."""
    if x <= 0.0 or radius_a <= 0.0:
        raise ValueError("root and radius must be positive")
    return SPEED_OF_LIGHT * x / (2.0 * math.pi * radius_a)


def classify(mode: ModeId) -> str:
    """Trichotomy family: zonal (m = 0), sectoral (nu = m > 0), tesseral
    (nu > m > 0)."""
    if mode.m == 0.0:
        return "zonal"
    return "sectoral" if mode.k == 0 else "tesseral"


def null_field_check(nu: float, m: float) -> bool:
    """True iff the (nu, m) mode carries identically zero fields.

    The curl-curl extraction annihilates exactly the constant angular
    profile with ``nu (nu + 1) = 0``, i.e. ``nu = m = 0``: its potential is
    non-trivial but every field component vanishes.
    """
    return nu == 0.0 and m == 0.0


def _mode_root(polarisation: str, nu: float, s: int) -> float:
    return te_root(nu, s) if polarisation == "TE" else tm_root(nu, s)


def enumerate_spectrum(
    config: WedgeConfig,
    f_max_hz: float,
    polarisations: frozenset[str] | set[str] = frozenset(("TM", "TE")),
) -> list[ModeRecord]:
    """All modes with frequency at most ``f_max_hz``, ascending in frequency.

    The search walks harmonic number ``n`` (from 1 for TM, 0 for TE),
    lowering count ``k`` and radial index ``s``, relying on the roots'
    strict monotonicity in ``nu`` and ``s`` to terminate each loop as soon
    as the first candidate of the next tier exceeds the cap.  The null-field
    TE ``nu = m = 0`` candidate is skipped.  Frequency ties are broken by
    (TM before TE, then n, k, s); repeated calls return identical lists.
    """
    if f_max_hz <= 0.0:
        return []
    unknown = set(polarisations) - {"TM", "TE"}
    if unknown:
        raise ValueError(f"unknown polarisations: {sorted(unknown)}")
    x_cap = 2.0 * math.pi * config.radius_a * f_max_hz / SPEED_OF_LIGHT
    if x_cap > BESSEL_X_MAX:
        raise ValueError(
            "frequency cap exceeds the x = 40 root-search window for this radius"
        )

    records: list[ModeRecord] = []
    for pol in ("TM", "TE"):
        if pol not in polarisations:
            continue
        n = 1 if pol == "TM" else 0
        while True:
            m = azimuthal_index(n, config)
            try:
                base = _mode_root(pol, m, 1)
            except RootNotFoundError:
                break
            if base > x_cap:
                break
            k = 0
            while True:
                nu = m + k
                try:
                    first = _mode_root(pol, nu, 1)
                except RootNotFoundError:
                    break
                if first > x_cap:
                    break
                s = 1
                while True:
                    try:
                        x = _mode_root(pol, nu, s)
                    except RootNotFoundError:
                        break
                    if x > x_cap:
                        break
                    if not (pol == "TE" and null_field_check(nu, m)):
                        mode = ModeId(
                            polarisation=pol, n=n, k=k, s=s, m=m, nu=nu
                        )
                        records.append(
                            ModeRecord(
                                id=mode,
                                x=x,
                                freq_hz=frequency(x, config.radius_a),
                                family=classify(mode),
                            )
                        )
                    s += 1
                k += 1
            n += 1

    records.sort(
        key=lambda r: (
            r.freq_hz,
            0 if r.id.polarisation == "TM" else 1,
            r.id.n,
            r.id.k,
            r.id.s,
        )
    )
    return records


def te_field_shape(nu: float, m: float, x_arg: float, theta: float) -> tuple[float, float]:
    """Dimensionless TE field components at one (r, theta) sample.

    Returns ``(e_theta, e_phi)`` with the common prefactor scaled to one:

        e_theta = (m / sin theta) * j_nu(x_arg) * Theta_nu^m(theta)
        e_phi   =                   j_nu(x_arg) * d Theta_nu^m / d theta

    The colatitude derivative is taken by 4th-order central finite
    differences of the angular profile.  For ``m = 0`` the first component
    vanishes identically through its prefactor, and for ``nu = m = 0`` the
    profile is constant, so both components are zero.
    """
    if not 0.0 < theta < math.pi:
        raise ValueError("theta must lie strictly inside (0, pi)")
    radial = spherical_j(nu, x_arg)
    if m == 0.0:
        e_theta = 0.0
    else:
        e_theta = m / math.sin(theta) * radial * legendre_theta(nu, m, theta)
    h = min(1e-5, 0.25 * theta, 0.25 * (math.pi - theta))
    samples = (
        legendre_theta(nu, m, theta - 2.0 * h),
        legendre_theta(nu, m, theta - h),
        legendre_theta(nu, m, theta + h),
        legendre_theta(nu, m, theta + 2.0 * h),
    )
    d_theta = (samples[0] - 8.0 * samples[1] + 8.0 * samples[2] - samples[3]) / (12.0 * h)
    return e_theta, radial * d_theta
