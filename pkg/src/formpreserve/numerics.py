"""Shared numerical substrate: grids, special functions, finite differences.

All operations are pure functions of their inputs.  Physical constants
(hbar, mass, omega) never appear here; they enter the physics modules as
explicit parameters with natural-unit defaults.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import mpmath
import numpy as np

__all__ = [
    "Grid1D",
    "SampledWaveFunction",
    "SpecialFnResult",
    "airy_ai",
    "airy_ai_values",
    "hermite_h",
    "laguerre_l",
    "fd_derivative",
]


@dataclass(frozen=True)
class Grid1D:
    """Uniform 1-D sample grid on [x_min, x_max] with n points (endpoints included)."""

    x_min: float
    x_max: float
    n: int

    def __post_init__(self):
        if self.n < 8:
            raise ValueError(f"Grid1D needs n >= 8, got {self.n}")
        if not (self.x_min < self.x_max):
            raise ValueError("Grid1D needs x_min < x_max")
        if not (math.isfinite(self.x_min) and math.isfinite(self.x_max)):
            raise ValueError("Grid1D bounds must be finite")

    @property
    def spacing(self) -> float:
        return (self.x_max - self.x_min) / (self.n - 1)

    @cached_property
    def points(self) -> np.ndarray:
        return np.linspace(self.x_min, self.x_max, self.n)


@dataclass(frozen=True)
class SampledWaveFunction:
    """Complex wave-function samples on a Grid1D at one instant."""

    grid: Grid1D
    values: np.ndarray
    t: float
    hbar: float = 1.0
    mass: float = 1.0

    def __post_init__(self):
        values = np.asarray(self.values, dtype=complex)
        object.__setattr__(self, "values", values)
        if values.shape != (self.grid.n,):
            raise ValueError(f"values shape {values.shape} != grid size ({self.grid.n},)")
        if not np.all(np.isfinite(values.real)) or not np.all(np.isfinite(values.imag)):
            raise ValueError("wave-function samples must be finite")
        if self.hbar <= 0:
            raise ValueError("hbar must be positive")
        if self.mass <= 0:
            raise ValueError("mass must be positive")

    def norm(self) -> float:
        """Discrete L2 norm, trapezoid weighted."""
        return float(np.sqrt(np.trapezoid(np.abs(self.values) ** 2, dx=self.grid.spacing)))


@dataclass(frozen=True)
class SpecialFnResult:
    value: float
    est_abs_error: float

    def __post_init__(self):
        if not math.isfinite(self.est_abs_error) or self.est_abs_error < 0:
            raise ValueError("est_abs_error must be finite and non-negative")


# Ai(0) = 3**(-2/3)/Gamma(2/3), Ai'(0) = -3**(-1/3)/Gamma(1/3)
_AI0 = 0.35502805388781723926
_AIP0 = -0.25881940379280679840
# 80-bit versions, parsed from strings so the extra digits survive
_AI0_LD = np.longdouble("0.35502805388781723926006318600418317639800")
_AIP0_LD = np.longdouble("-0.25881940379280679840518356018920396347910")

# Evaluation strategy switch points (|z|).  The Maclaurin series suffers
# cancellation growing like exp((2/3)|z|**1.5), so the working precision is
# stepped up with |z| until the asymptotic expansion takes over at 8.0,
# where its accuracy ~exp(-2*zeta) is already below 1e-13.
_AIRY_FLOAT64_CUTOFF = 2.0
_AIRY_LONGDOUBLE_CUTOFF = 7.0
_AIRY_ASYMPTOTIC_CUTOFF = 8.0
_AIRY_DOMAIN_LIMIT = -1.0e8


def _airy_maclaurin(z, one):
    """Ai series sums f, g with Ai = Ai(0)*f + Ai'(0)*g, generic in scalar type.

    Returns (f, g, abs_sum) where abs_sum bounds the cancellation mass
    |Ai(0)|*sum|f_k| + |Ai'(0)|*sum|g_k|.
    """
    z = one * z
    z3 = z * z * z
    f_term = one
    g_term = z
    f_sum = f_term
    g_sum = g_term
    abs_sum = abs(_AI0) + abs(_AIP0) * abs(z)
    k = 0
    while True:
        f_term = f_term * z3 / ((3 * k + 2) * (3 * k + 3))
        g_term = g_term * z3 / ((3 * k + 3) * (3 * k + 4))
        f_sum = f_sum + f_term
        g_sum = g_sum + g_term
        abs_sum = abs_sum + abs(_AI0) * abs(f_term) + abs(_AIP0) * abs(g_term)
        k += 1
        if abs(f_term) + abs(g_term) < 1e-25 * (abs(f_sum) + abs(g_sum) + 1e-300) and k > 2:
            break
        if k > 400:  # cannot happen below the asymptotic cutoff
            break
    return f_sum, g_sum, abs_sum


def _airy_u_coeffs(kmax: int) -> list[float]:
    """Asymptotic coefficients u_0..u_kmax, u_k = u_{k-1}(6k-5)(6k-3)(6k-1)/(216 k (2k-1))."""
    u = [1.0]
    for k in range(1, kmax + 1):
        u.append(u[-1] * (6 * k - 5) * (6 * k - 3) * (6 * k - 1) / (216.0 * k * (2 * k - 1)))
    return u


_AIRY_U = _airy_u_coeffs(40)


def _airy_asymptotic_positive(z: float) -> SpecialFnResult:
    zeta = (2.0 / 3.0) * z ** 1.5
    s = 0.0
    term = 1.0
    last = math.inf
    omitted = 0.0
    for k, u in enumerate(_AIRY_U):
        term = ((-1) ** k) * u / zeta ** k
        if abs(term) >= last:  # divergent tail reached
            omitted = abs(term)
            break
        s += term
        last = abs(term)
        omitted = abs(term)
    pref = math.exp(-zeta) / (2.0 * math.sqrt(math.pi) * z ** 0.25)
    value = pref * s
    # exp(-zeta) amplifies the rounding of zeta by zeta*eps relative
    est = pref * omitted + (zeta + 8.0) * 2.3e-16 * abs(value) + 1e-300
    return SpecialFnResult(value, est)


def _airy_asymptotic_negative(z: float) -> SpecialFnResult:
    x = -z
    # zeta in extended precision: the trig argument grows like x**1.5
    zeta_l = (np.longdouble(2.0) / 3.0) * np.longdouble(x) ** np.longdouble(1.5)
    zeta = float(zeta_l)
    p_sum = 0.0
    q_sum = 0.0
    last = math.inf
    omitted = 0.0
    for k in range(len(_AIRY_U) // 2):
        tp = ((-1) ** k) * _AIRY_U[2 * k] / zeta ** (2 * k)
        tq = ((-1) ** k) * _AIRY_U[2 * k + 1] / zeta ** (2 * k + 1)
        mag = max(abs(tp), abs(tq))
        if mag >= last:
            omitted = mag
            break
        p_sum += tp
        q_sum += tq
        last = mag
        omitted = mag
    phase = zeta_l - np.longdouble(math.pi) / 4.0
    c = float(np.cos(phase))
    s = float(np.sin(phase))
    pref = 1.0 / (math.sqrt(math.pi) * x ** 0.25)
    value = pref * (c * p_sum + s * q_sum)
    # phase rounding: d(zeta) ~ zeta * eps(longdouble)
    est = pref * (omitted + (abs(zeta) + 20.0) * 1.1e-19) + 2e-15 * abs(value) + 1e-300
    return SpecialFnResult(value, est)


def airy_ai(z: float) -> SpecialFnResult:
    """Airy function Ai(z) with an absolute-error estimate.

    Maclaurin series for |z| <= 8 (float64 below |z| = 2, 80-bit floats below
    7, mpmath above) and the large-|z| asymptotic expansions beyond.  The
    estimate stays below 1e-12 for |z| <= 10.

    Raises
    ------
    ValueError
        For z < -1e8, where trig argument reduction is no longer trustworthy.
    """
    z = float(z)
    if not math.isfinite(z):
        raise ValueError("airy_ai requires finite z")
    if z < _AIRY_DOMAIN_LIMIT:
        raise ValueError(f"airy_ai: z = {z} below domain limit {_AIRY_DOMAIN_LIMIT}")
    az = abs(z)
    if az <= _AIRY_FLOAT64_CUTOFF:
        f, g, abs_sum = _airy_maclaurin(z, 1.0)
        value = _AI0 * f + _AIP0 * g
        return SpecialFnResult(float(value), 6e-16 * abs_sum + 1e-300)
    if az <= _AIRY_LONGDOUBLE_CUTOFF:
        f, g, abs_sum = _airy_maclaurin(z, np.longdouble(1.0))
        value = _AI0_LD * f + _AIP0_LD * g
        est = 5e-19 * float(abs_sum) + 2e-16 * abs(float(value)) + 1e-300
        return SpecialFnResult(float(value), est)
    if az <= _AIRY_ASYMPTOTIC_CUTOFF:
        # cancellation needs ~ (2/3)|z|^1.5 / ln 10 extra digits
        extra = int((2.0 / 3.0) * az ** 1.5 / math.log(10.0)) + 10
        with mpmath.workdps(20 + extra):
            f, g, abs_sum = _airy_maclaurin(mpmath.mpf(z), mpmath.mpf(1))
            ai0 = mpmath.mpf(3) ** mpmath.mpf("-2/3") / mpmath.gamma(mpmath.mpf("2/3"))
            aip0 = -(mpmath.mpf(3) ** mpmath.mpf("-1/3")) / mpmath.gamma(mpmath.mpf("1/3"))
            value = float(ai0 * f + aip0 * g)
        return SpecialFnResult(value, 2e-16 * abs(value) + 1e-14)
    if z > 0:
        return _airy_asymptotic_positive(z)
    return _airy_asymptotic_negative(z)


def airy_ai_values(z: np.ndarray) -> np.ndarray:
    """Vectorised Ai over an array (values only, estimates dropped)."""
    flat = np.asarray(z, dtype=float).ravel()
    out = np.empty(flat.shape, dtype=float)
    for i, zi in enumerate(flat):
        out[i] = airy_ai(zi).value
    return out.reshape(np.shape(z))


def hermite_h(n: int, u):
    """Physicists' Hermite polynomial H_n(u) by the three-term recurrence.

    H_{k+1} = 2u H_k - 2k H_{k-1}.  Scalar or ndarray u.
    """
    if n < 0:
        raise ValueError("hermite_h needs n >= 0")
    if n > 200:
        raise ValueError("hermite_h refuses n > 200 (overflow risk)")
    u = np.asarray(u, dtype=float)
    h_prev = np.ones_like(u)
    if n == 0:
        return h_prev if h_prev.ndim else float(h_prev)
    h = 2.0 * u
    for k in range(1, n):
        h, h_prev = 2.0 * u * h - 2.0 * k * h_prev, h
    return h if h.ndim else float(h)


def laguerre_l(n: int, u):
    """Laguerre polynomial L_n(u) via (k+1) L_{k+1} = (2k+1-u) L_k - k L_{k-1}."""
    if n < 0:
        raise ValueError("laguerre_l needs n >= 0")
    if n > 200:
        raise ValueError("laguerre_l refuses n > 200 (overflow risk)")
    u = np.asarray(u, dtype=float)
    l_prev = np.ones_like(u)
    if n == 0:
        return l_prev if l_prev.ndim else float(l_prev)
    l = 1.0 - u
    for k in range(1, n):
        l, l_prev = ((2.0 * k + 1.0 - u) * l - k * l_prev) / (k + 1.0), l
    return l if l.ndim else float(l)


# One-sided stencils for the two rows at each edge, times 60h (first
# derivative, 5th order) resp. 12h^2 (second derivative, 4th order).
_D1_EDGE0 = np.array([-137.0, 300.0, -300.0, 200.0, -75.0, 12.0])
_D1_EDGE1 = np.array([-12.0, -65.0, 120.0, -60.0, 20.0, -3.0])
_D2_EDGE0 = np.array([45.0, -154.0, 214.0, -156.0, 61.0, -10.0])
_D2_EDGE1 = np.array([10.0, -15.0, -4.0, 14.0, -6.0, 1.0])


def fd_derivative(values, grid: Grid1D, order: int = 1) -> np.ndarray:
    """First or second derivative of sampled values on a uniform grid.

    Fourth-order central differences in the interior; one-sided stencils of
    matching or better order on the two rows at each edge.  Complex input
    stays complex.
    """
    values = np.asarray(values)
    if values.shape != (grid.n,):
        raise ValueError("values length must match grid.n")
    if order not in (1, 2):
        raise ValueError("order must be 1 or 2")
    if grid.n < 6:
        raise ValueError("fd_derivative needs at least 6 samples")
    h = grid.spacing
    out = np.empty_like(values, dtype=np.result_type(values, float))
    v = values
    if order == 1:
        out[2:-2] = (v[:-4] - 8.0 * v[1:-3] + 8.0 * v[3:-1] - v[4:]) / (12.0 * h)
        out[0] = _D1_EDGE0 @ v[:6] / (60.0 * h)
        out[1] = _D1_EDGE1 @ v[:6] / (60.0 * h)
        out[-2] = -(_D1_EDGE1 @ v[-6:][::-1]) / (60.0 * h)
        out[-1] = -(_D1_EDGE0 @ v[-6:][::-1]) / (60.0 * h)
    else:
        out[2:-2] = (-v[:-4] + 16.0 * v[1:-3] - 30.0 * v[2:-2] + 16.0 * v[3:-1] - v[4:]) / (12.0 * h * h)
        out[0] = _D2_EDGE0 @ v[:6] / (12.0 * h * h)
        out[1] = _D2_EDGE1 @ v[:6] / (12.0 * h * h)
        out[-2] = _D2_EDGE1 @ v[-6:][::-1] / (12.0 * h * h)
        out[-1] = _D2_EDGE0 @ v[-6:][::-1] / (12.0 * h * h)
    return out
