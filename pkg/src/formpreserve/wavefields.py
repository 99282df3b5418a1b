"""Closed-form wave functions: accelerating Airy beam, rigidly oscillating
harmonic-oscillator states, stationary eigenstates and their free dispersion.

Conventions: natural units by default (hbar = mass = 1), the accumulated
action phase S satisfies S(0) = 0, and the Airy beam is returned un-normalized
(no normalizable version exists).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from formpreserve.numerics import Grid1D, airy_ai_values, fd_derivative, hermite_h

__all__ = [
    "Potential1D",
    "ClassicalPath",
    "PhaseAccumulator",
    "airy_beam",
    "airy_stationary_state",
    "senitzky_wf",
    "ho_eigenstate",
    "dispersing_free_state",
    "free_gaussian",
    "linear_potential_gaussian",
    "check_reduced_equation",
]


class Potential1D:
    """Callable potential V(x, t), one of Free, Linear, Harmonic, or Custom."""

    def __init__(self, kind: str, fn, **params):
        self.kind = kind
        self._fn = fn
        self.params = params

    @classmethod
    def free(cls) -> "Potential1D":
        return cls("free", lambda x, t: np.zeros_like(np.asarray(x, dtype=float)))

    @classmethod
    def linear(cls, slope: float) -> "Potential1D":
        return cls("linear", lambda x, t: slope * np.asarray(x, dtype=float), slope=slope)

    @classmethod
    def harmonic(cls, omega: float, mass: float = 1.0) -> "Potential1D":
        if omega <= 0:
            raise ValueError("harmonic potential needs omega > 0")
        return cls(
            "harmonic",
            lambda x, t: 0.5 * mass * omega**2 * np.asarray(x, dtype=float) ** 2,
            omega=omega,
            mass=mass,
        )

    @classmethod
    def custom(cls, fn) -> "Potential1D":
        return cls("custom", fn)

    def __call__(self, x, t: float = 0.0):
        return self._fn(x, t)


@dataclass(frozen=True)
class ClassicalPath:
    """Classical trajectory q(t) with its supplied first and second derivatives.

    Construction cross-checks the derivatives against central differences on
    the working window, so a mistyped q_dot fails fast instead of polluting
    phase checks downstream.
    """

    q: object
    q_dot: object
    q_ddot: object
    window: tuple = (-10.0, 10.0)

    def __post_init__(self):
        ts = np.linspace(self.window[0], self.window[1], 17)
        eps = 1e-5
        for t in ts:
            fd1 = (self.q(t + eps) - self.q(t - eps)) / (2 * eps)
            fd2 = (self.q(t + eps) - 2 * self.q(t) + self.q(t - eps)) / eps**2
            if abs(fd1 - self.q_dot(t)) > 1e-6 * max(1.0, abs(fd1)):
                raise ValueError(f"q_dot inconsistent with q at t={t}")
            if abs(fd2 - self.q_ddot(t)) > 1e-4 * max(1.0, abs(fd2)):
                raise ValueError(f"q_ddot inconsistent with q at t={t}")

    @classmethod
    def harmonic(cls, a: float, phi0: float, omega: float, window=(-10.0, 10.0)) -> "ClassicalPath":
        """q(t) = a cos(omega t + phi0), the general bounded solution of q'' = -omega^2 q."""
        return cls(
            q=lambda t: a * math.cos(omega * t + phi0),
            q_dot=lambda t: -a * omega * math.sin(omega * t + phi0),
            q_ddot=lambda t: -a * omega**2 * math.cos(omega * t + phi0),
            window=window,
        )

    def is_harmonic(self, omega: float, tol: float = 1e-6) -> bool:
        ts = np.linspace(self.window[0], self.window[1], 17)
        return all(abs(self.q_ddot(t) + omega**2 * self.q(t)) <= tol for t in ts)


@dataclass(frozen=True)
class PhaseAccumulator:
    """Accumulated action phase S(t) (units of action), fixed so S(0) = 0."""

    S: object


def harmonic_action(path: ClassicalPath, mass: float) -> PhaseAccumulator:
    """Closed form of S(t) = int_0^t (m q'^2/2 - m w^2 q^2/2) ds for harmonic q.

    The integrand is a pure double-frequency cosine, so the antiderivative is
    (m/2) q q' and S(t) = (m/2)[q(t) q'(t) - q(0) q'(0)].
    """
    q0q0dot = path.q(0.0) * path.q_dot(0.0)
    return PhaseAccumulator(S=lambda t: 0.5 * mass * (path.q(t) * path.q_dot(t) - q0q0dot))


def airy_beam(x, t: float, B: float, hbar: float = 1.0, mass: float = 1.0):
    """Accelerating Airy beam, a force-free solution whose features ride x = B^3 t^2 / 4m^2.

    Un-normalized; returns complex values for scalar or array x.
    """
    if B <= 0:
        raise ValueError("airy_beam needs B > 0")
    x = np.asarray(x, dtype=float)
    shift = B**3 * t**2 / (4.0 * mass**2)
    amp = airy_ai_values((B / hbar ** (2.0 / 3.0)) * (x - shift))
    phase = (B**3 * t / (2.0 * mass * hbar)) * (x - B**3 * t**2 / (6.0 * mass**2))
    out = amp * np.exp(1j * phase)
    return out if out.ndim else complex(out)


def airy_stationary_state(x, t: float, B: float, hbar: float = 1.0, mass: float = 1.0):
    """Zero-energy stationary state Ai(B x / hbar^(2/3)) of the linear potential B^3 x / 2m."""
    x = np.asarray(x, dtype=float)
    out = airy_ai_values((B / hbar ** (2.0 / 3.0)) * x).astype(complex)
    return out if out.ndim else complex(out)


def _ho_mode(n: int, xi):
    """Normalized Hermite-Gaussian u_n(xi) in the dimensionless coordinate."""
    norm = (math.pi) ** (-0.25) / math.sqrt(2.0**n * math.factorial(n))
    return norm * hermite_h(n, xi) * np.exp(-0.5 * xi**2)


def ho_eigenstate(n: int, x, t: float, omega: float, hbar: float = 1.0, mass: float = 1.0):
    """Stationary oscillator state: Hermite-Gaussian times exp(-i (n+1/2) omega t)."""
    if n < 0:
        raise ValueError("n >= 0 required")
    x = np.asarray(x, dtype=float)
    ell = math.sqrt(hbar / (mass * omega))
    u = _ho_mode(n, x / ell) / math.sqrt(ell)
    out = u * np.exp(-1j * (n + 0.5) * omega * t)
    return out if out.ndim else complex(out)


def senitzky_wf(
    n: int,
    x,
    t: float,
    path: ClassicalPath,
    omega: float,
    hbar: float = 1.0,
    mass: float = 1.0,
):
    """Coherent excited state: the n-th oscillator waveform riding the classical path q(t).

    The modulus is the stationary |u_n| translated to q(t); the phase carries
    E_n t, the boost m q'(t) x and the accumulated action S(t).
    """
    if n < 0:
        raise ValueError("n >= 0 required")
    if not path.is_harmonic(omega):
        raise ValueError("path does not satisfy q'' + omega^2 q = 0 on its window")
    x = np.asarray(x, dtype=float)
    ell = math.sqrt(hbar / (mass * omega))
    q = path.q(t)
    q_dot = path.q_dot(t)
    action = harmonic_action(path, mass).S(t)
    e_n = (n + 0.5) * hbar * omega
    amp = _ho_mode(n, (x - q) / ell) / math.sqrt(ell)
    phase = -(e_n * t - mass * q_dot * x + action) / hbar
    out = amp * np.exp(1j * phase)
    return out if out.ndim else complex(out)


def dispersing_free_state(
    n: int,
    x,
    t: float,
    v0: float = 0.0,
    x0: float = 0.0,
    omega: float = 1.0,
    hbar: float = 1.0,
    mass: float = 1.0,
):
    """Freely dispersing oscillator waveform: the n-th stationary state released at t = 0.

    Width grows as ell(t) = ell sqrt(1 + (omega t)^2) while the centre drifts
    along beta(t) = v0 t + x0.  Solves the free Schrödinger equation.
    """
    if n < 0:
        raise ValueError("n >= 0 required")
    x = np.asarray(x, dtype=float)
    ell = math.sqrt(hbar / (mass * omega))
    wt = omega * t
    beta = v0 * t + x0
    xi = (x - beta) / (ell * math.sqrt(1.0 + wt**2))
    boost = np.exp(1j * (v0 / (omega * ell**2)) * (x - 0.5 * v0 * t))
    norm = 1.0 / math.sqrt(2.0**n * math.factorial(n) * ell * math.sqrt(math.pi))
    spread = (1.0 + wt**2) ** (0.5 * n) / (1.0 + 1j * wt) ** (n + 0.5)
    gauss = np.exp(-((x - beta) ** 2) / (2.0 * ell**2 * (1.0 + 1j * wt)))
    out = boost * norm * spread * gauss * hermite_h(n, xi)
    return out if out.ndim else complex(out)


def free_gaussian(x, t: float, s: float = 1.0, hbar: float = 1.0, mass: float = 1.0):
    """Spreading Gaussian solution of the free equation, width s at t = 0, at rest."""
    x = np.asarray(x, dtype=float)
    tau = 1.0 + 1j * hbar * t / (mass * s**2)
    out = (math.pi * s**2) ** (-0.25) / np.sqrt(tau) * np.exp(-(x**2) / (2.0 * s**2 * tau))
    return out if out.ndim else complex(out)


def linear_potential_gaussian(
    x,
    t: float,
    slope: float,
    x_start: float = 0.0,
    v_start: float = 0.0,
    s: float = 1.0,
    hbar: float = 1.0,
    mass: float = 1.0,
):
    """Gaussian wave packet in the linear potential V = slope * x.

    Built from the free spreading Gaussian in the falling frame: with
    u(t) the classical path (m u'' = -slope), psi = phi_free(x - u, t)
    exp[i (m u' (x-u) + L(t))/hbar], L the classical action.
    """
    x = np.asarray(x, dtype=float)
    u = x_start + v_start * t - 0.5 * (slope / mass) * t**2
    u_dot = v_start - (slope / mass) * t
    # L(t) = int m u'^2/2 - slope*u dt, closed form for the uniform force
    a = -slope / mass
    action = (
        0.5 * mass * (v_start**2 * t + v_start * a * t**2 + a**2 * t**3 / 3.0)
        - slope * (x_start * t + 0.5 * v_start * t**2 + a * t**3 / 6.0)
    )
    phi = free_gaussian(x - u, t, s=s, hbar=hbar, mass=mass)
    out = phi * np.exp(1j * (mass * u_dot * (x - u) + action) / hbar)
    return out if out.ndim else complex(out)


def check_reduced_equation(
    r_samples,
    potential: Potential1D,
    path: ClassicalPath,
    s_dot: float,
    grid: Grid1D,
    t: float = 0.0,
    hbar: float = 1.0,
    mass: float = 1.0,
    interior_fraction: float = 0.8,
) -> float:
    """Max-norm residual of the reduced real amplitude equation.

    For an ansatz R(x - q(t)) e^{i phi}, the amplitude must satisfy
    -(hbar^2/2m) R'' + [V + m q'^2/2 + m q'' x + S'] R = 0.  The caller is
    responsible for sampling R against coefficients expressible in x - q(t).
    """
    r = np.asarray(r_samples, dtype=float)
    if r.shape != (grid.n,):
        raise ValueError("r_samples must match the grid")
    x = grid.points
    r_xx = fd_derivative(r, grid, order=2)
    coeff = (
        np.asarray(potential(x, t), dtype=float)
        + 0.5 * mass * path.q_dot(t) ** 2
        + mass * path.q_ddot(t) * x
        + s_dot
    )
    res = -(hbar**2 / (2.0 * mass)) * r_xx + coeff * r
    margin = max(int(round(grid.n * (1.0 - interior_fraction) / 2.0)), 2)
    return float(np.max(np.abs(res[margin : grid.n - margin])))
