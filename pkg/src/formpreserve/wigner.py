"""Wigner quasi-probability fields: FFT construction from wave functions,
closed-form oscillator distributions, the linear canonical phase-space map,
and the transformation law W'(mapped point) = W(original point).

Interpolation between grids is band-limited (Whittaker sinc); the FFT
construction samples the conjugate lattice exactly at its Nyquist density, so
sinc interpolation is the faithful reconstruction.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from formpreserve.contours import marching_squares
from formpreserve.numerics import Grid1D, SampledWaveFunction, laguerre_l
from formpreserve.transform import TransformParams, invert_time, map_coords, transform_wavefunction

__all__ = [
    "PhaseSpaceGrid",
    "PhaseSpaceField",
    "CanonicalMap1D",
    "AliasingError",
    "TruncationWarning",
    "wigner_transform",
    "ho_wigner",
    "free_disperse_wigner",
    "map_phase_space",
    "check_wolW",
    "rigid_translation_check",
    "turntable_check",
    "extract_level_curves",
    "sinc_interp_points",
]


class AliasingError(ValueError):
    """Sampled wave function wraps phase too fast for the grid."""


class TruncationWarning(UserWarning):
    """Wave function does not decay at the grid edges; Wigner tails truncated."""


@dataclass(frozen=True)
class PhaseSpaceGrid:
    x_axis: Grid1D
    p_axis: Grid1D


@dataclass(frozen=True)
class PhaseSpaceField:
    """Real field W(x, p) sampled on a PhaseSpaceGrid at one instant."""

    grid: PhaseSpaceGrid
    values: np.ndarray
    t: float
    hbar: float = 1.0

    def __post_init__(self):
        # real parts of complex arrays arrive as strided views; keep matmuls fast
        values = np.ascontiguousarray(self.values, dtype=float)
        object.__setattr__(self, "values", values)
        expected = (self.grid.x_axis.n, self.grid.p_axis.n)
        if values.shape != expected:
            raise ValueError(f"values shape {values.shape} != grid shape {expected}")
        if not np.all(np.isfinite(values)):
            raise ValueError("phase-space field must be finite")

    @classmethod
    def from_function(cls, fn, grid: PhaseSpaceGrid, t: float = 0.0, hbar: float = 1.0):
        x = grid.x_axis.points[:, None]
        p = grid.p_axis.points[None, :]
        return cls(grid=grid, values=fn(x, p), t=t, hbar=hbar)


@dataclass(frozen=True)
class CanonicalMap1D:
    """Phase-space extension of the coordinate map, frozen at time t."""

    params: TransformParams
    t: float
    mass: float = 1.0

    def matrix_offset(self):
        """(A, b) with (x', p') = A (x, p) + b; det A = 1 by construction."""
        g = self.params.gamma(self.t)
        dg = self.params.dgamma(self.t)
        db = self.params.dbeta(self.t)
        a = np.array([[1.0 / g, 0.0], [-self.mass * dg, g]])
        b = np.array([self.params.beta(self.t), self.mass * g**2 * db])
        return a, b


def map_phase_space(cmap: CanonicalMap1D, x, p):
    """x' = x/gamma + beta,  p' = gamma p + m gamma^2 beta' - m gamma' x."""
    a, b = cmap.matrix_offset()
    x = np.asarray(x, dtype=float)
    p = np.asarray(p, dtype=float)
    xp = a[0, 0] * x + b[0]
    pp = a[1, 0] * x + a[1, 1] * p + b[1]
    if xp.ndim == 0:
        return float(xp), float(pp)
    return xp, pp


def _natural_p_lattice(n_x: int, dx: float, hbar: float):
    m = 2 * n_x
    return (math.pi * hbar / dx) * np.fft.fftshift(np.fft.fftfreq(m))


def _sinc_matrix(src: np.ndarray, targets: np.ndarray) -> np.ndarray:
    spacing = src[1] - src[0]
    return np.sinc((targets[None, :] - src[:, None]) / spacing)


def wigner_transform(psi: SampledWaveFunction, p_axis: Grid1D) -> PhaseSpaceField:
    """W(x, p) = (1/pi hbar) int dy e^{2ipy/hbar} psi(x-y) psi*(x+y), per-row FFT.

    The y-lattice is the x-lattice (zero-extended), p is produced on the
    FFT conjugate lattice and band-limit interpolated to the requested axis.
    """
    values = psi.values
    n = psi.grid.n
    dx = psi.grid.spacing
    hbar = psi.hbar

    peak = float(np.max(np.abs(values)))
    if peak == 0.0:
        raise ValueError("cannot build the Wigner function of the zero vector")
    if max(abs(values[0]), abs(values[-1])) > 1e-6 * peak:
        warnings.warn(
            "wave function does not decay at the grid edges; Wigner tails truncated",
            TruncationWarning,
        )
    # phase-wrap check: a near-pi step at healthy amplitude is aliasing,
    # while a sign flip through a node leaves both neighbours tiny
    amp_ok = np.minimum(np.abs(values[:-1]), np.abs(values[1:])) > 0.1 * peak
    steps = np.abs(np.angle(values[1:] * np.conj(values[:-1])))
    if np.any(amp_ok & (steps > 0.8 * math.pi)):
        raise AliasingError("phase advances more than ~pi between samples; refine the grid")

    m = 2 * n
    idx = np.arange(m)
    jp = np.where(idx < n, idx, idx - m)  # fftfreq-ordered y index
    rows = np.arange(n)[:, None]
    i1 = rows - jp[None, :]
    i2 = rows + jp[None, :]
    mask = (i1 >= 0) & (i1 < n) & (i2 >= 0) & (i2 < n)
    g = np.where(
        mask,
        values[np.clip(i1, 0, n - 1)] * np.conj(values[np.clip(i2, 0, n - 1)]),
        0.0,
    )
    w_rows = (dx / (math.pi * hbar)) * m * np.fft.fftshift(np.fft.ifft(g, axis=1), axes=1)
    imag_peak = float(np.max(np.abs(w_rows.imag)))
    if imag_peak > 1e-8:
        raise ValueError(f"Wigner construction produced imaginary residue {imag_peak:.2e}")
    w_nat = np.ascontiguousarray(w_rows.real)

    p_nat = _natural_p_lattice(n, dx, hbar)
    targets = p_axis.points
    if len(targets) == len(p_nat) and np.allclose(targets, p_nat, atol=1e-12):
        w = w_nat
    else:
        w = w_nat @ _sinc_matrix(p_nat, targets)
    grid = PhaseSpaceGrid(x_axis=psi.grid, p_axis=p_axis)
    return PhaseSpaceField(grid=grid, values=w, t=psi.t, hbar=hbar)


def natural_p_axis(x_axis: Grid1D, hbar: float = 1.0) -> Grid1D:
    """The FFT conjugate lattice of an x grid, as a Grid1D."""
    lattice = _natural_p_lattice(x_axis.n, x_axis.spacing, hbar)
    return Grid1D(float(lattice[0]), float(lattice[-1]), len(lattice))


def ho_wigner(n: int, x, p, omega: float, hbar: float = 1.0, mass: float = 1.0):
    """Stationary oscillator Wigner function ((-1)^n/pi hbar) L_n(4H/hw) e^{-2H/hw}."""
    if n < 0:
        raise ValueError("n >= 0 required")
    x = np.asarray(x, dtype=float)
    p = np.asarray(p, dtype=float)
    r2 = (mass * omega / hbar) * x**2 + p**2 / (hbar * mass * omega)
    out = ((-1.0) ** n / (math.pi * hbar)) * laguerre_l(n, 2.0 * r2) * np.exp(-r2)
    return out if np.ndim(out) else float(out)


def free_disperse_wigner(
    n: int, x, p, t: float, omega: float, hbar: float = 1.0, mass: float = 1.0
):
    """Freely evolving stationary-state Wigner function; level sets are the
    sheared ellipses xt^2 - 2 (wt) xt pt + (1 + (wt)^2) pt^2 = const."""
    if n < 0:
        raise ValueError("n >= 0 required")
    x = np.asarray(x, dtype=float)
    p = np.asarray(p, dtype=float)
    xt = x * math.sqrt(mass * omega / hbar)
    pt = p / math.sqrt(hbar * mass * omega)
    wt = omega * t
    r2 = xt**2 - 2.0 * wt * xt * pt + (1.0 + wt**2) * pt**2
    out = ((-1.0) ** n / (math.pi * hbar)) * laguerre_l(n, 2.0 * r2) * np.exp(-r2)
    return out if np.ndim(out) else float(out)


def sinc_interp_points(field: PhaseSpaceField, points: np.ndarray) -> np.ndarray:
    """Band-limited evaluation of the field at scattered (x, p) points."""
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    sx = _sinc_matrix(field.grid.x_axis.points, pts[:, 0]).T  # (k, nx)
    sp = _sinc_matrix(field.grid.p_axis.points, pts[:, 1]).T  # (k, np)
    return np.einsum("ki,ij,kj->k", sx, field.values, sp, optimize=True)


def _fft_row_shift(rows: np.ndarray, spacing: float, shifts: np.ndarray) -> np.ndarray:
    """Evaluate each uniformly sampled row at (lattice + shifts[i]).

    Spectral shifting of the band-limited reconstruction; the periodic wrap
    only touches the decayed tails.  A zero shift is an exact pass-through.
    """
    if np.max(np.abs(shifts)) == 0.0:
        return rows
    n = rows.shape[1]
    freqs = np.fft.fftfreq(n)
    phase = np.exp(2j * math.pi * freqs[None, :] * (shifts[:, None] / spacing))
    return np.fft.ifft(np.fft.fft(rows, axis=1) * phase, axis=1).real


def check_wolW(
    psi,
    params: TransformParams,
    potential,
    t: float,
    grid: PhaseSpaceGrid,
    hbar: float = 1.0,
    mass: float = 1.0,
) -> float:
    """Max |W'(mapped point) - W(point)| over the grid.

    W is built from psi at time t, W' from the transformed wave function at
    the image time t'; both via wigner_transform.  The primed field is
    computed on the image of the x axis and its own conjugate lattice, then
    read at the mapped points by band-limited interpolation.
    """
    x_axis = grid.x_axis
    psi_s = SampledWaveFunction(
        x_axis, np.asarray(psi(x_axis.points, t), dtype=complex), t=t, hbar=hbar, mass=mass
    )
    if potential is not None:
        from formpreserve.schrodinger import residual as _residual

        probe = Grid1D(x_axis.x_min, x_axis.x_max, 256)
        rep = _residual(psi, potential, probe, t, hbar=hbar, mass=mass)
        if rep.max_abs > 1e-2:
            warnings.warn(
                f"seed wave function violates its stated equation (residual {rep.max_abs:.2e}); "
                "the transformation law is only meaningful for solutions",
                UserWarning,
            )
    w = wigner_transform(psi_s, grid.p_axis)

    g = params.gamma(t)
    xp_lo, t_prime = map_coords(params, x_axis.x_min, t)
    xp_hi, _ = map_coords(params, x_axis.x_max, t)
    x_axis_p = Grid1D(min(xp_lo, xp_hi), max(xp_lo, xp_hi), x_axis.n)
    psi_p = transform_wavefunction(
        params, psi, x_axis_p.points, t_prime, hbar=hbar, mass=mass
    )
    psi_p_s = SampledWaveFunction(x_axis_p, psi_p, t=t_prime, hbar=hbar, mass=mass)
    p_nat_p = natural_p_axis(x_axis_p, hbar)
    w_p = wigner_transform(psi_p_s, p_nat_p)

    # mapped targets: x' depends only on the row; p' = (gamma p + m gamma^2
    # beta') - m gamma' x splits into a shared lattice plus a per-row shift
    cmap = CanonicalMap1D(params=params, t=t, mass=mass)
    row_x = x_axis.points / g + params.beta(t)
    src_x = x_axis_p.points
    if np.allclose(row_x, src_x, atol=1e-9 * max(1.0, float(np.max(np.abs(src_x))))):
        rows = w_p.values
    else:
        rows = np.ascontiguousarray(_sinc_matrix(src_x, row_x).T) @ w_p.values
    shared_lattice = g * grid.p_axis.points + mass * g**2 * params.dbeta(t)
    rows_on_lattice = rows @ _sinc_matrix(p_nat_p.points, shared_lattice)
    shifts = -mass * params.dgamma(t) * x_axis.points
    wp_at_mapped = _fft_row_shift(rows_on_lattice, float(shared_lattice[1] - shared_lattice[0]), shifts)
    return float(np.max(np.abs(wp_at_mapped - w.values)))


def rigid_translation_check(
    w_t: PhaseSpaceField,
    w_0: PhaseSpaceField,
    params: TransformParams,
    t: float,
    t0=0.0,
    mass: float = 1.0,
) -> float:
    """For gamma = 1 maps: the field at time t must be the t0 field rigidly
    translated by (beta(t) - beta(t0), m(beta'(t) - beta'(t0))).

    Pass t0=None when w_0 is the untranslated seed field; the shift is then
    the absolute (beta(t), m beta'(t)).
    """
    for s in (t0 or 0.0, t, 0.5 * ((t0 or 0.0) + t)):
        if abs(params.gamma(s) - 1.0) > 1e-12:
            raise ValueError("rigid translation requires gamma identically 1")
    if t0 is None:
        dx_shift = params.beta(t)
        dp_shift = mass * params.dbeta(t)
    else:
        dx_shift = params.beta(t) - params.beta(t0)
        dp_shift = mass * (params.dbeta(t) - params.dbeta(t0))

    x_pts = w_t.grid.x_axis.points
    p_pts = w_t.grid.p_axis.points
    # compare where the shifted point stays well inside the t0 grid
    x0, p0 = w_0.grid.x_axis, w_0.grid.p_axis
    keep_x = (x_pts - dx_shift >= x0.x_min + 2 * x0.spacing) & (
        x_pts - dx_shift <= x0.x_max - 2 * x0.spacing
    )
    keep_p = (p_pts - dp_shift >= p0.x_min + 2 * p0.spacing) & (
        p_pts - dp_shift <= p0.x_max - 2 * p0.spacing
    )
    if not np.any(keep_x) or not np.any(keep_p):
        raise ValueError("no overlap between the translated grids")
    sx = _sinc_matrix(x0.points, x_pts[keep_x] - dx_shift)
    sp = _sinc_matrix(p0.points, p_pts[keep_p] - dp_shift)
    shifted = sx.T @ w_0.values @ sp
    return float(np.max(np.abs(w_t.values[np.ix_(keep_x, keep_p)] - shifted)))


def _rotation(theta: float) -> np.ndarray:
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c, -s], [s, c]])


def turntable_check(
    w_sym: PhaseSpaceField,
    zeta0,
    t_tilde: float,
    n_probe: int = 40,
    symmetry_tol: float = 1e-6,
) -> float:
    """Harmonic rigid translation equals rotation about the origin for
    circularly symmetric fields (axes must be the dimensionless x, p).

    The translated field at dimensionless time t is W(zeta - R(-t) zeta0);
    the turntable form is W(R(t) zeta - zeta0).  Both are sampled on an
    interior probe lattice; the max discrepancy is returned.
    """
    zeta0 = np.asarray(zeta0, dtype=float)
    vals = w_sym.values
    scale = float(np.max(np.abs(vals)))
    # circular-symmetry precheck on a few rings
    for radius in (0.6, 1.1, 1.7):
        angles = np.linspace(0.0, 2 * math.pi, 16, endpoint=False)
        ring = np.column_stack([radius * np.cos(angles), radius * np.sin(angles)])
        ring_vals = sinc_interp_points(w_sym, ring)
        if np.max(np.abs(ring_vals - ring_vals.mean())) > symmetry_tol * max(scale, 1.0):
            raise ValueError("field is not circularly symmetric; turntable flow does not apply")

    x_ax, p_ax = w_sym.grid.x_axis, w_sym.grid.p_axis
    margin = 0.25
    probes_x = np.linspace(
        x_ax.x_min * (1 - margin) + x_ax.x_max * margin,
        x_ax.x_min * margin + x_ax.x_max * (1 - margin),
        n_probe,
    )
    probes_p = np.linspace(
        p_ax.x_min * (1 - margin) + p_ax.x_max * margin,
        p_ax.x_min * margin + p_ax.x_max * (1 - margin),
        n_probe,
    )
    zx, zp = np.meshgrid(probes_x, probes_p, indexing="ij")
    zeta = np.column_stack([zx.ravel(), zp.ravel()])

    translated_pts = zeta - (_rotation(-t_tilde) @ zeta0)[None, :]
    rotated_pts = zeta @ _rotation(t_tilde).T - zeta0[None, :]
    a = sinc_interp_points(w_sym, translated_pts)
    b = sinc_interp_points(w_sym, rotated_pts)
    return float(np.max(np.abs(a - b)))


def extract_level_curves(field: PhaseSpaceField, level: float):
    """Marching-squares level curves of the field; empty if level not attained."""
    return marching_squares(
        field.grid.x_axis.points, field.grid.p_axis.points, field.values, level
    )
