import math

import numpy as np
import pytest

from formpreserve.numerics import Grid1D, SampledWaveFunction
from formpreserve.schrodinger import BoundaryLeakWarning, propagate, residual
from formpreserve.wavefields import Potential1D, dispersing_free_state, ho_eigenstate


def l2_diff(a: np.ndarray, b: np.ndarray, dx: float) -> float:
    return float(np.sqrt(np.sum(np.abs(a - b) ** 2) * dx))


class TestResidual:
    def test_eigenstate_in_harmonic_potential(self):
        grid = Grid1D(-10.0, 10.0, 2048)
        rep = residual(
            lambda x, t: ho_eigenstate(0, x, t, omega=1.0),
            Potential1D.harmonic(1.0),
            grid,
            t=0.3,
        )
        assert rep.max_abs < 1e-6
        assert rep.l2 < 1e-6

    def test_wrong_potential_detected(self):
        grid = Grid1D(-10.0, 10.0, 2048)
        rep = residual(
            lambda x, t: ho_eigenstate(0, x, t, omega=1.0),
            Potential1D.free(),
            grid,
            t=0.0,
        )
        assert rep.max_abs > 0.1

    def test_rejects_nonfinite_samples(self):
        grid = Grid1D(-1.0, 1.0, 64)
        with pytest.raises(ValueError):
            residual(
                lambda x, t: np.full_like(x, np.nan, dtype=complex),
                Potential1D.free(),
                grid,
                t=0.0,
            )


class TestPropagate:
    def test_zero_steps_identity(self):
        grid = Grid1D(-10.0, 10.0, 256)
        psi0 = SampledWaveFunction(grid, ho_eigenstate(0, grid.points, 0.0, 1.0), t=0.0)
        out = propagate(psi0, Potential1D.harmonic(1.0), t_final=0.0, n_steps=0)
        assert out is psi0

    def test_harmonic_period_phase(self):
        omega = 1.0
        grid = Grid1D(-10.0, 10.0, 2048)
        x = grid.points
        psi0 = SampledWaveFunction(grid, ho_eigenstate(1, x, 0.0, omega), t=0.0)
        period = 2 * math.pi / omega
        out = propagate(psi0, Potential1D.harmonic(omega), t_final=period, n_steps=4096)
        expected = ho_eigenstate(1, x, 0.0, omega) * np.exp(-1j * 1.5 * omega * period)
        assert l2_diff(out.values, expected, grid.spacing) < 1e-4

    def test_free_dispersion_matches_closed_form(self):
        omega = 1.0
        grid = Grid1D(-25.0, 25.0, 2048)
        x = grid.points
        psi0 = SampledWaveFunction(
            grid, dispersing_free_state(0, x, 0.0, omega=omega), t=0.0
        )
        out = propagate(psi0, Potential1D.free(), t_final=1.0, n_steps=2048)
        expected = dispersing_free_state(0, x, 1.0, omega=omega)
        assert l2_diff(out.values, expected, grid.spacing) < 1e-4

    def test_norm_conservation_per_step(self):
        omega = 1.0
        grid = Grid1D(-10.0, 10.0, 1024)
        x = grid.points
        psi0 = SampledWaveFunction(grid, ho_eigenstate(2, x, 0.0, omega), t=0.0)
        n_steps = 200
        out = propagate(psi0, Potential1D.harmonic(omega), t_final=0.5, n_steps=n_steps)
        drift = abs(np.linalg.norm(out.values) - np.linalg.norm(psi0.values))
        assert drift / n_steps < 1e-10

    def test_second_order_in_time(self):
        omega = 1.0
        grid = Grid1D(-10.0, 10.0, 1024)
        x = grid.points
        period = 2 * math.pi / omega
        psi0 = SampledWaveFunction(grid, ho_eigenstate(1, x, 0.0, omega), t=0.0)
        expected = ho_eigenstate(1, x, 0.0, omega) * np.exp(-1j * 1.5 * omega * period)
        errs = []
        for n_steps in (128, 256):
            out = propagate(psi0, Potential1D.harmonic(omega), period, n_steps)
            errs.append(l2_diff(out.values, expected, grid.spacing))
        ratio = errs[0] / errs[1]
        assert 3.0 < ratio < 5.0

    def test_boundary_leak_warning(self):
        # packet with enough momentum to slam into the right wall
        grid = Grid1D(-10.0, 10.0, 512)
        x = grid.points
        packet = np.exp(-((x - 5.0) ** 2)) * np.exp(4j * x)
        packet /= np.sqrt(np.sum(np.abs(packet) ** 2) * grid.spacing)
        psi0 = SampledWaveFunction(grid, packet, t=0.0)
        with pytest.warns(BoundaryLeakWarning):
            propagate(psi0, Potential1D.free(), t_final=2.0, n_steps=400)
