import math

import numpy as np
import pytest

from formpreserve.fields3d import (
    Frame3D,
    VectorField3,
    check_u1_invariance,
    combined_potential_gauge_check,
    extract_angular_velocity,
    frame_from_config,
    invert_coords_3d,
    map_coords_3d,
    numerical_curl,
    rotation_about_axis,
    sample_points,
    transform_magnetic_field,
    transform_scalar_potential,
    transform_vector_potential,
    transform_wavefunction_3d,
    u1_residual,
)
from formpreserve.transform import free_ho_params, transform_potential, transform_wavefunction
from formpreserve.wavefields import Potential1D, free_gaussian, ho_eigenstate


def gaussian3(x, t, s=1.0):
    x = np.asarray(x, dtype=float)
    return free_gaussian(x[0], t, s=s) * free_gaussian(x[1], t, s=s) * free_gaussian(x[2], t, s=s)


def zero_potential(x, t):
    return 0.0


def free_ho_frame(omega=1.0, v0=0.0):
    p = free_ho_params(v0, 0.0, omega)
    return Frame3D(
        gamma=p.gamma,
        dgamma=p.dgamma,
        ddgamma=p.ddgamma,
        beta=lambda t: np.array([p.beta(t), 0.0, 0.0]),
        dbeta=lambda t: np.array([p.dbeta(t), 0.0, 0.0]),
        ddbeta=lambda t: np.array([p.ddbeta(t), 0.0, 0.0]),
        rotation=lambda t: np.eye(3),
        rotation_dot=lambda t: np.zeros((3, 3)),
        alpha=lambda x, t: p.alpha(t),
        grad_alpha=lambda x, t: np.zeros(3),
        dalpha_dt=lambda x, t: p.dalpha(t),
        window=p.window,
        t_prime=p.t_prime,
    )


class TestCoordinates:
    def test_identity(self):
        frame = Frame3D.identity()
        x = np.array([0.3, -1.0, 2.0])
        xp, tp = map_coords_3d(frame, x, 0.7)
        assert np.allclose(xp, x)
        assert tp == 0.7

    def test_rotation_is_isometric(self):
        frame = Frame3D.rotating([0.0, 0.0, 1.0], 0.9)
        x = np.array([1.0, 2.0, -0.5])
        for t in (0.0, 0.4, 1.3):
            xp, _ = map_coords_3d(frame, x, t)
            assert np.linalg.norm(xp) == pytest.approx(np.linalg.norm(x), abs=1e-13)

    def test_scalar_case_reduces_to_1d(self):
        omega = 1.0
        frame = free_ho_frame(omega)
        params = free_ho_params(0.0, 0.0, omega)
        from formpreserve.transform import map_coords

        for t in (0.0, 0.4, 1.1):
            xp3, tp3 = map_coords_3d(frame, np.array([0.8, 0.0, 0.0]), t)
            xp1, tp1 = map_coords(params, 0.8, t)
            assert xp3[0] == pytest.approx(xp1, abs=1e-13)
            assert tp3 == pytest.approx(tp1, abs=1e-12)

    def test_round_trip(self):
        frame = Frame3D.rotating([1.0, 1.0, 0.0], 0.6)
        x = np.array([0.2, -0.4, 1.1])
        xp, tp = map_coords_3d(frame, x, 0.8)
        back, t = invert_coords_3d(frame, xp, tp)
        assert np.allclose(back, x, atol=1e-10)
        assert t == pytest.approx(0.8, abs=1e-10)


class TestAngularVelocity:
    def test_z_rotation(self):
        omega = 1.7
        got = extract_angular_velocity(lambda t: rotation_about_axis([0, 0, 1], omega * t), 0.8)
        assert np.allclose(got.omega, [0.0, 0.0, omega], atol=1e-8)
        assert got.frame == "body"

    def test_constant_rotation(self):
        fixed = rotation_about_axis([1, 2, 3], 0.7)
        got = extract_angular_velocity(lambda t: fixed, 1.0)
        assert np.allclose(got.omega, 0.0, atol=1e-9)

    def test_composed_rotation_at_origin_time(self):
        a, b = 0.9, 0.4
        rot = lambda t: rotation_about_axis([0, 0, 1], a * t) @ rotation_about_axis([1, 0, 0], b * t)
        got = extract_angular_velocity(rot, 0.0)
        assert np.allclose(got.omega, [b, 0.0, a], atol=1e-8)

    def test_defining_identity(self):
        rot = lambda t: rotation_about_axis([0.3, -1.0, 0.8], 1.1 * t)
        t = 0.6
        av = extract_angular_velocity(rot, t)
        h = 1e-6
        rdot = (rot(t - 2 * h) - 8 * rot(t - h) + 8 * rot(t + h) - rot(t + 2 * h)) / (12 * h)
        r = rot(t)
        for u in np.eye(3):
            assert np.allclose(rdot @ u, r @ np.cross(av.omega, u), atol=1e-8)

    def test_rejects_non_orthogonal(self):
        with pytest.raises(ValueError):
            extract_angular_velocity(lambda t: np.eye(3) * (1.0 + t), 0.5)

    def test_skew_symmetry_property(self):
        rot = lambda t: rotation_about_axis([0, 1, 1], 0.8 * t) @ rotation_about_axis([1, 0, 0], 0.3 * t)
        for t in np.linspace(-1.0, 1.0, 7):
            h = 1e-6
            rdot = (rot(t - 2 * h) - 8 * rot(t - h) + 8 * rot(t + h) - rot(t + 2 * h)) / (12 * h)
            s = rot(t).T @ rdot
            assert np.max(np.abs(s + s.T)) < 1e-8


class TestWavefunction3D:
    def test_identity_frame(self):
        frame = Frame3D.identity()
        x = np.array([0.5, -0.2, 0.9])
        got = transform_wavefunction_3d(frame, gaussian3, 3, x, 0.3)
        assert got == pytest.approx(gaussian3(x, 0.3), abs=1e-13)

    def test_reduces_to_1d_transform(self):
        omega = 1.0
        frame = free_ho_frame(omega)
        params = free_ho_params(0.0, 0.0, omega)
        psi1 = lambda x, t: ho_eigenstate(0, x, t, omega)
        psi3 = lambda x, t: complex(psi1(x[0], t))
        for tp in (0.0, 0.5, 1.2):
            for xp in (0.0, 0.7, -1.1):
                got = transform_wavefunction_3d(frame, psi3, 1, np.array([xp, 0.0, 0.0]), tp)
                want = transform_wavefunction(params, psi1, xp, tp)
                assert abs(got - want) < 1e-12

    def test_norm_is_preserved_under_scaling(self):
        # gamma = 2 constant, product-Gaussian seed of unit norm.  The line
        # profile psi'(x, 0, 0) = gamma^(3/2) f(gamma x) f(0)^2 integrates to
        # |psi'(0)|^(4/3) exactly when the prefactor carries the full
        # gamma^(D/2): that is the change-of-variables norm bookkeeping.
        frame = frame_from_config({"gamma": {"mode": "constant", "value": 2.0}})
        xs = np.linspace(-12.0, 12.0, 801)
        tp = 0.1
        vals = np.array(
            [
                transform_wavefunction_3d(frame, gaussian3, 3, np.array([x, 0.0, 0.0]), tp)
                for x in xs
            ]
        )
        centre = transform_wavefunction_3d(frame, gaussian3, 3, np.zeros(3), tp)
        assert np.trapezoid(np.abs(vals) ** 2, xs) == pytest.approx(
            abs(centre) ** (4.0 / 3.0), rel=1e-6
        )


class TestVectorPotential:
    def test_identity_frame(self):
        frame = Frame3D.identity()
        a = VectorField3(lambda x, t: np.array([x[1], -x[0], 0.3]))
        x = np.array([0.4, 0.8, -0.3])
        assert np.allclose(transform_vector_potential(frame, a, 1.0, x, 0.2), a(x, 0.2))

    def test_rotating_frame_effective_potential(self):
        omega = 0.8
        frame = Frame3D.rotating([0, 0, 1], omega)
        a = VectorField3.zero()
        t = 0.5
        x = np.array([0.7, -0.2, 0.4])
        xp, _ = map_coords_3d(frame, x, t)
        got = transform_vector_potential(frame, a, 1.0, x, t)
        omega_space = frame.rotation(t) @ frame.omega(t)
        assert np.allclose(got, -np.cross(omega_space, xp), atol=1e-12)

    def test_gauge_shift_moves_gradient(self):
        frame = Frame3D.rotating([0, 0, 1], 0.6)
        a = VectorField3(lambda x, t: np.array([0.1 * x[1], 0.0, 0.2]))
        lam = lambda x, t: 0.3 * x[0] + 0.1 * x[1] ** 2
        grad_lam = lambda x, t: np.array([0.3, 0.2 * x[1], 0.0])
        shifted = Frame3D(
            gamma=frame.gamma, dgamma=frame.dgamma, ddgamma=frame.ddgamma,
            beta=frame.beta, dbeta=frame.dbeta, ddbeta=frame.ddbeta,
            rotation=frame.rotation, rotation_dot=frame.rotation_dot,
            alpha=lam, grad_alpha=grad_lam, dalpha_dt=lambda x, t: 0.0,
            t_prime=frame.t_prime, skip_checks=True,
        )
        t = 0.4
        x = np.array([0.5, -0.7, 0.2])
        base = transform_vector_potential(frame, a, 1.0, x, t)
        moved = transform_vector_potential(shifted, a, 1.0, x, t)
        # the change is -grad' Lambda, evaluated by finite differences in x'
        xp, tp = map_coords_3d(frame, x, t)
        lam_primed = lambda x_prime, tt: lam(invert_coords_3d(frame, x_prime, tp)[0], t)
        h = 1e-5
        grad_primed = np.zeros(3)
        for ax in range(3):
            e = np.zeros(3)
            e[ax] = h
            grad_primed[ax] = (lam_primed(xp + e, tp) - lam_primed(xp - e, tp)) / (2 * h)
        assert np.allclose(moved - base, -grad_primed, atol=1e-9)


class TestMagneticField:
    def test_identity_frame_uniform_field(self):
        frame = Frame3D.identity()
        b = VectorField3(lambda x, t: np.array([0.0, 0.0, 1.3]))
        bp = transform_magnetic_field(frame, b, 1.0, 0.2)
        assert np.allclose(bp(np.array([0.3, 0.1, -0.5])), [0.0, 0.0, 1.3])

    def test_rotation_mimics_magnetic_field(self):
        omega = 0.9
        mass = 1.0
        frame = Frame3D.rotating([0, 0, 1], omega)
        t = 0.7
        bp = transform_magnetic_field(frame, VectorField3(lambda x, t: np.zeros(3)), mass, t)
        assert np.allclose(bp(np.array([0.4, 0.2, 0.1])), [0.0, 0.0, -2.0 * mass * omega])
        # cross-check against the numerical curl of A'
        a = VectorField3.zero()
        a_prime = lambda x_prime, tt: transform_vector_potential(
            frame, a, mass, invert_coords_3d(frame, x_prime, tt)[0], t
        )
        curl = numerical_curl(a_prime, np.array([0.4, 0.2, 0.1]), t)
        assert np.allclose(curl, [0.0, 0.0, -2.0 * mass * omega], atol=1e-6)

    def test_constant_scaling(self):
        frame = frame_from_config({"gamma": {"mode": "constant", "value": 2.0}})
        b0 = 0.7
        b = VectorField3(lambda x, t: np.array([0.0, 0.0, b0]))
        bp = transform_magnetic_field(frame, b, 1.0, 0.0)
        assert np.allclose(bp(np.array([0.2, -0.1, 0.4])), [0.0, 0.0, 4.0 * b0])
        a = VectorField3.uniform_b([0.0, 0.0, b0])
        a_prime = lambda x_prime, tt: transform_vector_potential(
            frame, a, 1.0, invert_coords_3d(frame, x_prime, tt)[0], 0.0
        )
        curl = numerical_curl(a_prime, np.array([0.2, -0.1, 0.4]), 0.0)
        assert np.allclose(curl, [0.0, 0.0, 4.0 * b0], atol=1e-6)


class TestScalarPotential:
    def test_identity(self):
        frame = Frame3D.identity()
        v = lambda x, t: 0.5 * float(x @ x)
        x = np.array([0.3, 0.4, -0.2])
        got = transform_scalar_potential(frame, v, VectorField3.zero(), 1.0, 1.0, x, 0.3)
        assert got == pytest.approx(v(x, 0.3), abs=1e-13)

    def test_reduces_to_1d_law(self):
        omega = 1.0
        frame = free_ho_frame(omega)
        params = free_ho_params(0.0, 0.0, omega)
        v1 = Potential1D.harmonic(omega)
        v3 = lambda x, t: 0.5 * omega**2 * x[0] ** 2
        for t in (0.0, 0.4, 1.0):
            for x1 in (0.0, 0.6, -1.2):
                got = transform_scalar_potential(
                    frame, v3, VectorField3.zero(), 1.0, 1.0, np.array([x1, 0.0, 0.0]), t
                )
                want = transform_potential(params, v1, x1, t)
                assert got == pytest.approx(want, abs=1e-10)

    def test_pure_rotation_centrifugal(self):
        omega = 1.1
        mass = 1.0
        frame = Frame3D.rotating([0, 0, 1], omega)
        x = np.array([0.8, -0.3, 0.5])
        got = transform_scalar_potential(
            frame, zero_potential, VectorField3.zero(), mass, 1.0, x, 0.6
        )
        w = np.array([0.0, 0.0, omega])
        expected = -0.5 * mass * float(np.cross(w, x) @ np.cross(w, x))
        assert got == pytest.approx(expected, abs=1e-12)


class TestGaugeInvariance:
    def test_constant_shift(self):
        pts = sample_points(20, extent=1.5)
        d = check_u1_invariance(
            zero_potential,
            VectorField3.zero(),
            lambda x, t: gaussian3(x, t),
            lam=lambda x, t: 0.7,
            grad_lam=lambda x, t: np.zeros(3),
            dlam_dt=lambda x, t: 0.0,
            points=pts,
            t=0.2,
            h=0.05,
            dt=1e-3,
        )
        assert d < 1e-12

    def test_linear_boost(self):
        pts = sample_points(30, extent=1.5)
        c = 0.8
        d = check_u1_invariance(
            zero_potential,
            VectorField3.zero(),
            lambda x, t: gaussian3(x, t),
            lam=lambda x, t: c * x[0],
            grad_lam=lambda x, t: np.array([c, 0.0, 0.0]),
            dlam_dt=lambda x, t: 0.0,
            points=pts,
            t=0.3,
        )
        assert d < 1e-6

    def test_quadratic_time_dependent(self):
        pts = sample_points(30, extent=1.2)
        d = check_u1_invariance(
            zero_potential,
            VectorField3.zero(),
            lambda x, t: gaussian3(x, t),
            lam=lambda x, t: 0.2 * t * float(x @ x),
            grad_lam=lambda x, t: 0.4 * t * np.asarray(x, dtype=float),
            dlam_dt=lambda x, t: 0.2 * float(x @ x),
            points=pts,
            t=0.4,
        )
        assert d < 1e-6


class TestCombinedPotentialCheck:
    def test_identity_frame(self):
        pts = sample_points(20, extent=1.5)
        frame = Frame3D.identity()
        a = VectorField3(lambda x, t: np.array([0.2 * x[1], 0.1, 0.0]))
        v = lambda x, t: 0.3 * float(x @ x)
        assert combined_potential_gauge_check(frame, v, a, pts, t=0.3) < 1e-12

    def test_oscillating_translation_frame(self):
        pts = sample_points(50, extent=1.5, seed=9)
        frame = frame_from_config(
            {"beta": {"trig": [
                {"amp": 0.8, "omega": 1.0, "phase": 0.0},
                {"amp": 0.0, "omega": 1.0, "phase": 0.0},
                {"amp": 0.0, "omega": 1.0, "phase": 0.0},
            ]}}
        )
        v = lambda x, t: 0.5 * float(x @ x)
        assert combined_potential_gauge_check(frame, v, VectorField3.zero(), pts, t=0.7) < 1e-10

    def test_rotating_frame_with_uniform_field(self):
        pts = sample_points(40, extent=1.2, seed=3)
        frame = Frame3D.rotating([0, 0, 1], 0.7)
        a = VectorField3.uniform_b([0.0, 0.0, 0.9])
        assert combined_potential_gauge_check(frame, zero_potential, a, pts, t=0.5) < 1e-8


class TestDivergenceBookkeeping:
    def test_divergence_identity(self):
        # grad'.A'/gamma^2 = grad.A - laplacian(alpha)
        frame = Frame3D.rotating([0, 0, 1], 0.8)
        alpha = lambda x, t: 0.2 * x[0] ** 2 + 0.1 * x[1] * x[2]
        grad_alpha = lambda x, t: np.array([0.4 * x[0], 0.1 * x[2], 0.1 * x[1]])
        lap_alpha = 0.4
        frame = Frame3D(
            gamma=frame.gamma, dgamma=frame.dgamma, ddgamma=frame.ddgamma,
            beta=frame.beta, dbeta=frame.dbeta, ddbeta=frame.ddbeta,
            rotation=frame.rotation, rotation_dot=frame.rotation_dot,
            alpha=alpha, grad_alpha=grad_alpha, dalpha_dt=lambda x, t: 0.0,
            t_prime=frame.t_prime, skip_checks=True,
        )
        a = VectorField3(lambda x, t: np.array([0.3 * x[0], x[2] ** 2, 0.2 * x[1] * x[0]]))
        div_a = lambda x: 0.3
        t = 0.4
        g = frame.gamma(t)
        for x in sample_points(12, extent=1.0, seed=2):
            a_prime = lambda x_prime, tt: transform_vector_potential(
                frame, a, 1.0, invert_coords_3d(frame, x_prime, tt)[0], t
            )
            xp, tp = map_coords_3d(frame, x, t)
            h = 1e-4
            div_primed = 0.0
            for ax in range(3):
                e = np.zeros(3)
                e[ax] = h
                div_primed += (a_prime(xp + e, tp)[ax] - a_prime(xp - e, tp)[ax]) / (2 * h)
            assert abs(div_primed / g**2 - (div_a(x) - lap_alpha)) < 1e-5


class TestFullFormPreservation:
    @staticmethod
    def primed_fields(frame, mass=1.0):
        def psi_prime(x_prime, t_prime):
            return transform_wavefunction_3d(frame, gaussian3, 3, x_prime, t_prime, mass=mass)

        def a_prime(x_prime, t_prime):
            x, t = invert_coords_3d(frame, x_prime, t_prime)
            return transform_vector_potential(frame, VectorField3.zero(), mass, x, t)

        def v_prime(x_prime, t_prime):
            x, t = invert_coords_3d(frame, x_prime, t_prime)
            return transform_scalar_potential(
                frame, zero_potential, VectorField3.zero(), mass, 1.0, x, t
            )

        return psi_prime, a_prime, v_prime

    def test_rotating_frame_headline(self):
        frame = Frame3D.rotating([0, 0, 1], 0.7)
        psi_p, a_p, v_p = self.primed_fields(frame)
        t_prime = 0.3
        a_fixed = lambda x, t: a_p(x, t)
        v_fixed = lambda x, t: v_p(x, t)
        worst = 0.0
        for x in sample_points(200, extent=1.8):
            r = u1_residual(psi_p, v_fixed, a_fixed, x, t_prime)
            worst = max(worst, abs(r))
        assert worst < 1e-4

    def test_rotation_with_translation(self):
        base = Frame3D.rotating([0, 0, 1], 0.5)
        frame = Frame3D(
            gamma=base.gamma, dgamma=base.dgamma, ddgamma=base.ddgamma,
            beta=lambda t: np.array([0.3 * math.sin(t), 0.0, 0.0]),
            dbeta=lambda t: np.array([0.3 * math.cos(t), 0.0, 0.0]),
            ddbeta=lambda t: np.array([-0.3 * math.sin(t), 0.0, 0.0]),
            rotation=base.rotation, rotation_dot=base.rotation_dot,
            t_prime=base.t_prime,
        )
        psi_p, a_p, v_p = self.primed_fields(frame)
        worst = 0.0
        for x in sample_points(60, extent=1.5, seed=8):
            r = u1_residual(psi_p, v_p, a_p, x, 0.4)
            worst = max(worst, abs(r))
        assert worst < 1e-4


class TestFrameConfig:
    def test_round_trip_json(self):
        import json

        cfg = json.loads(
            '{"rotation": {"axis": [0, 0, 1], "rate": 0.5},'
            ' "gamma": {"mode": "constant", "value": 1.0},'
            ' "beta": {"poly": [[0.0, 0.1], [0.0], [0.0]]}}'
        )
        frame = frame_from_config(cfg)
        assert np.allclose(frame.beta(2.0), [0.2, 0.0, 0.0])
        assert np.allclose(frame.omega(0.3), [0.0, 0.0, 0.5], atol=1e-9)

    def test_rejects_unknown_gamma(self):
        with pytest.raises(ValueError):
            frame_from_config({"gamma": {"mode": "sinh"}})
