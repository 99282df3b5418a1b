"""Acceptance gate: every primary criterion at its stated tolerance.

Each test prints one PASS/FAIL line so a bare ``pytest -s tests/test_acceptance.py``
reads as a checklist.  Tolerances and grids live in formpreserve.verify so the
CLI ``verify`` command runs the identical checks.
"""

import time

import pytest

from formpreserve import verify


def _announce(criterion: str, reports):
    reports = reports if isinstance(reports, (list, tuple)) else [reports]
    ok = all(r.passed for r in reports)
    detail = "; ".join(f"{r.name}={r.metric:.3e}<= {r.tolerance:.1e}" for r in reports)
    print(f"{'PASS' if ok else 'FAIL'} | {criterion} | {detail}")
    return ok


class TestAcceptance:
    def test_criterion_1_airy_beam_validity(self):
        started = time.perf_counter()
        rep = verify.check_airy_beam_residual()
        elapsed = time.perf_counter() - started
        assert _announce("1 airy-beam validity", rep)
        assert rep.metric < 1e-5
        assert elapsed < 10.0, f"criterion 1 runtime {elapsed:.1f}s exceeds 10s"

    def test_criterion_2_senitzky_validity(self):
        reps = [verify.check_senitzky_residual(), verify.check_senitzky_modulus_rigidity()]
        assert _announce("2 coherent-state validity + rigidity", reps)
        assert reps[0].metric < 1e-5
        assert reps[1].metric < 1e-10

    def test_criterion_3_transformation_chain(self):
        started = time.perf_counter()
        reps = [
            verify.check_transform_chain_berry_balazs(),
            verify.check_transform_chain_senitzky(),
            verify.check_transform_chain_free_ho(),
        ]
        elapsed = time.perf_counter() - started
        assert _announce("3 transform vs propagation chain", reps)
        assert all(r.metric < 1e-4 for r in reps)
        assert elapsed < 60.0, f"criterion 3 runtime {elapsed:.1f}s exceeds 60s"

    def test_criterion_4_dispersal_widths(self):
        rep = verify.check_dispersal_widths()
        assert _announce("4 free dispersal widths", rep)
        assert rep.metric < 1e-4

    def test_criterion_5_wigner_transformation_law(self):
        started = time.perf_counter()
        reps = [verify.check_wigner_law_senitzky(), verify.check_wigner_law_free_ho()]
        elapsed = time.perf_counter() - started
        assert _announce("5 phase-space transformation law", reps)
        assert all(r.metric < 1e-4 for r in reps)
        assert elapsed < 60.0, f"criterion 5 runtime {elapsed:.1f}s exceeds 60s"

    def test_criterion_6_figure_geometry(self):
        reps = [
            verify.check_figure1_parabolas(),
            verify.check_figure2_circles(),
            verify.check_figure3_ellipses(),
        ]
        assert _announce("6 level-curve geometry (parabolas/circles/ellipses)", reps)
        assert reps[0].metric < 2.0  # Hausdorff in cells
        assert reps[1].metric < 1e-2
        assert reps[2].metric < 1e-2

    def test_criterion_7_moyal_exactness(self):
        reps = [
            verify.check_star_commutator(),
            verify.check_quadratic_collapse(),
            verify.check_nonlinear_counterexample(),
        ]
        assert _announce("7 star/sine bracket exactness + counterexample", reps)
        meta = reps[2].metadata
        assert (meta["p12_equal"], meta["identified_p_equal"], meta["identified_m_equal"]) == (
            False,
            True,
            False,
        )

    def test_criterion_8_moyal_potential_law(self):
        rep = verify.check_moyal_potential_law()
        assert _announce("8 phase-space potential law agreement", rep)
        assert rep.metric < 1e-12

    def test_criterion_9_rotating_frame_physics(self):
        reps = [
            verify.check_magnetic_field_curl(),
            verify.check_centrifugal_potential(),
            verify.check_u1_gauge_invariance(),
            verify.check_full_3d_form_preservation(),
        ]
        assert _announce("9 rotating-frame gauge physics", reps)
        assert reps[0].metric < 1e-6
        assert reps[1].metric < 1e-12
        assert reps[2].metric < 1e-6
        assert reps[3].metric < 1e-4

    def test_criterion_10_stationary_flow(self):
        rep = verify.check_stationary_flow()
        assert _announce("10 stationary phase-space flow", rep)
        assert rep.metric < 1e-5
