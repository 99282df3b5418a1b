import csv
import json
import math
from collections import defaultdict

import numpy as np
import pytest

from formpreserve.cli import main
from formpreserve.contours import fit_centered_conic, hausdorff_distance
from formpreserve.numerics import Grid1D
from formpreserve.wavefields import airy_beam, dispersing_free_state, ho_eigenstate


def read_csv(path):
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        rows = [[float(v) for v in row] for row in reader]
    return header, np.asarray(rows)


def curves_by_id(rows):
    grouped = defaultdict(list)
    for cid, _vid, x, p in rows:
        grouped[int(cid)].append((x, p))
    return {k: np.asarray(v) for k, v in grouped.items()}


class TestGenerate:
    def test_senitzky_at_rest_density_is_static(self, tmp_path):
        out = tmp_path / "sen.csv"
        rc = main(
            [
                "generate", "--kind", "senitzky", "--param", "a=0.0",
                "--times", "0.0,0.9", "--grid-n", "128", "--out", str(out),
            ]
        )
        assert rc == 0
        header, rows = read_csv(out)
        assert header == ["x", "t", "re", "im", "abs2"]
        t_vals = sorted(set(rows[:, 1]))
        dens = {t: rows[rows[:, 1] == t][:, 4] for t in t_vals}
        assert np.max(np.abs(dens[t_vals[0]] - dens[t_vals[1]])) < 1e-12

    def test_ellipse_family_coefficients(self, tmp_path):
        out = tmp_path / "fig3.csv"
        rc = main(["generate", "--kind", "ellipse_family", "--times", "0,1,2", "--out", str(out)])
        assert rc == 0
        _, rows = read_csv(out)
        grouped = curves_by_id(rows)
        for k, wt in enumerate((0.0, 1.0, 2.0)):
            a, b, c = fit_centered_conic(grouped[k * 100])
            assert a == pytest.approx(1.0, rel=1e-2)
            assert b == pytest.approx(-2.0 * wt, rel=1e-2, abs=1e-2)
            assert c == pytest.approx(1.0 + wt**2, rel=1e-2)

    def test_berry_balazs_level_curves_translate(self, tmp_path):
        out = tmp_path / "fig1.csv"
        times = (0.0, 0.5, 1.0)
        rc = main(
            ["generate", "--kind", "level_curves", "--param", "preset=berry_balazs",
             "--times", ",".join(str(t) for t in times), "--out", str(out)]
        )
        assert rc == 0
        _, rows = read_csv(out)
        grouped = curves_by_id(rows)
        pooled = defaultdict(list)
        for cid, pts in grouped.items():
            pooled[cid // 100].append(pts)
        pooled = {k: np.vstack(v) for k, v in pooled.items()}
        cell = 40.0 / 1023  # generation grid spacing
        for k, t in enumerate(times[1:], start=1):
            shift = np.array([t**2 / 4.0, t / 2.0])
            a = pooled[0] + shift
            b = pooled[k]
            a = a[np.abs(a[:, 1]) <= 1.8]
            b = b[np.abs(b[:, 1]) <= 1.8]
            assert hausdorff_distance(a, b) < 2 * cell

    def test_markers_written_alongside(self, tmp_path):
        out = tmp_path / "fig2.csv"
        rc = main(
            ["generate", "--kind", "level_curves", "--param", "preset=senitzky",
             "--times", "0.0,0.785", "--out", str(out)]
        )
        assert rc == 0
        _, curves = read_csv(out)
        _, markers = read_csv(str(out) + ".markers.csv")
        ids = set(int(c) for c in curves[:, 0])
        assert -1 in ids  # dashed guide circle
        assert len(markers) == 8  # four tracked points per time slice

    def test_deterministic_output(self, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        argv = ["generate", "--kind", "dispersing", "--times", "0.0,1.0", "--grid-n", "128"]
        assert main(argv + ["--out", str(a)]) == 0
        assert main(argv + ["--out", str(b)]) == 0
        assert a.read_bytes() == b.read_bytes()

    def test_json_format(self, tmp_path):
        out = tmp_path / "wave.json"
        rc = main(
            ["generate", "--kind", "airy_beam", "--grid-n", "64", "--format", "json",
             "--out", str(out)]
        )
        assert rc == 0
        data = json.loads(out.read_text())
        assert data["columns"] == ["x", "t", "re", "im", "abs2"]
        assert len(data["rows"]) == 64

    def test_unknown_param_rejected(self, tmp_path):
        rc = main(
            ["generate", "--kind", "airy_beam", "--param", "bogus=1",
             "--out", str(tmp_path / "x.csv")]
        )
        assert rc == 2

    def test_invalid_physical_param_rejected(self, tmp_path):
        rc = main(
            ["generate", "--kind", "senitzky", "--param", "omega=-2.0",
             "--out", str(tmp_path / "x.csv")]
        )
        assert rc == 2


class TestTransformCommand:
    def test_identity_round_trip_bit_exact(self, tmp_path):
        out = tmp_path / "id.csv"
        rc = main(
            ["transform", "--preset", "identity", "--state", "ho0",
             "--grid-n", "128", "--times", "0.4", "--out", str(out)]
        )
        assert rc == 0
        _, rows = read_csv(out)
        grid = Grid1D(-10.0, 10.0, 128)
        expected = ho_eigenstate(0, grid.points, 0.4, 1.0)
        assert np.array_equal(rows[:, 2], expected.real)
        assert np.array_equal(rows[:, 3], expected.imag)

    def test_free_ho_preset_matches_closed_form(self, tmp_path):
        out = tmp_path / "fho.csv"
        rc = main(
            ["transform", "--preset", "free_ho", "--state", "ho0",
             "--grid-n", "128", "--times", "0.45", "--param", "v0=0.2", "--out", str(out)]
        )
        assert rc == 0
        _, rows = read_csv(out)
        got = rows[:, 2] + 1j * rows[:, 3]
        expected = dispersing_free_state(0, rows[:, 0], rows[0, 1], v0=0.2, omega=1.0)
        assert np.max(np.abs(got - expected)) < 1e-8
        assert np.max(np.abs(rows[:, 5])) < 1e-10  # V' = 0

    def test_berry_balazs_preset_emits_beam(self, tmp_path):
        out = tmp_path / "bb.csv"
        rc = main(
            ["transform", "--preset", "berry_balazs", "--state", "airy_eigenstate",
             "--grid-n", "128", "--times", "0.8", "--out", str(out)]
        )
        assert rc == 0
        _, rows = read_csv(out)
        got = rows[:, 2] + 1j * rows[:, 3]
        expected = airy_beam(rows[:, 0], 0.8, B=1.0)
        assert np.max(np.abs(got - expected)) < 1e-8

    def test_unknown_preset(self, tmp_path):
        rc = main(
            ["transform", "--preset", "nope", "--state", "ho0", "--out", str(tmp_path / "x.csv")]
        )
        assert rc == 2


class TestVerifyCommand:
    def test_moyal_suite_passes_and_reports(self, capsys):
        rc = main(["verify", "--suite", "moyal"])
        captured = capsys.readouterr()
        assert rc == 0
        reports = [json.loads(line) for line in captured.out.strip().splitlines()]
        by_name = {r["name"]: r for r in reports}
        nl = by_name["nonlinear_map_counterexample"]["metadata"]
        assert (nl["p12_equal"], nl["identified_p_equal"], nl["identified_m_equal"]) == (
            False,
            True,
            False,
        )
        assert all(r["passed"] for r in reports)
        assert "checks passed" in captured.err

    def test_unknown_suite_usage_error(self):
        with pytest.raises(SystemExit) as exc:
            main(["verify", "--suite", "nonsense"])
        assert exc.value.code == 2

    def test_report_file_written(self, tmp_path, capsys):
        out = tmp_path / "reports.jsonl"
        rc = main(["verify", "--suite", "moyal", "--out", str(out)])
        capsys.readouterr()
        assert rc == 0
        lines = out.read_text().strip().splitlines()
        assert all(json.loads(line)["passed"] for line in lines)
