import json
import math
import subprocess
import sys

import numpy as np
import pytest

from quasilines import cli, io
from quasilines.cli import main
from quasilines.errors import ConvergenceError, DomainError
from quasilines.motion import Curve, trace_harmonic_level
from quasilines.conformal import two_slit_map
from quasilines.obstacle import GridSpec, solve_stream_function
from quasilines.strip import harmonic_level_bound


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, (json.loads(out) if code == 0 else None), err


class TestIO:
    def test_csv_roundtrip_is_exact(self, tmp_path):
        rng = np.random.default_rng(1)
        pts = np.cumsum(rng.normal(size=50) + 1j * rng.normal(size=50))
        c = Curve(pts, np.arange(50) / 7)
        back = io.curve_from_csv(io.curve_to_csv(c, tmp_path / "c.csv"))
        assert np.array_equal(back.points, c.points) and np.array_equal(back.params, c.params)

    def test_bad_csv(self, tmp_path):
        p = tmp_path / "bad.csv"
        p.write_text("a,b,c\n1,2,3\n")
        with pytest.raises(DomainError):
            io.curve_from_csv(p)
        p.write_text("x,y,param\n1,2\n")
        with pytest.raises(DomainError):
            io.curve_from_csv(p)

    def test_json_non_finite_and_numpy(self):
        text = io.dumps({"b": np.float64(math.inf), "a": np.arange(2), "z": 1 + 2j, "n": math.nan})
        assert json.loads(text) == {"a": [0, 1], "b": "inf", "n": "nan", "z": [1.0, 2.0]}
        assert text.index('"a"') < text.index('"b"')

    def test_svg(self, tmp_path):
        c = Curve(np.array([0, 1 + 1j, 2]), np.arange(3.0))
        path = io.write_svg(tmp_path / "f.svg", [c], (-1, 3, -1, 2), [np.array([-1, 3]) + 1.5j], [(2, "K=2")])
        text = path.read_text()
        assert "<!-- quasilines-svg 1 -->" in text and text.count("<polyline") == 2 and "K=2" in text

    def test_field_dump(self, tmp_path):
        f = solve_stream_function(GridSpec(-1, 1, 0.25))
        rows = (tmp_path / "f.csv")
        io.field_to_csv(f, rows)
        data = np.genfromtxt(rows, delimiter=",", skip_header=1)
        assert np.array_equal(data[:, 0], f.x) and np.array_equal(data[:, 1:], f.values)


class TestCLI:
    def test_bounds_match_library(self, capsys):
        code, rep, _ = run(capsys, "bounds", "--theorem", "harmonic", "--a", "0.25", "--b", "0.5")
        assert code == 0
        assert rep["K"] == harmonic_level_bound(0.25, 0.5).K
        assert rep["K"] == pytest.approx(1 + math.sqrt(2), rel=1e-15)
        assert rep["theorem"] == "HarmonicLevel"

    def test_level_bound(self, capsys):
        code, rep, _ = run(capsys, "bounds", "--theorem", "level", "--c", "1")
        assert code == 0 and rep["K"] == math.e

    @pytest.mark.parametrize(
        "argv",
        [
            ("bounds", "--theorem", "harmonic", "--a", "0.6", "--b", "0.5"),
            ("bounds", "--theorem", "level"),
            ("bounds", "--theorem", "symmetric", "--b", "1.2"),
            ("harmonic-level", "--b", "1.0"),
            ("obstacle", "--segment", "1.7", "--h", "0.1"),
        ],
    )
    def test_usage_errors(self, capsys, argv):
        code, _, err = run(capsys, *argv)
        assert code == 2 and err.startswith("quasilines")

    def test_numerical_failure_exit(self, capsys, monkeypatch):
        def diverge(*args, **kwargs):
            raise ConvergenceError("stream function residual 1e-3 exceeds tolerance", residual=1e-3)

        monkeypatch.setattr(cli, "solve_stream_function", diverge)
        code, _, err = run(capsys, "obstacle", "--segment", "1.0", "--h", "0.1")
        assert code == 3 and "numerical failure" in err

    def test_unresolved_tip_is_reported(self, capsys):
        code, rep, _ = run(capsys, "obstacle", "--segment", "1.45", "--h", "0.1", "--levels", "1.5")
        assert code == 0 and rep["tip_coefficients"] == []
        assert any("singular correction skipped" in w for w in rep["warnings"])

    def test_argparse_rejects(self):
        with pytest.raises(SystemExit) as info:
            main(["bounds", "--theorem", "level", "--c", "nan"])
        assert info.value.code == 2

    def test_fig2_is_deterministic(self, capsys, tmp_path):
        blobs = []
        for run_dir in ("a", "b"):
            prefix = tmp_path / run_dir / "fig2"
            assert run(capsys, "fig2", "--output", str(prefix), "--format", "csv,json,svg")[0] == 0
            blobs.append({p.name: p.read_bytes() for p in sorted(prefix.parent.iterdir())})
        assert blobs[0] == blobs[1]
        assert len([n for n in blobs[0] if n.endswith(".csv")]) == 19

    def test_certify_from_csv(self, capsys, tmp_path):
        curve = trace_harmonic_level(two_slit_map(), 0.8, n=201)
        path = io.curve_to_csv(curve, tmp_path / "c.csv")
        code, rep, _ = run(capsys, "certify", "--input", str(path), "--K", "3.0777")
        assert code == 0 and rep["C"] >= 1 and rep["report"]["comparison"]["K"] == 3.0777

    def test_obstacle_command(self, capsys, tmp_path):
        prefix = tmp_path / "ob"
        code, rep, _ = run(
            capsys, "obstacle", "--segment", "1.0", "--h", "0.0628", "--levels", "0.5,-0.5", "--output", str(prefix), "--field"
        )
        assert code == 0 and len(rep["streamlines"]) == 2
        assert all(e["K"] > 1 for e in rep["streamlines"])
        assert (tmp_path / "ob_field.csv").exists() and (tmp_path / "ob_1.csv").exists() is False
        assert sorted(rep["files"]) == ["ob_01.csv", "ob_02.csv"]

    def test_module_entry_point(self):
        out = subprocess.run(
            [sys.executable, "-m", "quasilines", "bounds", "--theorem", "symmetric", "--b", "0.75"],
            capture_output=True,
            text=True,
            check=True,
        )
        assert json.loads(out.stdout)["K"] == pytest.approx(math.tan(0.375 * math.pi))
