"""Acceptance criteria, one test each, at their stated tolerances.

Each test prints a PASS/FAIL line (also collected into the terminal summary).
"""
import functools
import math
import time

import numpy as np
import pytest

from conftest import ACCEPTANCE_LINES
from oracles import HALF_WIDTH, segment_stream, sec_integral
from quasilines import cli
from quasilines.certify import bounded_turning
from quasilines.conformal import identity, strip_to_disk, two_slit_map
from quasilines.figures import fig2, fig3
from quasilines.motion import StripMotion, trace_hyperbolic_level, verify_level_distance, verify_motion_axioms
from quasilines.obstacle import (
    GridSpec,
    VerticalSegment,
    annulus_modulus,
    find_matching_slit,
    ring_modulus,
    slit_spec,
    solve_stream_function,
)
from quasilines.strip import distance_for_offset, harmonic_level_bound, offset_for_distance, symmetric_level_bound


def criterion(name):
    def wrap(check):
        @functools.wraps(check)
        def run(*args, **kwargs):
            start = time.perf_counter()
            try:
                detail = check(*args, **kwargs)
            except BaseException as exc:
                line = f"FAIL  {name}  ({type(exc).__name__}: {str(exc).splitlines()[0] if str(exc) else ''})"
                print(line)
                ACCEPTANCE_LINES.append(line)
                raise
            line = f"PASS  {name}  [{time.perf_counter() - start:.2f} s] {detail}"
            print(line)
            ACCEPTANCE_LINES.append(line)

        return run

    return wrap


def signed_sec_integral(t):
    return math.copysign(sec_integral(t), t)


@criterion("gudermannian suite")
def test_gudermannian_suite():
    start = time.perf_counter()
    ts = np.linspace(-HALF_WIDTH + 1e-3, HALF_WIDTH - 1e-3, 100)
    err_q = max(abs(float(distance_for_offset(t)) - sec_integral(t)) for t in ts)
    cs = np.linspace(0, 20, 201)
    err_rt = max(abs(float(distance_for_offset(offset_for_distance(c))) - c) for c in cs)
    elapsed = time.perf_counter() - start
    assert err_q <= 1e-9
    assert err_rt <= 1e-10
    assert elapsed < 1.0
    return f"quadrature err {err_q:.1e}, roundtrip err {err_rt:.1e}"


@criterion("harmonic level bound = exp(quadrature distance)")
def test_harmonic_formula():
    grid = np.linspace(0.03, 0.97, 10)
    worst = 0.0
    for a in grid:
        for b in grid:
            lo, hi = min(a, b), max(a, b)
            K = harmonic_level_bound(lo, hi).K
            ya, yb = math.pi * (2 * lo - 1) / 2, math.pi * (2 * hi - 1) / 2
            rho = signed_sec_integral(yb) - signed_sec_integral(ya)
            ratio = math.tan(hi * math.pi / 2) / math.tan(lo * math.pi / 2)
            worst = max(worst, abs(K - math.exp(rho)) / K, abs(K - ratio) / K)
    assert worst <= 1e-9
    return f"max rel err {worst:.1e} over 100 pairs"


@criterion("small-gap expansion K ~ 1 + pi eps")
def test_small_gap_expansion():
    rows = []
    for eps in (0.05, 0.02, 0.01, 0.005):
        K = harmonic_level_bound(0.5, 0.5 + eps).K
        rows.append(abs(K - (1 + math.pi * eps)) / eps**2)
    assert max(rows) <= 10
    return "remainder/eps^2 = " + ", ".join(f"{r:.3f}" for r in rows)


@criterion("symmetric bound = exp(distance_for_offset)")
def test_cross_formula():
    worst = 0.0
    for b in np.linspace(0.5, 0.98, 50):
        K = symmetric_level_bound(b).K
        worst = max(worst, abs(K - math.exp(float(distance_for_offset(math.pi * (2 * b - 1) / 2)))) / K)
    assert worst <= 1e-12
    return f"max rel err {worst:.1e}"


@criterion("level-line distance verification (disk)")
def test_level_line_distance():
    start = time.perf_counter()
    psi = strip_to_disk()
    errs = []
    for c in (0.5, 1.0, 2.0):
        curve = trace_hyperbolic_level(psi, c, n=601)
        rep = verify_level_distance(psi, curve, c)
        assert len(curve) == 601
        errs.append(rep.max_error)
    elapsed = time.perf_counter() - start
    assert max(errs) <= 1e-6
    assert elapsed < 5.0
    return "max err " + ", ".join(f"{e:.1e}" for e in errs)


@criterion("holomorphic motion axioms")
def test_motion_axioms():
    lambdas = (np.linspace(-1, 1, 5)[:, None] + 1j * np.linspace(-1.2, 1.2, 5)[None, :]).ravel()
    details = []
    for make in (identity, strip_to_disk, two_slit_map):
        psi = make()
        points = psi(np.linspace(-6, 6, 1000) + 0j)
        rep = verify_motion_axioms(StripMotion(psi), lambdas, points, identity_tol=0.0, holomorphy_tol=1e-5)
        assert rep.identity.worst == 0, make.__name__
        assert rep.passed, (make.__name__, rep)
        details.append(f"{make.__name__}: CR {rep.holomorphic.worst:.1e}")
    return "; ".join(details)


@criterion("two-slit level lines and bounds")
def test_fig2():
    data = fig2()
    assert len(data.curves) == 19
    worst = max(e["hyperbola_residual"] for e in data.annotations)
    assert worst <= 1e-9
    for e in data.annotations:
        k = e["k"]
        if k >= 10:
            assert e["K"] == pytest.approx(math.tan(k * math.pi / 40), rel=1e-12)
        if k <= 10:
            assert "cot" in e and "coth" in e
    return f"hyperbola residual {worst:.1e}; tan(k pi/40) for k >= 10; cot and coth reported for k <= 10"


PROBES = [(1.0, 0.5), (-2.0, 1.0), (0.5, 1.2), (0.25, 0.75), (1.5, -0.3), (0.0, 1.3)]


@criterion("obstacle pipeline at h = pi/200")
def test_obstacle_pipeline():
    start = time.perf_counter()
    h = math.pi / 200
    data = fig3(h)
    f = data.field
    v = f.values
    sym = max(np.max(np.abs(v + v[:, ::-1])), np.max(np.abs(v - v[::-1, :])))
    assert sym <= 1e-8
    inner = v[1:-1, 1:-1]
    assert np.all(np.abs(inner) < HALF_WIDTH)
    curves = data.curves
    assert len(curves) == 18
    gap = min(
        np.min(np.abs(a.points[:, None] - b.points[None, :])) for i, a in enumerate(curves) for b in curves[i + 1 :]
    )
    assert gap > 0
    for c in curves:
        assert not np.any((np.abs(c.x) < 1e-12) & (np.abs(c.y) <= 1.0))

    fine = solve_stream_function(GridSpec(h=h / 2, obstacles=(VerticalSegment(1.0),)))
    probes = [(round(a / h) * h, round(b / h) * h) for a, b in PROBES]
    exact = segment_stream(np.array([complex(*p) for p in probes]))
    e0 = np.max(np.abs(np.array([f.at(*p) for p in probes]) - exact))
    e1 = np.max(np.abs(np.array([fine.at(*p) for p in probes]) - exact))
    order = math.log2(e0 / e1)
    elapsed = time.perf_counter() - start
    assert order >= 1.8
    assert elapsed < 60
    return f"symmetry {sym:.1e}, min separation {gap:.2e}, probe order {order:.2f} ({e0:.1e} -> {e1:.1e})"


@criterion("modulus calibration and slit matching")
def test_modulus():
    exact = math.log(2) / (2 * math.pi)
    e200 = abs(annulus_modulus(1, 2, 1 / 200).value - exact) / exact
    e400 = abs(annulus_modulus(1, 2, 1 / 400).value - exact) / exact
    assert e200 <= 0.02 and e400 < e200
    h = math.pi / 200
    radii = (0.05, 0.2, 0.5, 1.0, 2.0)
    mods = [ring_modulus(slit_spec(r, h), check_truncation=False).value for r in radii]
    assert all(a > b > 0 for a, b in zip(mods, mods[1:]))
    target = ring_modulus(slit_spec(1.0, h), check_truncation=False).value
    r = find_matching_slit(target, (0.5, 2.0), h=h)
    assert abs(r - 1.0) <= h
    return f"annulus rel err {e200:.1e} -> {e400:.1e}; Mod {', '.join(f'{m:.4f}' for m in mods)}; matched r = {r:.6f}"


@criterion("bounded turning fixtures")
def test_bounded_turning():
    assert bounded_turning(np.linspace(-4, 4, 101) + 0.5j).C == 1.0
    hairpin = bounded_turning(np.array([0, 10, 10 + 1j, 1j]))
    assert hairpin.C >= 10 and hairpin.witness == (0, 3)
    smooth = np.exp(1j * np.linspace(0, 1.4 * math.pi, 3000)) * (1 + 0.2 * np.linspace(0, 1, 3000))
    base = bounded_turning(smooth, n_max=3000).C
    worst = 0.0
    for scale, angle, shift in ((1e-3, 0.3, 2 + 1j), (50.0, 2.0, -7j), (3.0, math.pi, 0)):
        moved = bounded_turning(scale * np.exp(1j * angle) * smooth + shift, n_max=3000).C
        worst = max(worst, abs(moved - base) / base)
    assert worst <= 1e-12
    drift = abs(bounded_turning(smooth, n_max=400).C - base) / base
    assert drift < 0.02
    return f"hairpin C {hairpin.C:.4f}; similarity drift {worst:.1e}; subsample drift {drift:.1e}"


@criterion("fig2 CLI output is byte-identical across runs")
def test_cli_determinism(tmp_path_factory):
    outputs = []
    for tag in ("first", "second"):
        d = tmp_path_factory.mktemp(tag)
        assert cli.main(["fig2", "--output", str(d / "fig2"), "--format", "csv,json"]) == 0
        outputs.append({p.name: p.read_bytes() for p in sorted(d.iterdir())})
    assert outputs[0] == outputs[1] and len(outputs[0]) == 20
    return f"{len(outputs[0])} files identical"
