"""Tour of distortion bounds for level lines in the strip and its images.

Run:  python3 demos/level_lines_tour.py
"""
import math

from quasilines import (
    bounded_turning,
    certify_against_bound,
    harmonic_level_bound,
    level_line_bound,
    strip_to_disk,
    symmetric_level_bound,
    trace_harmonic_level,
    trace_hyperbolic_level,
    two_slit_map,
    verify_level_distance,
)

print("Lines at hyperbolic distance c from the real axis, pushed into the disk")
disk = strip_to_disk()
for c in (0.5, 1.0, 2.0):
    curve = trace_hyperbolic_level(disk, c)
    check = verify_level_distance(disk, curve, c)
    print(f"  c={c:<4}  K=e^c={level_line_bound(c).K:8.4f}  distance check max err {check.max_error:.1e}")

print("\nHarmonic-measure level lines between two slits")
psi = two_slit_map()
for b in (0.6, 0.75, 0.9):
    curve = trace_harmonic_level(psi, b)
    report = certify_against_bound(curve, symmetric_level_bound(b))
    print(f"  b={b:<4}  K=tan(b pi/2)={report.comparison['K']:8.4f}  sampled turning C={report.C:.4f}")

print("\nTwo level lines close together: K is about 1 + pi*eps")
for eps in (0.05, 0.01):
    K = harmonic_level_bound(0.5, 0.5 + eps).K
    print(f"  eps={eps:<5} K={K:.6f}  1+pi*eps={1 + math.pi * eps:.6f}")

print(f"\nA straight line turns not at all: C = {bounded_turning([0, 1, 2, 3]).C}")
