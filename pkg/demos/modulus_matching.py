"""Find the real slit whose complement has the same conformal modulus as an obstacle's.

Run:  python3 demos/modulus_matching.py
"""
import math

from quasilines import GridSpec, VerticalSegment, find_matching_slit, ring_modulus, slit_modulus

h = math.pi / 100
print("Moduli of the strip minus [-r, r]:")
for r in (0.05, 0.2, 0.5, 1.0, 2.0):
    print(f"  r={r:<4}  Mod={slit_modulus(r, h).value:.5f}")

for H in (0.5, 1.0):
    spec = GridSpec(-12, 12, h, (VerticalSegment(H),))
    target = ring_modulus(spec).value
    r = find_matching_slit(target, (0.05, 3.0), h=h, margin=12 - 3.0)
    print(f"segment [-{H}i, {H}i]: Mod={target:.5f}, matching slit r={r:.4f} (closed form {math.atanh(math.sin(H)):.4f})")
