"""Flow through the strip around the vertical segment [-i, i].

Solves for the stream function on a lattice, traces streamlines and writes
an SVG picture next to this script.

Run:  python3 demos/flow_past_segment.py [h]
"""
import math
import sys
from pathlib import Path

from quasilines import fig3, write_svg

h = float(sys.argv[1]) if len(sys.argv) > 1 else math.pi / 200
data = fig3(h)
print(f"lattice {data.extra['grid']['nx']} x {data.extra['grid']['ny']}, residual {data.extra['residual']:.1e}")
print(f"tip singularity coefficient {data.extra['tip_coefficients'][0]:.4f}")
for entry in data.annotations:
    if entry["k"] > 0:
        print(f"  level {entry['level']:+.4f}  K <= {entry['K']:.4g}  ({', '.join(entry['tags'])})")

out = Path(__file__).with_name("flow_past_segment.svg")
write_svg(out, data.curves, data.view, data.walls)
print(f"wrote {out}")
