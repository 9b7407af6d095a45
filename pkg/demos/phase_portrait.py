"""Phase-portrait data for the standard map at eps = 1.4578.

A fan of seeds on the symmetry line x = 0 is iterated and written as
(seed_id, n, x, y) rows, x taken mod 1 in [-0.5, 0.5).  Any plotting tool can
draw the scatter; the (8,13) chains of the order demo sit near y = 0.7.
"""
import numpy as np

from torsionlab import MapDef, phase_portrait

m = MapDef.standard(1.4578)
seeds = [(0.0, y) for y in np.linspace(0.05, 0.95, 19)] + [(0.5, 0.7237177352891645)]
with open("portrait.csv", "w", newline="") as fh:
    rows = phase_portrait(m, seeds, 400, fh)
print(f"wrote {rows} rows to portrait.csv")
