"""Period doubling of the standard map's fixed point at eps = 4.

The trace of the fixed point at the origin is 2 - eps, so it crosses -2 at
eps = 4.  The scan finds that threshold by continuation; just above it the
newborn (0,2) orbit is elliptic with twist number between -1 and -1/2.
"""
import numpy as np

from torsionlab import MapDef, classify_twist, newton_refine, period_doubled_orbit, scan_epsilon

family = MapDef.standard()
res = scan_epsilon(family, 0, 1, [0.0], np.linspace(3.5, 4.5, 11))
for t in res.thresholds:
    print(f"trace = {t.level:+.0f} at eps = {t.epsilon:.9f}: {t.before} -> {t.after}")

m = family.with_epsilon(4.05)
parent = newton_refine(m, 0, 1, [0.0])
child = period_doubled_orbit(m, parent)
rep = classify_twist(m, child)
print(f"doubled orbit at eps = 4.05: config {np.round(child.config, 6)}, "
      f"{rep.dyn_type}, twist {rep.twist}")
