"""Following the (1,2) maximizer of the three-harmonic map from eps = 0.01 to 1.

Along the way its twist number drops in four stages, with two trace = -2
crossings and one trace = +2 crossing, while the minimizing (1,2) orbit keeps
twist number 0.  The rows go to example4_scan.csv for plotting.
"""
import numpy as np

from torsionlab import MapDef, minimizing_orbit, scan, scan_epsilon

family = MapDef.three_harmonic()
grid = np.round(np.linspace(0.01, 1.0, 100), 12)
branch = scan_epsilon(family, 1, 2, [0.0, 0.5], grid, orbit_id="maximizer")
print("regimes:", " -> ".join(str(t) for t in branch.regimes()))
for t in branch.thresholds:
    print(f"  trace = {t.level:+.0f} at eps = {t.epsilon:.8f}")

mn = minimizing_orbit(family.with_epsilon(grid[0]), 1, 2)
low = scan_epsilon(family, 1, 2, mn, grid, orbit_id="minimizer")
print("minimizer regimes:", [str(t) for t in low.regimes()])

with open("example4_scan.csv", "w", newline="") as fh:
    scan.write_csv(fh, ["orbit_id", "epsilon", "trace", "twist_lo", "twist_hi", "delta_min"],
                   [[r.orbit_id, r.epsilon, r.trace, r.twist.lo, r.twist.hi, r.delta_min]
                    for r in branch.rows + low.rows])
print("wrote example4_scan.csv")
