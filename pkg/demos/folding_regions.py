"""Where do the three bundled map families fold, and how?

For each preset we print the folding and strong folding thresholds, then
watch the strong folding region grow as epsilon passes the threshold.  The
standard map develops one strip around x = 0 (USF), the three-harmonic map
two strips, one on each symmetry line (TSF).
"""
import numpy as np

from torsionlab import MapDef, classify_sf

for make in (MapDef.standard, MapDef.three_harmonic, MapDef.rational_harmonic):
    family = make()
    base = classify_sf(family.with_epsilon(0.0))
    print(f"{family.name}: eps' = {base.epsilon_prime:.6f}, eps* = {base.epsilon_star:.6f}")
    for eps in base.epsilon_star * np.array([0.9, 1.01, 1.5, 3.0]):
        r = classify_sf(family.with_epsilon(eps))
        arcs = ", ".join(f"[{iv.lo:+.4f}, {iv.hi:+.4f}]" for iv in r.strong_folding_intervals)
        print(f"  eps = {eps:7.4f}  {r.classification:9s} lines {r.lines_included}  {arcs}")
