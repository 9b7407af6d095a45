"""Ordered and unordered (8,13) orbits of the standard map at eps = 1.4578.

The least-action orbit and its saddle partner are Birkhoff: their Aubry
diagram never crosses a translate of the minimizer's.  The saddle-center
pair born nearby is not, and each of them puts two points into the gap of
the minimizer around x = 0.
"""
from torsionlab import MapDef, aubry_crossings, cyclic_order_test, gap_count, refine_from_point

m = MapDef.standard(1.4578)
seeds = {"minimizer": (0.5, 0.693821664066481), "minimax": (0.0, 0.586319735666097),
         "elliptic": (0.5, 0.7237177352891645), "hyperbolic": (0.5, 0.723372427461496)}
found = {k: refine_from_point(m, 8, 13, z) for k, z in seeds.items()}
mn = found["minimizer"]
for label, o in found.items():
    test = cyclic_order_test(o)
    print(f"{label:10s} birkhoff={test.birkhoff!s:5s} witness={test.violating_pair}  "
          f"crossings={aubry_crossings(o, mn)}  in gap={gap_count(o, mn)}")
