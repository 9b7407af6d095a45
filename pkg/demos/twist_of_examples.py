"""Twist numbers of the bundled reference orbits, three ways.

The spectral classification reads the twist number off the Morse indices of
the Hessian and its companion.  For elliptic orbits the naive sign-change
count gives the same demi-unit interval, and the long-run winding of a
tangent vector lands inside it (or on it, for hyperbolic orbits).
"""
from torsionlab import MapDef, golden, naive_interval

fixtures = golden.load_fixtures()
for n in range(1, 6):
    rep = golden.run_example(n, fixtures, oracle_periods=2000)
    m = MapDef.from_dict(fixtures["examples"][str(n)]["map"])
    print(rep.note)
    for label, tr in rep.reports.items():
        naive = ""
        if tr.dyn_type == "ELLIPTIC":
            naive = f"  naive {naive_interval(m, rep.orbits[label])}"
        print(f"  {label:10s} {tr.dyn_type:19s} I={tr.morse_I} I'={tr.morse_Iprime}  "
              f"{str(tr.twist):18s} winding {tr.winding_estimate:+.4f}{naive}")
