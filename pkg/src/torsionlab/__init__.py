"""Periodic orbits, twist numbers and folding regions of standard-like twist maps."""
from .config import DEFAULTS, Tolerances
from .cone import ConeReport, classify_sf, delta, folding_intervals, strong_folding_intervals
from .errors import NumericalError, TorsionLabError, ValidationError
from .maps import MapDef, PhasePoint, derivative, inverse_step, lift_step
from .orbits import (PeriodicOrbit, action, minimizing_orbit, newton_refine,
                     period_doubled_orbit, refine_from_point, residue_and_trace)
from .order import OrderReport, aubry_crossings, cyclic_order_test, gap_count
from .scan import ScanRow, phase_portrait, scan_epsilon
from .spectral import PeriodicJacobiMatrix, hessian_config, hessian_phase
from .twist import Twist, TwistReport, classify_twist, naive_interval, winding_estimate

__version__ = "0.1.0"
