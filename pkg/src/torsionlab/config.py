"""Central numerical tolerances.

Every routine that needs a tolerance takes it as a keyword argument whose
default is read from :data:`DEFAULTS`; the CLI overrides fields by building a
new :class:`Tolerances` with :func:`dataclasses.replace`.
"""
from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    newton_grad: float = 1e-12
    newton_maxiter: int = 50
    newton_halvings: int = 8
    singular_det: float = 1e-14
    closure: float = 1e-10
    dedup: float = 1e-8
    morse_zero_rel: float = 1e-9
    parabolic: float = 1e-8
    order_eq: float = 1e-10
    crossing_margin: float = 1e-12
    naive_zero: float = 1e-12
    cone_grid: int = 4096
    cone_xtol: float = 1e-12
    threshold_xtol: float = 1e-7

    def __post_init__(self):
        for name, value in self.__dict__.items():
            if value <= 0:
                raise ValueError(f"tolerance {name} must be positive, got {value}")


DEFAULTS = Tolerances()
