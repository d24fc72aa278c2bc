"""Congruences, semimodules and radicals of finite semirings."""

from .congruences import enumerate_congruences, enumerate_right_congruences, rc_m, rc_s
from .partition import Partition
from .radical import rad, rad_m, rad_s
from .semiring import FiniteSemiring, load_semiring, validate_semiring

__version__ = "0.1.0"

__all__ = [
    "FiniteSemiring",
    "Partition",
    "enumerate_congruences",
    "enumerate_right_congruences",
    "load_semiring",
    "rad",
    "rad_m",
    "rad_s",
    "rc_m",
    "rc_s",
    "validate_semiring",
]
