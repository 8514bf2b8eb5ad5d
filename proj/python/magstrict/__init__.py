"""Micromagnetic energies with magnetostriction on the unit square."""

from ._core import *  # noqa: F401,F403
from ._core import ConvergenceError, ModelParams, UnresolvableError  # noqa: F401

WELLS = {0: (1, 1), 1: (-1, 1), 2: (-1, -1), 3: (1, -1)}
