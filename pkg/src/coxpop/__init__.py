"""Pop-stack sorting on Coxeter groups."""

from .coxeter import CoxeterGroup, CoxeterMatrix, preset
from .dynamics import max_orbit, orbit, pop, preimages, tpss_set

__all__ = ["CoxeterGroup", "CoxeterMatrix", "preset", "pop", "orbit", "max_orbit", "preimages", "tpss_set"]
