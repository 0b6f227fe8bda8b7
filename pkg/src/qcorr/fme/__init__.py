"""Exact linear systems in pi-units and Fourier-Motzkin elimination."""
from .eliminate import (eliminate_all, equivalent, fm_eliminate, implies, implies_all,
                        is_feasible, lift_witness, maximize, remove_redundant)
from .linsys import LinIneq, LinSystem, expand_abs, fraction_str, to_fraction
from .named import build_named_system, raw_named_ineqs

__all__ = [
    "LinIneq", "LinSystem", "build_named_system", "eliminate_all", "equivalent", "expand_abs",
    "fm_eliminate", "fraction_str", "implies", "implies_all", "is_feasible", "lift_witness",
    "maximize", "raw_named_ineqs", "remove_redundant", "to_fraction",
]
