"""Exact polytope conversions and cut/metric polytopes of graphs."""
from .cut import (MAX_CUT_EDGES, MAX_METRIC_VERTICES, PLUS_MINUS_ONE, ZERO_ONE, chordless_cycles,
                  cut_polytope_vertices, edge_names, metric_polytope_h)
from .dd import affine_hull, extreme_rays, h_to_v, polytopes_equal, to_vpolytope, v_to_h
from .reps import HPolytope, VPolytope, primitive

__all__ = [
    "HPolytope", "VPolytope", "affine_hull", "extreme_rays", "h_to_v", "polytopes_equal",
    "primitive", "to_vpolytope", "v_to_h",
    "MAX_CUT_EDGES", "MAX_METRIC_VERTICES", "PLUS_MINUS_ONE", "ZERO_ONE", "chordless_cycles",
    "cut_polytope_vertices", "edge_names", "metric_polytope_h",
]
