"""Primitive zonotopes: vertex enumeration, lattice diameters and
multicriteria matroid optimization."""

__version__ = "0.1.0"

from .numeric import (ArithmeticOverflowError, INF, PrimzonoError, ResourceLimitError,
                      SignedPermutation, gcd_vec, is_lex_positive, norm_le, totient)
from .generators import GeneratorSet, enumerate_generators, generator_count
from .zonotope import (VertexRecord, VertexSet, ZonotopeSummary, brute_force_vertices,
                       canonical_vertices, enumerate_vertices, grid_size, skeleton_diameter,
                       summarize, verify_refinement, vertex_count)
from .diameter import (DiameterRecord, MatchingSchedule, conjecture_consistency, construct_dk,
                       delta_2k, euler_totient_grid, matching_schedule, one_factorization)
from .matroid import (MatroidOracle, TradeInOracle, build_hard_instance, counterpart_count,
                      graphic_matroid, greedy_max, multicriteria_solve,
                      project_vertices_bruteforce, uniform_matroid)

__all__ = [
    "ArithmeticOverflowError", "INF", "PrimzonoError", "ResourceLimitError", "SignedPermutation",
    "gcd_vec", "is_lex_positive", "norm_le", "totient",
    "GeneratorSet", "enumerate_generators", "generator_count",
    "VertexRecord", "VertexSet", "ZonotopeSummary", "brute_force_vertices", "canonical_vertices",
    "enumerate_vertices", "grid_size", "skeleton_diameter", "summarize", "verify_refinement",
    "vertex_count",
    "DiameterRecord", "MatchingSchedule", "conjecture_consistency", "construct_dk", "delta_2k",
    "euler_totient_grid", "matching_schedule", "one_factorization",
    "MatroidOracle", "TradeInOracle", "build_hard_instance", "counterpart_count",
    "graphic_matroid", "greedy_max", "multicriteria_solve", "project_vertices_bruteforce",
    "uniform_matroid",
]
