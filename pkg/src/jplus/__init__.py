"""Exact J+ and J2+ invariants of plane curve immersions and curve pairs."""
from .arrangement import (Arrangement, GenericityError, Violation, build_arrangement,
                          face_of_point, validate_generic)
from .curves import CurveError, CurveSystem, Immersion
from .generators import (ConstructionError, PairTarget, construct_pair, family,
                         family_j_plus, std_k, std_l, std_p)
from .geom import Point
from .invariants import (InvariantReport, analyze, crossing_indices, encircling_index,
                         j2_plus, j_plus, rotation_number, winding_numbers, winding_oracle)
from .moves import MoveError, MoveRecord, finger_push, retract_pass, triple_pass

__all__ = [
    "Arrangement", "ConstructionError", "CurveError", "CurveSystem", "GenericityError",
    "Immersion", "InvariantReport", "MoveError", "MoveRecord", "PairTarget", "Point",
    "Violation", "analyze", "build_arrangement", "construct_pair", "crossing_indices",
    "encircling_index", "face_of_point", "family", "family_j_plus", "finger_push", "j2_plus",
    "j_plus", "retract_pass", "rotation_number", "std_k", "std_l", "std_p", "triple_pass",
    "validate_generic", "winding_numbers", "winding_oracle",
]
