"""Exact tools for the tropical morphism g(a, A, b, B)_ij = min(a_i + b_j, A_i + B_j)
and the arrangement x_i = y_j that governs it."""

from .arrangement import (FaceLabel, RegionLabel, XYPoint, enumerate_faces, enumerate_regions,
                          face_of_point, region_of_point)
from .diagram import diagram_of, relations_v1, relations_v2, image_dimension, cell_size_class
from .morphism import ParamPoint, eval_g, delta, preimage_in_region, generic_fiber, gauge_normalize
from .cells import (barvinok2_decide, canonical_cell, locate_cells, member, verify_subdivision,
                    count_cells)
from .ratcore import Matrix, rat

__version__ = "0.1.0"
