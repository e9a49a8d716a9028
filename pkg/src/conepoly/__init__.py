"""Signature of the area Hermitian form on spaces of cone-angle polygons."""

from .areaform import Inertia, area_pairing, gram, inertia, numeric_signature, square_norm
from .curvature import (
    Angle,
    CurvatureData,
    GeneralizedCurvatureData,
    closed_form_signature,
    curvature,
    epsilon,
    p_of,
    parse_curvature,
    permute,
    q_of,
)
from .polyspace import (
    PolygonVector,
    is_member,
    is_simple,
    random_element,
    realize,
    solve_even_coords,
    standard_basis,
)
from .transforms import (
    allpi_signature,
    cut_glue,
    cut_glue_inverse,
    cut_glue_matrix,
    embed_merged,
    recursive_signature,
    reverse,
    special_X,
)

__version__ = "0.1.0"
