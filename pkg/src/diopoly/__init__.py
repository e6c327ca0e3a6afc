"""diopoly: construct and certify integer polynomials whose values over a
given finite set multiply pairwise to perfect squares.

The package is layered bottom-up: exact arithmetic (exactmath), node
configurations and their determinantal quadrics (variety), birational
maps and parametrizations between the two varieties (rationalmaps), the
construction / verification / search pipeline (forge), rational points
on the associated twisted curves (twist), and a JSON-emitting command
line (cli).
"""

from .exactmath import Matrix, det, det_cofactor, integer_sqrt, interpolate, minor
from .variety import (
    DiagonalQuadric,
    PointConfig,
    ProjPoint,
    bracket,
    diagonal_quadric,
    diagonal_quadrics,
    on_certificate_variety,
    on_quadric_variety,
)
from .rationalmaps import (
    CertificatePoint,
    DegenerateParameterError,
    IndeterminatePointError,
    QuadricPoint,
    certificate_to_quadric,
    parametrize_plane,
    parametrize_plane_inverse,
    parametrize_quadric,
    parametrize_quadric_inverse,
    plane_system_matrix,
    quadric_to_certificate,
)
from .forge import (
    ConstructionError,
    Polynomial,
    SearchReport,
    SearchSpaceError,
    VerifyReport,
    Witness,
    brute_force_search,
    classify_trivial,
    construct_witness,
    verify_witness,
)
from .twist import DegenerateTwistError, TwistCurve, TwistPointSet, twist_points

__version__ = "0.1.0"

__all__ = [
    "Matrix",
    "det",
    "det_cofactor",
    "minor",
    "interpolate",
    "integer_sqrt",
    "ProjPoint",
    "PointConfig",
    "DiagonalQuadric",
    "bracket",
    "diagonal_quadric",
    "diagonal_quadrics",
    "on_quadric_variety",
    "on_certificate_variety",
    "CertificatePoint",
    "QuadricPoint",
    "IndeterminatePointError",
    "DegenerateParameterError",
    "certificate_to_quadric",
    "quadric_to_certificate",
    "parametrize_quadric",
    "parametrize_quadric_inverse",
    "plane_system_matrix",
    "parametrize_plane",
    "parametrize_plane_inverse",
    "Polynomial",
    "Witness",
    "VerifyReport",
    "SearchReport",
    "ConstructionError",
    "SearchSpaceError",
    "construct_witness",
    "verify_witness",
    "brute_force_search",
    "classify_trivial",
    "TwistCurve",
    "TwistPointSet",
    "DegenerateTwistError",
    "twist_points",
    "__version__",
]
