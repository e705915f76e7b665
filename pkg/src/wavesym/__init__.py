"""Numerical topology of first-order hyperbolic symbols on surfaces.

Subpackages by theme: sym2 (pointwise 2x2 symmetric algebra and the
complex representation), multiplicity (planar contour extraction,
kernel-line winding, signed zero counts), sphere (polynomial symbol
fields on the round sphere and the sigma_mn family), fresnel (biaxial
crystal optics), eigenline (the glued two-sheet eigenline surface),
serialize and cli (deterministic artifacts).
"""

from .errors import (
    ComputationError,
    DegenerateField,
    GluingMismatch,
    InputError,
    LiftFailure,
    MultiplePoint,
    NotBiaxial,
    NotClosed,
    NotConnected,
    OutOfDomain,
    OutOfRange,
    RankZero,
    WavesymError,
    ZeroOnVertex,
)
from .sym2 import (
    ComplexRep,
    LinearSymbol2,
    Sym2Value,
    eigenline_angles,
    eigenvalues,
    is_invertible,
    matrix_to_rep,
    rep_to_matrix,
    rotate_conjugate,
    rotate_rep,
)
from .multiplicity import (
    ChartSymbolField,
    MultiplicityComponent,
    SingularCurve,
    extract_singular_set,
    kernel_angle,
    knot_polyline,
    knot_type,
    local_degree,
    regular_value_check,
    signed_zero_count,
    trace_component,
    winding_number,
)
from .sphere import (
    PolyVF,
    SpherePoint,
    SphereSymbol,
    ZSet,
    alpha_root,
    analyze_mn,
    evaluate_symbol,
    sigma_mn,
    transversality_h,
    z_set,
)
from .fresnel import (
    Crystal,
    FresnelSample,
    SingularDirection,
    compressed_operator,
    fresnel_mesh,
    fresnel_report,
    fresnel_sample,
    maxwell_matrix,
    singular_directions,
)
from .eigenline import (
    EigenlineManifold,
    build_eigenline_manifold,
    critical_scan,
    eigenline_report,
)
from .spheremesh import SurfaceMesh, euler_characteristic, genus, icosphere

__version__ = "0.1.0"

__all__ = [
    "ChartSymbolField",
    "ComplexRep",
    "ComputationError",
    "Crystal",
    "DegenerateField",
    "EigenlineManifold",
    "FresnelSample",
    "GluingMismatch",
    "InputError",
    "LiftFailure",
    "LinearSymbol2",
    "MultiplePoint",
    "MultiplicityComponent",
    "NotBiaxial",
    "NotClosed",
    "NotConnected",
    "OutOfDomain",
    "OutOfRange",
    "PolyVF",
    "RankZero",
    "SingularCurve",
    "SingularDirection",
    "SpherePoint",
    "SphereSymbol",
    "SurfaceMesh",
    "Sym2Value",
    "WavesymError",
    "ZSet",
    "ZeroOnVertex",
    "alpha_root",
    "analyze_mn",
    "build_eigenline_manifold",
    "compressed_operator",
    "critical_scan",
    "eigenline_angles",
    "eigenline_report",
    "eigenvalues",
    "euler_characteristic",
    "evaluate_symbol",
    "extract_singular_set",
    "fresnel_mesh",
    "fresnel_report",
    "fresnel_sample",
    "genus",
    "icosphere",
    "is_invertible",
    "kernel_angle",
    "knot_polyline",
    "knot_type",
    "local_degree",
    "matrix_to_rep",
    "maxwell_matrix",
    "regular_value_check",
    "rep_to_matrix",
    "rotate_conjugate",
    "rotate_rep",
    "sigma_mn",
    "signed_zero_count",
    "singular_directions",
    "trace_component",
    "transversality_h",
    "winding_number",
    "z_set",
]
