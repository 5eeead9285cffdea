from mappings.base import (
    BoundReport,
    BoundViolation,
    DiskGridSpec,
    Domain,
    DomainMembershipError,
    GridSpec,
    HarmonicMap,
    LewyViolationError,
    MappingError,
    PointFailure,
    PoleError,
)
from mappings.harmonic import (
    affine_positive_part,
    df_norm,
    dilatation,
    evaluate_map,
    halfplane_diffeomorphism,
    heinz_lower_bound,
    identity_map,
    jacobian,
    map_values,
    verify_heinz,
    verify_heinz_disk,
    wirtinger_derivatives,
)
from mappings.hyperbolic import (
    cayley_disk_to_halfplane,
    cayley_halfplane_to_disk,
    disk_valued_corpus,
    hyperbolic_density,
    poisson_kernel,
    schwarz_pick_residual,
)

__all__ = [
    "BoundReport",
    "BoundViolation",
    "DiskGridSpec",
    "Domain",
    "DomainMembershipError",
    "GridSpec",
    "HarmonicMap",
    "LewyViolationError",
    "MappingError",
    "PointFailure",
    "PoleError",
    "affine_positive_part",
    "cayley_disk_to_halfplane",
    "cayley_halfplane_to_disk",
    "df_norm",
    "dilatation",
    "disk_valued_corpus",
    "evaluate_map",
    "halfplane_diffeomorphism",
    "heinz_lower_bound",
    "hyperbolic_density",
    "identity_map",
    "jacobian",
    "map_values",
    "poisson_kernel",
    "schwarz_pick_residual",
    "verify_heinz",
    "verify_heinz_disk",
    "wirtinger_derivatives",
]
