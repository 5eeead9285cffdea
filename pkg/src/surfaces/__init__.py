from surfaces.base import (
    AdmissibilityError,
    ExtremalInstance,
    IndeterminateCurvatureError,
    StencilError,
    SurfaceError,
    SurfaceSample,
    WEData,
)
from surfaces.enneper import (
    associated_map,
    check_admissible,
    conformal_factor,
    conformality_residual,
    curvature_bound,
    first_fundamental_form,
    gauss_curvature,
    gauss_curvature_dilatation,
    gauss_curvature_fd,
    gauss_curvature_values,
    immerse,
    immerse_batch,
    phi,
    phi_exprs,
    sample_surface,
    schober_bound,
)
from surfaces.extremal import (
    admissible_we_data,
    extremal_closed_form,
    extremal_halfplane_example,
    random_admissible_instances,
)

__all__ = [
    "AdmissibilityError",
    "ExtremalInstance",
    "IndeterminateCurvatureError",
    "StencilError",
    "SurfaceError",
    "SurfaceSample",
    "WEData",
    "admissible_we_data",
    "associated_map",
    "check_admissible",
    "conformal_factor",
    "conformality_residual",
    "curvature_bound",
    "extremal_closed_form",
    "extremal_halfplane_example",
    "first_fundamental_form",
    "gauss_curvature",
    "gauss_curvature_dilatation",
    "gauss_curvature_fd",
    "gauss_curvature_values",
    "immerse",
    "immerse_batch",
    "phi",
    "phi_exprs",
    "random_admissible_instances",
    "sample_surface",
    "schober_bound",
]
