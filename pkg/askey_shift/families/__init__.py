"""Family catalog: descriptors, parameter points and polynomials."""

from askey_shift.families.models import (
    CoordinateKind,
    FamilyDescriptor,
    Framework,
    ParameterKind,
    ParameterSpec,
    UnknownVariantError,
    VariantDescriptor,
)
from askey_shift.families.parameters import (
    BlacklistError,
    ParameterError,
    ParameterPoint,
    SamplingError,
    derive_seed,
    make_point,
    point_scope,
    resolved_parameters,
    sample_parameters,
    shift_parameters,
)
from askey_shift.families.polynomials import (
    build_polynomial,
    classic_scalars,
    energy,
    eta_function,
    kappa,
    new_scalars,
    origin,
    polynomial_degree_in_eta,
)
from askey_shift.families.registry import (
    CatalogError,
    UnknownFamilyError,
    catalog_document,
    family_descriptor,
    list_families,
    load_registry,
    resolve_family,
)

__all__ = [
    "BlacklistError",
    "CatalogError",
    "CoordinateKind",
    "FamilyDescriptor",
    "Framework",
    "ParameterError",
    "ParameterKind",
    "ParameterPoint",
    "ParameterSpec",
    "SamplingError",
    "UnknownFamilyError",
    "UnknownVariantError",
    "VariantDescriptor",
    "build_polynomial",
    "catalog_document",
    "classic_scalars",
    "derive_seed",
    "energy",
    "eta_function",
    "family_descriptor",
    "kappa",
    "list_families",
    "load_registry",
    "make_point",
    "new_scalars",
    "origin",
    "point_scope",
    "polynomial_degree_in_eta",
    "resolve_family",
    "resolved_parameters",
    "sample_parameters",
    "shift_parameters",
]
