"""Combinatorial and numerical calculus for real open books on 3-manifolds."""

from .intalg import AbelianGroup, IntMatrix, SmithForm, cokernel, smith_normal_form
from .openbook import (
    OpenBook,
    Reality,
    RealityStatus,
    StabilizationError,
    check_reality,
    enumerate_sites,
    h1_of_manifold,
    stabilize,
)
from .surface import (
    Involution,
    SurfaceModel,
    standard_involution,
    standard_surface,
    validate_involution,
)

__all__ = [
    "AbelianGroup",
    "IntMatrix",
    "Involution",
    "OpenBook",
    "Reality",
    "RealityStatus",
    "SmithForm",
    "StabilizationError",
    "SurfaceModel",
    "check_reality",
    "cokernel",
    "enumerate_sites",
    "h1_of_manifold",
    "smith_normal_form",
    "stabilize",
    "standard_involution",
    "standard_surface",
    "validate_involution",
]

__version__ = "0.1.0"
