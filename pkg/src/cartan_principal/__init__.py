"""Principal bases of Cartan subalgebras from invariant-polynomial differentials."""

__version__ = "0.1.0"

from .rootsys import LieType, RootSystem, build_root_system, langlands_dual  # noqa: E402
from .principal import PrincipalBasis, dual_principal_basis, principal_basis  # noqa: E402
from .adjoint import certify  # noqa: E402

__all__ = [
    "LieType",
    "RootSystem",
    "build_root_system",
    "langlands_dual",
    "PrincipalBasis",
    "principal_basis",
    "dual_principal_basis",
    "certify",
]
