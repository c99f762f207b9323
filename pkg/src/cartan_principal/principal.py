"""Principal bases of h and of the Cartan subalgebra of the Langlands dual.

The pipeline evaluates ``D p_i`` at ρ∨ for a generator set, checks linear
independence exactly, orthogonalizes without normalizing, splits the
repeated-exponent plane of D_l (l even) into σ-eigenvectors and scales every
vector to a primitive integer vector.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from . import linalg
from .invariants import (
    Dhat_at,
    D_at,
    GeneratorSet,
    IndependenceError,
    generators_for,
)
from .linalg import Vec
from .orbit_cache import OrbitCache
from .rootsys import (
    ORBIT_CAP,
    LieType,
    RootSystem,
    as_type,
    build_root_system,
    is_d_even,
    sigma_h,
)


class DependentInputError(ValueError):
    def __init__(self, index: int):
        super().__init__(f"vector {index} lies in the span of the previous ones (zero pivot)")
        self.index = index


class SigmaRefineError(ValueError):
    pass


@dataclass(frozen=True)
class OrthoReport:
    coefficients: tuple[tuple[Fraction, ...], ...]  # row i: λ_ij for j < i
    pivots: tuple[Fraction, ...]  # B(u_j, u_j)


@dataclass(frozen=True)
class PrincipalBasis:
    type: LieType
    dual: bool
    vectors: tuple[tuple[int, ...], ...]
    ambient: tuple[Vec, ...]
    exponent_labels: tuple[int, ...]
    generator_provenance: tuple[str, ...]
    sigma_refined: bool = False
    route: str = "classical"

    @property
    def coordinate_basis(self) -> str:
        return "simple roots" if self.dual else "simple coroots"


def gram_schmidt(
    vs: Sequence[Sequence], inner: Callable[[Sequence, Sequence], Fraction]
) -> tuple[list[Vec], OrthoReport]:
    """Orthogonalize without square roots.

    u_i = v_i − Σ_{j<i} B(v_i, u_j)/B(u_j, u_j) · u_j.  A zero pivot means
    v_i depends on the earlier vectors and raises :class:`DependentInputError`.
    """
    us: list[Vec] = []
    pivots: list[Fraction] = []
    coeffs: list[tuple[Fraction, ...]] = []
    for i, v in enumerate(vs):
        v = tuple(Fraction(x) for x in v)
        lam = tuple(inner(v, u) / p for u, p in zip(us, pivots))
        u = v
        for c, uj in zip(lam, us):
            if c:
                u = linalg.sub(u, linalg.scale(c, uj))
        p = inner(u, u)
        if p == 0:
            raise DependentInputError(i)
        us.append(u)
        pivots.append(p)
        coeffs.append(lam)
    return us, OrthoReport(tuple(coeffs), tuple(pivots))


def sigma_refine(pair: Sequence[Sequence], t: LieType | str) -> tuple[Vec, Vec]:
    """Split a σ-stable plane into its (−1, +1) σ-eigenvectors.

    σ is the D_l diagram automorphism, e_l ↦ −e_l in ambient coordinates (the
    same formula on h and on h*).
    """
    t = as_type(t)
    if not is_d_even(t):
        raise SigmaRefineError(f"σ-refinement applies to D_l with l even, not {t}")
    u1, u2 = (tuple(Fraction(x) for x in u) for u in pair)
    if linalg.rank([u1, u2]) != 2:
        raise SigmaRefineError("input vectors do not span a plane")
    images = [sigma_h(u1), sigma_h(u2)]
    if linalg.rank([u1, u2] + images) != 2:
        raise SigmaRefineError("plane is not σ-invariant")
    half = Fraction(1, 2)
    minus = [linalg.scale(half, linalg.sub(u, s)) for u, s in zip((u1, u2), images)]
    plus = [linalg.scale(half, linalg.add(u, s)) for u, s in zip((u1, u2), images)]
    if linalg.rank(minus) != 1 or linalg.rank(plus) != 1:
        raise SigmaRefineError("plane does not split into one-dimensional σ-eigenspaces")
    m = next(v for v in minus if not linalg.is_zero(v))
    p = next(v for v in plus if not linalg.is_zero(v))
    return m, p


def primitive_normalize(v: Sequence) -> tuple[int, ...]:
    """Clear denominators, divide by the gcd, make the first nonzero entry positive."""
    return linalg.primitive_integer(v)


def _check_independent(rows: Sequence[Vec], gens: GeneratorSet, where: str) -> None:
    bad = linalg.first_dependent_index(rows)
    if bad is None:
        return
    spec = gens.specs[bad]
    hint = ""
    if gens.route == "orbit":
        hint = "; try a different seed weight (--seed-weight) or the default seed selection"
    raise IndependenceError(
        f"{gens.type}: differential of generator {bad} ({spec.label}, degree {spec.degree}) at {where} "
        f"is linearly dependent on the previous ones{hint}",
        index=bad,
    )


def _assemble(
    rs: RootSystem,
    rows: list[Vec],
    gens: GeneratorSet,
    *,
    dual: bool,
) -> PrincipalBasis:
    inner = rs.form.on_dual if dual else rs.form.on_h
    us, _ = gram_schmidt(rows, inner)
    refined = False
    if is_d_even(rs.type):
        k = rs.rank // 2 - 1  # 0-based position of the first exponent l−1
        us[k], us[k + 1] = sigma_refine((us[k], us[k + 1]), rs.type)
        refined = True
    coords = rs.root_coordinates if dual else rs.coroot_coordinates
    back = rs.from_root_coordinates if dual else rs.from_coroot_coordinates
    vectors = tuple(primitive_normalize(coords(u)) for u in us)
    ambient = tuple(back(v) for v in vectors)
    return PrincipalBasis(
        type=rs.type,
        dual=dual,
        vectors=vectors,
        ambient=ambient,
        exponent_labels=rs.exponents,
        generator_provenance=gens.labels,
        sigma_refined=refined,
        route=gens.route,
    )


def principal_basis(
    t: LieType | str,
    *,
    route: str = "auto",
    seed_weight: int | None = None,
    allow_e8: bool = False,
    generators: GeneratorSet | None = None,
    cache: OrbitCache | None = None,
    cap: int = ORBIT_CAP,
) -> PrincipalBasis:
    """Principal basis of h, in simple-coroot coordinates."""
    rs = build_root_system(t)
    gens = generators or generators_for(
        rs.type, route=route, seed_weight=seed_weight, allow_e8=allow_e8, cache=cache, cap=cap
    )
    rows = [D_at(g, rs.rho_check, rs) for g in gens]
    _check_independent(rows, gens, "rho_check")
    return _assemble(rs, rows, gens.certified(), dual=False)


def dual_principal_basis(
    t: LieType | str,
    *,
    route: str = "auto",
    seed_weight: int | None = None,
    allow_e8: bool = False,
    generators: GeneratorSet | None = None,
    cache: OrbitCache | None = None,
    cap: int = ORBIT_CAP,
) -> PrincipalBasis:
    """Principal basis of the dual Cartan subalgebra h∨ = h*, in simple-root coordinates.

    Root coordinates of ``t`` are coroot coordinates of ``langlands_dual(t)``
    up to the node matching of :func:`rootsys.dual_index_map`.
    """
    rs = build_root_system(t)
    gens = generators or generators_for(
        rs.type, route=route, seed_weight=seed_weight, allow_e8=allow_e8, cache=cache, cap=cap
    )
    rows = [Dhat_at(g, rs.rho, rs) for g in gens]
    _check_independent(rows, gens, "rho")
    return _assemble(rs, rows, gens.certified(), dual=True)
