"""Weyl-invariant polynomials on h and their differentials.

An invariant is either an explicit :class:`SparsePolynomial` in the ambient
coordinates of h, or an orbit power sum ``f(x) = Σ_{v ∈ W·seed} ⟨v, x⟩^d``.
Power sums are evaluated straight from the orbit and never expanded, which
keeps high degrees (up to 30 for E8) cheap.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Sequence, Union

from . import linalg
from .linalg import Vec
from .orbit_cache import OrbitCache
from .polynomial import SparsePolynomial, monomial_product
from .rootsys import (
    ORBIT_CAP,
    LieType,
    OrbitCapError,
    RootSystem,
    as_type,
    build_root_system,
    orbit_size,
    weyl_orbit,
)

log = logging.getLogger(__name__)

ROUTES = ("auto", "classical", "orbit")

# Orbits larger than this are not considered when ranking candidate seeds.
_SEED_PROBE_CAP = 50_000


class IndependenceError(ValueError):
    """The differentials at ρ∨ (or ρ) of a generator set are dependent."""

    def __init__(self, message: str, index: int | None = None):
        super().__init__(message)
        self.index = index


class E8GuardError(OrbitCapError):
    """E8 was requested without opting in."""


@dataclass(frozen=True)
class ExplicitInvariant:
    polynomial: SparsePolynomial
    degree: int
    label: str

    def __post_init__(self):
        if self.polynomial.is_zero():
            raise ValueError(f"{self.label}: zero polynomial")
        if not self.polynomial.is_homogeneous(self.degree):
            raise ValueError(f"{self.label}: not homogeneous of degree {self.degree}")

    def evaluate(self, x: Sequence) -> Fraction:
        return self.polynomial(x)

    def differential(self, x: Sequence) -> Vec:
        return self.polynomial.gradient(x)


@dataclass(frozen=True)
class OrbitPowerSum:
    seed: Vec
    orbit: tuple[Vec, ...]
    degree: int
    label: str

    def __post_init__(self):
        if linalg.is_zero(self.seed):
            raise ValueError(f"{self.label}: zero seed gives the zero polynomial")
        if self.degree < 1:
            raise ValueError("degree must be positive")

    def evaluate(self, x: Sequence) -> Fraction:
        d = self.degree
        return sum((linalg.dot(v, x) ** d for v in self.orbit), Fraction(0))

    def differential(self, x: Sequence) -> Vec:
        if len(x) != len(self.seed):
            raise ValueError("dimension mismatch")
        d = self.degree
        acc = [Fraction(0)] * len(self.seed)
        for v in self.orbit:
            w = linalg.dot(v, x) ** (d - 1)
            if w:
                for i, c in enumerate(v):
                    if c:
                        acc[i] += w * c
        return tuple(d * a for a in acc)

    def expand(self) -> SparsePolynomial:
        """Symbolic expansion; only sensible for small orbits and degrees."""
        n = len(self.seed)
        out = SparsePolynomial(n)
        for v in self.orbit:
            out = out + SparsePolynomial.linear(v) ** self.degree
        return out


InvariantSpec = Union[ExplicitInvariant, OrbitPowerSum]


@dataclass(frozen=True)
class GeneratorSet:
    type: LieType
    specs: tuple[InvariantSpec, ...]
    route: str
    independent: bool = False

    def __post_init__(self):
        degs = self.degrees
        if any(a > b for a, b in zip(degs, degs[1:])):
            raise ValueError("generator degrees must be weakly increasing")

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(s.degree for s in self.specs)

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(s.label for s in self.specs)

    def __len__(self) -> int:
        return len(self.specs)

    def __iter__(self):
        return iter(self.specs)

    def certified(self) -> GeneratorSet:
        return replace(self, independent=True)


def classical_generators(t: LieType | str) -> GeneratorSet:
    """Power-sum generators for the classical families.

    A_n: Σ x_i^d for d = 2..n+1 on the n+1 ambient coordinates.
    B_n, C_n: Σ x_i^{2i}.  D_n: Σ x_i^{2i} for i < n plus x_1⋯x_n, which is
    placed before the power sum of the same degree.
    """
    t = as_type(t)
    n = t.rank
    if t.family == "A":
        specs = [
            ExplicitInvariant(SparsePolynomial.power_sum(n + 1, d), d, f"p{d}=sum x^{d}")
            for d in range(2, n + 2)
        ]
    elif t.family in "BC":
        specs = [
            ExplicitInvariant(SparsePolynomial.power_sum(n, 2 * i), 2 * i, f"p{i}=sum x^{2 * i}")
            for i in range(1, n + 1)
        ]
    elif t.family == "D":
        specs = [
            ExplicitInvariant(SparsePolynomial.power_sum(n, 2 * i), 2 * i, f"p{i}=sum x^{2 * i}")
            for i in range(1, n)
        ]
        pfaff = ExplicitInvariant(monomial_product(n), n, "p_e=x1*...*x%d" % n)
        pos = next((k for k, s in enumerate(specs) if s.degree >= n), len(specs))
        specs.insert(pos, pfaff)
    else:
        raise ValueError(f"no classical generators for family {t.family}")
    return GeneratorSet(t, tuple(specs), "classical")


def g2_generators() -> GeneratorSet:
    """The explicit G2 pair of degrees 2 and 6.

    In an orthonormal basis x = α1∨/√2, y = √(2/3)(α2∨ + 3/2 α1∨) of h they
    read p1 = x² + y², p2 = 33x⁶ + 27y⁶ + 45x⁴y² + 135x²y⁴.  Only x² and y²
    occur, and both are rational quadratic forms in the ambient coordinates.
    """
    rs = build_root_system("G2")
    a1c, a2c = rs.simple_coroots
    # x*(z) = B(x, z), y*(z) = B(y, z)
    lx = SparsePolynomial.linear(rs.form.b_natural(a1c))
    ly = SparsePolynomial.linear(rs.form.b_natural(linalg.add(a2c, linalg.scale(Fraction(3, 2), a1c))))
    xx = lx**2 * Fraction(1, 2)
    yy = ly**2 * Fraction(2, 3)
    p1 = xx + yy
    p2 = 33 * xx**3 + 27 * yy**3 + 45 * xx**2 * yy + 135 * xx * yy**2
    return GeneratorSet(
        rs.type,
        (ExplicitInvariant(p1, 2, "G2 p1=x^2+y^2"), ExplicitInvariant(p2, 6, "G2 p2")),
        "classical",
    )


def cached_orbit(
    seed: Sequence, rs: RootSystem, *, cache: OrbitCache | None = None, cap: int = ORBIT_CAP
) -> tuple[Vec, ...]:
    seed = tuple(Fraction(x) for x in seed)
    if cache is not None:
        hit = cache.get(str(rs.type), seed)
        if hit is not None:
            return hit
    orbit = weyl_orbit(seed, rs, cap=cap)
    if cache is not None:
        cache.put(str(rs.type), seed, orbit)
    return orbit


def _seed_candidates(rs: RootSystem) -> list[tuple[str, Vec]]:
    """Fundamental weights by increasing orbit size, then ρ."""
    ranked = []
    for i, w in enumerate(rs.fundamental_weights):
        try:
            size = orbit_size(w, rs, cap=_SEED_PROBE_CAP)
        except OrbitCapError:
            size = float("inf")
        ranked.append((size, i, f"w{i + 1}", w))
    ranked.sort(key=lambda r: (r[0], r[1]))
    out = [(name, w) for _, _, name, w in ranked]
    out.append(("rho", rs.rho))
    return out


def orbit_generators(
    t: LieType | str,
    *,
    seed_weight: int | None = None,
    cache: OrbitCache | None = None,
    cap: int = ORBIT_CAP,
) -> GeneratorSet:
    """Orbit power sums of degrees exponent + 1.

    With ``seed_weight=k`` every power sum uses the orbit of the k-th
    fundamental weight (1-based).  Otherwise seeds are chosen per degree:
    the first candidate (smallest orbit first, ρ last) whose differential at
    ρ∨ is independent of those already chosen.  Independence of the final set
    is still checked by the caller.
    """
    rs = build_root_system(t)
    degrees = [k + 1 for k in rs.exponents]
    if seed_weight is not None:
        if not 1 <= seed_weight <= rs.rank:
            raise ValueError(f"seed weight must be between 1 and {rs.rank}")
        w = rs.fundamental_weights[seed_weight - 1]
        orbit = cached_orbit(w, rs, cache=cache, cap=cap)
        specs = tuple(OrbitPowerSum(w, orbit, d, f"f{d}[w{seed_weight}]") for d in degrees)
        return GeneratorSet(rs.type, specs, "orbit")

    candidates = _seed_candidates(rs)
    orbits: dict[str, tuple[Vec, ...]] = {}
    chosen: list[OrbitPowerSum] = []
    rows: list[Vec] = []
    for d in degrees:
        for name, w in candidates:
            if name not in orbits:
                orbits[name] = cached_orbit(w, rs, cache=cache, cap=cap)
            orbit = orbits[name]
            spec = OrbitPowerSum(w, orbit, d, f"f{d}[{name}]")
            v = D_at(spec, rs.rho_check, rs)
            if linalg.rank(rows + [v]) == len(rows) + 1:
                chosen.append(spec)
                rows.append(v)
                break
        else:
            raise IndependenceError(f"{rs.type}: no candidate seed gives an independent degree-{d} invariant")
    return GeneratorSet(rs.type, tuple(chosen), "orbit")


def default_route(t: LieType) -> str:
    return "classical" if t.family in "ABCDG" else "orbit"


def generators_for(
    t: LieType | str,
    *,
    route: str = "auto",
    seed_weight: int | None = None,
    allow_e8: bool = False,
    cache: OrbitCache | None = None,
    cap: int = ORBIT_CAP,
) -> GeneratorSet:
    t = as_type(t)
    if route not in ROUTES:
        raise ValueError(f"unknown route {route!r}")
    if str(t) == "E8" and not allow_e8:
        raise E8GuardError(
            "E8 needs Weyl-orbit work that is behind the orbit cap guard; pass allow_e8 (--allow-e8) to proceed"
        )
    if seed_weight is not None and route == "auto":
        route = "orbit"
    if route == "auto":
        route = default_route(t)
    if route == "classical":
        if t.family == "G":
            return g2_generators()
        return classical_generators(t)
    return orbit_generators(t, seed_weight=seed_weight, cache=cache, cap=cap)


def differential_at(spec: InvariantSpec, x: Sequence) -> Vec:
    """dp(x) in ambient coordinates of h*."""
    return spec.differential(x)


def D_at(spec: InvariantSpec, x: Sequence, rs: RootSystem) -> Vec:
    """B♭(dp(x)), projected onto the span of the coroots."""
    return rs.project_h(rs.form.b_flat(spec.differential(x)))


def Dhat_at(spec: InvariantSpec, lam: Sequence, rs: RootSystem) -> Vec:
    """dp(B♭(λ)), projected onto the span of the roots."""
    return rs.project_dual(spec.differential(rs.form.b_flat(lam)))


def project_to_h(v: Sequence, t: LieType | str) -> Vec:
    return build_root_system(t).project_h(v)
