"""Root data of simple Lie algebras in ambient coordinates.

Every type is realized in a Euclidean ambient space with the classical
(Bourbaki-style) coordinates.  The invariant form is a scalar multiple of the
standard dot product, fixed so that long roots have squared length 2.  A
vector of ``h*`` (roots, weights) and a vector of ``h`` (coroots, ρ∨) are both
stored as tuples of Fractions over the ambient basis; the pairing between them
is the plain coordinate dot product.

For A_n, G_2, E_6 and E_7 the ambient space is strictly larger than the
Cartan subalgebra, and :meth:`RootSystem.project_h` removes the part that the
roots do not see.
"""

from __future__ import annotations

import logging
import re
from collections import Counter, deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Sequence

from . import linalg
from .linalg import Vec

log = logging.getLogger(__name__)

ORBIT_CAP = 10**7

_RANK_RULES = {
    "A": lambda n: n >= 1,
    "B": lambda n: n >= 2,
    "C": lambda n: n >= 2,
    "D": lambda n: n >= 3,
    "E": lambda n: n in (6, 7, 8),
    "F": lambda n: n == 4,
    "G": lambda n: n == 2,
}


class RootSystemError(ValueError):
    pass


class OrbitCapError(RootSystemError):
    """An orbit grew beyond the configured cap."""


@dataclass(frozen=True, order=True)
class LieType:
    family: str
    rank: int

    def __post_init__(self):
        if self.family not in _RANK_RULES:
            raise RootSystemError(f"unknown family {self.family!r}")
        if not isinstance(self.rank, int) or not _RANK_RULES[self.family](self.rank):
            raise RootSystemError(f"invalid rank {self.rank} for family {self.family}")

    @classmethod
    def parse(cls, text: str) -> LieType:
        m = re.fullmatch(r"\s*([A-Ga-g])\s*(\d+)\s*", text)
        if not m:
            raise RootSystemError(f"cannot parse Lie type {text!r}")
        return cls(m.group(1).upper(), int(m.group(2)))

    def __str__(self) -> str:
        return f"{self.family}{self.rank}"


def as_type(t: LieType | str) -> LieType:
    return t if isinstance(t, LieType) else LieType.parse(t)


# Static exponent tables, used as a cross-check of the height computation.
def classical_exponents(t: LieType) -> tuple[int, ...]:
    n = t.rank
    if t.family == "A":
        ex = list(range(1, n + 1))
    elif t.family in "BC":
        ex = list(range(1, 2 * n, 2))
    elif t.family == "D":
        ex = list(range(1, 2 * n - 2, 2)) + [n - 1]
    else:
        ex = {
            "E6": [1, 4, 5, 7, 8, 11],
            "E7": [1, 5, 7, 9, 11, 13, 17],
            "E8": [1, 7, 11, 13, 17, 19, 23, 29],
            "F4": [1, 5, 7, 11],
            "G2": [1, 5],
        }[str(t)]
    return tuple(sorted(ex))


def lie_algebra_dimension(t: LieType) -> int:
    n = t.rank
    if t.family == "A":
        return n * (n + 2)
    if t.family in "BC":
        return n * (2 * n + 1)
    if t.family == "D":
        return n * (2 * n - 1)
    return {"E6": 78, "E7": 133, "E8": 248, "F4": 52, "G2": 14}[str(t)]


def langlands_dual(t: LieType | str) -> LieType:
    """Type of the Lie algebra whose Cartan matrix is the transpose."""
    t = as_type(t)
    if t.family == "B":
        return LieType("C", t.rank)
    if t.family == "C":
        return LieType("B", t.rank)
    return t


def _unit(n: int, i: int, c=1) -> list[Fraction]:
    v = [Fraction(0)] * n
    v[i] = Fraction(c)
    return v


def _realization(t: LieType) -> tuple[int, list[Vec], Fraction]:
    """Ambient dimension, simple roots, and the scalar of the form on h*."""
    f, n = t.family, t.rank
    half = Fraction(1, 2)
    if f == "A":
        dim = n + 1
        roots = [linalg.sub(_unit(dim, i), _unit(dim, i + 1)) for i in range(n)]
        return dim, roots, Fraction(1)
    if f in "BCD":
        roots = [linalg.sub(_unit(n, i), _unit(n, i + 1)) for i in range(n - 1)]
        if f == "B":
            roots.append(linalg.vec(_unit(n, n - 1)))
        elif f == "C":
            roots.append(linalg.vec(_unit(n, n - 1, 2)))
        else:
            roots.append(linalg.add(_unit(n, n - 2), _unit(n, n - 1)))
        return n, roots, (half if f == "C" else Fraction(1))
    if f == "E":
        first = linalg.vec([half] + [-half] * 6 + [half])
        roots = [first, linalg.add(_unit(8, 0), _unit(8, 1))]
        roots += [linalg.sub(_unit(8, i), _unit(8, i - 1)) for i in range(1, 7)]
        return 8, roots[:n], Fraction(1)
    if f == "F":
        roots = [
            linalg.vec([0, 1, -1, 0]),
            linalg.vec([0, 0, 1, -1]),
            linalg.vec([0, 0, 0, 1]),
            linalg.vec([half, -half, -half, -half]),
        ]
        return 4, roots, Fraction(1)
    # G2 with the long root first: B(a1, a1) = 2, B(a2, a2) = 2/3.
    roots = [linalg.vec([-2, 1, 1]), linalg.vec([1, -1, 0])]
    return 3, roots, Fraction(1, 3)


@dataclass(frozen=True)
class BilinearForm:
    """Invariant form, stored by its Gram matrix on the ambient basis of h*.

    The Gram matrix on h is the inverse.  ``b_flat`` sends h* to h and
    ``b_natural`` sends h to h*.
    """

    gram: tuple[tuple[Fraction, ...], ...]
    gram_h: tuple[tuple[Fraction, ...], ...] = field(init=False)

    def __post_init__(self):
        g = [list(r) for r in self.gram]
        if any(g[i][j] != g[j][i] for i in range(len(g)) for j in range(len(g))):
            raise RootSystemError("form is not symmetric")
        try:
            inv = linalg.inverse(g)
        except ZeroDivisionError:
            raise RootSystemError("singular Gram matrix") from None
        object.__setattr__(self, "gram_h", tuple(tuple(r) for r in inv))

    @classmethod
    def scalar(cls, dim: int, c: Fraction) -> BilinearForm:
        return cls(tuple(tuple(c if i == j else Fraction(0) for j in range(dim)) for i in range(dim)))

    def on_dual(self, lam: Sequence, mu: Sequence) -> Fraction:
        return linalg.dot(lam, linalg.mat_vec(self.gram, mu))

    def on_h(self, x: Sequence, y: Sequence) -> Fraction:
        return linalg.dot(x, linalg.mat_vec(self.gram_h, y))

    def b_flat(self, lam: Sequence) -> Vec:
        return linalg.mat_vec(self.gram, lam)

    def b_natural(self, x: Sequence) -> Vec:
        return linalg.mat_vec(self.gram_h, x)


@dataclass(frozen=True, eq=False)
class RootSystem:
    type: LieType
    ambient_dim: int
    simple_roots: tuple[Vec, ...]
    form: BilinearForm
    cartan: tuple[tuple[int, ...], ...]
    positive_roots: tuple[Vec, ...]
    root_coefficients: tuple[tuple[int, ...], ...]
    heights: tuple[int, ...]
    simple_coroots: tuple[Vec, ...]
    fundamental_weights: tuple[Vec, ...]
    fundamental_coweights: tuple[Vec, ...]
    rho: Vec
    rho_check: Vec
    exponents: tuple[int, ...]

    @property
    def rank(self) -> int:
        return self.type.rank

    @property
    def dimension(self) -> int:
        return self.rank + 2 * len(self.positive_roots)

    @cached_property
    def _root_index(self) -> dict[Vec, int]:
        return {r: i for i, r in enumerate(self.positive_roots)}

    @cached_property
    def _coeff_index(self) -> dict[tuple[int, ...], int]:
        return {c: i for i, c in enumerate(self.root_coefficients)}

    def index_of_coefficients(self, coeffs: Sequence[int]) -> int | None:
        return self._coeff_index.get(tuple(coeffs))

    def is_root(self, v: Sequence) -> bool:
        v = tuple(Fraction(x) for x in v)
        neg = tuple(-x for x in v)
        return v in self._root_index or neg in self._root_index

    def pairing(self, lam: Sequence, x: Sequence) -> Fraction:
        return linalg.dot(lam, x)

    def coroot(self, alpha: Sequence) -> Vec:
        """Coroot (2 / B(α, α)) B♭(α) of a root α."""
        if not self.is_root(alpha):
            raise RootSystemError(f"{tuple(alpha)} is not a root of {self.type}")
        return linalg.scale(2 / self.form.on_dual(alpha, alpha), self.form.b_flat(alpha))

    def reflect_dual(self, i: int, lam: Sequence) -> Vec:
        """Simple reflection σ_i acting on h*."""
        c = linalg.dot(lam, self.simple_coroots[i])
        return linalg.sub(lam, linalg.scale(c, self.simple_roots[i]))

    def reflect_h(self, i: int, x: Sequence) -> Vec:
        """Simple reflection σ_i acting on h."""
        c = linalg.dot(self.simple_roots[i], x)
        return linalg.sub(x, linalg.scale(c, self.simple_coroots[i]))

    def coroot_coordinates(self, x: Sequence) -> Vec:
        return tuple(linalg.dot(w, x) for w in self.fundamental_weights)

    def root_coordinates(self, lam: Sequence) -> Vec:
        return tuple(linalg.dot(lam, w) for w in self.fundamental_coweights)

    def from_coroot_coordinates(self, b: Sequence) -> Vec:
        out = linalg.zero(self.ambient_dim)
        for c, a in zip(b, self.simple_coroots):
            out = linalg.add(out, linalg.scale(c, a))
        return out

    def from_root_coordinates(self, a: Sequence) -> Vec:
        out = linalg.zero(self.ambient_dim)
        for c, r in zip(a, self.simple_roots):
            out = linalg.add(out, linalg.scale(c, r))
        return out

    def project_h(self, x: Sequence) -> Vec:
        """Project an ambient vector of h onto the span of the coroots."""
        return self.from_coroot_coordinates(self.coroot_coordinates(x))

    def project_dual(self, lam: Sequence) -> Vec:
        """Project an ambient vector of h* onto the span of the roots."""
        return self.from_root_coordinates(self.root_coordinates(lam))

    def weyl_orbit(self, v: Sequence, *, dual: bool = True, cap: int = ORBIT_CAP) -> tuple[Vec, ...]:
        return weyl_orbit(v, self, dual=dual, cap=cap)


def _positive_root_coefficients(cartan: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Breadth-first closure of the simple roots under α-strings.

    Works in simple-root coordinates: β + α_i is a root iff q > 0 where
    p − q = ⟨β, α_i∨⟩ and p is read off the roots already found.
    """
    r = len(cartan)
    simple = [tuple(int(i == j) for j in range(r)) for i in range(r)]
    found = set(simple)
    layer = list(simple)
    out = list(simple)
    while layer:
        nxt = []
        for beta in layer:
            for i in range(r):
                pair = sum(beta[j] * cartan[i][j] for j in range(r))
                p = 0
                down = list(beta)
                while True:
                    down[i] -= 1
                    if tuple(down) in found:
                        p += 1
                    else:
                        break
                if p - pair > 0:
                    up = list(beta)
                    up[i] += 1
                    up = tuple(up)
                    if up not in found:
                        found.add(up)
                        nxt.append(up)
        nxt.sort(key=lambda c: [-x for x in c])
        out.extend(nxt)
        layer = nxt
    return out


def exponents_from_heights(heights: Sequence[int]) -> tuple[int, ...]:
    """Exponents as the conjugate partition of the height multiplicities."""
    counts = Counter(heights)
    top = max(counts)
    n = [counts.get(k, 0) for k in range(1, top + 2)]
    if any(n[k] < n[k + 1] for k in range(len(n) - 1)):
        raise RootSystemError(f"height multiplicities not weakly decreasing: {n}")
    ex = []
    for k in range(1, top + 1):
        ex.extend([k] * (n[k - 1] - n[k]))
    return tuple(ex)


@lru_cache(maxsize=None)
def _build(t: LieType) -> RootSystem:
    dim, simple, g = _realization(t)
    form = BilinearForm.scalar(dim, g)
    r = t.rank
    coroots = [linalg.scale(2 / form.on_dual(a, a), form.b_flat(a)) for a in simple]
    cartan = tuple(tuple(int(linalg.dot(simple[j], coroots[i])) for j in range(r)) for i in range(r))
    for i in range(r):
        for j in range(r):
            if linalg.dot(simple[j], coroots[i]) != cartan[i][j]:
                raise RootSystemError("non-integral Cartan entry")
            if i != j and cartan[i][j] not in (0, -1, -2, -3):
                raise RootSystemError("bad off-diagonal Cartan entry")

    coeffs = _positive_root_coefficients(cartan)
    expected = (lie_algebra_dimension(t) - r) // 2
    if len(coeffs) != expected:
        raise RootSystemError(f"{t}: found {len(coeffs)} positive roots, expected {expected}")
    pos = []
    for c in coeffs:
        v = linalg.zero(dim)
        for k, a in zip(c, simple):
            if k:
                v = linalg.add(v, linalg.scale(k, a))
        pos.append(v)
    heights = tuple(sum(c) for c in coeffs)

    # ω_i = Σ_k d_k α_k with A d = e_i; ω_i∨ = Σ_j c_j α_j∨ with Aᵀ c = e_i.
    a_mat = [list(row) for row in cartan]
    a_t = linalg.transpose(a_mat)
    weights, coweights = [], []
    for i in range(r):
        e = [int(i == j) for j in range(r)]
        d = linalg.solve(a_mat, e)
        weights.append(_combine(d, simple, dim))
        c = linalg.solve(a_t, e)
        coweights.append(_combine(c, coroots, dim))

    rho = linalg.scale(Fraction(1, 2), _sum(pos, dim))
    pos_coroots = [linalg.scale(2 / form.on_dual(a, a), form.b_flat(a)) for a in pos]
    rho_check = linalg.scale(Fraction(1, 2), _sum(pos_coroots, dim))
    if rho_check != _sum(coweights, dim):
        raise RootSystemError("ρ∨ routes disagree")
    if rho != _sum(weights, dim):
        raise RootSystemError("ρ routes disagree")

    exps = exponents_from_heights(heights)
    if exps != classical_exponents(t):
        raise RootSystemError(f"{t}: exponents {exps} disagree with the table")

    return RootSystem(
        type=t,
        ambient_dim=dim,
        simple_roots=tuple(simple),
        form=form,
        cartan=cartan,
        positive_roots=tuple(pos),
        root_coefficients=tuple(coeffs),
        heights=heights,
        simple_coroots=tuple(coroots),
        fundamental_weights=tuple(weights),
        fundamental_coweights=tuple(coweights),
        rho=rho,
        rho_check=rho_check,
        exponents=exps,
    )


def _combine(coeffs, vectors, dim) -> Vec:
    out = linalg.zero(dim)
    for c, v in zip(coeffs, vectors):
        if c:
            out = linalg.add(out, linalg.scale(c, v))
    return out


def _sum(vectors, dim) -> Vec:
    return _combine([1] * len(vectors), vectors, dim)


def build_root_system(t: LieType | str) -> RootSystem:
    """Root system of a simple type; results are cached and immutable."""
    return _build(as_type(t))


def coroot(alpha: Sequence, rs: RootSystem) -> Vec:
    return rs.coroot(alpha)


def b_flat(lam: Sequence, form: BilinearForm) -> Vec:
    return form.b_flat(lam)


def b_natural(x: Sequence, form: BilinearForm) -> Vec:
    return form.b_natural(x)


def project_to_h(v: Sequence, t: LieType | str) -> Vec:
    """Remove the component of an ambient h-vector invisible to the roots.

    For family A this subtracts the multiple of (1, ..., 1).
    """
    return build_root_system(t).project_h(v)


def _label_orbit(labels: tuple, cartan, dual: bool, cap: int, type_name: str) -> set[tuple]:
    """Orbit in fundamental (co)weight coordinates.

    On h*, s_i subtracts m_i times α_i, whose labels are column i of the
    Cartan matrix; on h it subtracts m_i times α_i∨, whose labels are row i.
    """
    r = len(cartan)
    if dual:
        steps = [tuple(cartan[j][i] for j in range(r)) for i in range(r)]
    else:
        steps = [tuple(cartan[i]) for i in range(r)]
    seen = {labels}
    queue = deque([labels])
    while queue:
        m = queue.popleft()
        for i in range(r):
            mi = m[i]
            if not mi:
                continue
            a = steps[i]
            w = tuple(x - mi * y for x, y in zip(m, a))
            if w not in seen:
                seen.add(w)
                if len(seen) > cap:
                    raise OrbitCapError(f"{type_name}: Weyl orbit exceeds the cap of {cap} vectors")
                queue.append(w)
    return seen


def _split(v: Sequence, rs: RootSystem, dual: bool):
    start = tuple(Fraction(x) for x in v)
    if len(start) != rs.ambient_dim:
        raise ValueError("dimension mismatch")
    if dual:
        labels = tuple(linalg.dot(start, c) for c in rs.simple_coroots)
        fixed = linalg.sub(start, rs.project_dual(start))
    else:
        labels = tuple(linalg.dot(a, start) for a in rs.simple_roots)
        fixed = linalg.sub(start, rs.project_h(start))
    labels = tuple(int(x) if x.denominator == 1 else x for x in labels)
    return labels, fixed


def weyl_orbit(v: Sequence, rs: RootSystem, *, dual: bool = True, cap: int = ORBIT_CAP) -> tuple[Vec, ...]:
    """Orbit of ``v`` under the simple reflections, in sorted order.

    ``dual`` selects the action on h* (weights) or on h.  Any component of
    ``v`` orthogonal to the roots is fixed by W and carried along unchanged.
    """
    labels, fixed = _split(v, rs, dual)
    orbit = _label_orbit(labels, rs.cartan, dual, cap, str(rs.type))
    basis = rs.fundamental_weights if dual else rs.fundamental_coweights
    out = []
    for m in orbit:
        acc = list(fixed)
        for c, b in zip(m, basis):
            if c:
                for k, x in enumerate(b):
                    if x:
                        acc[k] += c * x
        out.append(tuple(acc))
    return tuple(sorted(out))


def orbit_size(v: Sequence, rs: RootSystem, *, dual: bool = True, cap: int = ORBIT_CAP) -> int:
    labels, _ = _split(v, rs, dual)
    return len(_label_orbit(labels, rs.cartan, dual, cap, str(rs.type)))


def dual_index_map(t: LieType | str) -> tuple[int, ...]:
    """Permutation π with cartan(dual)[π(i)][π(j)] = cartan(t)[j][i].

    Node i of ``t`` corresponds to node π(i) of ``langlands_dual(t)``; only
    G2 and F4 need a reversal in the labelling used here.
    """
    t = as_type(t)
    a = build_root_system(t).cartan
    b = build_root_system(langlands_dual(t)).cartan
    r = t.rank
    for perm in (tuple(range(r)), tuple(reversed(range(r)))):
        if all(b[perm[i]][perm[j]] == a[j][i] for i in range(r) for j in range(r)):
            return perm
    raise RootSystemError(f"no node matching for the dual of {t}")  # pragma: no cover


def is_d_even(t: LieType) -> bool:
    return t.family == "D" and t.rank % 2 == 0


def sigma_h(x: Sequence) -> Vec:
    """Diagram automorphism of D_l on ambient coordinates: e_l ↦ −e_l."""
    x = tuple(Fraction(c) for c in x)
    return x[:-1] + (-x[-1],)
