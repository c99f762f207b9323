"""Certification through the adjoint action of the principal sl2-triple.

Only the positive nilpotent part n+ of the Lie algebra is built.  Starting
from h, powers of ad(e0) never leave n+, so the brackets [e_i, e_β] of simple
root vectors with positive root vectors are all that is needed.  They come
from a Chevalley basis whose signs are fixed on extraspecial pairs.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from . import linalg
from .linalg import Vec
from .rootsys import (
    RootSystem,
    build_root_system,
    dual_index_map,
    is_d_even,
    langlands_dual,
    sigma_h,
)

log = logging.getLogger(__name__)

Coeffs = tuple[int, ...]


class StructureConstants:
    """Chevalley structure constants N_{r,s} with [e_r, e_s] = N_{r,s} e_{r+s}.

    Signs are +(p+1) on every extraspecial pair, unless ``signs`` maps the
    index of a positive root ξ to −1, flipping the sign on ξ's extraspecial
    pair.  The other constants follow from the Chevalley basis identities.
    """

    def __init__(self, rs: RootSystem, signs: Mapping[int, int] | None = None):
        self.rs = rs
        self.signs = dict(signs or {})
        self._pos = {c: i for i, c in enumerate(rs.root_coefficients)}
        self._len2 = [rs.form.on_dual(v, v) for v in rs.positive_roots]
        self._memo: dict[tuple[Coeffs, Coeffs], Fraction] = {}
        r = rs.rank
        self.layers: dict[int, list[int]] = {}
        for i, h in enumerate(rs.heights):
            self.layers.setdefault(h, []).append(i)
        self.table: dict[tuple[int, int], int] = {}
        for b, beta in enumerate(rs.root_coefficients):
            for i in range(r):
                up = _shift(beta, i, 1)
                if up in self._pos:
                    self.table[(i, b)] = self.n(_simple(r, i), beta)

    # root helpers, all in simple-root coefficients
    def _is_pos(self, c: Coeffs) -> bool:
        return c in self._pos

    def _is_root(self, c: Coeffs) -> bool:
        return c in self._pos or _neg(c) in self._pos

    def _l2(self, c: Coeffs) -> Fraction:
        return self._len2[self._pos[c] if c in self._pos else self._pos[_neg(c)]]

    def _extraspecial(self, xi: Coeffs) -> tuple[Coeffs, Coeffs]:
        r = self.rs.rank
        for i in range(r):
            rest = _shift(xi, i, -1)
            if rest in self._pos:
                return _simple(r, i), rest
        raise ValueError(f"{xi} has no extraspecial pair")  # pragma: no cover

    def _string_p(self, alpha: Coeffs, beta: Coeffs) -> int:
        p = 0
        cur = beta
        while True:
            cur = _sub(cur, alpha)
            if not self._is_root(cur):
                return p
            p += 1

    def n(self, r: Coeffs, s: Coeffs) -> int:
        """N_{r,s} for roots r, s (any signs) with r + s a root."""
        val = self._n(tuple(r), tuple(s))
        if val.denominator != 1:
            raise ArithmeticError(f"non-integral structure constant N{r},{s} = {val}")
        return int(val)

    def _n(self, r: Coeffs, s: Coeffs) -> Fraction:
        key = (r, s)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        xi = _add(r, s)
        if not self._is_root(xi):
            raise ValueError(f"{r} + {s} is not a root")
        rp, sp = self._is_pos(r), self._is_pos(s)
        if rp and sp:
            if self._pos[r] < self._pos[s]:
                val = self._special(r, s, xi)
            else:
                val = -self._n(s, r)
        elif not rp and not sp:
            val = -self._n(_neg(r), _neg(s))
        elif rp:
            # r + s + t = 0:  N_{r,s}/(t,t) = N_{s,t}/(r,r) = N_{t,r}/(s,s)
            t = _neg(xi)
            if self._is_pos(xi):
                val = self._l2(t) / self._l2(r) * self._n(s, t)
            else:
                val = self._l2(t) / self._l2(s) * self._n(t, r)
        else:
            val = -self._n(s, r)
        self._memo[key] = val
        return val

    def _special(self, zeta: Coeffs, eta: Coeffs, xi: Coeffs) -> Fraction:
        alpha, beta = self._extraspecial(xi)
        if (zeta, eta) == (alpha, beta):
            sign = self.signs.get(self._pos[xi], 1)
            return Fraction(sign * (self._string_p(alpha, beta) + 1))
        total = Fraction(0)
        b_z = _sub(beta, zeta)
        if self._is_root(b_z):
            total += self._n(beta, _neg(zeta)) * self._n(alpha, _neg(eta)) / self._l2(b_z)
        a_z = _sub(alpha, zeta)
        if self._is_root(a_z):
            total += self._n(_neg(zeta), alpha) * self._n(beta, _neg(eta)) / self._l2(a_z)
        return self._l2(xi) / self._n(alpha, beta) * total

    def bracket(self, a: int, b: int) -> tuple[int, int] | None:
        """[e_a, e_b] for positive root indices as (N, index of a+b), or None."""
        ca, cb = self.rs.root_coefficients[a], self.rs.root_coefficients[b]
        s = _add(ca, cb)
        if s not in self._pos:
            return None
        return self.n(ca, cb), self._pos[s]

    def string_p(self, i: int, b: int) -> int:
        return self._string_p(_simple(self.rs.rank, i), self.rs.root_coefficients[b])

    def jacobi_violations(self) -> list[tuple[int, int, int]]:
        """Triples of positive roots where the Jacobi identity fails in n+."""
        bad = []
        npos = len(self.rs.positive_roots)
        for x in range(npos):
            for y in range(x + 1, npos):
                for z in range(y + 1, npos):
                    total = 0
                    for a, b, c in ((x, y, z), (y, z, x), (z, x, y)):
                        inner = self.bracket(b, c)
                        if inner is None:
                            continue
                        outer = self.bracket(a, inner[1])
                        if outer is not None:
                            total += inner[0] * outer[0]
                    if total:
                        bad.append((x, y, z))
        return bad

    # ad(e0) as matrices between height layers
    def ad_e0_from_h(self) -> list[list[int]]:
        """Matrix of h → layer 1 in simple-coroot coordinates.

        [e0, h] = −Σ_i α_i(h) e_i and α_i(α_j∨) = cartan[j][i].
        """
        a = self.rs.cartan
        r = self.rs.rank
        return [[-a[j][i] for j in range(r)] for i in range(r)]

    def ad_e0_layer(self, k: int) -> list[list[int]]:
        """Matrix of layer k → layer k+1 (rows: layer k+1, columns: layer k)."""
        src = self.layers.get(k, [])
        dst = self.layers.get(k + 1, [])
        row_of = {b: n for n, b in enumerate(dst)}
        m = [[0] * len(src) for _ in dst]
        for col, b in enumerate(src):
            for i in range(self.rs.rank):
                v = self.table.get((i, b))
                if v is not None:
                    target = self._pos[_shift(self.rs.root_coefficients[b], i, 1)]
                    m[row_of[target]][col] += v
        return m


def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _neg(a):
    return tuple(-x for x in a)


def _simple(r, i):
    return tuple(int(j == i) for j in range(r))


def _shift(c, i, d):
    c = list(c)
    c[i] += d
    return tuple(c)


def positive_structure_constants(rs: RootSystem, signs: Mapping[int, int] | None = None) -> StructureConstants:
    return StructureConstants(rs, signs)


def _apply(m: Sequence[Sequence[int]], v: Sequence) -> list:
    return [sum((a * x for a, x in zip(row, v)), 0) for row in m]


def ad_e0_power(sc: StructureConstants, h: Sequence, m: int) -> list:
    """ad(e0)^m applied to h (simple-coroot coordinates); result in layer m."""
    if m < 0:
        raise ValueError("power must be non-negative")
    v = list(h)
    if m == 0:
        return v
    v = _apply(sc.ad_e0_from_h(), v)
    for k in range(1, m):
        if not sc.layers.get(k + 1):
            return []
        v = _apply(sc.ad_e0_layer(k), v)
    return v


def in_kernel(sc: StructureConstants, h: Sequence, m: int) -> bool:
    return all(x == 0 for x in ad_e0_power(sc, h, m))


def ad_e0_kernel_dims(rs: RootSystem, sc: StructureConstants, m: int) -> int:
    """dim {h ∈ h : ad(e0)^m h = 0}."""
    if m < 1:
        raise ValueError("m must be at least 1")
    r = rs.rank
    top = max(rs.exponents) + 1
    if m > top:
        log.warning("%s: ad(e0)^%d exceeds 1 + largest exponent; kernel is all of h", rs.type, m)
        return r
    # columns of the composite map are images of the coroot basis vectors
    cols = [ad_e0_power(sc, _simple(r, j), m) for j in range(r)]
    if not cols[0]:
        return r
    return r - linalg.rank(cols)


@dataclass(frozen=True)
class PrincipalTriple:
    h0: Vec
    e0: tuple[int, ...]
    c: tuple[Fraction, ...]


def principal_triple(rs: RootSystem) -> PrincipalTriple:
    """h0 = 2ρ∨, e0 = Σ e_i, f0 = Σ c_i f_i with Σ c_i B♭(α_i) = 2ρ∨."""
    h0 = linalg.scale(2, rs.rho_check)
    cols = [rs.coroot_coordinates(rs.form.b_flat(a)) for a in rs.simple_roots]
    c = linalg.solve(linalg.transpose(cols), rs.coroot_coordinates(h0))
    for a in rs.simple_roots:
        assert linalg.dot(a, h0) == 2
    return PrincipalTriple(h0=h0, e0=(1,) * rs.rank, c=c)


def ef_action(rs: RootSystem, triple: PrincipalTriple, x: Sequence) -> Vec:
    """ad(e0) ad(f0) x for x ∈ h: Σ_j c_j α_j(x) B♭(α_j)."""
    out = linalg.zero(rs.ambient_dim)
    for cj, a in zip(triple.c, rs.simple_roots):
        k = cj * linalg.dot(a, x)
        if k:
            out = linalg.add(out, linalg.scale(k, rs.form.b_flat(a)))
    return out


def h0_eigenvalues_ok(rs: RootSystem) -> bool:
    """ad(h0) e_β = 2·height(β)·e_β for every positive root."""
    h0 = linalg.scale(2, rs.rho_check)
    return all(linalg.dot(b, h0) == 2 * ht for b, ht in zip(rs.positive_roots, rs.heights))


def module_dimensions(rs: RootSystem) -> list[int]:
    return sorted(2 * k + 1 for k in rs.exponents)


def sigma_signs(rs: RootSystem, sc: StructureConstants) -> dict[int, tuple[int, Fraction]]:
    """D_l diagram automorphism on root vectors: e_β ↦ s_β e_{σβ}.

    σ swaps the two fork nodes.  For β = α_i + γ from its extraspecial pair,
    e_β = [e_i, e_γ]/N and so s_β = s_γ N_{σα_i, σγ} / N_{α_i, γ}.
    """
    r = rs.rank
    perm = list(range(r))
    perm[r - 2], perm[r - 1] = r - 1, r - 2
    pos = {c: i for i, c in enumerate(rs.root_coefficients)}

    def image(c):
        out = [0] * r
        for i, x in enumerate(c):
            out[perm[i]] = x
        return tuple(out)

    result: dict[int, tuple[int, Fraction]] = {}
    for b, beta in enumerate(rs.root_coefficients):
        target = pos[image(beta)]
        if rs.heights[b] == 1:
            result[b] = (target, Fraction(1))
            continue
        alpha, gamma = sc._extraspecial(beta)
        g = pos[gamma]
        s = result[g][1] * sc.n(image(alpha), image(gamma)) / sc.n(alpha, gamma)
        result[b] = (target, s)
    return result


def sigma_commutes(rs: RootSystem, sc: StructureConstants) -> bool:
    """σ ∘ ad(e0) = ad(e0) ∘ σ on h and on every height layer (D_l, l even)."""
    if not is_d_even(rs.type):
        raise ValueError("σ is only considered for D_l with l even")
    r = rs.rank
    sig = sigma_signs(rs, sc)
    perm = list(range(r))
    perm[r - 2], perm[r - 1] = r - 1, r - 2
    # on h in coroot coordinates σ permutes the fork coroots
    for j in range(r):
        lhs = ad_e0_power(sc, _simple(r, perm[j]), 1)
        img = ad_e0_power(sc, _simple(r, j), 1)
        rhs = [0] * r
        for i, v in enumerate(img):
            rhs[perm[i]] += v
        if lhs != rhs:
            return False
    # on root vectors: σ[e_i, e_β] = [σe_i, σe_β]
    for (i, b), nval in sc.table.items():
        up = sc._pos[_shift(rs.root_coefficients[b], i, 1)]
        t_up, s_up = sig[up]
        t_b, s_b = sig[b]
        res = sc.bracket(perm[i], t_b)
        if res is None or res[1] != t_up:
            return False
        if nval * s_up != s_b * res[0]:
            return False
    return True


@dataclass(frozen=True)
class VectorVerdict:
    index: int
    exponent: int
    in_kernel_k_plus_1: bool
    in_kernel_k: bool
    ef_eigen_ok: bool

    @property
    def ok(self) -> bool:
        return self.in_kernel_k_plus_1 and not self.in_kernel_k and self.ef_eigen_ok


@dataclass(frozen=True)
class CertReport:
    type: str
    vectors: tuple[VectorVerdict, ...]
    orthogonal: bool
    gram_offdiagonal: tuple[tuple[Fraction, ...], ...]
    module_dimensions: tuple[int, ...]
    sigma: tuple[bool, ...] | None = None
    failures: tuple[str, ...] = field(default=())

    @property
    def certified(self) -> bool:
        return not self.failures


def _to_dual_side(pb):
    """A dual-route basis as a basis of h for the Langlands dual type."""
    from .principal import PrincipalBasis

    dual_t = langlands_dual(pb.type)
    perm = dual_index_map(pb.type)
    drs = build_root_system(dual_t)
    vectors = []
    for v in pb.vectors:
        w = [0] * len(v)
        for i, x in enumerate(v):
            w[perm[i]] = x
        vectors.append(tuple(w))
    return PrincipalBasis(
        type=dual_t,
        dual=False,
        vectors=tuple(vectors),
        ambient=tuple(drs.from_coroot_coordinates(v) for v in vectors),
        exponent_labels=pb.exponent_labels,
        generator_provenance=pb.generator_provenance,
        sigma_refined=pb.sigma_refined,
        route=pb.route,
    )


def certify(pb, rs: RootSystem | None = None, sc: StructureConstants | None = None) -> CertReport:
    """Check the kernel filtration, orthogonality and σ conditions.

    A dual-route basis is moved to the Langlands dual type first.
    """
    if pb.dual:
        pb = _to_dual_side(pb)
    rs = rs or build_root_system(pb.type)
    if rs.type != pb.type:
        raise ValueError(f"basis is for {pb.type}, root system is {rs.type}")
    sc = sc or positive_structure_constants(rs)
    triple = principal_triple(rs)
    failures: list[str] = []

    if len(pb.vectors) != rs.rank:
        failures.append(f"expected {rs.rank} vectors, got {len(pb.vectors)}")
    if sorted(pb.exponent_labels) != list(rs.exponents):
        failures.append("exponent labels differ from the exponents of the type")

    verdicts = []
    ambient = [rs.from_coroot_coordinates(v) for v in pb.vectors]
    for idx, (v, x, k) in enumerate(zip(pb.vectors, ambient, pb.exponent_labels)):
        top = in_kernel(sc, v, k + 1)
        low = in_kernel(sc, v, k)
        ef = ef_action(rs, triple, x) == linalg.scale(k * (k + 1), x)
        verdicts.append(VectorVerdict(idx, k, top, low, ef))
        if not top:
            failures.append(f"vector {idx}: not in Ker ad(e0)^{k + 1}")
        if low:
            failures.append(f"vector {idx}: lies in Ker ad(e0)^{k}")
        if not ef:
            failures.append(f"vector {idx}: not an eigenvector of ad(e0)ad(f0) with eigenvalue {k * (k + 1)}")

    n = len(ambient)
    gram = tuple(
        tuple(rs.form.on_h(ambient[i], ambient[j]) if i != j else Fraction(0) for j in range(n))
        for i in range(n)
    )
    orthogonal = all(g == 0 for row in gram for g in row)
    for i in range(n):
        for j in range(i + 1, n):
            if gram[i][j] != 0:
                failures.append(f"vectors {i} and {j}: B = {gram[i][j]} != 0")

    sigma = None
    if is_d_even(rs.type):
        minus_at = rs.rank // 2 - 1
        sigma = []
        for idx, x in enumerate(ambient):
            want = linalg.scale(-1, x) if idx == minus_at else x
            ok = sigma_h(x) == want
            sigma.append(ok)
            if not ok:
                sign = "-1" if idx == minus_at else "+1"
                failures.append(f"vector {idx}: not a σ = {sign} eigenvector")
        sigma = tuple(sigma)

    return CertReport(
        type=str(rs.type),
        vectors=tuple(verdicts),
        orthogonal=orthogonal,
        gram_offdiagonal=gram,
        module_dimensions=tuple(module_dimensions(rs)),
        sigma=sigma,
        failures=tuple(failures),
    )
