"""Sparse multivariate polynomials with exact rational coefficients."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

Monomial = tuple[int, ...]


class SparsePolynomial:
    """A polynomial in ``nvars`` variables stored as ``{exponents: coeff}``.

    Zero coefficients are never stored.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[Monomial, object] | None = None):
        self.nvars = nvars
        clean: dict[Monomial, Fraction] = {}
        for mono, c in (terms or {}).items():
            if len(mono) != nvars:
                raise ValueError("exponent vector has wrong length")
            c = Fraction(c)
            if c:
                clean[tuple(mono)] = clean.get(tuple(mono), Fraction(0)) + c
                if not clean[tuple(mono)]:
                    del clean[tuple(mono)]
        self.terms = clean

    @classmethod
    def variable(cls, i: int, nvars: int) -> SparsePolynomial:
        return cls(nvars, {tuple(int(j == i) for j in range(nvars)): 1})

    @classmethod
    def constant(cls, c, nvars: int) -> SparsePolynomial:
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def linear(cls, coeffs: Sequence) -> SparsePolynomial:
        n = len(coeffs)
        return cls(n, {tuple(int(j == i) for j in range(n)): c for i, c in enumerate(coeffs)})

    @classmethod
    def power_sum(cls, nvars: int, d: int) -> SparsePolynomial:
        return cls(nvars, {tuple(d if j == i else 0 for j in range(nvars)): 1 for i in range(nvars)})

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for mono, c in sorted(self.terms.items(), reverse=True):
            factors = [f"x{i}^{e}" if e > 1 else f"x{i}" for i, e in enumerate(mono) if e]
            parts.append("*".join([str(c)] + factors))
        return " + ".join(parts)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparsePolynomial):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def _coerce(self, other) -> SparsePolynomial:
        if isinstance(other, SparsePolynomial):
            if other.nvars != self.nvars:
                raise ValueError("variable count mismatch")
            return other
        return SparsePolynomial.constant(other, self.nvars)

    def __add__(self, other) -> SparsePolynomial:
        other = self._coerce(other)
        out = dict(self.terms)
        for mono, c in other.terms.items():
            out[mono] = out.get(mono, Fraction(0)) + c
        return SparsePolynomial(self.nvars, out)

    __radd__ = __add__

    def __neg__(self) -> SparsePolynomial:
        return SparsePolynomial(self.nvars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> SparsePolynomial:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> SparsePolynomial:
        return self._coerce(other) - self

    def __mul__(self, other) -> SparsePolynomial:
        if not isinstance(other, SparsePolynomial):
            c = Fraction(other)
            return SparsePolynomial(self.nvars, {m: c * v for m, v in self.terms.items()})
        other = self._coerce(other)
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out.get(m, Fraction(0)) + c1 * c2
        return SparsePolynomial(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> SparsePolynomial:
        if k < 0:
            raise ValueError("negative power")
        result = SparsePolynomial.constant(1, self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def degrees(self) -> set[int]:
        return {sum(m) for m in self.terms}

    def is_homogeneous(self, d: int | None = None) -> bool:
        degs = self.degrees()
        if not degs:
            return True
        return len(degs) == 1 and (d is None or degs == {d})

    def diff(self, i: int) -> SparsePolynomial:
        out = {}
        for m, c in self.terms.items():
            if m[i]:
                nm = list(m)
                nm[i] -= 1
                out[tuple(nm)] = c * m[i]
        return SparsePolynomial(self.nvars, out)

    def __call__(self, point: Sequence) -> Fraction:
        if len(point) != self.nvars:
            raise ValueError("dimension mismatch")
        pt = [Fraction(x) for x in point]
        total = Fraction(0)
        for m, c in self.terms.items():
            term = c
            for x, e in zip(pt, m):
                if e:
                    term *= x**e
            total += term
        return total

    def gradient(self, point: Sequence) -> tuple[Fraction, ...]:
        """Term-wise partial derivatives evaluated at ``point``."""
        if len(point) != self.nvars:
            raise ValueError("dimension mismatch")
        pt = [Fraction(x) for x in point]
        grad = [Fraction(0)] * self.nvars
        for m, c in self.terms.items():
            for i, e in enumerate(m):
                if not e:
                    continue
                term = c * e
                for j, (x, f) in enumerate(zip(pt, m)):
                    p = f - 1 if j == i else f
                    if p:
                        term *= x**p
                grad[i] += term
        return tuple(grad)


def monomial_product(nvars: int) -> SparsePolynomial:
    """x_0 x_1 ... x_{n-1}."""
    return SparsePolynomial(nvars, {(1,) * nvars: 1})


def sum_polys(polys: Iterable[SparsePolynomial], nvars: int) -> SparsePolynomial:
    out = SparsePolynomial(nvars)
    for p in polys:
        out = out + p
    return out
