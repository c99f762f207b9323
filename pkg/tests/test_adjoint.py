from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cartan_principal import linalg
from cartan_principal.adjoint import (
    ad_e0_kernel_dims,
    ad_e0_power,
    certify,
    ef_action,
    h0_eigenvalues_ok,
    in_kernel,
    module_dimensions,
    positive_structure_constants,
    principal_triple,
    sigma_commutes,
)
from cartan_principal.principal import PrincipalBasis, principal_basis
from cartan_principal.rootsys import build_root_system, lie_algebra_dimension

from conftest import MEDIUM_TYPES

F = Fraction


def basis(t, vectors, labels):
    rs = build_root_system(t)
    return PrincipalBasis(
        type=rs.type,
        dual=False,
        vectors=tuple(vectors),
        ambient=tuple(rs.from_coroot_coordinates(x) for x in vectors),
        exponent_labels=tuple(labels),
        generator_provenance=("hand",),
    )


def test_a2_constants():
    sc = positive_structure_constants(build_root_system("A2"))
    assert abs(sc.table[(0, 1)]) == 1
    assert sc.bracket(2, 0) is None
    assert len(sc.table) == 2


def test_b2_constants():
    rs = build_root_system("B2")
    sc = positive_structure_constants(rs)
    # α1 long, α2 short: [e_α2, e_α1] has p = 0, [e_α2, e_{α1+α2}] has p = 1
    a12 = rs.index_of_coefficients((1, 1))
    assert abs(sc.table[(1, 0)]) == 1
    assert abs(sc.table[(1, a12)]) == 2
    assert (0, a12) not in sc.table


@pytest.mark.parametrize("t", MEDIUM_TYPES + ["E6"])
def test_chevalley_integrality(t):
    rs = build_root_system(t)
    sc = positive_structure_constants(rs)
    for (i, b), n in sc.table.items():
        assert abs(n) == sc.string_p(i, b) + 1


@pytest.mark.parametrize("t", ["A3", "B3", "C3", "D4", "G2", "F4"])
def test_jacobi_in_positive_part(t):
    assert positive_structure_constants(build_root_system(t)).jacobi_violations() == []


@pytest.mark.parametrize("t", ["B3", "D4", "G2"])
def test_jacobi_with_flipped_signs(t):
    rs = build_root_system(t)
    signs = {b: -1 for b, h in enumerate(rs.heights) if h >= 2 and b % 2 == 0}
    assert positive_structure_constants(rs, signs).jacobi_violations() == []


def test_triple():
    assert principal_triple(build_root_system("D4")).c == (6, 10, 6, 6)
    assert principal_triple(build_root_system("A2")).c == (2, 2)
    assert principal_triple(build_root_system("G2")).c == (10, 18)


@pytest.mark.parametrize("t", MEDIUM_TYPES + ["E6", "E7"])
def test_triple_invariants(t):
    rs = build_root_system(t)
    tr = principal_triple(rs)
    assert tr.h0 == linalg.scale(2, rs.rho_check)
    assert all(linalg.dot(a, tr.h0) == 2 for a in rs.simple_roots)
    total = linalg.zero(rs.ambient_dim)
    for c, a in zip(tr.c, rs.simple_roots):
        total = linalg.add(total, linalg.scale(c, rs.form.b_flat(a)))
    assert total == tr.h0
    assert h0_eigenvalues_ok(rs)


def test_kernel_dims_examples():
    a2 = build_root_system("A2")
    sc = positive_structure_constants(a2)
    assert [ad_e0_kernel_dims(a2, sc, m) for m in (1, 2, 3)] == [0, 1, 2]
    d4 = build_root_system("D4")
    assert ad_e0_kernel_dims(d4, positive_structure_constants(d4), 4) == 3
    with pytest.raises(ValueError):
        ad_e0_kernel_dims(a2, sc, 0)


def test_kernel_dims_past_the_top(caplog):
    rs = build_root_system("B2")
    sc = positive_structure_constants(rs)
    with caplog.at_level("WARNING"):
        assert ad_e0_kernel_dims(rs, sc, 9) == 2
    assert "exceeds" in caplog.text


@pytest.mark.parametrize("t", ["A4", "B3", "F4", "G2"])
def test_ad_e0_raises_height(t):
    rs = build_root_system(t)
    sc = positive_structure_constants(rs)
    assert len(sc.ad_e0_from_h()) == len(sc.layers[1])
    for k in range(1, max(rs.heights)):
        m = sc.ad_e0_layer(k)
        assert len(m) == len(sc.layers[k + 1])
        assert all(len(row) == len(sc.layers[k]) for row in m)
    assert ad_e0_power(sc, (1,) * rs.rank, max(rs.heights) + 1) == []


def test_module_dimensions():
    assert module_dimensions(build_root_system("A2")) == [3, 5]
    assert module_dimensions(build_root_system("D4")) == [3, 7, 7, 11]
    assert module_dimensions(build_root_system("G2")) == [3, 11]
    for t in MEDIUM_TYPES + ["E6", "E7", "E8"]:
        rs = build_root_system(t)
        assert sum(module_dimensions(rs)) == lie_algebra_dimension(rs.type)


def test_certify_a2_hand_basis():
    report = certify(basis("A2", [(1, 1), (1, -1)], [1, 2]))
    assert report.certified and report.orthogonal


def test_certify_perturbed_fails():
    report = certify(basis("A2", [(1, 1), (2, 0)], [1, 2]))
    assert not report.certified
    assert not report.orthogonal
    assert any("vectors 0 and 1" in f for f in report.failures)


def test_certify_g2_kernel_levels():
    rs = build_root_system("G2")
    sc = positive_structure_constants(rs)
    h2 = (-3, 1)
    assert in_kernel(sc, h2, 6) and not in_kernel(sc, h2, 5)
    assert certify(basis("G2", [(5, 3), (-3, 1)], [1, 5])).certified


def test_certify_wrong_labels():
    report = certify(basis("A2", [(1, -1), (1, 1)], [1, 2]))
    assert not report.certified
    assert any("Ker" in f for f in report.failures)


@pytest.mark.parametrize("t", ["A3", "B3", "C4", "G2", "F4"])
def test_ef_eigenvalues(t):
    rs = build_root_system(t)
    tr = principal_triple(rs)
    pb = principal_basis(t)
    for x, k in zip(pb.ambient, pb.exponent_labels):
        assert ef_action(rs, tr, x) == linalg.scale(k * (k + 1), x)


@pytest.mark.parametrize("t", ["D4", "D6"])
def test_sigma_commutes(t):
    rs = build_root_system(t)
    assert sigma_commutes(rs, positive_structure_constants(rs))
    report = certify(principal_basis(t))
    assert report.sigma == tuple([True] * rs.rank)


def test_sigma_only_for_d_even():
    rs = build_root_system("D5")
    with pytest.raises(ValueError):
        sigma_commutes(rs, positive_structure_constants(rs))


def test_sigma_violation_is_reported():
    pb = principal_basis("D4")
    swapped = basis("D4", [pb.vectors[0], pb.vectors[2], pb.vectors[1], pb.vectors[3]], pb.exponent_labels)
    report = certify(swapped)
    assert not report.certified
    assert any("σ" in f for f in report.failures)


@pytest.mark.parametrize("t", ["B3", "D4", "G2", "F4"])
@settings(max_examples=8, deadline=None)
@given(data=st.data())
def test_certification_independent_of_signs(t, data):
    rs = build_root_system(t)
    idx = [b for b, h in enumerate(rs.heights) if h >= 2]
    flips = data.draw(st.lists(st.sampled_from(idx), unique=True))
    sc = positive_structure_constants(rs, {b: -1 for b in flips})
    pb = principal_basis(t)
    base = certify(pb)
    other = certify(pb, rs, sc)
    assert other.vectors == base.vectors and other.certified
    for m in range(1, max(rs.exponents) + 2):
        assert ad_e0_kernel_dims(rs, sc, m) == ad_e0_kernel_dims(rs, positive_structure_constants(rs), m)


def test_certify_type_mismatch():
    with pytest.raises(ValueError):
        certify(principal_basis("B2"), build_root_system("C2"))
