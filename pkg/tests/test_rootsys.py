from fractions import Fraction as F

import pytest

from liechar import (
    UsageError,
    build_root_system,
    cartan_isomorphic,
    langlands_dual,
    weight,
)

ALL_TYPES = ["A1", "A2", "A3", "A4", "B2", "B3", "B4", "C2", "C3", "C4",
             "D4", "D5", "E6", "E7", "E8", "F4", "G2"]

# classical values, used as an independent cross-check of the construction
KNOWN = {
    # type: (num positive roots, dual Coxeter, lacity)
    "A1": (1, 2, 1), "A2": (3, 3, 1), "A3": (6, 4, 1), "A4": (10, 5, 1),
    "B2": (4, 3, 2), "B3": (9, 5, 2), "B4": (16, 7, 2),
    "C2": (4, 3, 2), "C3": (9, 4, 2), "C4": (16, 5, 2),
    "D4": (12, 6, 1), "D5": (20, 8, 1),
    "E6": (36, 12, 1), "E7": (63, 18, 1), "E8": (120, 30, 1),
    "F4": (24, 9, 2), "G2": (6, 4, 3),
}

WEYL_ORDERS = {"A1": 2, "A2": 6, "A3": 24, "B2": 8, "B3": 48, "C3": 48,
               "D4": 192, "G2": 12, "F4": 1152, "E6": 51840}


@pytest.mark.parametrize("label", ALL_TYPES)
def test_construction_invariants(label):
    rs = build_root_system(label)
    npos, hvee, lacity = KNOWN[label]
    assert len(rs.positive_roots) == npos
    assert rs.dual_coxeter == hvee
    assert rs.lacity == lacity
    assert rs.dimension() == rs.rank + 2 * npos
    # normalization and Weyl vector pairings
    assert rs.inner(rs.highest_root, rs.highest_root) == 2
    for alpha in rs.simple_roots:
        assert 2 * rs.inner(rs.rho, alpha) / rs.inner(alpha, alpha) == 1
        assert rs.inner(rs.rho_check, alpha) == 1
    # cartan matrix sanity
    for i, row in enumerate(rs.cartan_matrix):
        assert row[i] == 2
        assert all(x <= 0 for j, x in enumerate(row) if j != i)
    # dual Coxeter recomputed from first principles: 1 + (rho, theta^vee)
    theta = rs.highest_root
    assert rs.dual_coxeter == 1 + 2 * rs.inner(rs.rho, theta) / rs.inner(theta, theta)


@pytest.mark.parametrize("label", ["A1", "A2", "A3", "D4", "E6", "E7", "E8"])
def test_simply_laced_rho_equals_rho_check(label):
    rs = build_root_system(label)
    assert rs.rho == rs.rho_check
    assert rs.lacity == 1


def test_inner_product_examples():
    a1 = build_root_system("A1")
    alpha = a1.simple_roots[0]
    assert a1.inner(alpha, alpha) == 2
    assert a1.inner(a1.rho, a1.rho) == F(1, 2)
    a2 = build_root_system("A2")
    assert a2.inner(a2.simple_roots[0], a2.simple_roots[1]) == -1
    with pytest.raises(UsageError):
        a2.inner(alpha, a2.rho)  # wrong rank


def test_parse_labels():
    assert build_root_system("d4").type_label == "D4"
    assert build_root_system("G_2").type_label == "G2"
    for bad in ["H3", "A0", "D3", "E9", "F5", "xyz", "B"]:
        with pytest.raises(UsageError):
            build_root_system(bad)


def test_langlands_dual():
    a2 = build_root_system("A2")
    assert langlands_dual(a2).cartan_matrix == a2.cartan_matrix
    b2 = build_root_system("B2")
    c2 = langlands_dual(b2)
    assert c2.type_label == "C2"
    n = b2.rank
    assert all(
        c2.cartan_matrix[i][j] == b2.cartan_matrix[j][i]
        for i in range(n) for j in range(n)
    )
    g2 = build_root_system("G2")
    g2d = langlands_dual(g2)
    assert g2d.type_label == "G2"
    # long/short roles swap: symmetrizers are permuted
    assert sorted(g2d.symmetrizer) == sorted(g2.symmetrizer)
    assert g2d.symmetrizer != g2.symmetrizer


@pytest.mark.parametrize("label", ["A2", "B3", "C4", "D4", "F4", "G2"])
def test_dual_is_involution_up_to_iso(label):
    rs = build_root_system(label)
    double = langlands_dual(langlands_dual(rs))
    assert double.type_label == rs.type_label
    assert cartan_isomorphic(double.cartan_matrix, rs.cartan_matrix)


def test_weyl_orbits():
    a2 = build_root_system("A2")
    assert len(a2.weyl_orbit(weight([1, 0]))) == 3
    assert a2.weyl_orbit(weight([0, 0])) == [weight([0, 0])]
    a1 = build_root_system("A1")
    assert a1.weyl_orbit_signed(a1.rho) == [(weight([-1]), -1), (weight([1]), 1)]
    with pytest.raises(UsageError):
        a2.weyl_orbit(weight([-1, 0]))
    with pytest.raises(UsageError):
        a2.weyl_orbit_signed(weight([1, 0]))  # not regular


@pytest.mark.parametrize("label", ["A2", "B2", "A3", "D4", "G2"])
def test_orbit_sizes_divide_weyl_order(label):
    rs = build_root_system(label)
    if label in WEYL_ORDERS:
        assert rs.weyl_order == WEYL_ORDERS[label]
    samples = [rs.rho, rs.highest_root, weight([1] + [0] * (rs.rank - 1))]
    for lam in samples:
        assert rs.weyl_order % len(rs.weyl_orbit(lam)) == 0
    assert len(rs.weyl_orbit_signed(rs.rho)) == rs.weyl_order


def test_star():
    a1 = build_root_system("A1")
    assert a1.star(weight([3])) == weight([3])
    a2 = build_root_system("A2")
    assert a2.star(weight([1, 0])) == weight([0, 1])
    d4 = build_root_system("D4")
    assert d4.star(weight([1, 0, 0, 0])) == weight([1, 0, 0, 0])
    with pytest.raises(UsageError):
        a2.star(weight([-1, 0]))


@pytest.mark.parametrize("label", ["A2", "B2", "A3", "D4", "G2"])
def test_star_involution_and_isometry(label):
    rs = build_root_system(label)
    for lam in rs.dominant_weights_in_root_lattice(3):
        star = rs.star(lam)
        assert rs.star(star) == lam
        assert rs.norm2(star) == rs.norm2(lam)
        assert rs.in_root_lattice(star)


def test_dominant_weights_in_root_lattice():
    a1 = build_root_system("A1")
    assert a1.dominant_weights_in_root_lattice(0) == [weight([0])]
    assert a1.dominant_weights_in_root_lattice(1) == [weight([0]), a1.highest_root]
    a2 = build_root_system("A2")
    assert a2.dominant_weights_in_root_lattice(1) == [weight([0, 0]), a2.highest_root]
    # sorted by norm then lex, no duplicates
    ws = a2.dominant_weights_in_root_lattice(6)
    assert len(set(ws)) == len(ws)
    norms = [a2.norm2(w) for w in ws]
    assert norms == sorted(norms)


def test_lattice_membership():
    a2 = build_root_system("A2")
    assert a2.in_root_lattice(a2.highest_root)
    assert not a2.in_root_lattice(weight([1, 0]))  # omega_1 generates P/Q = Z/3
    assert a2.is_integral(weight([1, 0]))
    assert not a2.is_integral(weight([F(1, 2), 0]))


@pytest.mark.parametrize("label", ALL_TYPES)
def test_weyl_dimension(label):
    rs = build_root_system(label)
    assert rs.weyl_dimension(weight([0] * rs.rank)) == 1
    assert rs.weyl_dimension(rs.highest_root) == rs.dimension()
