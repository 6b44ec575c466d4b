import random
from fractions import Fraction as F

import pytest

from liechar import (
    GradedCharacter,
    GroupRingContext,
    GroupRingElt,
    UsageError,
    build_root_system,
    pochhammer_finite,
    pochhammer_inverse,
    series_equal,
    series_one,
    specialize,
    weight,
)

A1 = build_root_system("A1")
A2 = build_root_system("A2")
CTX1 = GroupRingContext(A1)
CTX2 = GroupRingContext(A2)


def partition_numbers(n):
    dp = [1] + [0] * n
    for m in range(1, n + 1):
        for k in range(m, n + 1):
            dp[k] += dp[k - m]
    return dp


def random_group_ring(rng, rs, size=3, span=2):
    terms = {}
    for _ in range(size):
        w = tuple(rng.randint(-span, span) for _ in range(rs.rank))
        terms[w] = rng.randint(-3, 3)
    return GroupRingElt(terms)


def random_series(rng, ctx, order=5, nterms=4):
    terms = {}
    for _ in range(nterms):
        e = F(rng.randint(0, 2 * order), rng.choice([1, 1, 2]))
        if e <= order:
            terms[e] = random_group_ring(rng, ctx.rs)
    return GradedCharacter(ctx, order, terms)


# -- group ring ---------------------------------------------------------------


def test_group_ring_against_dense_oracle():
    rng = random.Random(7)
    for _ in range(30):
        a = random_group_ring(rng, A2)
        b = random_group_ring(rng, A2)
        prod = a * b
        # dense oracle: accumulate every cross term independently
        expect = {}
        for w1, c1 in a.terms.items():
            for w2, c2 in b.terms.items():
                w = tuple(x + y for x, y in zip(w1, w2))
                expect[w] = expect.get(w, 0) + c1 * c2
        expect = {w: c for w, c in expect.items() if c != 0}
        assert prod.terms == {weight(w): c for w, c in expect.items()}
        assert (a + b).terms == {
            weight(w): c
            for w in set(a.terms) | set(b.terms)
            if (c := a.terms.get(w, 0) + b.terms.get(w, 0)) != 0
        }


def test_group_ring_no_zero_coeffs():
    e = GroupRingElt({(1,): 2, (0,): 0})
    assert (0,) not in e.terms
    diff = e - e
    assert diff.is_zero() and diff.terms == {}


# -- ring laws ----------------------------------------------------------------


def test_series_one_is_identity():
    rng = random.Random(11)
    one = series_one(CTX2, 5)
    assert one.coeff(0) == GroupRingElt.one(2)
    for _ in range(10):
        f = random_series(rng, CTX2)
        assert series_equal(one.mul(f), f) is None
        assert one.mul(f).order == f.order


def test_ring_laws_on_random_series():
    rng = random.Random(13)
    for _ in range(8):
        f = random_series(rng, CTX2, order=4)
        g = random_series(rng, CTX2, order=4)
        h = random_series(rng, CTX2, order=4)
        assert series_equal(f.mul(g), g.mul(f)) is None
        assert series_equal(f.add(g), g.add(f)) is None
        assert series_equal(f.mul(g).mul(h), f.mul(g.mul(h))) is None
        lhs = f.mul(g.add(h))
        rhs = f.mul(g).add(f.mul(h))
        assert series_equal(lhs, rhs) is None


def test_mul_against_dense_convolution_oracle():
    rng = random.Random(17)
    for _ in range(10):
        f = random_series(rng, CTX2, order=6)
        g = random_series(rng, CTX2, order=6)
        prod = f.mul(g)
        for d in prod.exponents():
            acc = GroupRingElt()
            for e1, c1 in f.terms.items():
                for e2, c2 in g.terms.items():
                    if e1 + e2 == d:
                        acc = acc + c1 * c2
            assert prod.coeff(d) == acc


def test_difference_of_squares():
    alpha = A1.simple_roots[0]
    ea = GroupRingElt.monomial(alpha)
    f = GradedCharacter(CTX1, 5, {0: CTX1.one(), 1: ea})
    g = GradedCharacter(CTX1, 5, {0: CTX1.one(), 1: ea.scale(-1)})
    prod = f.mul(g)
    assert prod.coeff(1).is_zero()
    assert prod.coeff(2) == GroupRingElt.monomial(weight([4])).scale(-1)


def test_mismatched_contexts_raise():
    f = series_one(CTX1, 3)
    g = series_one(CTX2, 3)
    with pytest.raises(UsageError):
        f.mul(g)
    with pytest.raises(UsageError):
        f.add(g)


def test_negative_exponents_round_trip():
    # q^{-1/2}(1 - q) times q^{1/2} recovers 1 - q with correct bookkeeping
    f = GradedCharacter(CTX1, 4, {0: CTX1.one(), 1: CTX1.one().scale(-1)}).shift(F(-1, 2))
    assert f.lower_bound() == F(-1, 2)
    g = GradedCharacter(CTX1, 4, {F(1, 2): CTX1.one()})
    prod = f.mul(g)
    assert prod.coeff(0) == GroupRingElt.one(1)
    assert prod.coeff(1) == GroupRingElt.one(1).scale(-1)
    # completeness bound respects the negative lower bound
    assert prod.order == min(f.order + g.lower_bound(), g.order + f.lower_bound())


# -- pochhammer ---------------------------------------------------------------


def test_pochhammer_partition_numbers():
    n = 30
    series = pochhammer_inverse(CTX1, weight([0]), 1, n)
    triv = specialize(series, "trivial")
    expect = partition_numbers(n)
    for k in range(n + 1):
        assert triv.coeff(k) == expect[k]


def test_pochhammer_weighted_expansion():
    alpha = A1.simple_roots[0]
    series = pochhammer_inverse(CTX1, alpha, 1, 2)
    assert series.coeff(0) == GroupRingElt.one(1)
    assert series.coeff(1) == GroupRingElt.monomial(alpha)
    two_alpha = weight([4])
    assert series.coeff(2) == GroupRingElt({alpha: 1, two_alpha: 1})


def test_pochhammer_defining_property():
    alpha = A1.simple_roots[0]
    for mu, s in [(weight([0]), 1), (alpha, 1), (alpha, F(1, 2))]:
        inv = pochhammer_inverse(CTX1, mu, s, 5)
        fin = pochhammer_finite(CTX1, mu, s, 5)
        assert series_equal(inv.mul(fin), series_one(CTX1, 5)) is None


def test_pochhammer_requires_positive_shift():
    with pytest.raises(UsageError):
        pochhammer_inverse(CTX1, weight([0]), 0, 3)
    with pytest.raises(UsageError):
        pochhammer_inverse(CTX1, weight([0]), -1, 3)


# -- specialization -----------------------------------------------------------


def test_trivial_specialization():
    alpha = A1.simple_roots[0]
    e = GroupRingElt({alpha: 1, weight([-2]): 1})
    f = GradedCharacter(CTX1, 3, {1: e})
    triv = specialize(f, "trivial")
    assert triv.coeff(1) == 2


def test_ray_specialization_value():
    # e^alpha q -> z^{(alpha, rho_check)} q; for A1 (alpha, rho_check) = 1
    alpha = A1.simple_roots[0]
    assert A1.inner(alpha, A1.rho_check) == 1
    f = GradedCharacter(CTX1, 3, {1: GroupRingElt.monomial(alpha)})
    ray = specialize(f, "ray")
    assert ray.coeff(1).terms == {F(1): 1}
    # a custom coweight moves the exponent
    ray2 = specialize(f, "ray", xi=weight([2]))
    assert ray2.coeff(1).terms == {F(2): 1}


@pytest.mark.parametrize("mode", ["trivial", "ray"])
def test_specialization_is_ring_homomorphism(mode):
    rng = random.Random(23)
    for _ in range(8):
        f = random_series(rng, CTX2, order=5)
        g = random_series(rng, CTX2, order=5)
        lhs = specialize(f.mul(g), mode)
        rhs = specialize(f, mode).mul(specialize(g, mode))
        assert series_equal(lhs, rhs) is None
        lhs = specialize(f.add(g), mode)
        rhs = specialize(f, mode).add(specialize(g, mode))
        assert series_equal(lhs, rhs) is None


def test_specialize_bad_mode():
    f = series_one(CTX1, 1)
    with pytest.raises(UsageError):
        specialize(f, "nonsense")


# -- serialization ------------------------------------------------------------


def test_canonical_serialization_deterministic():
    rng = random.Random(29)
    f = random_series(rng, CTX2, order=4)
    s1 = f.canonical_str()
    # rebuild with shuffled insertion order
    items = list(f.terms.items())
    rng.shuffle(items)
    g = GradedCharacter(CTX2, f.order, dict(items))
    assert g.canonical_str() == s1


def test_canonical_serialization_golden():
    series = GradedCharacter(
        CTX1,
        F(3, 2),
        {F(1, 2): GroupRingElt({(2,): 1, (-2,): -1}), 1: GroupRingElt.one(1)},
    )
    expected = (
        '{"context":{"coefficients":"group_ring","type":"A1"},'
        '"series":[{"exponent":"1/2","terms":[{"coeff":-1,"weight":[-2]},'
        '{"coeff":1,"weight":[2]}]},'
        '{"exponent":"1","terms":[{"coeff":1,"weight":[0]}]}],'
        '"truncation_order":"3/2"}'
    )
    assert series.canonical_str() == expected


def test_exponent_denominator():
    f = GradedCharacter(CTX1, 2, {F(1, 2): CTX1.one(), F(2, 3): CTX1.one()})
    assert f.exponent_denominator() == 6
