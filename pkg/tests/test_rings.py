import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import all_rings, random_element, random_nonzero
from cirsa.errors import (
    BothZero,
    DivisionByZero,
    NotApplicable,
    RingMismatch,
    ZeroElement,
)
from cirsa.rings import (
    Element,
    canonical_assoc,
    euclid_div,
    factor_element,
    factor_int,
    gaussian_ring,
    gcd,
    integer_ring,
    is_prime_element,
    is_unit,
    norm,
    poly_ring,
    quad_hnf,
    quadratic_ring,
    random_prime_element,
    ring_from_tag,
    xgcd,
)

Z = integer_ring()
G = gaussian_ring()
Q2 = quadratic_ring(2)
Q3 = quadratic_ring(3)
P2 = poly_ring(2)
P3 = poly_ring(3)


class TestArith:
    def test_gaussian_conjugate_product(self):
        assert (G.el(1, 1) * G.el(1, -1)) == G.el(2, 0)

    def test_char2_square(self):
        x1 = P2.el(1, 1)
        assert (x1 * x1) == P2.el(1, 0, 1)

    def test_additive_inverse(self, ring, rng):
        for _ in range(50):
            a = random_element(ring, rng)
            assert not (a + (-a))

    def test_ring_mismatch(self):
        with pytest.raises(RingMismatch):
            Z.el(1) + G.el(1, 0)

    def test_sub_is_add_neg(self, ring, rng):
        for _ in range(50):
            a, b = random_element(ring, rng), random_element(ring, rng)
            assert a - b == a + (-b)


class TestNorm:
    def test_integer(self):
        assert norm(Z.el(12)) == 12
        assert norm(Z.el(-7)) == 7

    def test_gaussian_residue_count(self):
        # |Z[i]/(1+i)| by exhaustive reduction of a probe grid
        from cirsa.quotient import ideal

        A = ideal(G.el(1, 1))
        probes = [G.el(a, b) for a in range(-4, 5) for b in range(-4, 5)]
        assert len({A.reduce(x) for x in probes}) == 2
        assert norm(G.el(1, 1)) == 2

    def test_poly_norm_is_q_to_degree(self):
        assert norm(P3.el(1, 0, 1)) == 9
        assert norm(P2.el(1,)) == 1

    def test_zero_rejected(self, ring):
        with pytest.raises(ZeroElement):
            norm(ring.zero)

    def test_multiplicative(self, ring, rng):
        for _ in range(300):
            a = random_nonzero(ring, rng)
            b = random_nonzero(ring, rng)
            assert norm(a * b) == norm(a) * norm(b)


class TestUnits:
    def test_examples(self):
        assert is_unit(G.el(0, 1))
        assert is_unit(Q2.el(1, 1))  # (1+sqrt2)(-1+sqrt2) = 1
        assert (Q2.el(1, 1) * Q2.el(-1, 1)) == Q2.one
        assert not is_unit(Z.el(2))
        assert not is_unit(Z.el(0))

    def test_real_quadratic_unit_powers(self):
        u = Q2.el(1, 1)
        acc = Q2.one
        for _ in range(8):
            acc = acc * u
            assert is_unit(acc)


class TestEuclidDiv:
    def test_integers(self):
        q, r = euclid_div(Z.el(7), Z.el(3))
        assert (q, r) == (Z.el(2), Z.el(1))

    def test_gaussian_small(self):
        a, b = G.el(5, 0), G.el(1, 1)
        q, r = euclid_div(a, b)
        assert q * b + r == a
        assert not r or norm(r) < norm(b)

    def test_poly_long_division(self):
        q, r = euclid_div(P2.el(0, 0, 0, 1), P2.el(1, 0, 1))
        assert q == P2.el(0, 1) and r == P2.el(0, 1)

    def test_division_by_zero(self, ring):
        with pytest.raises(DivisionByZero):
            euclid_div(ring.one, ring.zero)

    def test_remainder_bound_bulk(self, ring, rng):
        # the module-level invariant: 10^4 random pairs per ring
        for _ in range(10_000):
            a = random_element(ring, rng, span=10**6, max_deg=8)
            b = random_nonzero(ring, rng, span=10**4, max_deg=5)
            q, r = euclid_div(a, b)
            assert q * b + r == a
            assert not r or norm(r) < norm(b)

    @given(a=st.integers(-(10**18), 10**18), b=st.integers(-(10**9), 10**9))
    def test_integer_property(self, a, b):
        if b == 0:
            return
        q, r = euclid_div(Z.el(a), Z.el(b))
        assert q.coords[0] * b + r.coords[0] == a
        assert r.coords[0] == 0 or abs(r.coords[0]) < abs(b)

    @settings(max_examples=200)
    @given(
        a0=st.integers(-(10**6), 10**6),
        a1=st.integers(-(10**6), 10**6),
        b0=st.integers(-(10**3), 10**3),
        b1=st.integers(-(10**3), 10**3),
    )
    def test_gaussian_property(self, a0, a1, b0, b1):
        if b0 == 0 and b1 == 0:
            return
        a, b = G.el(a0, a1), G.el(b0, b1)
        q, r = euclid_div(a, b)
        assert q * b + r == a
        assert not r or norm(r) < norm(b)


class TestXgcd:
    def test_bezout_small(self):
        g, u, v = xgcd(Z.el(6), Z.el(35))
        assert g == Z.el(1)
        assert u * Z.el(6) + v * Z.el(35) == Z.el(1)

    def test_gcd_with_zero(self, ring, rng):
        a = random_nonzero(ring, rng)
        g, u, v = xgcd(a, ring.zero)
        assert g == canonical_assoc(a)[1]
        assert u * a == g and not v

    def test_gaussian_associates(self):
        g, u, v = xgcd(G.el(1, 1), G.el(1, -1))
        assert norm(g) == 2  # associate to 1+i
        assert u * G.el(1, 1) + v * G.el(1, -1) == g

    def test_both_zero(self, ring):
        with pytest.raises(BothZero):
            xgcd(ring.zero, ring.zero)

    def test_bezout_bulk(self, ring, rng):
        for _ in range(500):
            a = random_element(ring, rng)
            b = random_element(ring, rng)
            if not a and not b:
                continue
            g, u, v = xgcd(a, b)
            assert u * a + v * b == g
            for x in (a, b):
                if x:
                    _, r = euclid_div(x, g)
                    assert not r


class TestPrimality:
    def test_inert_three_is_prime_in_gaussian(self):
        # oracle: Z[i]/(3) has 9 residues and no zero divisors
        from cirsa.quotient import enumerate_residues, ideal

        A = ideal(G.el(3, 0))
        residues = list(enumerate_residues(A))
        assert len(residues) == 9
        for x in residues:
            for y in residues:
                if x and y:
                    assert A.reduce(x * y), (x, y)
        assert is_prime_element(G.el(3, 0))

    def test_split_five_is_composite(self):
        assert not is_prime_element(G.el(5, 0))
        assert G.el(2, 1) * G.el(2, -1) == G.el(5, 0)

    def test_gf2_quadratic(self):
        # x^2+x+1 has no roots in GF(2) and degree 2, hence irreducible
        f = P2.el(1, 1, 1)
        for c in (P2.zero, P2.one):
            assert c * c + c + P2.one  # f(c) != 0
        assert is_prime_element(f)
        assert not is_prime_element(P2.el(1, 0, 1))  # (x+1)^2

    def test_not_applicable(self):
        with pytest.raises(NotApplicable):
            is_prime_element(Z.el(0))
        with pytest.raises(NotApplicable):
            is_prime_element(G.el(0, 1))

    def test_ramified_rationals_not_prime(self):
        assert not is_prime_element(Q2.el(2, 0))  # 2 = (sqrt2)^2
        assert not is_prime_element(Q3.el(3, 0))
        assert is_prime_element(Q2.el(0, 1))
        assert is_prime_element(Q3.el(1, 1))  # norm |1-3| = 2

    def test_inert_in_real_quadratic(self):
        # 5 is inert in Z[sqrt2]: 2 is not a square mod 5
        assert pow(2, 2, 5) != 1
        assert is_prime_element(Q2.el(5, 0))
        assert not is_prime_element(Q2.el(7, 0))  # 7 = (3+sqrt2)(3-sqrt2)


class TestRandomPrime:
    def test_integer_window(self):
        p = random_prime_element(Z, 8, random.Random(1))
        assert 128 <= norm(p) < 256 and is_prime_element(p)

    def test_reproducible(self, ring):
        a = random_prime_element(ring, 10, random.Random(99))
        b = random_prime_element(ring, 10, random.Random(99))
        assert a == b

    def test_window_and_primality(self, ring, rng):
        for bits in (8, 12):
            p = random_prime_element(ring, bits, rng)
            assert is_prime_element(p)
            assert 1 << (bits - 1) <= norm(p) < 1 << bits


class TestFactor:
    def test_twelve(self):
        f = factor_element(Z.el(12))
        assert [(p.coords[0], e) for p, e in f.factors] == [(2, 2), (3, 1)]
        assert f.value() == Z.el(12)

    def test_gaussian_five(self):
        f = factor_element(G.el(5, 0))
        assert len(f.factors) == 2
        assert all(e == 1 and norm(p) == 5 for p, e in f.factors)
        assert f.value() == G.el(5, 0)

    def test_poly_split(self):
        f = factor_element(P2.el(0, 1, 1))  # x^2 + x = x(x+1)
        assert [(p.coords, e) for p, e in f.factors] == [((0, 1), 1), ((1, 1), 1)]

    def test_recompose_and_primality(self, ring, rng):
        for _ in range(60):
            m = random_nonzero(ring, rng, span=40, max_deg=6)
            if is_unit(m):
                continue
            f = factor_element(m)
            assert f.value() == m
            assert is_unit(f.unit)
            for p, e in f.factors:
                assert e >= 1 and is_prime_element(p)
            # pairwise non-associate
            from cirsa.quotient import ideal

            ids = [ideal(p) for p, _ in f.factors]
            assert len(set(ids)) == len(ids)

    def test_factor_int_budget(self):
        n = 2**61 - 1  # prime; forces the rho path to give up trial division
        assert factor_int(n) == {n: 1}


class TestCanonical:
    def test_real_quadratic_associates_share_canonical(self, rng):
        for ring in (Q2, Q3):
            u = ring.el(1, 1) if ring is Q2 else ring.el(2, 1)
            for _ in range(120):
                m = random_nonzero(ring, rng, span=20)
                c1 = canonical_assoc(m)[1]
                acc = m
                for _ in range(3):
                    acc = acc * u
                    assert canonical_assoc(acc)[1] == c1
                assert canonical_assoc(-m)[1] == c1

    def test_unit_times_canonical_recomposes(self, ring, rng):
        for _ in range(200):
            a = random_nonzero(ring, rng)
            u, c = canonical_assoc(a)
            assert is_unit(u) or (ring is Z and u == Z.one)
            assert u * c == a


class TestTags:
    def test_roundtrip(self):
        for tag in ("integer", "gaussian", "quadratic:2", "quadratic:-2", "poly:2"):
            assert ring_from_tag(tag).tag == tag

    def test_element_text_roundtrip(self, ring, rng):
        for _ in range(100):
            a = random_element(ring, rng)
            assert ring.parse_element(str(a)) == a

    def test_bad_tags(self):
        for bad in ("quadratic:-1", "quadratic:5", "poly:6", "xyz"):
            with pytest.raises(ValueError):
                ring_from_tag(bad)


def test_quad_hnf_determinant(rng):
    for k in (-1, -2, 2, 3):
        ring = quadratic_ring(k)
        for _ in range(200):
            a = random_nonzero(ring, rng, span=50)
            d1, c, d2 = quad_hnf(k, *a.coords)
            assert d1 * d2 == norm(a)
            assert 0 <= c < d1
