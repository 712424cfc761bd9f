import pytest

from conftest import random_element, random_modulus
from helpers import brute_crt_search, brute_phi_by_gcd
from cirsa.errors import CapExceeded, NotComaximal, NotCoprime
from cirsa.numtheory import (
    CongruenceSystem,
    are_comaximal,
    crt_solve,
    ideal_intersection,
    ideal_product,
    mod_inverse_int,
    phi_brute,
    phi_closed,
)
from cirsa.quotient import enumerate_residues, ideal
from cirsa.rings import (
    gaussian_ring,
    integer_ring,
    is_prime_element,
    norm,
    poly_ring,
    quadratic_ring,
    random_prime_element,
)

Z = integer_ring()
G = gaussian_ring()
P2 = poly_ring(2)


class TestComaximal:
    def test_examples(self):
        assert are_comaximal(ideal(Z.el(4)), ideal(Z.el(9)))
        assert not are_comaximal(ideal(G.el(2, 0)), ideal(G.el(1, 1)))
        assert are_comaximal(ideal(P2.el(0, 1)), ideal(P2.el(1, 1)))

    def test_ring_mismatch(self):
        from cirsa.errors import RingMismatch

        with pytest.raises(RingMismatch):
            are_comaximal(ideal(Z.el(4)), ideal(G.el(3, 0)))


class TestCrt:
    def test_two_congruences_against_search(self):
        pairs = [(Z.el(2), ideal(Z.el(3))), (Z.el(3), ideal(Z.el(5)))]
        assert brute_crt_search(pairs) == Z.el(8)
        assert crt_solve(pairs) == Z.el(8)

    def test_single_congruence_is_reduction(self, ring, rng):
        A = ideal(random_modulus(ring, rng))
        r = random_element(ring, rng)
        assert crt_solve([(r, A)]) == A.reduce(r)

    def test_gaussian_example_exhaustive(self):
        pairs = [(G.el(1, 0), ideal(G.el(1, 1))), (G.el(0, 1), ideal(G.el(3, 0)))]
        got = crt_solve(pairs)
        expect = brute_crt_search(pairs)
        assert got == expect
        for r, A in pairs:
            assert A.reduce(got) == A.reduce(r)

    def test_not_comaximal_names_pair(self):
        pairs = [
            (Z.el(0), ideal(Z.el(5))),
            (Z.el(1), ideal(Z.el(4))),
            (Z.el(2), ideal(Z.el(6))),
        ]
        with pytest.raises(NotComaximal) as ei:
            crt_solve(pairs)
        assert (ei.value.i, ei.value.j) == (1, 2)

    def test_random_systems(self, ring, rng):
        solved = 0
        while solved < 120:
            k = rng.randrange(2, 5)
            pairs = []
            prod_norm = 1
            ok = True
            for _ in range(k):
                m = random_modulus(ring, rng, span=15, max_deg=3, max_norm=60)
                A = ideal(m)
                if any(not are_comaximal(A, B) for _, B in pairs):
                    ok = False
                    break
                pairs.append((random_element(ring, rng), A))
                prod_norm *= A.norm
            if not ok or prod_norm > 5000:
                continue
            x = crt_solve(pairs)
            for r, A in pairs:
                assert A.reduce(x) == A.reduce(r)
            solved += 1

    def test_system_type(self):
        sys_ = CongruenceSystem(((Z.el(1), ideal(Z.el(3))),))
        assert crt_solve(sys_) == Z.el(1)


class TestIdealOps:
    def test_product_and_intersection_comaximal(self):
        assert ideal_product(ideal(Z.el(2)), ideal(Z.el(3))) == ideal(Z.el(6))
        assert ideal_intersection(ideal(Z.el(2)), ideal(Z.el(3))) == ideal(Z.el(6))

    def test_non_comaximal_differ(self):
        inter = ideal_intersection(ideal(Z.el(4)), ideal(Z.el(6)))
        prod = ideal_product(ideal(Z.el(4)), ideal(Z.el(6)))
        assert inter == ideal(Z.el(12))
        assert prod == ideal(Z.el(24))
        assert inter != prod

    def test_gaussian_product(self):
        assert ideal_product(ideal(G.el(1, 1)), ideal(G.el(1, -1))) == ideal(G.el(2, 0))

    def test_corollary_intersection_equals_product(self, ring, rng):
        done = 0
        while done < 150:
            A = ideal(random_modulus(ring, rng, span=20, max_deg=3))
            B = ideal(random_modulus(ring, rng, span=20, max_deg=3))
            if not are_comaximal(A, B):
                continue
            assert ideal_intersection(A, B) == ideal_product(A, B)
            done += 1

    def test_membership_agreement_small(self, ring, rng):
        done = 0
        while done < 25:
            A = ideal(random_modulus(ring, rng, span=8, max_deg=2, max_norm=40))
            B = ideal(random_modulus(ring, rng, span=8, max_deg=2, max_norm=40))
            if not are_comaximal(A, B):
                continue
            AB = ideal_product(A, B)
            for x in enumerate_residues(AB):
                in_both = A.contains(x) and B.contains(x)
                assert in_both == AB.contains(x)
            done += 1


class TestPhi:
    def test_twelve(self):
        A = ideal(Z.el(12))
        assert brute_phi_by_gcd(A) == 4
        assert phi_closed(A) == 4
        assert phi_brute(A) == 4

    def test_gaussian_two(self):
        A = ideal(G.el(2, 0))
        # the two units of Z[i]/(2) are 1 and i
        assert phi_closed(A) == 2 == phi_brute(A) == brute_phi_by_gcd(A)

    def test_poly_x_squared_plus_x(self):
        A = ideal(P2.el(0, 1, 1))
        assert phi_closed(A) == 1 == phi_brute(A)

    def test_seven(self):
        assert phi_brute(ideal(Z.el(7))) == 6

    def test_one_plus_i(self):
        assert phi_brute(ideal(G.el(1, 1))) == 1

    def test_oracle_equivalence_three_routes(self, ring, rng):
        for _ in range(200):
            A = ideal(random_modulus(ring, rng, span=40, max_deg=5, max_norm=10**4))
            closed = phi_closed(A)
            assert closed == phi_brute(A)
            if A.norm <= 600:
                assert closed == brute_phi_by_gcd(A)

    def test_multiplicativity(self, ring, rng):
        done = 0
        while done < 150:
            A = ideal(random_modulus(ring, rng, span=25, max_deg=3))
            B = ideal(random_modulus(ring, rng, span=25, max_deg=3))
            if not are_comaximal(A, B):
                continue
            AB = ideal_product(A, B)
            assert phi_closed(AB) == phi_closed(A) * phi_closed(B)
            if AB.norm <= 10**4:
                assert phi_closed(AB) == phi_brute(AB)
            done += 1

    def test_maximal_ideal_phi_is_norm_minus_one(self, ring, rng):
        for _ in range(20):
            p = random_prime_element(ring, 8, rng)
            assert is_prime_element(p)
            assert phi_closed(ideal(p)) == norm(p) - 1

    def test_brute_cap(self):
        with pytest.raises(CapExceeded):
            phi_brute(ideal(Z.el(10**7)), cap=10**6)


class TestModInverse:
    def test_classical(self):
        assert mod_inverse_int(17, 3120) == 2753

    def test_one(self):
        assert mod_inverse_int(1, 97) == 1

    def test_not_coprime(self):
        with pytest.raises(NotCoprime):
            mod_inverse_int(6, 9)

    def test_random(self, rng):
        import math

        for _ in range(300):
            n = rng.randrange(2, 10**6)
            e = rng.randrange(1, n)
            if math.gcd(e, n) != 1:
                continue
            d = mod_inverse_int(e, n)
            assert 1 <= d < n and e * d % n == 1
