"""Independent oracles the tests check the implementation against.

These deliberately avoid the code paths they validate: unit counting goes
through element gcds (not the sweep kernels), CRT solutions come from
exhaustive residue search, exponentiation from iterated multiplication.
"""

from cirsa.quotient import PrincipalIdeal, enumerate_residues
from cirsa.rings import Element, gcd, is_unit


def brute_phi_by_gcd(A: PrincipalIdeal, cap: int = 10**5) -> int:
    """Count residues whose gcd with the generator is a unit."""
    m = A.generator
    count = 0
    for w in enumerate_residues(A, cap=cap):
        if w and is_unit(gcd(w, m)):
            count += 1
    return count


def brute_crt_search(pairs, cap: int = 10**5) -> Element | None:
    """Exhaustive CRT: scan residues of the product modulus."""
    from cirsa.numtheory import ideal_product
    from functools import reduce as fold

    prod = fold(ideal_product, (A for _, A in pairs[1:]), pairs[0][1])
    for x in enumerate_residues(prod, cap=cap):
        if all(A.reduce(x) == A.reduce(r) for r, A in pairs):
            return x
    return None


def iterated_pow(x: Element, s: int, A: PrincipalIdeal) -> Element:
    """reduce(x^s) by s-1 plain multiplications (small s only)."""
    acc = A.reduce(x.ring.one)
    for _ in range(s):
        acc = A.reduce(acc * x)
    return acc


def count_distinct_residues(A: PrincipalIdeal, probes) -> int:
    """Reduce a probe set and count the distinct images."""
    return len({A.reduce(x) for x in probes})
