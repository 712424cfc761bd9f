"""Ideal-level number theory: comaximality, CRT, and the Euler function.

The Euler function of an ideal A is the order of the unit group of R/A.
Two independent routes compute it here: a closed form over the prime
factorization of the generator, prod(N(p)^a - N(p)^(a-1)), and a brute
count of invertible residues.  They must always agree; the brute route is
the arbiter whenever formulas are in doubt, and it is how the closed form
is validated across the whole suite.

Note on the quadratic closed form: the product factor is (1 - 1/N(p)) with
the norm of each *prime divisor* p, matching the integer, Gaussian and
polynomial specializations.  The brute unit count confirms this shape on
every ring.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    BudgetExceeded,
    CapExceeded,
    FactoringFailed,
    NotComaximal,
    NotCoprime,
    RingMismatch,
)
from . import kernels
from .quotient import PrincipalIdeal, ideal, residue_box
from .rings import (
    Element,
    IntegerRing,
    PolyRing,
    QuadraticRing,
    exact_div,
    factor_element,
    gcd,
    is_unit,
    norm,
    unit_inverse,
    xgcd,
)

PHI_BRUTE_CAP = 10**6

CongruencePair = tuple[Element, PrincipalIdeal]


@dataclass(frozen=True)
class CongruenceSystem:
    """x = r_i mod A_i, all over one ring; comaximality checked at solve."""

    pairs: tuple[CongruencePair, ...]

    def __post_init__(self):
        if not self.pairs:
            raise ValueError("empty congruence system")
        ring = self.pairs[0][1].ring
        for r, A in self.pairs:
            if r.ring != ring or A.ring != ring:
                raise RingMismatch("congruences span different rings")


def are_comaximal(A: PrincipalIdeal, B: PrincipalIdeal) -> bool:
    """(a) + (b) = R, i.e. gcd of the generators is a unit."""
    if A.ring != B.ring:
        raise RingMismatch(f"{A.ring.tag} vs {B.ring.tag}")
    return is_unit(gcd(A.generator, B.generator))


def crt_solve(system: CongruenceSystem | list[CongruencePair]) -> Element:
    """Solve the system, reduced modulo the product of the moduli.

    Merges congruences left to right through Bezout witnesses.  Raises
    NotComaximal naming the first offending pair.
    """
    if not isinstance(system, CongruenceSystem):
        system = CongruenceSystem(tuple(system))
    pairs = system.pairs
    for i in range(len(pairs)):
        for j in range(i + 1, len(pairs)):
            if not are_comaximal(pairs[i][1], pairs[j][1]):
                raise NotComaximal(
                    f"ideals {pairs[i][1]} and {pairs[j][1]} are not comaximal",
                    i=i,
                    j=j,
                )
    x, A = pairs[0]
    x = A.reduce(x)
    for r, B in pairs[1:]:
        a, b = A.generator, B.generator
        g, u, v = xgcd(a, b)
        ginv = unit_inverse(g)
        # u*a*ginv = 1 mod (b), v*b*ginv = 1 mod (a)
        AB = ideal_product(A, B)
        x = AB.reduce(r * (u * a * ginv) + x * (v * b * ginv))
        A = AB
    return x


def ideal_product(A: PrincipalIdeal, B: PrincipalIdeal) -> PrincipalIdeal:
    if A.ring != B.ring:
        raise RingMismatch(f"{A.ring.tag} vs {B.ring.tag}")
    return ideal(A.generator * B.generator)


def ideal_intersection(A: PrincipalIdeal, B: PrincipalIdeal) -> PrincipalIdeal:
    """(a) n (b) = (lcm) = (a*b / gcd(a,b))."""
    if A.ring != B.ring:
        raise RingMismatch(f"{A.ring.tag} vs {B.ring.tag}")
    g = gcd(A.generator, B.generator)
    return ideal(exact_div(A.generator * B.generator, g))


def phi_closed(A: PrincipalIdeal) -> int:
    """Euler function from the factorization: prod N(p)^a - N(p)^(a-1)."""
    try:
        fac = factor_element(A.generator)
    except BudgetExceeded as exc:
        raise FactoringFailed(f"cannot factor the generator of {A}: {exc}") from exc
    out = 1
    for p, a in fac.factors:
        np = norm(p)
        out *= np**a - np ** (a - 1)
    return out


def phi_brute(A: PrincipalIdeal, cap: int = PHI_BRUTE_CAP) -> int:
    """Euler function by counting invertible residues; the oracle route."""
    n = A.norm
    if n > cap:
        raise CapExceeded(f"|W| = {n} exceeds the brute cap {cap}")
    ring = A.ring
    if isinstance(ring, IntegerRing):
        return kernels.call_with_fallback("phi_brute_int", A.lattice_form[0])
    if isinstance(ring, QuadraticRing):
        ma, mb = A.generator.coords
        d1, c, d2 = A.lattice_form
        return kernels.call_with_fallback("phi_brute_quad", ring.k, ma, mb, d1, c, d2)
    if isinstance(ring, PolyRing):
        f = ring.field
        return kernels.call_with_fallback(
            "phi_brute_poly",
            ring.q,
            f.add_table,
            f.mul_table,
            f.neg_table,
            f.inv_table,
            list(A.generator.coords),
        )
    raise TypeError(f"unknown ring {ring!r}")


def mod_inverse_int(e: int, n: int) -> int:
    """d with e*d = 1 mod n, 1 <= d < n; raises NotCoprime otherwise."""
    if n <= 1:
        raise ValueError("modulus must exceed 1")
    e %= n
    old_r, r = e, n
    old_s, s = 1, 0
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
    if old_r != 1:
        raise NotCoprime(f"gcd({e}, {n}) = {old_r} != 1")
    return old_s % n
