"""Arithmetic in the supported Euclidean domains.

Five ring families are implemented, all Euclidean (so every ideal is
principal and a single generator describes it):

* the rational integers Z,
* the Gaussian integers Z[i],
* the quadratic integer rings Z[sqrt(k)] for k in {-2, 2, 3},
* polynomial rings GF(q)[x] for prime-power q up to 512.

Elements are immutable coordinate vectors tagged with their ring: one
coordinate for Z, a pair (a, b) meaning a + b*w (w = i or sqrt(k)) for the
quadratic rings, and a coefficient list (least degree first, trailing zeros
stripped, zero polynomial = empty) for the polynomial rings.  Arithmetic is
exact; coordinates are arbitrary-precision integers.

Besides the ring operations this module supplies extended gcd with Bezout
witnesses, primality of elements (= maximality of the generated ideal),
reproducible random prime generation from an explicit seeded source, and
element factorization into pairwise non-associate primes.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .errors import (
    BothZero,
    BudgetExceeded,
    DivisionByZero,
    ExhaustedAttempts,
    NotApplicable,
    RingMismatch,
    ZeroElement,
)
from .gf import GaloisField, get_field, is_prime_int, prime_power_decompose

SUPPORTED_QUADRATIC_K = (-2, 2, 3)

# Factoring effort bounds: trial division first, then Brent's rho.  The rho
# budget comfortably covers balanced semiprimes with ~2^64 norms (expected
# ~2^17 iterations for a 33-bit factor) and fails loudly beyond desk scale.
TRIAL_DIVISION_LIMIT = 1 << 20
RHO_ITERATION_BUDGET = 1 << 22


# ---------------------------------------------------------------------------
# integer helpers


def _round_nearest_tz(num: int, den: int) -> int:
    """Round num/den to the nearest integer, ties toward zero."""
    if den < 0:
        num, den = -num, -den
    q = num // den
    r = num - q * den  # 0 <= r < den
    two_r = 2 * r
    if two_r > den:
        return q + 1
    if two_r < den:
        return q
    # tie: candidates q and q+1, keep the one closer to zero
    return q if abs(q) < abs(q + 1) else q + 1


def _brent_rho(n: int, seed_c: int) -> int:
    """One Brent cycle-finding pass; returns a nontrivial factor or n."""
    if n % 2 == 0:
        return 2
    y, c, m = 2, seed_c, 128
    g = r = q = 1
    x = ys = y
    count = 0
    while g == 1:
        x = y
        for _ in range(r):
            y = (y * y + c) % n
        k = 0
        while k < r and g == 1:
            ys = y
            for _ in range(min(m, r - k)):
                y = (y * y + c) % n
                q = q * abs(x - y) % n
            g = math.gcd(q, n)
            k += m
            count += m
            if count > RHO_ITERATION_BUDGET:
                raise BudgetExceeded(f"Pollard rho exceeded its iteration budget on {n}")
        r *= 2
    if g == n:
        while True:
            ys = (ys * ys + c) % n
            g = math.gcd(abs(x - ys), n)
            if g > 1:
                break
    return g


def factor_int(n: int) -> dict[int, int]:
    """Factor a positive integer: trial division to 2^20, then Brent rho.

    Raises BudgetExceeded when rho runs out of iterations, rather than
    silently returning a partial factorization.
    """
    if n <= 0:
        raise ValueError("factor_int needs a positive integer")
    out: dict[int, int] = {}
    for p in (2, 3, 5):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    d = 7
    wheel = (4, 2, 4, 2, 4, 6, 2, 6)
    wi = 0
    while d * d <= n and d < TRIAL_DIVISION_LIMIT:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += wheel[wi]
        wi = (wi + 1) % 8
    if n == 1:
        return out
    if d * d > n:
        out[n] = out.get(n, 0) + 1
        return out
    stack = [n]
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime_int(m):
            out[m] = out.get(m, 0) + 1
            continue
        g = m
        c = 1
        while g == m:
            g = _brent_rho(m, c)
            c += 1
        stack.append(g)
        stack.append(m // g)
    return out


def _tonelli(a: int, p: int) -> int:
    """Square root of a modulo an odd prime p (a must be a QR)."""
    a %= p
    if a == 0:
        return 0
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    # general Tonelli-Shanks
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        t2, i = t, 0
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r


def quad_hnf(k: int, a: int, b: int) -> tuple[int, int, int]:
    """Hermite form (d1, c, d2) of the ideal lattice of a + b*w, w^2 = k.

    The lattice is Z-spanned by (a, b) and (k*b, a) in coordinates x + y*w.
    The reduced basis is (d1, 0) and (c, d2) with d1*d2 = |a^2 - k*b^2| and
    0 <= c < d1; the residue box it carves is {x + y*w : 0 <= x < d1,
    0 <= y < d2}.
    """
    norm = abs(a * a - k * b * b)
    if norm == 0:
        raise ZeroElement("zero element spans no finite-index lattice")
    g = math.gcd(a, b)
    d1 = norm // g
    # u*b + v*a = g gives the second basis vector u*(a,b) + v*(k*b,a)
    gg, u, v = _int_xgcd(b, a)
    assert gg == g
    c = (u * a + v * k * b) % d1
    return (d1, c, g)


def _int_xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Extended gcd on integers: returns (g, u, v) with u*a + v*b = g >= 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


# ---------------------------------------------------------------------------
# rings and elements


class Ring:
    """Base class: coordinate-level arithmetic plus ring-specific services."""

    tag: str
    ncoords: int | None  # None = variable length (polynomials)

    def el(self, *coords: int) -> Element:
        """Build an element from raw coordinates (validated/normalized)."""
        return Element(self, self._normalize(tuple(coords)))

    def from_coords(self, coords: Sequence[int]) -> Element:
        return Element(self, self._normalize(tuple(coords)))

    @cached_property
    def zero(self) -> Element:
        return self.from_coords(self._zero_coords())

    @cached_property
    def one(self) -> Element:
        return self.from_coords(self._one_coords())

    # -- subclass surface ---------------------------------------------------

    def _normalize(self, coords: tuple[int, ...]) -> tuple[int, ...]:
        raise NotImplementedError

    def _zero_coords(self) -> tuple[int, ...]:
        raise NotImplementedError

    def _one_coords(self) -> tuple[int, ...]:
        raise NotImplementedError

    def _add(self, a, b):
        raise NotImplementedError

    def _sub(self, a, b):
        raise NotImplementedError

    def _mul(self, a, b):
        raise NotImplementedError

    def _neg(self, a):
        raise NotImplementedError

    def _norm(self, coords) -> int:
        raise NotImplementedError

    def _is_unit(self, coords) -> bool:
        raise NotImplementedError

    def _euclid_div(self, a, b) -> tuple[tuple[int, ...], tuple[int, ...]]:
        raise NotImplementedError

    def _canonical_assoc(self, coords) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """Split coords = unit * canonical; returns (unit, canonical)."""
        raise NotImplementedError

    def _unit_inverse(self, coords) -> tuple[int, ...]:
        raise NotImplementedError

    def format_element(self, a: Element) -> str:
        return ",".join(str(c) for c in a.coords) if a.coords else "0"

    def parse_element(self, text: str) -> Element:
        raise NotImplementedError

    def __repr__(self) -> str:
        return f"<ring {self.tag}>"


@dataclass(frozen=True)
class Element:
    """An immutable ring element: a coordinate vector plus its ring."""

    ring: Ring
    coords: tuple[int, ...]

    def _check(self, other: Element) -> None:
        if not isinstance(other, Element):
            raise TypeError(f"expected Element, got {type(other).__name__}")
        if self.ring is not other.ring and self.ring != other.ring:
            raise RingMismatch(f"{self.ring.tag} vs {other.ring.tag}")

    def __add__(self, other: Element) -> Element:
        self._check(other)
        return Element(self.ring, self.ring._add(self.coords, other.coords))

    def __sub__(self, other: Element) -> Element:
        self._check(other)
        return Element(self.ring, self.ring._sub(self.coords, other.coords))

    def __mul__(self, other: Element) -> Element:
        self._check(other)
        return Element(self.ring, self.ring._mul(self.coords, other.coords))

    def __neg__(self) -> Element:
        return Element(self.ring, self.ring._neg(self.coords))

    def __divmod__(self, other: Element) -> tuple[Element, Element]:
        return euclid_div(self, other)

    def __bool__(self) -> bool:
        return self.coords != self.ring._zero_coords()

    def __str__(self) -> str:
        return self.ring.format_element(self)

    def __repr__(self) -> str:
        return f"El[{self.ring.tag}]({self})"


class IntegerRing(Ring):
    tag = "integer"
    ncoords = 1

    def _normalize(self, coords):
        if len(coords) != 1:
            raise ValueError("integer elements have one coordinate")
        return (int(coords[0]),)

    def _zero_coords(self):
        return (0,)

    def _one_coords(self):
        return (1,)

    def _add(self, a, b):
        return (a[0] + b[0],)

    def _sub(self, a, b):
        return (a[0] - b[0],)

    def _mul(self, a, b):
        return (a[0] * b[0],)

    def _neg(self, a):
        return (-a[0],)

    def _norm(self, a):
        return abs(a[0])

    def _is_unit(self, a):
        return a[0] in (1, -1)

    def _euclid_div(self, a, b):
        q, r = divmod(a[0], b[0])
        return (q,), (r,)

    def _canonical_assoc(self, a):
        if a[0] < 0:
            return (-1,), (-a[0],)
        return (1,), a

    def _unit_inverse(self, u):
        return u  # +-1 are self-inverse

    def parse_element(self, text):
        return self.el(int(text.strip()))

    def __eq__(self, other):
        return isinstance(other, IntegerRing)

    def __hash__(self):
        return hash("integer")


class QuadraticRing(Ring):
    """Z[w] with w^2 = k.  k = -1 is the Gaussian ring (own tag)."""

    ncoords = 2

    def __init__(self, k: int):
        if k != -1 and k not in SUPPORTED_QUADRATIC_K:
            raise ValueError(
                f"unsupported quadratic ring k={k}; supported: -1 (gaussian), "
                f"{SUPPORTED_QUADRATIC_K}"
            )
        self.k = k
        self.tag = "gaussian" if k == -1 else f"quadratic:{k}"

    def _normalize(self, coords):
        if len(coords) != 2:
            raise ValueError("quadratic elements have two coordinates")
        return (int(coords[0]), int(coords[1]))

    def _zero_coords(self):
        return (0, 0)

    def _one_coords(self):
        return (1, 0)

    def _add(self, a, b):
        return (a[0] + b[0], a[1] + b[1])

    def _sub(self, a, b):
        return (a[0] - b[0], a[1] - b[1])

    def _mul(self, a, b):
        # (a0 + a1 w)(b0 + b1 w) = a0 b0 + k a1 b1 + (a0 b1 + a1 b0) w
        return (a[0] * b[0] + self.k * a[1] * b[1], a[0] * b[1] + a[1] * b[0])

    def _neg(self, a):
        return (-a[0], -a[1])

    def _conj(self, a):
        return (a[0], -a[1])

    def _norm_signed(self, a) -> int:
        return a[0] * a[0] - self.k * a[1] * a[1]

    def _norm(self, a):
        return abs(self._norm_signed(a))

    def _is_unit(self, a):
        return self._norm(a) == 1

    def _euclid_div(self, a, b):
        # quotient = round(a * conj(b) / N(b)) coordinate-wise, ties to zero
        den = self._norm_signed(b)
        num = self._mul(a, self._conj(b))
        q = (_round_nearest_tz(num[0], den), _round_nearest_tz(num[1], den))
        r = self._sub(a, self._mul(q, b))
        return q, r

    def _canonical_assoc(self, a):
        if a == (0, 0):
            return (1, 0), a
        if self.k == -1:
            # rotate by a power of i into the half-open quadrant re > 0, im >= 0
            cur, ij = a, (1, 0)
            for _ in range(4):
                if cur[0] > 0 and cur[1] >= 0:
                    # cur = a * i^j, so a = i^{-j} * cur
                    return self._unit_inverse_raw(ij), cur
                cur = self._mul(cur, (0, 1))
                ij = self._mul(ij, (0, 1))
            raise AssertionError("a rotation must land in the first quadrant")
        if self.k == -2:
            # units are +-1
            if a[0] < 0 or (a[0] == 0 and a[1] < 0):
                return (-1, 0), self._neg(a)
            return (1, 0), a
        # real quadratic: walk along fundamental-unit powers to the
        # representative minimizing a^2 + |k| b^2, then fix the sign
        eps = (1, 1) if self.k == 2 else (2, 1)
        eps_inv = self._unit_inverse_raw(eps)

        def mu(x):
            return x[0] * x[0] + abs(self.k) * x[1] * x[1]

        cur = a
        for step in (eps, eps_inv):
            while True:
                nxt = self._mul(cur, step)
                if mu(nxt) < mu(cur):
                    cur = nxt
                else:
                    break

        def signfix(x):
            if x[0] < 0 or (x[0] == 0 and x[1] < 0):
                return self._neg(x)
            return x

        candidates = {signfix(cur)}
        for step in (eps, eps_inv):
            nxt = self._mul(cur, step)
            if mu(nxt) == mu(cur):
                candidates.add(signfix(nxt))
        best = min(candidates, key=lambda x: (abs(x[0]), abs(x[1]), x[0], x[1]))
        # recover the unit: a = u * best  =>  u = a / best (exact)
        u, rem = self._euclid_div(a, best)
        assert rem == (0, 0)
        return u, best

    def _unit_inverse_raw(self, u):
        ns = self._norm_signed(u)
        conj = self._conj(u)
        if ns == 1:
            return conj
        if ns == -1:
            return self._neg(conj)
        raise ValueError("not a unit")

    def _unit_inverse(self, u):
        return self._unit_inverse_raw(u)

    def parse_element(self, text):
        parts = text.strip().split(",")
        if len(parts) != 2:
            raise ValueError(f"expected 'a,b' for {self.tag}, got {text!r}")
        return self.el(int(parts[0]), int(parts[1]))

    def __eq__(self, other):
        return isinstance(other, QuadraticRing) and other.k == self.k

    def __hash__(self):
        return hash(("quadratic", self.k))


class PolyRing(Ring):
    """GF(q)[x]; coefficients are field elements coded as ints in [0, q)."""

    ncoords = None

    def __init__(self, q: int, modulus: tuple[int, ...] | None = None):
        p, k = prime_power_decompose(q)
        self.q = q
        self.p = p
        self.kdeg = k
        self.field: GaloisField = get_field(p, k, modulus)
        self.tag = f"poly:{q}"
        self._canonical_field = modulus is None or tuple(modulus) == self.field.modulus

    def _normalize(self, coords):
        f = self.field
        out = [int(c) % self.q if f.k == 1 else int(c) for c in coords]
        if f.k > 1:
            for c in out:
                if not 0 <= c < self.q:
                    raise ValueError(
                        f"coefficient {c} outside GF({self.q}) element range"
                    )
        while out and out[-1] == 0:
            out.pop()
        return tuple(out)

    def _zero_coords(self):
        return ()

    def _one_coords(self):
        return (1,)

    def _add(self, a, b):
        f = self.field
        n = max(len(a), len(b))
        out = [
            f.add(a[i] if i < len(a) else 0, b[i] if i < len(b) else 0)
            for i in range(n)
        ]
        while out and out[-1] == 0:
            out.pop()
        return tuple(out)

    def _sub(self, a, b):
        return self._add(a, self._neg(b))

    def _neg(self, a):
        f = self.field
        return tuple(f.neg(c) for c in a)

    def _mul(self, a, b):
        if not a or not b:
            return ()
        f = self.field
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        out[i + j] = f.add(out[i + j], f.mul(ai, bj))
        while out and out[-1] == 0:
            out.pop()
        return tuple(out)

    def _norm(self, a):
        return self.q ** (len(a) - 1)

    def _is_unit(self, a):
        return len(a) == 1

    def _euclid_div(self, a, b):
        f = self.field
        r = list(a)
        db = len(b) - 1
        lead_inv = f.inv(b[-1])
        if len(r) - 1 < db:
            return (), tuple(r)
        qu = [0] * (len(r) - db)
        for i in range(len(r) - 1, db - 1, -1):
            c = r[i]
            if c:
                cq = f.mul(c, lead_inv)
                qu[i - db] = cq
                for j in range(db + 1):
                    r[i - db + j] = f.sub(r[i - db + j], f.mul(cq, b[j]))
        while r and r[-1] == 0:
            r.pop()
        while qu and qu[-1] == 0:
            qu.pop()
        return tuple(qu), tuple(r)

    def _canonical_assoc(self, a):
        if not a:
            return (1,), a
        lead = a[-1]
        if lead == 1:
            return (1,), a
        inv = self.field.inv(lead)
        monic = tuple(self.field.mul(c, inv) for c in a)
        return (lead,), monic

    def _unit_inverse(self, u):
        return (self.field.inv(u[0]),)

    def parse_element(self, text):
        text = text.strip()
        if text == "0":
            return self.zero
        parts = [int(t) for t in text.split(",")]
        return self.from_coords(parts)

    def format_element(self, a):
        return ",".join(str(c) for c in a.coords) if a.coords else "0"

    def __eq__(self, other):
        return (
            isinstance(other, PolyRing)
            and other.q == self.q
            and other.field.modulus == self.field.modulus
        )

    def __hash__(self):
        return hash(("poly", self.q, self.field.modulus))

    # -- polynomial services used by factorization and primality ------------

    def x(self) -> Element:
        return self.el(0, 1)

    def _pmod(self, a, m):
        return self._euclid_div(a, m)[1]

    def _ppow_mod(self, base, e: int, m):
        acc = (1,)
        b = self._pmod(base, m)
        while e:
            if e & 1:
                acc = self._pmod(self._mul(acc, b), m)
            b = self._pmod(self._mul(b, b), m)
            e >>= 1
        return acc

    def _pgcd_monic(self, a, b):
        while b:
            b_m = self._canonical_assoc(b)[1]
            a, b = b, self._euclid_div(a, b_m)[1]
        if not a:
            return a
        return self._canonical_assoc(a)[1]

    def _derivative(self, a):
        f = self.field
        out = []
        for i in range(1, len(a)):
            # multiply coefficient by the integer i (i.e. i-fold sum)
            c = a[i]
            acc = 0
            for _ in range(i % self.p):
                acc = f.add(acc, c)
            out.append(acc)
        while out and out[-1] == 0:
            out.pop()
        return tuple(out)

    def _pth_root_poly(self, a):
        """For f with f' = 0, return g with g(x^p) = f (coefficient roots)."""
        f = self.field
        step = self.p
        out = []
        for i in range(0, len(a), step):
            c = a[i]
            # p-th root in GF(p^k): c ** (p^(k-1))
            root = c
            for _ in range(f.k - 1):
                root = f.pow(root, self.p)
            out.append(root)
        while out and out[-1] == 0:
            out.pop()
        return tuple(out)

    def is_irreducible(self, a) -> bool:
        """Rabin irreducibility test for a monic polynomial over GF(q)."""
        d = len(a) - 1
        if d < 1:
            return False
        if d == 1:
            return True
        q = self.q
        xp = (0, 1)

        def powq(f, times):
            for _ in range(times):
                f = self._ppow_mod(f, q, a)
            return f

        t = powq(xp, d)
        if self._sub(t, xp):
            return False
        dd = d
        primes = []
        e = 2
        while e * e <= dd:
            if dd % e == 0:
                primes.append(e)
                while dd % e == 0:
                    dd //= e
            e += 1
        if dd > 1:
            primes.append(dd)
        for ell in primes:
            t = powq(xp, d // ell)
            g = self._pgcd_monic(self._sub(t, xp), a)
            if len(g) > 1:
                return False
        return True

    def factor_monic(self, a) -> dict[tuple[int, ...], int]:
        """Full factorization of a monic polynomial into monic irreducibles.

        Squarefree split, then distinct-degree, then equal-degree splitting
        with an input-derived deterministic random stream.
        """
        rng = random.Random(f"poly-factor:{self.q}:{a}")
        out: dict[tuple[int, ...], int] = {}
        for sqf, mult in self._squarefree_parts(a):
            for d, prod in self._distinct_degree(sqf):
                for irr in self._equal_degree(prod, d, rng):
                    out[irr] = out.get(irr, 0) + mult
        return out

    def _squarefree_parts(self, f) -> list[tuple[tuple[int, ...], int]]:
        parts: list[tuple[tuple[int, ...], int]] = []

        def rec(f, outer_mult):
            if len(f) <= 1:
                return
            df = self._derivative(f)
            if not df:
                rec(self._pth_root_poly(f), outer_mult * self.p)
                return
            w = self._pgcd_monic(f, df)
            g = self._euclid_div(f, w)[0]
            i = 1
            while len(g) > 1:
                y = self._pgcd_monic(g, w)
                z = self._euclid_div(g, y)[0]
                if len(z) > 1:
                    parts.append((z, i * outer_mult))
                g = y
                w = self._euclid_div(w, y)[0]
                i += 1
            if len(w) > 1:
                rec(w, outer_mult)

        rec(self._canonical_assoc(f)[1], 1)
        return parts

    def _distinct_degree(self, f) -> list[tuple[int, tuple[int, ...]]]:
        out = []
        h = (0, 1)
        d = 0
        while len(f) - 1 >= 2 * (d + 1):
            d += 1
            h = self._ppow_mod(h, self.q, f)
            g = self._pgcd_monic(self._sub(h, (0, 1)), f)
            if len(g) > 1:
                out.append((d, g))
                f = self._euclid_div(f, g)[0]
                h = self._pmod(h, f)
        if len(f) > 1:
            out.append((len(f) - 1, f))
        return out

    def _equal_degree(self, f, d: int, rng: random.Random) -> list[tuple[int, ...]]:
        n = len(f) - 1
        if n == d:
            return [f]
        q = self.q
        while True:
            u = tuple(rng.randrange(q) for _ in range(n))
            u = self._normalize(u)
            if len(u) <= 1:
                continue
            if self.p == 2:
                # trace map over GF(2)
                v = u
                t = u
                for _ in range(self.field.k * d - 1):
                    t = self._ppow_mod(t, 2, f)
                    v = self._pmod(self._add(v, t), f)
                w = self._pgcd_monic(v, f)
            else:
                e = (q**d - 1) // 2
                v = self._ppow_mod(u, e, f)
                w = self._pgcd_monic(self._sub(v, (1,)), f)
            if 0 < len(w) - 1 < n:
                g2 = self._euclid_div(f, w)[0]
                return self._equal_degree(w, d, rng) + self._equal_degree(g2, d, rng)


# ---------------------------------------------------------------------------
# ring registry


_INTEGER = IntegerRing()
_GAUSSIAN = QuadraticRing(-1)
_QUADRATIC: dict[int, QuadraticRing] = {}
_POLY: dict[int, PolyRing] = {}


def integer_ring() -> IntegerRing:
    return _INTEGER


def gaussian_ring() -> QuadraticRing:
    return _GAUSSIAN


def quadratic_ring(k: int) -> QuadraticRing:
    if k == -1:
        return _GAUSSIAN
    if k not in _QUADRATIC:
        _QUADRATIC[k] = QuadraticRing(k)
    return _QUADRATIC[k]


def poly_ring(q: int, modulus: tuple[int, ...] | None = None) -> PolyRing:
    if modulus is not None:
        return PolyRing(q, modulus)
    if q not in _POLY:
        _POLY[q] = PolyRing(q)
    return _POLY[q]


def ring_from_tag(tag: str) -> Ring:
    """Parse a ring tag: integer | gaussian | quadratic:k | poly:q."""
    tag = tag.strip()
    if tag == "integer":
        return integer_ring()
    if tag == "gaussian":
        return gaussian_ring()
    if tag.startswith("quadratic:"):
        k = int(tag.split(":", 1)[1])
        if k == -1:
            raise ValueError("use the 'gaussian' tag for k = -1")
        return quadratic_ring(k)
    if tag.startswith("poly:"):
        q = int(tag.split(":", 1)[1])
        return poly_ring(q)
    raise ValueError(f"unknown ring tag {tag!r}")


# ---------------------------------------------------------------------------
# public operations


def norm(m: Element) -> int:
    """|R/(m)|: absolute norm for Z and the quadratic rings, q^deg for polys."""
    if not m:
        raise ZeroElement("norm of zero is undefined (infinite quotient)")
    return m.ring._norm(m.coords)


def is_unit(a: Element) -> bool:
    if not a:
        return False
    return a.ring._is_unit(a.coords)


def euclid_div(a: Element, b: Element) -> tuple[Element, Element]:
    """a = q*b + r with r = 0 or norm(r) < norm(b)."""
    a._check(b)
    if not b:
        raise DivisionByZero("euclid_div by zero")
    q, r = a.ring._euclid_div(a.coords, b.coords)
    return Element(a.ring, q), Element(a.ring, r)


def divides(b: Element, a: Element) -> bool:
    """True iff b divides a exactly."""
    return not euclid_div(a, b)[1]


def exact_div(a: Element, b: Element) -> Element:
    q, r = euclid_div(a, b)
    if r:
        raise ValueError(f"{b} does not divide {a}")
    return q


def canonical_assoc(a: Element) -> tuple[Element, Element]:
    """Split a = unit * canonical; returns (unit, canonical).

    Z: positive; Gaussian: first-quadrant rotation; k = -2: sign; polys:
    monic.  Real quadratic rings have an infinite unit group, so the
    canonical pick is the coordinate-minimal associate (deterministic, and
    ideal equality always goes through the lattice form instead).
    """
    u, c = a.ring._canonical_assoc(a.coords)
    return Element(a.ring, u), Element(a.ring, c)


def unit_inverse(u: Element) -> Element:
    if not is_unit(u):
        raise ValueError(f"{u} is not a unit")
    return Element(u.ring, u.ring._unit_inverse(u.coords))


def xgcd(a: Element, b: Element) -> tuple[Element, Element, Element]:
    """Extended Euclid: (g, u, v) with u*a + v*b = g, g canonical."""
    a._check(b)
    if not a and not b:
        raise BothZero("xgcd(0, 0)")
    ring = a.ring
    r0, r1 = a, b
    s0, s1 = ring.one, ring.zero
    t0, t1 = ring.zero, ring.one
    while r1:
        q, r = euclid_div(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    u, g = canonical_assoc(r0)
    w = unit_inverse(u)
    return g, w * s0, w * t0


def gcd(a: Element, b: Element) -> Element:
    return xgcd(a, b)[0]


def is_prime_element(p: Element) -> bool:
    """True iff (p) is maximal, i.e. R/(p) is a field."""
    if not p:
        raise NotApplicable("primality of zero")
    if is_unit(p):
        raise NotApplicable("primality of a unit")
    ring = p.ring
    if isinstance(ring, IntegerRing):
        return is_prime_int(abs(p.coords[0]))
    if isinstance(ring, QuadraticRing):
        n = norm(p)
        if is_prime_int(n):
            return True
        r = math.isqrt(n)
        if r * r != n or not is_prime_int(r):
            return False
        # must be associate to the rational prime r, and r must be inert
        if quad_hnf(ring.k, *p.coords) != (r, 0, r):
            return False
        if r == 2 or ring.k % r == 0:
            return False  # ramified or split at small primes
        return pow(ring.k % r, (r - 1) // 2, r) == r - 1
    if isinstance(ring, PolyRing):
        monic = ring._canonical_assoc(p.coords)[1]
        return ring.is_irreducible(monic)
    raise TypeError(f"unknown ring {ring!r}")


def random_prime_element(
    ring: Ring, norm_bits: int, rng: random.Random, max_attempts: int = 50000
) -> Element:
    """A random prime with norm in [2^(norm_bits-1), 2^norm_bits).

    Deterministic for a fixed rng state.  Polynomial rings only admit norms
    that are powers of q; if no degree lands in the window this raises
    ExhaustedAttempts immediately.
    """
    if norm_bits < 4:
        raise ValueError("norm_bits must be at least 4")
    lo, hi = 1 << (norm_bits - 1), 1 << norm_bits
    if isinstance(ring, PolyRing):
        deg = None
        d, qd = 1, ring.q
        while qd < hi:
            if qd >= lo:
                deg = d
                break
            d += 1
            qd *= ring.q
        if deg is None:
            raise ExhaustedAttempts(
                f"no degree gives a GF({ring.q})[x] norm in [2^{norm_bits-1}, 2^{norm_bits})"
            )
        for _ in range(max_attempts):
            coeffs = [rng.randrange(ring.q) for _ in range(deg)] + [1]
            cand = ring.from_coords(coeffs)
            if ring.is_irreducible(cand.coords):
                return cand
        raise ExhaustedAttempts(f"no irreducible of degree {deg} found")
    if isinstance(ring, IntegerRing):
        for _ in range(max_attempts):
            n = rng.randrange(lo, hi) | 1
            if n < hi and is_prime_int(n):
                return ring.el(n)
        raise ExhaustedAttempts(f"no integer prime found in [{lo}, {hi})")
    if isinstance(ring, QuadraticRing):
        half = (norm_bits + 1) // 2 + 1
        span = 1 << half
        for _ in range(max_attempts):
            a = rng.randrange(span)
            b = rng.randrange(span)
            cand = ring.el(a, b)
            if not cand:
                continue
            n = ring._norm(cand.coords)
            if not lo <= n < hi or n == 1:
                continue
            if is_prime_element(cand):
                return cand
        raise ExhaustedAttempts(f"no {ring.tag} prime found with norm in [{lo}, {hi})")
    raise TypeError(f"unknown ring {ring!r}")


@dataclass(frozen=True)
class Factorization:
    """unit * prod(prime^exp); primes canonical and pairwise non-associate."""

    unit: Element
    factors: tuple[tuple[Element, int], ...]

    def value(self) -> Element:
        acc = self.unit
        for p, e in self.factors:
            for _ in range(e):
                acc = acc * p
        return acc


def _quad_primes_above(ring: QuadraticRing, r: int) -> list[Element]:
    """Ring primes above the rational prime r, pairwise non-associate."""
    k = ring.k
    omega = ring.el(0, 1)
    r_el = ring.el(r, 0)
    if k % r == 0:
        return [gcd(r_el, omega)]  # ramified through w
    if r == 2:
        return [gcd(r_el, ring.el(1, 1))]  # k odd: 2 ramifies through 1 + w
    ls = pow(k % r, (r - 1) // 2, r)
    if ls == r - 1:
        return [r_el]  # inert
    x = _tonelli(k % r, r)
    pi = gcd(r_el, ring.el(x, 1))
    pi_bar = Element(ring, ring._conj(pi.coords))
    if quad_hnf(k, *pi.coords) == quad_hnf(k, *pi_bar.coords):
        return [pi]
    return [pi, pi_bar]


def factor_element(m: Element) -> Factorization:
    """Factor into canonical pairwise non-associate primes.

    The norm is factored over Z (trial division then Pollard rho), then each
    rational prime is lifted to ring primes by gcd computations and exact
    division.  Raises BudgetExceeded beyond the configured effort bounds.
    """
    if not m:
        raise ZeroElement("cannot factor zero")
    if is_unit(m):
        raise ValueError("cannot factor a unit")
    ring = m.ring
    if isinstance(ring, IntegerRing):
        n = m.coords[0]
        unit = ring.el(1) if n > 0 else ring.el(-1)
        fac = factor_int(abs(n))
        factors = tuple((ring.el(p), e) for p, e in sorted(fac.items()))
        return Factorization(unit, factors)
    if isinstance(ring, PolyRing):
        u, monic = ring._canonical_assoc(m.coords)
        fac = ring.factor_monic(monic)
        items = sorted(fac.items(), key=lambda kv: (len(kv[0]), kv[0]))
        factors = tuple((Element(ring, p), e) for p, e in items)
        return Factorization(Element(ring, u), factors)
    if isinstance(ring, QuadraticRing):
        n = norm(m)
        rest = m
        found: list[tuple[Element, int]] = []
        for r in sorted(factor_int(n)):
            for pi in _quad_primes_above(ring, r):
                upi, pi_c = canonical_assoc(pi)
                e = 0
                while divides(pi_c, rest):
                    rest = exact_div(rest, pi_c)
                    e += 1
                if e:
                    found.append((pi_c, e))
        if not is_unit(rest):
            raise BudgetExceeded(f"failed to fully factor {m}: cofactor {rest}")
        found.sort(key=lambda pe: (norm(pe[0]), pe[0].coords))
        return Factorization(rest, tuple(found))
    raise TypeError(f"unknown ring {ring!r}")
