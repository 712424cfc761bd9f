"""Small Galois fields GF(p^k) with table-backed arithmetic.

Field elements are integers in [0, q).  For an extension field the integer
encodes the coefficient vector of the element over GF(p), least significant
digit first: sum(digit_i * p**i).  The defining polynomial is either given
explicitly or found deterministically (the lexicographically first monic
irreducible of degree k over GF(p)), so a field is reproducible from (p, k)
alone.

Fields are cached; arithmetic beyond q = 512 is refused because the full
multiplication table would no longer be desk-scale.
"""

from __future__ import annotations

import functools
from array import array

MAX_Q = 512


def is_prime_int(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for all 64-bit inputs and beyond.

    The base set {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37} is a proven
    witness set for n < 3.3 * 10**24.
    """
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def prime_power_decompose(q: int) -> tuple[int, int]:
    """Return (p, k) with q = p**k, or raise ValueError."""
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    for p in range(2, q + 1):
        if p * p > q:
            break
        if q % p:
            continue
        k = 0
        m = q
        while m % p == 0:
            m //= p
            k += 1
        if m == 1 and is_prime_int(p):
            return p, k
        raise ValueError(f"{q} is not a prime power")
    # q itself is prime
    if is_prime_int(q):
        return q, 1
    raise ValueError(f"{q} is not a prime power")


def _digits(x: int, p: int, k: int) -> list[int]:
    out = []
    for _ in range(k):
        out.append(x % p)
        x //= p
    return out


def _undigits(ds: list[int], p: int) -> int:
    x = 0
    for d in reversed(ds):
        x = x * p + d
    return x


def _poly_mul_mod_p(a: list[int], b: list[int], p: int) -> list[int]:
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    while out and out[-1] == 0:
        out.pop()
    return out


def _poly_rem(a: list[int], m: list[int], p: int) -> list[int]:
    # m monic
    a = a[:]
    dm = len(m) - 1
    while len(a) - 1 >= dm and a:
        c = a[-1]
        if c:
            off = len(a) - 1 - dm
            for i in range(dm + 1):
                a[off + i] = (a[off + i] - c * m[i]) % p
        a.pop()
    while a and a[-1] == 0:
        a.pop()
    return a


def _is_irreducible_gfp(m: list[int], p: int) -> bool:
    """Rabin test for a monic polynomial over the prime field GF(p)."""
    k = len(m) - 1
    if k < 1:
        return False
    x = [0, 1]

    def powq(f: list[int], e: int) -> list[int]:
        # f ** (p**e) mod m by e successive p-th powers
        for _ in range(e):
            acc, b, n = [1], f, p
            while n:
                if n & 1:
                    acc = _poly_rem(_poly_mul_mod_p(acc, b, p), m, p)
                b = _poly_rem(_poly_mul_mod_p(b, b, p), m, p)
                n >>= 1
            f = acc
        return f

    def sub_x(t: list[int]) -> list[int]:
        n = max(len(t), 2)
        tt = t + [0] * (n - len(t))
        xx = x + [0] * (n - 2)
        out = [(a - b) % p for a, b in zip(tt, xx)]
        while out and out[-1] == 0:
            out.pop()
        return out

    # x^(p^k) == x mod m
    if sub_x(powq(x, k)):
        return False
    # gcd(x^(p^(k/l)) - x, m) == 1 for all prime l | k
    for ell in _prime_divisors(k):
        if _poly_gcd_gfp(sub_x(powq(x, k // ell)), m, p):
            return False
    return True


def _prime_divisors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _poly_gcd_gfp(a: list[int], b: list[int], p: int) -> bool:
    """True iff gcd(a, b) is non-constant."""
    while b:
        inv = pow(b[-1], p - 2, p)
        bm = [(c * inv) % p for c in b]
        a = _poly_rem(a, bm, p)
        a, b = b, a
    return len(a) > 1


def default_field_poly(p: int, k: int) -> tuple[int, ...]:
    """Lexicographically first monic irreducible of degree k over GF(p)."""
    if k == 1:
        return (0, 1)
    for code in range(p**k):
        coeffs = _digits(code, p, k) + [1]
        if _is_irreducible_gfp(coeffs, p):
            return tuple(coeffs)
    raise AssertionError("irreducible polynomial must exist")


class GaloisField:
    """GF(p^k) with integer-coded elements and full lookup tables.

    Tables are built eagerly: add/mul are q*q arrays, neg/inv are length q.
    """

    def __init__(self, p: int, k: int, modulus: tuple[int, ...] | None = None):
        if not is_prime_int(p):
            raise ValueError(f"characteristic {p} is not prime")
        q = p**k
        if q > MAX_Q:
            raise ValueError(f"field order {q} exceeds the table cap {MAX_Q}")
        if modulus is None:
            modulus = default_field_poly(p, k)
        else:
            modulus = tuple(c % p for c in modulus)
            if len(modulus) != k + 1 or modulus[-1] != 1:
                raise ValueError("field modulus must be monic of degree k")
            if k > 1 and not _is_irreducible_gfp(list(modulus), p):
                raise ValueError("field modulus is reducible")
        self.p = p
        self.k = k
        self.q = q
        self.modulus = modulus
        self._build_tables()

    def _build_tables(self) -> None:
        p, k, q = self.p, self.k, self.q
        m = list(self.modulus)
        add = array("i", [0] * (q * q))
        mul = array("i", [0] * (q * q))
        neg = array("i", [0] * q)
        inv = array("i", [0] * q)
        if k == 1:
            for a in range(q):
                neg[a] = (-a) % p
                for b in range(q):
                    add[a * q + b] = (a + b) % p
                    mul[a * q + b] = (a * b) % p
            for a in range(1, q):
                inv[a] = pow(a, p - 2, p)
        else:
            digs = [_digits(x, p, k) for x in range(q)]
            for a in range(q):
                da = digs[a]
                neg[a] = _undigits([(-d) % p for d in da], p)
                for b in range(a, q):
                    db = digs[b]
                    s = _undigits([(x + y) % p for x, y in zip(da, db)], p)
                    add[a * q + b] = s
                    add[b * q + a] = s
                    pr = _poly_rem(_poly_mul_mod_p(da, db, p), m, p)
                    v = _undigits(pr + [0] * (k - len(pr)), p)
                    mul[a * q + b] = v
                    mul[b * q + a] = v
            for a in range(1, q):
                # Fermat: a^(q-2)
                acc, b, e = 1, a, q - 2
                while e:
                    if e & 1:
                        acc = mul[acc * q + b]
                    b = mul[b * q + b]
                    e >>= 1
                inv[a] = acc
        self.add_table = add
        self.mul_table = mul
        self.neg_table = neg
        self.inv_table = inv

    def add(self, a: int, b: int) -> int:
        return self.add_table[a * self.q + b]

    def sub(self, a: int, b: int) -> int:
        return self.add_table[a * self.q + self.neg_table[b]]

    def mul(self, a: int, b: int) -> int:
        return self.mul_table[a * self.q + b]

    def neg(self, a: int) -> int:
        return self.neg_table[a]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self.inv_table[a]

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        acc = 1
        while e:
            if e & 1:
                acc = self.mul(acc, a)
            a = self.mul(a, a)
            e >>= 1
        return acc

    def __repr__(self) -> str:
        return f"GF({self.q})"


@functools.cache
def get_field(p: int, k: int, modulus: tuple[int, ...] | None = None) -> GaloisField:
    return GaloisField(p, k, modulus)
