"""Pure-Python kernels for the exhaustive sweeps.

These mirror the compiled extension (cirsa._kernels) operation for
operation and are selected automatically when the extension is missing or
when CIRSA_PURE_KERNELS=1.  They trade speed for portability: identical
results, no C toolchain required.

All functions work on flat data (ints, coefficient lists, flat lookup
tables) so that the two implementations stay interchangeable and easy to
benchmark against each other.

Conventions shared by both backends:

* Quadratic residues live in the Hermite box of the ideal lattice
  (d1, c, d2): w = x + y*w with 0 <= x < d1, 0 <= y < d2, enumerated with
  x fastest (index = x + d1*y).
* Polynomial residues are coefficient vectors over GF(q) enumerated as a
  mixed-radix counter, least-degree digit fastest.  Field elements are
  integer-coded; add/mul/neg/inv are flat q*q (resp. q) tables.
* Unit detection modulo m goes through lattice/gcd arithmetic, not through
  the high-level ring classes, so it stays an independent route the tests
  can cross-check.
"""

from __future__ import annotations

from math import gcd as _gcd

BACKEND = "python"


# ---------------------------------------------------------------------------
# integers


def phi_brute_int(n: int) -> int:
    """Count units in Z/n by definition."""
    return sum(1 for w in range(n) if _gcd(w, n) == 1)


def rsa_sweep_int(n: int, s: int) -> int:
    """First w in [0, n) with w^s != w mod n, or -1 if none."""
    for w in range(n):
        if pow(w, s, n) != w:
            return w
    return -1


# ---------------------------------------------------------------------------
# quadratic rings: Z[w], w^2 = k


def _quad_unit_mod(k, x, y, ma, mb, nm):
    # (w) + (m) = Z[w] iff the 2x2 minors of [w, w*o, m, m*o] have gcd 1
    g = _gcd(abs(x * x - k * y * y), abs(x * mb - ma * y))
    g = _gcd(g, abs(x * ma - k * mb * y))
    g = _gcd(g, nm)
    return g == 1


def phi_brute_quad(k: int, ma: int, mb: int, d1: int, c: int, d2: int) -> int:
    """Count units in Z[w]/(ma + mb*w) over the Hermite box (d1, c, d2)."""
    nm = abs(ma * ma - k * mb * mb)
    count = 0
    for y in range(d2):
        for x in range(d1):
            if _quad_unit_mod(k, x, y, ma, mb, nm):
                count += 1
    return count


def _quad_reduce(u, v, k, d1, c, d2):
    t = v // d2
    v -= t * d2
    u = (u - t * c) % d1
    return u, v


def _quad_powmod(x, y, s, k, d1, c, d2):
    ax, ay = 1 % d1, 0
    bx, by = x, y
    while s:
        if s & 1:
            u = ax * bx + k * ay * by
            v = ax * by + ay * bx
            ax, ay = _quad_reduce(u, v, k, d1, c, d2)
        s >>= 1
        if s:
            u = bx * bx + k * by * by
            v = 2 * bx * by
            bx, by = _quad_reduce(u, v, k, d1, c, d2)
    return ax, ay


def rsa_sweep_quad(k: int, ma: int, mb: int, d1: int, c: int, d2: int, s: int) -> int:
    """First box index whose residue fails w^s = w, or -1 if none."""
    for y in range(d2):
        for x in range(d1):
            if _quad_powmod(x, y, s, k, d1, c, d2) != (x, y):
                return x + d1 * y
    return -1


# ---------------------------------------------------------------------------
# polynomial rings over GF(q), table-coded field arithmetic


def _prem(a, b, q, add_t, neg_t, mul_t):
    """In-place remainder of a by b (b normalized monic by the caller)."""
    db = len(b) - 1
    for i in range(len(a) - 1, db - 1, -1):
        co = a[i]
        if co:
            off = i - db
            for j in range(db + 1):
                a[off + j] = add_t[a[off + j] * q + neg_t[mul_t[co * q + b[j]]]]
    while a and a[-1] == 0:
        a.pop()
    return a


def _pgcd_is_unit(a, b, q, add_t, neg_t, mul_t, inv_t):
    """True iff gcd(a, b) is a nonzero constant."""
    a = list(a)
    b = list(b)
    while b:
        inv = inv_t[b[-1]]
        bm = [mul_t[ci * q + inv] for ci in b]
        a = _prem(a, bm, q, add_t, neg_t, mul_t)
        a, b = b, a
    return len(a) == 1


def phi_brute_poly(q, add_t, mul_t, neg_t, inv_t, m) -> int:
    """Count units in GF(q)[x]/(m), m monic of degree >= 1."""
    deg = len(m) - 1
    total = q**deg
    count = 0
    w = [0] * deg
    for _ in range(total):
        trimmed = w[:]
        while trimmed and trimmed[-1] == 0:
            trimmed.pop()
        if trimmed and _pgcd_is_unit(trimmed, m, q, add_t, neg_t, mul_t, inv_t):
            count += 1
        for i in range(deg):
            w[i] += 1
            if w[i] < q:
                break
            w[i] = 0
    return count


def _poly_mulmod(a, b, m, q, add_t, neg_t, mul_t):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] = add_t[out[i + j] * q + mul_t[ai * q + bj]]
    return _prem(out, m, q, add_t, neg_t, mul_t)


def _poly_powmod(x, s_bits, m, q, add_t, neg_t, mul_t):
    acc = [1]
    for bit in s_bits:
        acc = _poly_mulmod(acc, acc, m, q, add_t, neg_t, mul_t)
        if bit:
            acc = _poly_mulmod(acc, x, m, q, add_t, neg_t, mul_t)
    return acc


def _bits_of(s: int) -> bytes:
    return bytes(int(b) for b in bin(s)[2:]) if s else b"\x00"


def rsa_sweep_poly(q, add_t, mul_t, neg_t, m, s: int) -> int:
    """First residue index (mixed-radix) with w^s != w mod m, or -1."""
    deg = len(m) - 1
    total = q**deg
    s_bits = _bits_of(s)
    w = [0] * deg
    for idx in range(total):
        trimmed = w[:]
        while trimmed and trimmed[-1] == 0:
            trimmed.pop()
        got = _poly_powmod(trimmed, s_bits, m, q, add_t, neg_t, mul_t)
        got = got + [0] * (deg - len(got))
        if got != w:
            return idx
        for i in range(deg):
            w[i] += 1
            if w[i] < q:
                break
            w[i] = 0
    return -1


def poly_modpow(q, add_t, mul_t, neg_t, m, x, s_bits: bytes) -> tuple[int, ...]:
    """x^s mod m (m monic); s passed as MSB-first bits."""
    x = _prem(list(x), list(m), q, add_t, neg_t, mul_t)
    out = _poly_powmod(x, s_bits, list(m), q, add_t, neg_t, mul_t)
    return tuple(out)
