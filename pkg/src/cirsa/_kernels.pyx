# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels for the exhaustive sweeps.

Operation-for-operation twin of cirsa._kernels_py (see that module for the
shared conventions); this one runs the inner loops in C.  Inputs are
range-guarded: callers that might exceed the 64/128-bit windows must fall
back to the pure-Python backend, which uses arbitrary precision.
"""

from libc.stdlib cimport free, malloc

cdef extern from *:
    ctypedef long long i128 "__int128"

BACKEND = "cython"

DEF MAX_Q = 512


cdef inline long long _ll_gcd(long long a, long long b) noexcept:
    cdef long long t
    if a < 0:
        a = -a
    if b < 0:
        b = -b
    while b:
        t = a % b
        a = b
        b = t
    return a


cdef inline long long _ll_abs(long long a) noexcept:
    return -a if a < 0 else a


# ---------------------------------------------------------------------------
# integers


def phi_brute_int(long long n):
    """Count units in Z/n by definition."""
    if n < 1 or n > (<long long> 1) << 40:
        raise ValueError("n outside the compiled kernel window")
    cdef long long w, count = 0
    for w in range(n):
        if _ll_gcd(w, n) == 1:
            count += 1
    return count


def rsa_sweep_int(long long n, unsigned long long s):
    """First w in [0, n) with w^s != w mod n, or -1 if none."""
    if n < 1 or n > (<long long> 1) << 60:
        raise ValueError("n outside the compiled kernel window")
    cdef long long w
    cdef i128 acc, base
    cdef unsigned long long e
    for w in range(n):
        acc = 1 % n
        base = w
        e = s
        while e:
            if e & 1:
                acc = (acc * base) % n
            base = (base * base) % n
            e >>= 1
        if acc != w:
            return w
    return -1


# ---------------------------------------------------------------------------
# quadratic rings


def phi_brute_quad(long long k, long long ma, long long mb,
                   long long d1, long long c, long long d2):
    """Count units in Z[w]/(ma + mb*w) over the Hermite box (d1, c, d2)."""
    cdef long long bound = (<long long> 1) << 30
    if (_ll_abs(ma) >= bound or _ll_abs(mb) >= bound or d1 >= bound
            or d2 >= bound):
        raise ValueError("operands outside the compiled kernel window")
    cdef long long nm = _ll_abs(ma * ma - k * mb * mb)
    cdef long long x, y, g, count = 0
    for y in range(d2):
        for x in range(d1):
            g = _ll_gcd(x * x - k * y * y, x * mb - ma * y)
            g = _ll_gcd(g, x * ma - k * mb * y)
            g = _ll_gcd(g, nm)
            if g == 1:
                count += 1
    return count


cdef inline void _quad_reduce(i128 *u, i128 *v, long long k,
                              long long d1, long long c, long long d2) noexcept:
    cdef i128 t = v[0] / d2  # v >= 0 always in this call graph
    v[0] = v[0] - t * d2
    u[0] = (u[0] - t * c) % d1
    if u[0] < 0:
        u[0] += d1


def rsa_sweep_quad(long long k, long long ma, long long mb,
                   long long d1, long long c, long long d2,
                   unsigned long long s):
    """First box index whose residue fails w^s = w, or -1 if none."""
    cdef long long bound = (<long long> 1) << 40
    if d1 >= bound or d2 >= bound or d1 * d2 >= bound:
        raise ValueError("box outside the compiled kernel window")
    cdef long long x, y
    cdef i128 ax, ay, bx, by, u, v
    cdef unsigned long long e
    for y in range(d2):
        for x in range(d1):
            ax = 1 % d1
            ay = 0
            bx = x
            by = y
            e = s
            while e:
                if e & 1:
                    u = ax * bx + k * ay * by
                    v = ax * by + ay * bx
                    _quad_reduce(&u, &v, k, d1, c, d2)
                    ax = u
                    ay = v
                e >>= 1
                if e:
                    u = bx * bx + k * by * by
                    v = 2 * bx * by
                    _quad_reduce(&u, &v, k, d1, c, d2)
                    bx = u
                    by = v
            if ax != x or ay != y:
                return x + d1 * y
    return -1


# ---------------------------------------------------------------------------
# polynomial rings over GF(q)

# Shared scratch layout: coefficient arrays of ints in [0, q).  All lengths
# are bounded by the caller-supplied modulus degree.


cdef struct PolyCtx:
    int q
    int dm                   # deg(m)
    const int *add_t
    const int *mul_t
    const int *neg_t
    int *m                   # monic modulus, dm+1 coefficients


cdef inline int _prem_c(int *a, int la, int *b, int lb, PolyCtx *ctx) noexcept:
    """Remainder of a (length la) by monic b (length lb); returns new length."""
    cdef int i, j, off, co, q = ctx.q
    cdef const int *add_t = ctx.add_t
    cdef const int *mul_t = ctx.mul_t
    cdef const int *neg_t = ctx.neg_t
    for i in range(la - 1, lb - 2, -1):
        co = a[i]
        if co:
            off = i - (lb - 1)
            for j in range(lb):
                a[off + j] = add_t[a[off + j] * q + neg_t[mul_t[co * q + b[j]]]]
    la = lb - 1 if la >= lb else la
    while la > 0 and a[la - 1] == 0:
        la -= 1
    return la


cdef int _mulmod_c(int *out, int *a, int la, int *b, int lb, PolyCtx *ctx) noexcept:
    """out = a*b mod m; returns the length of out."""
    cdef int i, j, n, q = ctx.q
    cdef const int *add_t = ctx.add_t
    cdef const int *mul_t = ctx.mul_t
    if la == 0 or lb == 0:
        return 0
    n = la + lb - 1
    for i in range(n):
        out[i] = 0
    for i in range(la):
        if a[i]:
            for j in range(lb):
                if b[j]:
                    out[i + j] = add_t[out[i + j] * q + mul_t[a[i] * q + b[j]]]
    return _prem_c(out, n, ctx.m, ctx.dm + 1, ctx)


cdef int _powmod_c(int *out, int *x, int lx, const unsigned char *bits,
                   int nbits, int *scratch, PolyCtx *ctx) noexcept:
    """out = x^s mod m with s given MSB-first; returns length."""
    cdef int i, lacc
    cdef int *acc = out
    cdef int *tmp = scratch
    acc[0] = 1
    lacc = 1
    for i in range(nbits):
        lacc = _mulmod_c(tmp, acc, lacc, acc, lacc, ctx)
        acc, tmp = tmp, acc
        if bits[i]:
            lacc = _mulmod_c(tmp, acc, lacc, x, lx, ctx)
            acc, tmp = tmp, acc
    if acc != out:
        for i in range(lacc):
            out[i] = acc[i]
    return lacc


cdef class _PolyWorkspace:
    """Owns the C copies of the tables, modulus and scratch buffers."""

    cdef PolyCtx ctx
    cdef int *buf_a
    cdef int *buf_b
    cdef int *buf_c
    cdef int *buf_w
    cdef object _add
    cdef object _mul
    cdef object _neg

    def __cinit__(self, int q, add_t, mul_t, neg_t, m_coeffs):
        cdef int i, dm = len(m_coeffs) - 1
        if q < 2 or q > MAX_Q:
            raise ValueError("q outside the compiled kernel window")
        if dm < 1 or dm > 8192:
            raise ValueError("modulus degree outside the compiled kernel window")
        if m_coeffs[dm] != 1:
            raise ValueError("modulus must be monic")
        from array import array
        self._add = array("i", add_t) if not isinstance(add_t, array) else add_t
        self._mul = array("i", mul_t) if not isinstance(mul_t, array) else mul_t
        self._neg = array("i", neg_t) if not isinstance(neg_t, array) else neg_t
        cdef int[:] av = self._add
        cdef int[:] mv = self._mul
        cdef int[:] nv = self._neg
        self.ctx.q = q
        self.ctx.dm = dm
        self.ctx.add_t = &av[0]
        self.ctx.mul_t = &mv[0]
        self.ctx.neg_t = &nv[0]
        self.ctx.m = <int *> malloc((dm + 1) * sizeof(int))
        self.buf_a = <int *> malloc((2 * dm + 2) * sizeof(int))
        self.buf_b = <int *> malloc((2 * dm + 2) * sizeof(int))
        self.buf_c = <int *> malloc((2 * dm + 2) * sizeof(int))
        self.buf_w = <int *> malloc((dm + 1) * sizeof(int))
        if (self.ctx.m == NULL or self.buf_a == NULL or self.buf_b == NULL
                or self.buf_c == NULL or self.buf_w == NULL):
            raise MemoryError()
        for i in range(dm + 1):
            self.ctx.m[i] = m_coeffs[i]

    def __dealloc__(self):
        free(self.ctx.m)
        free(self.buf_a)
        free(self.buf_b)
        free(self.buf_c)
        free(self.buf_w)


def phi_brute_poly(int q, add_t, mul_t, neg_t, inv_t, m):
    """Count units in GF(q)[x]/(m), m monic of degree >= 1."""
    cdef _PolyWorkspace ws = _PolyWorkspace(q, add_t, mul_t, neg_t, m)
    from array import array
    inv_arr = array("i", inv_t) if not isinstance(inv_t, array) else inv_t
    cdef int[:] iv = inv_arr
    cdef const int *inv_c = &iv[0]
    cdef PolyCtx *ctx = &ws.ctx
    cdef int dm = ctx.dm
    cdef long long total = 1, count = 0, r
    cdef int i, la, lb, t, invc, j
    cdef int *a = ws.buf_a
    cdef int *b = ws.buf_b
    cdef int *w = ws.buf_w
    for i in range(dm):
        total *= q
        w[i] = 0
    for r in range(total):
        # gcd(w, m): result is a unit iff deg == 0
        la = dm
        while la > 0 and w[la - 1] == 0:
            la -= 1
        if la > 0:
            for i in range(la):
                a[i] = w[i]
            for i in range(dm + 1):
                b[i] = ctx.m[i]
            lb = dm + 1
            while lb > 0:
                invc = inv_c[b[lb - 1]]
                if invc != 1:
                    for i in range(lb):
                        b[i] = ctx.mul_t[b[i] * q + invc]
                la = _prem_c(a, la, b, lb, ctx)
                # swap a <-> b
                for i in range(max(la, lb)):
                    t = a[i]
                    a[i] = b[i]
                    b[i] = t
                t = la
                la = lb
                lb = t
            if la == 1:
                count += 1
        # odometer
        for j in range(dm):
            w[j] += 1
            if w[j] < q:
                break
            w[j] = 0
    return count


def rsa_sweep_poly(int q, add_t, mul_t, neg_t, m, unsigned long long s):
    """First residue index (mixed-radix) with w^s != w mod m, or -1."""
    cdef _PolyWorkspace ws = _PolyWorkspace(q, add_t, mul_t, neg_t, m)
    cdef PolyCtx *ctx = &ws.ctx
    cdef int dm = ctx.dm
    cdef long long total = 1, r
    cdef int i, j, lw, lacc, nbits
    cdef unsigned char bits[64]
    cdef unsigned long long e = s
    cdef int *w = ws.buf_w
    cdef int *x = ws.buf_a
    cdef int *acc = ws.buf_b
    cdef int *scratch = ws.buf_c
    nbits = 0
    while e:
        nbits += 1
        e >>= 1
    if nbits == 0:
        nbits = 1
        bits[0] = 0
    else:
        for i in range(nbits):
            bits[i] = (s >> (nbits - 1 - i)) & 1
    for i in range(dm):
        total *= q
        w[i] = 0
    for r in range(total):
        lw = dm
        while lw > 0 and w[lw - 1] == 0:
            lw -= 1
        for i in range(lw):
            x[i] = w[i]
        lacc = _powmod_c(acc, x, lw, bits, nbits, scratch, ctx)
        if lacc != lw:
            return r
        for i in range(lacc):
            if acc[i] != w[i]:
                return r
        for j in range(dm):
            w[j] += 1
            if w[j] < q:
                break
            w[j] = 0
    return -1


def poly_modpow(int q, add_t, mul_t, neg_t, m, x, s_bits: bytes):
    """x^s mod m (m monic); s passed as MSB-first bits."""
    cdef _PolyWorkspace ws = _PolyWorkspace(q, add_t, mul_t, neg_t, m)
    cdef PolyCtx *ctx = &ws.ctx
    cdef int dm = ctx.dm
    cdef int i, lx, lacc
    cdef const unsigned char *bits = s_bits
    lx = len(x)
    if lx > 2 * dm + 1:
        raise ValueError("operand degree too large; reduce it first")
    cdef int *xb = ws.buf_a
    for i in range(lx):
        xb[i] = x[i]
    lx = _prem_c(xb, lx, ctx.m, dm + 1, ctx)
    lacc = _powmod_c(ws.buf_b, xb, lx, bits, len(s_bits), ws.buf_c, ctx)
    return tuple(ws.buf_b[i] for i in range(lacc))
