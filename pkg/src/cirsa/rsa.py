"""The cryptosystem over a chosen Euclidean ring.

Key generation picks two non-associate prime elements p, q, forms the
modulus ideal A = (p*q), and derives e, d with e*d = 1 mod phi(A) where
phi(A) = (N(p)-1)(N(q)-1).  Blocks are residue indices in [0, |W|);
encryption raises the residue to e, decryption to d, optionally through
the per-prime CRT path (both must agree everywhere).

Because A is a product of two distinct maximal ideals, decryption of
arbitrary residues round-trips: no coprimality restriction on plaintext
blocks, zero included.

The byte codec packs j <= C payload bytes per block, length-prefixed:
v = j*256^C + sum(b_i * 256^(C-i)), with C the largest integer such that
256^(C+1) <= |W|.  Deterministic, no randomized padding: this is an
educational artifact, not a hardened scheme.

Key and ciphertext files are line-oriented UTF-8 with versioned headers
(CIRSA-PUBLIC v1 / CIRSA-PRIVATE v1 / CIRSA-CT v1); parsing is strict and
unknown or out-of-order keys are errors.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from .errors import (
    BadExponents,
    BudgetExceeded,
    CapExceeded,
    DistinctPrimesRequired,
    ExhaustedAttempts,
    FactoringFailed,
    FormatError,
    IndexOutOfRange,
    ModulusTooSmall,
    PhiTooSmall,
    RingMismatch,
)
from . import kernels
from .numtheory import crt_solve, ideal_product, mod_inverse_int, phi_closed
from .quotient import (
    PrincipalIdeal,
    ResidueBox,
    element_at,
    ideal,
    index_of,
    mod_pow,
    residue_box,
)
from .rings import (
    Element,
    IntegerRing,
    PolyRing,
    QuadraticRing,
    Ring,
    factor_element,
    is_prime_element,
    norm,
    random_prime_element,
    ring_from_tag,
)
from .verdict import Verdict

VERIFY_CAP = 10**4

# e candidates tried ahead of the odd scan when e_pref does not fit.
E_FALLBACK_SEQUENCE = (65537, 257, 17, 5, 3)


@dataclass(frozen=True)
class PublicKey:
    ring: Ring
    modulus: PrincipalIdeal
    e: int


@dataclass(frozen=True)
class PrivateKey:
    ring: Ring
    modulus: PrincipalIdeal
    e: int
    p: Element
    q: Element
    d: int
    phi: int

    @property
    def m1(self) -> PrincipalIdeal:
        return ideal(self.p)

    @property
    def m2(self) -> PrincipalIdeal:
        return ideal(self.q)


def _pick_e(e_pref: int, phi: int) -> int:
    seen = set()
    candidates = [e_pref, *E_FALLBACK_SEQUENCE]

    def ok(e: int) -> bool:
        return 1 < e < phi and math.gcd(e, phi) == 1

    for e in candidates:
        if e not in seen:
            seen.add(e)
            if ok(e):
                return e
    for e in range(3, min(phi, 3 + 2000), 2):
        if e not in seen and ok(e):
            return e
    raise ExhaustedAttempts(f"no encryption exponent found for phi = {phi}")


def _random_irreducible(ring: PolyRing, degree: int, rng: random.Random) -> Element:
    for _ in range(50000):
        coeffs = [rng.randrange(ring.q) for _ in range(degree)] + [1]
        cand = ring.from_coords(coeffs)
        if ring.is_irreducible(cand.coords):
            return cand
    raise ExhaustedAttempts(f"no irreducible of degree {degree} found")


def _sample_primes(
    ring: Ring, norm_bits: int, rng: random.Random
) -> tuple[Element, Element]:
    if isinstance(ring, PolyRing):
        # pick degrees so the modulus norm is at least 2^norm_bits
        total_deg = 1
        while ring.q**total_deg < 1 << norm_bits:
            total_deg += 1
        dp = max(1, total_deg // 2)
        dq = max(1, total_deg - dp)
        p = _random_irreducible(ring, dp, rng)
        for _ in range(200):
            q = _random_irreducible(ring, dq, rng)
            if ideal(q) != ideal(p):
                return p, q
        raise DistinctPrimesRequired(f"only one prime ideal of degree {dq} reachable")
    bp = norm_bits // 2 + 1
    bq = norm_bits - norm_bits // 2 + 1
    p = random_prime_element(ring, bp, rng)
    for _ in range(200):
        q = random_prime_element(ring, bq, rng)
        if ideal(q) != ideal(p):
            return p, q
    raise DistinctPrimesRequired(f"could not find a second prime near 2^{bq}")


def keygen(
    ring: Ring,
    norm_bits: int,
    e_pref: int = 65537,
    rng: random.Random | None = None,
    force_primes: tuple[Element, Element] | None = None,
) -> tuple[PublicKey, PrivateKey]:
    """Generate a key pair with modulus norm at least 2^norm_bits.

    Deterministic for a fixed seeded rng.  force_primes is a test hook that
    bypasses sampling but keeps every validity check.
    """
    if force_primes is not None:
        p, q = force_primes
        if not is_prime_element(p) or not is_prime_element(q):
            raise ValueError("forced primes must be prime elements")
    else:
        if norm_bits < 8:
            raise ValueError("norm_bits must be at least 8")
        if rng is None:
            raise ValueError("keygen needs an explicit seeded random source")
        p, q = _sample_primes(ring, norm_bits, rng)
    if ideal(p) == ideal(q):
        raise DistinctPrimesRequired(f"({p}) and ({q}) are the same ideal")
    phi = (norm(p) - 1) * (norm(q) - 1)
    if phi <= 2:
        raise PhiTooSmall(f"phi = {phi} <= 2 admits no valid exponents")
    A = ideal_product(ideal(p), ideal(q))
    e = _pick_e(e_pref, phi)
    d = mod_inverse_int(e, phi)
    pub = PublicKey(ring, A, e)
    priv = PrivateKey(ring, A, e, p, q, d, phi)
    return pub, priv


# ---------------------------------------------------------------------------
# block operations


def encrypt_block(m_idx: int, pk: PublicKey, box: ResidueBox | None = None) -> int:
    box = box or residue_box(pk.modulus)
    if not 0 <= m_idx < box.size:
        raise IndexOutOfRange(f"plaintext index {m_idx} outside [0, {box.size})")
    w = element_at(m_idx, box)
    return index_of(mod_pow(w, pk.e, pk.modulus), box)


def decrypt_block(
    c_idx: int,
    sk: PrivateKey,
    pk: PublicKey | None = None,
    via_crt: bool = False,
    box: ResidueBox | None = None,
) -> int:
    modulus = pk.modulus if pk is not None else sk.modulus
    if modulus != sk.modulus:
        raise RingMismatch("public and private keys describe different moduli")
    box = box or residue_box(modulus)
    if not 0 <= c_idx < box.size:
        raise IndexOutOfRange(f"ciphertext index {c_idx} outside [0, {box.size})")
    c = element_at(c_idx, box)
    if not via_crt:
        return index_of(mod_pow(c, sk.d, modulus), box)
    parts = []
    for prime_ideal, prime in ((sk.m1, sk.p), (sk.m2, sk.q)):
        unit_order = norm(prime) - 1
        d_red = sk.d % unit_order or unit_order
        parts.append((mod_pow(c, d_red, prime_ideal), prime_ideal))
    merged = crt_solve(parts)
    return index_of(modulus.reduce(merged), box)


# ---------------------------------------------------------------------------
# byte codec


def block_capacity(box: ResidueBox) -> int:
    """Largest C with 256^(C+1) <= |W|; raises ModulusTooSmall if C < 1."""
    if box.size < 65536:
        raise ModulusTooSmall(
            f"|W| = {box.size} < 65536: need at least one payload byte per block"
        )
    c = 0
    cap = 256
    while cap * 256 <= box.size and c < 255:
        cap *= 256
        c += 1
    return c


def encode_bytes(payload: bytes, box: ResidueBox) -> list[int]:
    """Length-prefixed packing of payload bytes into residue indices."""
    c = block_capacity(box)
    blocks = []
    for off in range(0, len(payload), c):
        chunk = payload[off : off + c]
        v = len(chunk)
        for i in range(c):
            v = v * 256 + (chunk[i] if i < len(chunk) else 0)
        blocks.append(v)
    return blocks


def decode_bytes(blocks: list[int], box: ResidueBox) -> bytes:
    c = block_capacity(box)
    out = bytearray()
    for v in blocks:
        if not 0 <= v < box.size:
            raise IndexOutOfRange(f"block value {v} outside [0, {box.size})")
        digits = []
        for _ in range(c):
            digits.append(v % 256)
            v //= 256
        digits.reverse()
        j = v
        if j > c:
            raise FormatError(f"block length prefix {j} exceeds capacity {c}")
        if any(digits[j:]):
            raise FormatError("nonzero padding after the payload bytes")
        out.extend(digits[:j])
    return bytes(out)


def encrypt_bytes(payload: bytes, pk: PublicKey) -> list[int]:
    box = residue_box(pk.modulus)
    return [encrypt_block(v, pk, box) for v in encode_bytes(payload, box)]


def decrypt_bytes(blocks: list[int], sk: PrivateKey, via_crt: bool = False) -> bytes:
    box = residue_box(sk.modulus)
    plain = [decrypt_block(cb, sk, via_crt=via_crt, box=box) for cb in blocks]
    return decode_bytes(plain, box)


# ---------------------------------------------------------------------------
# RSA-ideal predicates


def is_rsa_ideal(A: PrincipalIdeal) -> Verdict:
    """Classify A: product of distinct maximal ideals, or not, or too small.

    Ineligible covers |R/A| <= 2 and phi(A) <= 2, where the exponent bounds
    1 < e, d < phi leave nothing to test.  Otherwise the verdict is RsaIdeal
    exactly when the generator is squarefree (distinct primes).
    """
    if A.norm <= 2:
        return Verdict.INELIGIBLE
    phi = phi_closed(A)
    if phi <= 2:
        return Verdict.INELIGIBLE
    try:
        fac = factor_element(A.generator)
    except BudgetExceeded as exc:
        raise FactoringFailed(str(exc)) from exc
    if all(e == 1 for _, e in fac.factors):
        return Verdict.RSA_IDEAL
    return Verdict.NOT_RSA_IDEAL


def verify_rsa_ideal_exhaustive(
    A: PrincipalIdeal, e: int, d: int, cap: int = VERIFY_CAP
) -> bool:
    """Check x^(e*d) = x for every residue x in W (so for every class).

    The (e, d) pair must satisfy 1 < e, d < phi(A) and e*d = 1 mod phi(A);
    BadExponents otherwise.  CapExceeded protects against oversized boxes.
    """
    n = A.norm
    if n > cap:
        raise CapExceeded(f"|W| = {n} exceeds the verify cap {cap}")
    phi = phi_closed(A)
    if not (1 < e < phi and 1 < d < phi):
        raise BadExponents(f"need 1 < e, d < {phi}; got e={e}, d={d}")
    if (e * d) % phi != 1:
        raise BadExponents(f"e*d = {e * d} is not 1 mod {phi}")
    return rsa_sweep(A, e * d) == -1


def rsa_sweep(A: PrincipalIdeal, s: int) -> int:
    """Index of the first residue with w^s != w, or -1 when all pass."""
    ring = A.ring
    if isinstance(ring, IntegerRing):
        return kernels.call_with_fallback("rsa_sweep_int", A.lattice_form[0], s)
    if isinstance(ring, QuadraticRing):
        ma, mb = A.generator.coords
        d1, c, d2 = A.lattice_form
        return kernels.call_with_fallback(
            "rsa_sweep_quad", ring.k, ma, mb, d1, c, d2, s
        )
    if isinstance(ring, PolyRing):
        f = ring.field
        return kernels.call_with_fallback(
            "rsa_sweep_poly",
            ring.q,
            f.add_table,
            f.mul_table,
            f.neg_table,
            list(A.generator.coords),
            s,
        )
    raise TypeError(f"unknown ring {ring!r}")


def find_exponent_pair(phi: int, t: int) -> tuple[int, int] | None:
    """Some (e, d) with e*d = 1 + t*phi and 1 < e, d < phi, if one exists.

    Any divisor e of s = 1 + t*phi is automatically coprime to phi, so only
    the range bounds need checking.
    """
    s = 1 + t * phi
    try:
        from .rings import factor_int

        fac = factor_int(s)
    except BudgetExceeded:
        return None
    divisors = [1]
    for p, a in fac.items():
        divisors = [d * p**i for d in divisors for i in range(a + 1)]
    for e in sorted(divisors):
        d = s // e
        if 1 < e < phi and 1 < d < phi:
            return e, d
    return None


# ---------------------------------------------------------------------------
# key and ciphertext files

PUBLIC_HEADER = "CIRSA-PUBLIC v1"
PRIVATE_HEADER = "CIRSA-PRIVATE v1"
CT_HEADER = "CIRSA-CT v1"


def serialize_public(pk: PublicKey) -> str:
    return (
        f"{PUBLIC_HEADER}\n"
        f"ring: {pk.ring.tag}\n"
        f"modulus: {pk.modulus.generator}\n"
        f"e: {pk.e}\n"
    )


def serialize_private(sk: PrivateKey) -> str:
    return (
        f"{PRIVATE_HEADER}\n"
        f"ring: {sk.ring.tag}\n"
        f"modulus: {sk.modulus.generator}\n"
        f"e: {sk.e}\n"
        f"p: {sk.p}\n"
        f"q: {sk.q}\n"
        f"d: {sk.d}\n"
        f"phi: {sk.phi}\n"
    )


def serialize_ciphertext(ring: Ring, modulus: PrincipalIdeal, blocks: list[int]) -> str:
    head = f"{CT_HEADER}\nring: {ring.tag}\nmodulus: {modulus.generator}\n"
    return head + "".join(f"{b}\n" for b in blocks)


class _LineReader:
    def __init__(self, text: str):
        self.lines = text.splitlines()
        self.pos = 0

    def next_line(self) -> str:
        if self.pos >= len(self.lines):
            raise FormatError("unexpected end of file", line=self.pos + 1)
        self.pos += 1
        return self.lines[self.pos - 1]

    def expect_field(self, key: str) -> str:
        line = self.next_line()
        prefix = f"{key}: "
        if not line.startswith(prefix):
            raise FormatError(f"expected '{key}: ...', got {line!r}", line=self.pos)
        return line[len(prefix) :]

    def at_end(self) -> bool:
        return self.pos >= len(self.lines)


def _parse_nat(text: str, reader: _LineReader, what: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise FormatError(f"bad {what} {text!r}", line=reader.pos) from None
    if v < 0:
        raise FormatError(f"{what} must be nonnegative", line=reader.pos)
    return v


def parse_public(text: str) -> PublicKey:
    r = _LineReader(text)
    if r.next_line() != PUBLIC_HEADER:
        raise FormatError(f"expected header {PUBLIC_HEADER!r}", line=1)
    ring = _parse_ring(r)
    modulus = _parse_modulus(r, ring)
    e = _parse_nat(r.expect_field("e"), r, "exponent")
    if not r.at_end():
        raise FormatError("trailing content after the key", line=r.pos + 1)
    if e <= 1:
        raise FormatError("e must exceed 1", line=4)
    return PublicKey(ring, modulus, e)


def parse_private(text: str) -> PrivateKey:
    r = _LineReader(text)
    if r.next_line() != PRIVATE_HEADER:
        raise FormatError(f"expected header {PRIVATE_HEADER!r}", line=1)
    ring = _parse_ring(r)
    modulus = _parse_modulus(r, ring)
    e = _parse_nat(r.expect_field("e"), r, "exponent")
    p = _parse_element(r, ring, "p")
    q = _parse_element(r, ring, "q")
    d = _parse_nat(r.expect_field("d"), r, "exponent")
    phi = _parse_nat(r.expect_field("phi"), r, "phi")
    if not r.at_end():
        raise FormatError("trailing content after the key", line=r.pos + 1)
    if ideal_product(ideal(p), ideal(q)) != modulus:
        raise FormatError("modulus is not the product of p and q")
    if phi <= 2 or not (1 < e < phi and 1 < d < phi) or (e * d) % phi != 1:
        raise FormatError("exponents and phi are inconsistent")
    return PrivateKey(ring, modulus, e, p, q, d, phi)


def parse_ciphertext(text: str) -> tuple[Ring, PrincipalIdeal, list[int]]:
    r = _LineReader(text)
    if r.next_line() != CT_HEADER:
        raise FormatError(f"expected header {CT_HEADER!r}", line=1)
    ring = _parse_ring(r)
    modulus = _parse_modulus(r, ring)
    blocks = []
    while not r.at_end():
        blocks.append(_parse_nat(r.next_line(), r, "block index"))
    return ring, modulus, blocks


def _parse_ring(r: _LineReader) -> Ring:
    tag = r.expect_field("ring")
    try:
        return ring_from_tag(tag)
    except ValueError as exc:
        raise FormatError(str(exc), line=r.pos) from None


def _parse_element(r: _LineReader, ring: Ring, key: str) -> Element:
    text = r.expect_field(key)
    try:
        return ring.parse_element(text)
    except ValueError as exc:
        raise FormatError(f"bad element {text!r}: {exc}", line=r.pos) from None


def _parse_modulus(r: _LineReader, ring: Ring) -> PrincipalIdeal:
    el = _parse_element(r, ring, "modulus")
    try:
        return ideal(el)
    except Exception as exc:
        raise FormatError(f"bad modulus: {exc}", line=r.pos) from None
