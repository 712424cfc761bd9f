"""Canonical residue systems modulo a principal ideal.

A PrincipalIdeal wraps a generator together with a unit-invariant lattice
form, so two ideals compare equal exactly when they contain the same
elements (generators may differ by a unit, which matters in the real
quadratic rings where the unit group is infinite).

The residue system W is a box: [0, n) for Z, the Hermite-form box
{x + y*w : 0 <= x < d1, 0 <= y < d2} for the quadratic rings, and all
polynomials of degree < deg(m) for GF(q)[x].  A mixed-radix index gives a
bijection W <-> [0, |W|) in O(1), which the byte codec relies on.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

from .errors import CapExceeded, InvalidIdeal, OutOfRange, RingMismatch
from .rings import (
    Element,
    IntegerRing,
    PolyRing,
    QuadraticRing,
    Ring,
    canonical_assoc,
    is_unit,
    norm,
    quad_hnf,
)

ENUMERATION_CAP = 10**6


@dataclass(frozen=True)
class PrincipalIdeal:
    """The ideal (generator); equality and hashing use the lattice form."""

    ring: Ring
    generator: Element
    lattice_form: tuple = field(compare=True)

    def __init__(self, generator: Element):
        if not generator:
            raise InvalidIdeal("ideal generator must be nonzero")
        if is_unit(generator):
            raise InvalidIdeal("unit generator would give the whole ring")
        ring = generator.ring
        gen = canonical_assoc(generator)[1]
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "generator", gen)
        object.__setattr__(self, "lattice_form", _lattice_form(gen))

    def __eq__(self, other):
        return (
            isinstance(other, PrincipalIdeal)
            and self.ring == other.ring
            and self.lattice_form == other.lattice_form
        )

    def __hash__(self):
        return hash((self.ring, self.lattice_form))

    @property
    def norm(self) -> int:
        return norm(self.generator)

    def reduce(self, x: Element) -> Element:
        """The unique w in W with x - w in the ideal."""
        if x.ring != self.ring:
            raise RingMismatch(f"{x.ring.tag} element reduced mod {self.ring.tag} ideal")
        ring = self.ring
        if isinstance(ring, IntegerRing):
            n = self.lattice_form[0]
            return ring.el(x.coords[0] % n)
        if isinstance(ring, QuadraticRing):
            d1, c, d2 = self.lattice_form
            u, v = x.coords
            t = v // d2
            v -= t * d2
            u = (u - t * c) % d1
            return ring.el(u, v)
        if isinstance(ring, PolyRing):
            return ring.from_coords(ring._pmod(x.coords, self.generator.coords))
        raise TypeError(f"unknown ring {ring!r}")

    def contains(self, x: Element) -> bool:
        return not self.reduce(x)

    def __str__(self) -> str:
        return f"({self.generator})"

    def __repr__(self) -> str:
        return f"Ideal[{self.ring.tag}]({self.generator})"


def _lattice_form(gen: Element) -> tuple:
    ring = gen.ring
    if isinstance(ring, IntegerRing):
        return (abs(gen.coords[0]),)
    if isinstance(ring, QuadraticRing):
        return quad_hnf(ring.k, *gen.coords)
    if isinstance(ring, PolyRing):
        return gen.coords  # monic after canonicalization
    raise TypeError(f"unknown ring {ring!r}")


def ideal(generator: Element) -> PrincipalIdeal:
    return PrincipalIdeal(generator)


@dataclass(frozen=True)
class ResidueBox:
    """Shape and size of W plus the mixed-radix bijection to [0, size)."""

    ideal: PrincipalIdeal
    shape: tuple[int, ...]
    size: int


def residue_box(A: PrincipalIdeal) -> ResidueBox:
    ring = A.ring
    if isinstance(ring, IntegerRing):
        shape: tuple[int, ...] = (A.lattice_form[0],)
    elif isinstance(ring, QuadraticRing):
        d1, _, d2 = A.lattice_form
        shape = (d1, d2)
    elif isinstance(ring, PolyRing):
        deg = len(A.generator.coords) - 1
        shape = (ring.q,) * deg
    else:
        raise TypeError(f"unknown ring {ring!r}")
    size = 1
    for s in shape:
        size *= s
    return ResidueBox(A, shape, size)


def element_at(idx: int, box: ResidueBox) -> Element:
    """Inverse of index_of: the idx-th residue in mixed-radix order."""
    if not 0 <= idx < box.size:
        raise OutOfRange(f"index {idx} outside [0, {box.size})")
    ring = box.ideal.ring
    if isinstance(ring, IntegerRing):
        return ring.el(idx)
    digits = []
    for s in box.shape:
        digits.append(idx % s)
        idx //= s
    if isinstance(ring, QuadraticRing):
        return ring.el(digits[0], digits[1])
    return ring.from_coords(digits)


def index_of(w: Element, box: ResidueBox) -> int:
    """Mixed-radix index of a residue; requires w to already lie in W."""
    A = box.ideal
    if A.reduce(w) != w:
        raise OutOfRange(f"{w} is not a box representative of {A}")
    ring = A.ring
    if isinstance(ring, IntegerRing):
        return w.coords[0]
    if isinstance(ring, QuadraticRing):
        x, y = w.coords
        return x + box.shape[0] * y
    coords = w.coords
    idx = 0
    for i in reversed(range(len(box.shape))):
        c = coords[i] if i < len(coords) else 0
        idx = idx * box.shape[i] + c
    return idx


def mod_mul(a: Element, b: Element, A: PrincipalIdeal) -> Element:
    return A.reduce(a * b)


def mod_pow(x: Element, s: int, A: PrincipalIdeal) -> Element:
    """reduce(x^s) by square-and-multiply, reducing after every product.

    Integer moduli go through the built-in three-argument pow; polynomial
    moduli go through the sweep kernels.  The exponent is used as given (no
    Euler reduction here; that is the caller's choice).
    """
    if s < 0:
        raise ValueError("exponent must be nonnegative")
    ring = A.ring
    if isinstance(ring, IntegerRing):
        n = A.lattice_form[0]
        return ring.el(pow(x.coords[0] % n, s, n))
    if isinstance(ring, PolyRing):
        from . import kernels

        f = ring.field
        bits = bytes(int(b) for b in bin(s)[2:]) if s else b"\x00"
        out = kernels.call_with_fallback(
            "poly_modpow",
            ring.q,
            f.add_table,
            f.mul_table,
            f.neg_table,
            list(A.generator.coords),
            list(A.reduce(x).coords),
            bits,
        )
        return ring.from_coords(out)
    acc = A.reduce(x.ring.one)
    base = A.reduce(x)
    while s:
        if s & 1:
            acc = A.reduce(acc * base)
        base = A.reduce(base * base)
        s >>= 1
    return acc


def enumerate_residues(
    A: PrincipalIdeal, cap: int = ENUMERATION_CAP
) -> Iterator[Element]:
    """Yield every residue of W exactly once, in mixed-radix order."""
    box = residue_box(A)
    if box.size > cap:
        raise CapExceeded(f"|W| = {box.size} exceeds the enumeration cap {cap}")
    for i in range(box.size):
        yield element_at(i, box)
