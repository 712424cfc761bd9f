"""Exhaustive verification lab for small finite rings.

Rings are given by Cayley tables over element indices 0..order-1, so
non-commutative examples (full and triangular matrix rings) sit next to
the modular and Galois-field cases.  Ideals are plain element subsets.
Everything is checked by enumeration: the commuting-ideals property, the
ideal lattice, maximality, quotient structure, unit counts, the RSA-ideal
predicate, and the product-of-maximal-ideals characterization.

The inner set computations (products of ideals, additive closures,
quotient tables) are vectorized with numpy: they are quadratic in the ring
order and the lab routinely sweeps every ideal pair.

Ring axioms are validated exhaustively at construction up to order 256
(the default order cap); larger rings, reachable only by raising the cap
explicitly, skip the n^3 associativity/distributivity sweeps unless
validation is forced, since the algebraic constructors produce them from
known-good structures.  Table files are untrusted input and are always
validated in full.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    CapExceeded,
    FormatError,
    ImproperIdeal,
    InvalidTables,
    NotCIRing,
    RingMismatch,
)
from .gf import get_field, prime_power_decompose
from .verdict import Verdict

DEFAULT_ORDER_CAP = 256
VALIDATE_CAP = 256
FAMILY_CAP = 1 << 17
MAXIMAL_SUBSET_CAP = 12


class FiniteRing:
    """A finite associative ring with identity, as index tables."""

    def __init__(
        self,
        add: np.ndarray,
        mul: np.ndarray,
        zero_idx: int,
        one_idx: int,
        label: str,
        validate: bool | None = None,
    ):
        add = np.asarray(add, dtype=np.int32)
        mul = np.asarray(mul, dtype=np.int32)
        n = add.shape[0]
        self.order = n
        self.add = add
        self.mul = mul
        self.zero_idx = int(zero_idx)
        self.one_idx = int(one_idx)
        self.label = label
        if validate is None:
            validate = n <= VALIDATE_CAP
        self._validate_shapes()
        if validate:
            self._validate_axioms()

    # -- validation ----------------------------------------------------------

    def _validate_shapes(self) -> None:
        n = self.order
        for name, t in (("add", self.add), ("mul", self.mul)):
            if t.shape != (n, n):
                raise InvalidTables(f"{name} table is not {n}x{n}")
            if t.min() < 0 or t.max() >= n:
                raise InvalidTables(f"{name} table entries outside [0, {n})")
        if not 0 <= self.zero_idx < n or not 0 <= self.one_idx < n:
            raise InvalidTables("zero/one index outside the element range")
        if self.zero_idx == self.one_idx:
            raise InvalidTables("identity equals zero (trivial rings excluded)")

    def _validate_axioms(self) -> None:
        n, add, mul = self.order, self.add, self.mul
        idx = np.arange(n)
        if not np.array_equal(add, add.T):
            raise InvalidTables("addition is not commutative")
        if not np.array_equal(add[self.zero_idx], idx):
            raise InvalidTables("zero is not an additive identity")
        if not (add == self.zero_idx).any(axis=1).all():
            raise InvalidTables("some element has no additive inverse")
        if not np.array_equal(mul[self.one_idx], idx) or not np.array_equal(
            mul[:, self.one_idx], idx
        ):
            raise InvalidTables("one is not a two-sided multiplicative identity")
        for a in range(n):
            if not np.array_equal(add[add[a]], add[a][add]):
                raise InvalidTables("addition is not associative")
            if not np.array_equal(mul[mul[a]], mul[a][mul]):
                raise InvalidTables("multiplication is not associative")
            row = mul[a]
            if not np.array_equal(mul[a][add], add[np.ix_(row, row)]):
                raise InvalidTables("left distributivity fails")
            col = mul[:, a]
            if not np.array_equal(mul[add, a], add[np.ix_(col, col)]):
                raise InvalidTables("right distributivity fails")

    # -- helpers -------------------------------------------------------------

    def neg_of(self, a: int) -> int:
        return int(np.flatnonzero(self.add[a] == self.zero_idx)[0])

    def pow_all(self, s: int) -> np.ndarray:
        """x^s for every element at once (s >= 1)."""
        if s < 1:
            raise ValueError("exponent must be >= 1")
        n = self.order
        acc = np.full(n, self.one_idx, dtype=np.int32)
        base = np.arange(n, dtype=np.int32)
        while s:
            if s & 1:
                acc = self.mul[acc, base]
            base = self.mul[base, base]
            s >>= 1
        return acc

    def __repr__(self) -> str:
        return f"FiniteRing({self.label}, order={self.order})"


@dataclass(frozen=True)
class FIdeal:
    """A two-sided ideal as an immutable sorted index tuple."""

    ring: FiniteRing
    members: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.members)

    def member_set(self) -> frozenset[int]:
        return frozenset(self.members)

    def is_whole_ring(self) -> bool:
        return len(self.members) == self.ring.order

    def __le__(self, other: "FIdeal") -> bool:
        return set(self.members) <= set(other.members)

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self.members)) + "}"


def _mk_ideal(R: FiniteRing, members: np.ndarray | frozenset | set) -> FIdeal:
    arr = sorted(int(x) for x in members)
    return FIdeal(R, tuple(arr))


def _check_same_ring(A: FIdeal, B: FIdeal) -> FiniteRing:
    if A.ring is not B.ring:
        raise RingMismatch("ideals of different lab rings")
    return A.ring


def _additive_closure(R: FiniteRing, gens: np.ndarray) -> np.ndarray:
    """Smallest additive subgroup containing gens (indices, any order)."""
    mask = np.zeros(R.order, dtype=bool)
    mask[R.zero_idx] = True
    frontier = np.unique(gens.astype(np.int32))
    frontier = frontier[~mask[frontier]]
    mask[frontier] = True
    while frontier.size:
        members = np.flatnonzero(mask).astype(np.int32)
        sums = np.unique(R.add[np.ix_(members, frontier)])
        new = sums[~mask[sums]]
        mask[new] = True
        frontier = new.astype(np.int32)
    return np.flatnonzero(mask)


# ---------------------------------------------------------------------------
# constructors


def _cap_check(order: int, order_cap: int) -> None:
    if order > order_cap:
        raise CapExceeded(f"ring order {order} exceeds the cap {order_cap}")


def zmod(n: int, order_cap: int = DEFAULT_ORDER_CAP) -> FiniteRing:
    if n < 2:
        raise ValueError("zmod needs n >= 2")
    _cap_check(n, order_cap)
    idx = np.arange(n)
    add = (idx[:, None] + idx[None, :]) % n
    mul = (idx[:, None] * idx[None, :]) % n
    return FiniteRing(add, mul, 0, 1, f"Z/{n}")


def gf_ring(q: int, order_cap: int = DEFAULT_ORDER_CAP) -> FiniteRing:
    p, k = prime_power_decompose(q)
    _cap_check(q, order_cap)
    f = get_field(p, k)
    add = np.array(f.add_table, dtype=np.int32).reshape(q, q)
    mul = np.array(f.mul_table, dtype=np.int32).reshape(q, q)
    return FiniteRing(add, mul, 0, 1, f"GF({q})")


def matrix2(base: FiniteRing, order_cap: int = DEFAULT_ORDER_CAP) -> FiniteRing:
    """Full 2x2 matrices over the base ring; index packs [[a,b],[c,d]]."""
    nb = base.order
    n = nb**4
    _cap_check(n, order_cap)
    idx = np.arange(n)
    d = idx % nb
    c = (idx // nb) % nb
    b = (idx // nb**2) % nb
    a = idx // nb**3
    badd, bmul = base.add, base.mul
    ai, aj = a[:, None], a[None, :]
    bi, bj = b[:, None], b[None, :]
    ci, cj = c[:, None], c[None, :]
    di, dj = d[:, None], d[None, :]
    add = ((badd[ai, aj] * nb + badd[bi, bj]) * nb + badd[ci, cj]) * nb + badd[di, dj]
    e11 = badd[bmul[ai, aj], bmul[bi, cj]]
    e12 = badd[bmul[ai, bj], bmul[bi, dj]]
    e21 = badd[bmul[ci, aj], bmul[di, cj]]
    e22 = badd[bmul[ci, bj], bmul[di, dj]]
    mul = ((e11 * nb + e12) * nb + e21) * nb + e22
    z, o = base.zero_idx, base.one_idx
    zero = ((z * nb + z) * nb + z) * nb + z
    one = ((o * nb + z) * nb + z) * nb + o
    return FiniteRing(add, mul, zero, one, f"M2({base.label})")


def triangular2(base: FiniteRing, order_cap: int = DEFAULT_ORDER_CAP) -> FiniteRing:
    """Upper-triangular 2x2 matrices [[a,b],[0,d]] over the base ring."""
    nb = base.order
    n = nb**3
    _cap_check(n, order_cap)
    idx = np.arange(n)
    d = idx % nb
    b = (idx // nb) % nb
    a = idx // nb**2
    badd, bmul = base.add, base.mul
    ai, aj = a[:, None], a[None, :]
    bi, bj = b[:, None], b[None, :]
    di, dj = d[:, None], d[None, :]
    add = (badd[ai, aj] * nb + badd[bi, bj]) * nb + badd[di, dj]
    mul = (
        bmul[ai, aj] * nb + badd[bmul[ai, bj], bmul[bi, dj]]
    ) * nb + bmul[di, dj]
    z, o = base.zero_idx, base.one_idx
    zero = (z * nb + z) * nb + z
    one = (o * nb + z) * nb + o
    return FiniteRing(add, mul, zero, one, f"T2({base.label})")


def product_ring(
    factors: list[FiniteRing], order_cap: int = DEFAULT_ORDER_CAP
) -> FiniteRing:
    if len(factors) < 2:
        raise ValueError("product needs at least two factors")
    n = 1
    for f in factors:
        n *= f.order
    _cap_check(n, order_cap)
    idx = np.arange(n)
    comps = []
    rest = idx.copy()
    for f in reversed(factors):
        comps.append(rest % f.order)
        rest //= f.order
    comps.reverse()  # comps[i] = component in factors[i], first factor slowest
    add = np.zeros((n, n), dtype=np.int64)
    mul = np.zeros((n, n), dtype=np.int64)
    for f, comp in zip(factors, comps):
        ci, cj = comp[:, None], comp[None, :]
        add = add * f.order + f.add[ci, cj]
        mul = mul * f.order + f.mul[ci, cj]
    zero = one = 0
    for f in factors:
        zero = zero * f.order + f.zero_idx
        one = one * f.order + f.one_idx
    label = " x ".join(f.label for f in factors)
    return FiniteRing(add, mul, zero, one, label)


TABLE_HEADER = "CIRING-TABLE v1"


def from_tables(text: str, order_cap: int = DEFAULT_ORDER_CAP) -> FiniteRing:
    """Parse the CIRING-TABLE v1 format; always fully validated."""
    lines = text.splitlines()
    pos = 0

    def next_line() -> str:
        nonlocal pos
        if pos >= len(lines):
            raise FormatError("unexpected end of file", line=pos + 1)
        pos += 1
        return lines[pos - 1].strip()

    if next_line() != TABLE_HEADER:
        raise FormatError(f"expected header {TABLE_HEADER!r}", line=1)
    order_line = next_line()
    if not order_line.startswith("order: "):
        raise FormatError("expected 'order: n'", line=pos)
    try:
        n = int(order_line[len("order: ") :])
    except ValueError:
        raise FormatError("bad order", line=pos) from None
    if n < 2:
        raise FormatError("order must be at least 2", line=pos)
    _cap_check(n, order_cap)

    def read_table(name: str) -> np.ndarray:
        if next_line() != f"{name}:":
            raise FormatError(f"expected '{name}:'", line=pos)
        rows = []
        for _ in range(n):
            row = next_line().split()
            if len(row) != n:
                raise FormatError(f"{name} row needs {n} entries", line=pos)
            try:
                rows.append([int(v) for v in row])
            except ValueError:
                raise FormatError(f"bad {name} entry", line=pos) from None
        return np.array(rows, dtype=np.int32)

    add = read_table("add")
    mul = read_table("mul")
    zero_line = next_line()
    one_line = next_line()
    if not zero_line.startswith("zero: ") or not one_line.startswith("one: "):
        raise FormatError("expected 'zero: i' then 'one: j'", line=pos)
    zero = int(zero_line[len("zero: ") :])
    one = int(one_line[len("one: ") :])
    while pos < len(lines):
        if lines[pos].strip():
            raise FormatError("trailing content after the tables", line=pos + 1)
        pos += 1
    return FiniteRing(add, mul, zero, one, f"table:{n}", validate=True)


def build_ring(spec: str, order_cap: int = DEFAULT_ORDER_CAP) -> FiniteRing:
    """Parse a ring spec: zmod:N | gf:Q | matrix2:S | triangular2:S |
    product:S+S+... (gfQ shorthand accepted, e.g. triangular2:gf2)."""
    spec = spec.strip()
    if spec.startswith("zmod:"):
        return zmod(int(spec[5:]), order_cap)
    if spec.startswith("gf:"):
        return gf_ring(int(spec[3:]), order_cap)
    if spec.startswith("gf") and spec[2:].isdigit():
        return gf_ring(int(spec[2:]), order_cap)
    if spec.startswith("matrix2:"):
        return matrix2(build_ring(spec[8:], order_cap), order_cap)
    if spec.startswith("triangular2:"):
        return triangular2(build_ring(spec[12:], order_cap), order_cap)
    if spec.startswith("product:"):
        parts = spec[8:].split("+")
        return product_ring([build_ring(p, order_cap) for p in parts], order_cap)
    raise ValueError(f"unknown ring spec {spec!r}")


# ---------------------------------------------------------------------------
# ideals


def principal_ideal(R: FiniteRing, a: int) -> FIdeal:
    """Smallest two-sided ideal containing a: closure of {r*a*s}."""
    if not 0 <= a < R.order:
        raise ValueError("element index out of range")
    ra = np.unique(R.mul[:, a])
    ras = np.unique(R.mul[np.ix_(ra, np.arange(R.order))])
    return _mk_ideal(R, _additive_closure(R, ras))


def all_ideals(R: FiniteRing) -> list[FIdeal]:
    """The full two-sided ideal lattice, via join-closure of principals.

    Sorted by size then lexicographically, so indices are reproducible.
    """
    seen: dict[tuple[int, ...], FIdeal] = {}
    for a in range(R.order):
        I = principal_ideal(R, a)
        seen.setdefault(I.members, I)
    work = list(seen.values())
    while work:
        next_work = []
        current = list(seen.values())
        for A in work:
            for B in current:
                s = fideal_sum(A, B)
                if s.members not in seen:
                    seen[s.members] = s
                    next_work.append(s)
        work = next_work
    out = sorted(seen.values(), key=lambda I: (I.size, I.members))
    return out


def fideal_product(A: FIdeal, B: FIdeal) -> FIdeal:
    """AB: additive closure of all pairwise products."""
    R = _check_same_ring(A, B)
    gens = np.unique(R.mul[np.ix_(np.array(A.members), np.array(B.members))])
    return _mk_ideal(R, _additive_closure(R, gens))


def fideal_sum(A: FIdeal, B: FIdeal) -> FIdeal:
    R = _check_same_ring(A, B)
    gens = np.array(sorted(set(A.members) | set(B.members)))
    return _mk_ideal(R, _additive_closure(R, gens))


def fideal_intersection(A: FIdeal, B: FIdeal) -> FIdeal:
    R = _check_same_ring(A, B)
    return _mk_ideal(R, set(A.members) & set(B.members))


def ideal_is_valid(A: FIdeal) -> bool:
    """Re-check the closure invariants (used by the test suite)."""
    R = A.ring
    members = set(A.members)
    if R.zero_idx not in members:
        return False
    arr = np.array(sorted(members))
    if set(np.unique(R.add[np.ix_(arr, arr)])) - members:
        return False
    left = np.unique(R.mul[np.ix_(np.arange(R.order), arr)])
    right = np.unique(R.mul[np.ix_(arr, np.arange(R.order))])
    return not (set(left) - members) and not (set(right) - members)


# ---------------------------------------------------------------------------
# structure checks


@dataclass(frozen=True)
class CiReport:
    is_ci: bool
    witness: tuple[FIdeal, FIdeal] | None
    ideal_count: int


def check_ci(R: FiniteRing, lattice: list[FIdeal] | None = None) -> CiReport:
    """AB = BA for every ideal pair; witness pair on failure."""
    lattice = lattice if lattice is not None else all_ideals(R)
    for i, A in enumerate(lattice):
        for B in lattice[i + 1 :]:
            if fideal_product(A, B) != fideal_product(B, A):
                return CiReport(False, (A, B), len(lattice))
    return CiReport(True, None, len(lattice))


def is_ci_ring(R: FiniteRing) -> bool:
    return check_ci(R).is_ci


def is_maximal(R: FiniteRing, A: FIdeal, lattice: list[FIdeal] | None = None) -> bool:
    if A.is_whole_ring():
        return False
    lattice = lattice if lattice is not None else all_ideals(R)
    a = set(A.members)
    for B in lattice:
        b = set(B.members)
        if a < b and len(b) < R.order:
            return False
    return True


def quotient_ring(R: FiniteRing, A: FIdeal) -> FiniteRing:
    """Coset ring R/A with min-index coset representatives."""
    if A.is_whole_ring():
        raise ImproperIdeal("quotient by the whole ring")
    if A.size == 1:
        return R
    members = np.array(A.members)
    rep_of = R.add[:, members].min(axis=1)
    reps = np.unique(rep_of)
    rep_index = np.full(R.order, -1, dtype=np.int32)
    rep_index[reps] = np.arange(len(reps))
    qadd = rep_index[rep_of[R.add[np.ix_(reps, reps)]]]
    qmul = rep_index[rep_of[R.mul[np.ix_(reps, reps)]]]
    zero = int(rep_index[rep_of[R.zero_idx]])
    one = int(rep_index[rep_of[R.one_idx]])
    return FiniteRing(qadd, qmul, zero, one, f"{R.label}/I{A.size}")


def coset_rep_array(R: FiniteRing, A: FIdeal) -> np.ndarray:
    """rep_of[x]: the minimal index in the coset x + A."""
    members = np.array(A.members)
    return R.add[:, members].min(axis=1)


def is_commutative(R: FiniteRing) -> bool:
    return bool(np.array_equal(R.mul, R.mul.T))


def unit_count(R: FiniteRing) -> int:
    """Elements with a two-sided inverse (= phi of the zero ideal)."""
    has = R.mul == R.one_idx
    return int((has & has.T).any(axis=1).sum())


def is_rsa_ideal_fin(R: FiniteRing, A: FIdeal) -> Verdict:
    """Single-exponent test: x^(1+phi) = x in R/A for all x.

    If x^(1+phi) = x then x^(1+t*phi) = x for every t >= 1 by induction, so
    this one sweep decides the property for every exponent pair e*d =
    1 + t*phi at once.
    """
    Q = quotient_ring(R, A)
    if Q.order <= 2:
        return Verdict.INELIGIBLE
    phi = unit_count(Q)
    if phi <= 2:
        return Verdict.INELIGIBLE
    ok = bool(np.array_equal(Q.pow_all(1 + phi), np.arange(Q.order)))
    return Verdict.RSA_IDEAL if ok else Verdict.NOT_RSA_IDEAL


# ---------------------------------------------------------------------------
# theorem-level reports


@dataclass(frozen=True)
class Violation:
    kind: str
    detail: str

    def machine_line(self) -> str:
        return f"VIOLATION {self.kind} {self.detail}"


@dataclass(frozen=True)
class Theorem5Report:
    ring_label: str
    ideal_count: int
    maximal_count: int
    rsa_count: int
    ineligible_count: int
    violations: tuple[Violation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def theorem5_verify(R: FiniteRing) -> Theorem5Report:
    """RSA-ideal <=> product of distinct maximal ideals, over all ideals.

    Requires the commuting-ideals property (NotCIRing otherwise).  Also
    checks that every quotient by a found RSA-ideal is commutative.

    The product set is built from maximal ideals whose quotient is a field
    (for a finite simple quotient: commutative).  A maximal ideal with a
    matrix-ring quotient, like the zero ideal of M2(GF(2)), contributes
    nilpotents to every quotient it appears under and can never enter the
    characterization.
    """
    lattice = all_ideals(R)
    ci = check_ci(R, lattice)
    if not ci.is_ci:
        A, B = ci.witness
        raise NotCIRing(f"{R.label} has non-commuting ideals {A} and {B}")
    proper = [A for A in lattice if not A.is_whole_ring()]
    maximals = [A for A in proper if is_maximal(R, A, lattice)]
    field_maximals = [
        A for A in maximals if is_commutative(quotient_ring(R, A))
    ]
    if len(field_maximals) > MAXIMAL_SUBSET_CAP:
        raise CapExceeded(
            f"{len(field_maximals)} maximal ideals: subset sweep too large"
        )
    product_set: set[tuple[int, ...]] = set()
    m = len(field_maximals)
    for mask in range(1, 1 << m):
        chosen = [field_maximals[i] for i in range(m) if mask >> i & 1]
        prod = chosen[0]
        for B in chosen[1:]:
            prod = fideal_product(prod, B)
        product_set.add(prod.members)
    violations = []
    rsa = ineligible = 0
    for A in proper:
        verdict = is_rsa_ideal_fin(R, A)
        if verdict is Verdict.INELIGIBLE:
            ineligible += 1
            continue
        in_set = A.members in product_set
        if verdict is Verdict.RSA_IDEAL:
            rsa += 1
            if not in_set:
                violations.append(
                    Violation("rsa-not-product", f"ideal {A} passes but is no product")
                )
            if not is_commutative(quotient_ring(R, A)):
                violations.append(
                    Violation("noncommutative-quotient", f"R/{A} is not commutative")
                )
        elif in_set:
            violations.append(
                Violation("product-not-rsa", f"ideal {A} is a product but fails")
            )
    return Theorem5Report(
        R.label, len(lattice), len(maximals), rsa, ineligible, tuple(violations)
    )


@dataclass(frozen=True)
class CrtReport:
    ring_label: str
    family_count: int
    violations: tuple[Violation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def crt_cor1_verify(R: FiniteRing, family_cap: int = FAMILY_CAP) -> CrtReport:
    """Over every pairwise-comaximal family of proper ideals, check:
    intersection = product (when the ring is CI), the quotient sizes
    multiply, and the coset-signature map is injective."""
    lattice = all_ideals(R)
    proper = [A for A in lattice if not A.is_whole_ring()]
    is_ci = check_ci(R, lattice).is_ci
    k = len(proper)
    whole = R.order
    comax = [[False] * k for _ in range(k)]
    for i in range(k):
        for j in range(i + 1, k):
            c = fideal_sum(proper[i], proper[j]).size == whole
            comax[i][j] = comax[j][i] = c
    rep_arrays = [coset_rep_array(R, A) for A in proper]

    families: list[list[int]] = []

    def extend(prefix: list[int], start: int) -> None:
        if len(families) > family_cap:
            raise CapExceeded(f"more than {family_cap} comaximal families")
        if prefix:
            families.append(prefix)
        for nxt in range(start, k):
            if all(comax[p][nxt] for p in prefix):
                extend(prefix + [nxt], nxt + 1)

    extend([], 0)

    violations = []
    for fam in families:
        if len(fam) < 2:
            continue  # single-ideal families hold trivially
        ideals = [proper[i] for i in fam]
        inter = ideals[0]
        prod = ideals[0]
        for B in ideals[1:]:
            inter = fideal_intersection(inter, B)
            prod = fideal_product(prod, B)
        if is_ci and inter != prod:
            violations.append(
                Violation(
                    "cor1-intersection-product",
                    f"family {fam}: intersection {inter} != product {prod}",
                )
            )
        sizes_match = whole // inter.size == int(
            np.prod([whole // A.size for A in ideals])
        )
        if not sizes_match:
            violations.append(
                Violation("crt-size", f"family {fam}: quotient sizes do not multiply")
            )
        # injectivity of x + intersection -> (x + A_i)_i on coset reps
        reps_inter = np.unique(coset_rep_array(R, inter))
        signatures = {
            tuple(int(rep_arrays[i][x]) for i in fam) for x in reps_inter
        }
        if len(signatures) != len(reps_inter):
            violations.append(
                Violation("crt-injective", f"family {fam}: canonical map collides")
            )
    return CrtReport(R.label, len(families), tuple(violations))
