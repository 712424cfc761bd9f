"""Exception hierarchy for the cirsa package.

Every error raised on a contract violation derives from CirsaError, so
callers (notably the CLI) can distinguish usage/data problems from bugs.
"""


class CirsaError(Exception):
    """Base class for all cirsa errors."""


class RingMismatch(CirsaError):
    """Operands belong to different rings."""


class ZeroElement(CirsaError):
    """Operation requires a nonzero element (e.g. norm, modulus)."""


class DivisionByZero(CirsaError):
    """Euclidean division by zero."""


class BothZero(CirsaError):
    """gcd(0, 0) is undefined."""


class NotApplicable(CirsaError):
    """Primality query on zero or a unit."""


class ExhaustedAttempts(CirsaError):
    """A randomized search hit its retry bound."""


class BudgetExceeded(CirsaError):
    """Factoring effort bound exceeded."""


class FactoringFailed(CirsaError):
    """An operation needed a factorization that could not be produced."""


class CapExceeded(CirsaError):
    """An exhaustive enumeration would exceed the configured cap."""


class OutOfRange(CirsaError):
    """Index or residue outside its box."""


# Block indices and residue indices share one error type.
IndexOutOfRange = OutOfRange


class NotComaximal(CirsaError):
    """CRT input ideals are not pairwise comaximal.

    Attributes i, j identify the offending pair when known.
    """

    def __init__(self, message: str, i: int | None = None, j: int | None = None):
        super().__init__(message)
        self.i = i
        self.j = j


class NotCoprime(CirsaError):
    """Modular inverse of a non-unit residue."""


class InvalidIdeal(CirsaError):
    """Ideal generator is zero or a unit."""


class DistinctPrimesRequired(CirsaError):
    """Key generation could not find two non-associate primes."""


class PhiTooSmall(CirsaError):
    """The modulus admits no valid encryption exponent (phi <= 2)."""


class ModulusTooSmall(CirsaError):
    """Residue box too small for the byte codec."""


class BadExponents(CirsaError):
    """Exponent pair violates 1 < e,d < phi or e*d != 1 mod phi."""


class InvalidTables(CirsaError):
    """Cayley tables violate a ring axiom (named in the message)."""


class ImproperIdeal(CirsaError):
    """Quotient by the whole ring requested."""


class NotCIRing(CirsaError):
    """A check that assumes commuting ideals was run on a ring without them."""


class FormatError(CirsaError):
    """Malformed key, ciphertext or table file.

    Carries the 1-based line number when known.
    """

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
