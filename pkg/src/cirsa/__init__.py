"""RSA over rings with commuting ideals, plus a finite-ring lab.

Concrete cryptosystem instances run over Z, the Gaussian integers,
Z[sqrt(k)] for k in {-2, 2, 3}, and GF(q)[x]; the lab verifies the
structural facts behind the scheme (commuting ideals, CRT, Euler-function
multiplicativity, the RSA-ideal characterization) exhaustively on small
finite rings given by Cayley tables.
"""

from .errors import CirsaError
from .kernels import BACKEND as KERNEL_BACKEND
from .quotient import (
    PrincipalIdeal,
    ResidueBox,
    element_at,
    enumerate_residues,
    ideal,
    index_of,
    mod_mul,
    mod_pow,
    residue_box,
)
from .numtheory import (
    CongruenceSystem,
    are_comaximal,
    crt_solve,
    ideal_intersection,
    ideal_product,
    mod_inverse_int,
    phi_brute,
    phi_closed,
)
from .rings import (
    Element,
    Factorization,
    Ring,
    canonical_assoc,
    euclid_div,
    factor_element,
    gaussian_ring,
    gcd,
    integer_ring,
    is_prime_element,
    is_unit,
    norm,
    poly_ring,
    quadratic_ring,
    random_prime_element,
    ring_from_tag,
    xgcd,
)
from .rsa import (
    PrivateKey,
    PublicKey,
    decode_bytes,
    decrypt_block,
    decrypt_bytes,
    encode_bytes,
    encrypt_block,
    encrypt_bytes,
    is_rsa_ideal,
    keygen,
    verify_rsa_ideal_exhaustive,
)
from .verdict import Verdict

__version__ = "0.1.0"
