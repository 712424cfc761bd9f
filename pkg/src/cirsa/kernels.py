"""Backend selection for the sweep kernels.

Prefers the compiled extension (cirsa._kernels, built from _kernels.pyx)
and falls back to the pure-Python twin when the extension is unavailable.
Set CIRSA_PURE_KERNELS=1 to force the fallback; cirsa.kernels.BACKEND
reports which one is active.

The compiled kernels guard their integer windows with ValueError; callers
in this package route oversized inputs to the pure backend automatically
via `call_with_fallback`.
"""

from __future__ import annotations

import os

from . import _kernels_py as pure

if os.environ.get("CIRSA_PURE_KERNELS"):
    impl = pure
else:
    try:
        from . import _kernels as impl  # type: ignore[no-redef]
    except ImportError:
        impl = pure

BACKEND: str = impl.BACKEND

phi_brute_int = impl.phi_brute_int
rsa_sweep_int = impl.rsa_sweep_int
phi_brute_quad = impl.phi_brute_quad
rsa_sweep_quad = impl.rsa_sweep_quad
phi_brute_poly = impl.phi_brute_poly
rsa_sweep_poly = impl.rsa_sweep_poly
poly_modpow = impl.poly_modpow


def call_with_fallback(name: str, *args):
    """Run a kernel, retrying on the pure backend if the input is out of
    the compiled window.

    The compiled kernels guard their windows with ValueError; operands too
    large even for the C argument types surface as OverflowError from the
    conversion itself.  Both reroute to the arbitrary-precision twin.
    """
    try:
        return getattr(impl, name)(*args)
    except (ValueError, OverflowError):
        if impl is pure:
            raise
        return getattr(pure, name)(*args)
