"""Command-line front door.

Subcommands: keygen, encrypt, decrypt, phi, factor, crt, and the lab
family (check-ci, ideals, verify-theorem5, verify-crt).  All output is
plain deterministic text so runs can be scripted and golden-tested; every
randomized command takes an explicit --seed.

Exit codes: 0 success, 1 a verification found violations (or the phi
oracle disagreed), 2 usage or data errors.
"""

from __future__ import annotations

import argparse
import random
import sys
from pathlib import Path

from . import finlab
from .errors import CirsaError, FormatError, ModulusTooSmall, NotComaximal
from .numtheory import PHI_BRUTE_CAP, crt_solve, phi_brute, phi_closed
from .quotient import ideal
from .rings import factor_element, norm, ring_from_tag
from . import rsa

LAB_SUBCOMMANDS = ("check-ci", "ideals", "verify-theorem5", "verify-crt")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cirsa",
        description="RSA over commuting-ideal rings, plus a finite-ring lab",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    kg = sub.add_parser("keygen", help="generate a key pair")
    kg.add_argument("--ring", required=True, help="integer|gaussian|quadratic:k|poly:q")
    kg.add_argument("--bits", required=True, type=int, help="modulus norm bits (>= 16)")
    kg.add_argument("--seed", required=True, type=int)
    kg.add_argument("--e", type=int, default=65537, dest="e_pref")
    kg.add_argument("--out-prefix", required=True)
    kg.set_defaults(func=cmd_keygen)

    enc = sub.add_parser("encrypt", help="encrypt a file")
    enc.add_argument("--key", required=True, help="public (or private) key file")
    enc.add_argument("--in", required=True, dest="infile")
    enc.add_argument("--out", required=True, dest="outfile")
    enc.set_defaults(func=cmd_encrypt)

    dec = sub.add_parser("decrypt", help="decrypt a ciphertext file")
    dec.add_argument("--key", required=True, help="private key file")
    dec.add_argument("--in", required=True, dest="infile")
    dec.add_argument("--out", required=True, dest="outfile")
    dec.set_defaults(func=cmd_decrypt)

    ph = sub.add_parser("phi", help="Euler function of the ideal (element)")
    ph.add_argument("--ring", required=True)
    ph.add_argument("--cap", type=int, default=PHI_BRUTE_CAP)
    ph.add_argument("element")
    ph.set_defaults(func=cmd_phi)

    fa = sub.add_parser("factor", help="factor an element into primes")
    fa.add_argument("--ring", required=True)
    fa.add_argument("element")
    fa.set_defaults(func=cmd_factor)

    cr = sub.add_parser("crt", help="solve congruences residue@modulus ...")
    cr.add_argument("--ring", required=True)
    cr.add_argument("congruences", nargs="+", metavar="RES@MOD")
    cr.set_defaults(func=cmd_crt)

    lab = sub.add_parser("lab", help="finite-ring verification lab")
    lab.add_argument("subcommand", choices=LAB_SUBCOMMANDS)
    group = lab.add_mutually_exclusive_group(required=True)
    group.add_argument("--ring-spec", help="zmod:N | gf:Q | matrix2:S | triangular2:S | product:S+S")
    group.add_argument("--table-file", help="CIRING-TABLE v1 file")
    lab.add_argument("--order-cap", type=int, default=finlab.DEFAULT_ORDER_CAP)
    lab.set_defaults(func=cmd_lab)

    return parser


def cmd_keygen(args) -> int:
    if args.bits < 16:
        raise ModulusTooSmall("--bits must be at least 16 for the byte codec")
    ring = ring_from_tag(args.ring)
    rng = random.Random(args.seed)
    pub, priv = rsa.keygen(ring, args.bits, e_pref=args.e_pref, rng=rng)
    prefix = Path(args.out_prefix)
    pub_path = prefix.with_name(prefix.name + ".pub")
    key_path = prefix.with_name(prefix.name + ".key")
    pub_path.write_text(rsa.serialize_public(pub), encoding="utf-8")
    key_path.write_text(rsa.serialize_private(priv), encoding="utf-8")
    print(f"modulus-norm: {pub.modulus.norm}")
    print(f"phi-bits: {priv.phi.bit_length()}")
    return 0


def _read_key(path: str):
    text = Path(path).read_text(encoding="utf-8")
    first = text.splitlines()[0] if text else ""
    if first == rsa.PRIVATE_HEADER:
        return rsa.parse_private(text)
    return rsa.parse_public(text)


def cmd_encrypt(args) -> int:
    key = _read_key(args.key)
    pub = (
        key
        if isinstance(key, rsa.PublicKey)
        else rsa.PublicKey(key.ring, key.modulus, key.e)
    )
    payload = Path(args.infile).read_bytes()
    blocks = rsa.encrypt_bytes(payload, pub)
    Path(args.outfile).write_text(
        rsa.serialize_ciphertext(pub.ring, pub.modulus, blocks), encoding="utf-8"
    )
    print(f"blocks: {len(blocks)}")
    return 0


def cmd_decrypt(args) -> int:
    key = _read_key(args.key)
    if not isinstance(key, rsa.PrivateKey):
        raise FormatError("decrypt needs a private key file")
    ring, modulus, blocks = rsa.parse_ciphertext(
        Path(args.infile).read_text(encoding="utf-8")
    )
    if ring != key.ring or modulus != key.modulus:
        raise FormatError("ciphertext modulus does not match the key")
    payload = rsa.decrypt_bytes(blocks, key)
    Path(args.outfile).write_bytes(payload)
    print(f"bytes: {len(payload)}")
    return 0


def cmd_phi(args) -> int:
    ring = ring_from_tag(args.ring)
    A = ideal(ring.parse_element(args.element))
    closed = phi_closed(A)
    if A.norm <= args.cap:
        brute = phi_brute(A, cap=args.cap)
        if brute == closed:
            print(f"{closed} AGREE")
            return 0
        print(f"{closed} DISAGREE brute={brute}")
        return 1
    print(f"{closed}")
    return 0


def cmd_factor(args) -> int:
    ring = ring_from_tag(args.ring)
    fac = factor_element(ring.parse_element(args.element))
    print(f"unit: {fac.unit}")
    for p, e in fac.factors:
        print(f"factor: {p} ^ {e}")
    return 0


def cmd_crt(args) -> int:
    ring = ring_from_tag(args.ring)
    pairs = []
    for spec in args.congruences:
        if "@" not in spec:
            raise FormatError(f"congruence {spec!r} is not RES@MOD")
        res_text, mod_text = spec.rsplit("@", 1)
        pairs.append(
            (ring.parse_element(res_text), ideal(ring.parse_element(mod_text)))
        )
    x = crt_solve(pairs)
    print(f"solution: {x}")
    for r, A in pairs:
        if A.reduce(x) != A.reduce(r):
            print(f"DISAGREE at modulus {A.generator}")
            return 1
    print(f"verified: {len(pairs)} congruences")
    return 0


def _build_lab_ring(args) -> finlab.FiniteRing:
    if args.table_file:
        return finlab.from_tables(
            Path(args.table_file).read_text(encoding="utf-8"), args.order_cap
        )
    return finlab.build_ring(args.ring_spec, args.order_cap)


def cmd_lab(args) -> int:
    R = _build_lab_ring(args)
    print(f"ring: {R.label} (order {R.order})")
    if args.subcommand == "check-ci":
        rep = finlab.check_ci(R)
        print(f"ideals: {rep.ideal_count}")
        if rep.is_ci:
            print("CI: yes")
            return 0
        A, B = rep.witness
        print("CI: no")
        print(f"witness: A={A} B={B}")
        print(f"VIOLATION ci-commute {A} {B}")
        return 1
    if args.subcommand == "ideals":
        ideals = finlab.all_ideals(R)
        for i, I in enumerate(ideals):
            members = " ".join(map(str, I.members))
            print(f"ideal {i}: size {I.size} members {members}")
        print(f"total: {len(ideals)}")
        return 0
    if args.subcommand == "verify-theorem5":
        rep = finlab.theorem5_verify(R)
        print(
            f"ideals: {rep.ideal_count} maximal: {rep.maximal_count} "
            f"rsa-ideals: {rep.rsa_count} ineligible: {rep.ineligible_count}"
        )
        return _print_violations(rep.violations)
    rep = finlab.crt_cor1_verify(R)
    print(f"families: {rep.family_count}")
    return _print_violations(rep.violations)


def _print_violations(violations) -> int:
    print(f"violations: {len(violations)}")
    for v in violations:
        print(v.machine_line())
    return 1 if violations else 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except NotComaximal as exc:
        print(f"error: NotComaximal: {exc}", file=sys.stderr)
        return 2
    except CirsaError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except (OSError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


def console_main() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console_main()
