"""Batch command-line interface.

Subcommands: params, keygen, encrypt, decrypt, analyze, estimate.
Every command that takes --seed is bit-reproducible for a fixed seed.
Output is line-oriented ``key = value`` text; --format machine drops the
decorative headers so the same schema can be consumed directly.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import __version__
from ._backend import BACKEND
from .codes import (
    family_f_checks,
    family_f_params,
    derive_family_structure,
    generator_matrix,
    is_multiplicative_group,
    mds_brute_check,
    mds_tower_certificate,
    params_from_text,
    params_to_text,
    dual_parity_check,
)
from .crypto import (
    KEYGEN_VARIANTS,
    PublicKey,
    SecretKey,
    decrypt,
    deserialize_key,
    encrypt,
    keygen,
    message_capacity_bytes,
    pack_message,
    read_ciphertext,
    security_estimate,
    serialize_public_key,
    serialize_secret_key,
    unpack_message,
    write_ciphertext,
)
from .decoder import DEFAULT_BUDGET
from .errors import (
    BudgetExceededError,
    KeyFormatError,
    ParameterError,
    SizeGuardError,
)
from .rng import StreamRNG
from .schur import distinguisher_report

EXIT_OK = 0
EXIT_PARAMS = 2  # parameter rejection or invalid flags
EXIT_IO = 3  # file system errors
EXIT_FORMAT = 4  # malformed key / ciphertext / params file
EXIT_DECODE = 5  # decoding failure
EXIT_BUDGET = 6  # guess budget exceeded

_EPILOG = """\
exit codes:
  0  success
  2  parameter rejection or invalid flags
  3  file I/O error
  4  malformed key, ciphertext, or parameter file
  5  decoding failure
  6  decoder guess budget exceeded

the --threads flag and TWISTEDRS_THREADS are accepted for forward
compatibility; the current kernels execute serially regardless.
"""


def _emit(args, lines, header=None):
    out = []
    if args.format == "text" and header:
        out.append(f"# {header}")
    out.extend(lines)
    text = "\n".join(out) + "\n"
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _read_bytes(path: str) -> bytes:
    with open(path, "rb") as fh:
        return fh.read()


def _write_bytes(path: str, data: bytes) -> None:
    with open(path, "wb") as fh:
        fh.write(data)


# ---------------------------------------------------------------------------
# subcommands


def cmd_params(args) -> int:
    checks = family_f_checks(args.n, args.k, args.l, args.q0, args.variant)
    r, twists, hooks = derive_family_structure(args.n, args.k, args.l)
    m0 = args.q0.bit_length() - 1
    lines = [
        f"r = {r}",
        "t = " + ",".join(map(str, twists)),
        "h = " + ",".join(map(str, hooks)),
        f"q = 2^{m0 * (1 << args.l)}",
        f"seed = {args.seed}",
    ]
    ok = True
    for name, passed, detail in checks:
        ok &= passed
        lines.append(f"check[{name}] = {'ok' if passed else 'FAIL'} ({detail})")
    if ok and args.out is not None:
        params = family_f_params(
            args.n, args.k, args.l, args.q0, args.variant, seed=args.seed
        )
        with open(args.out, "w") as fh:
            fh.write(params_to_text(params))
        lines.append(f"written = {args.out}")
    _emit_stdout(args, lines, "family parameter derivation")
    return EXIT_OK if ok else EXIT_PARAMS


def _emit_stdout(args, lines, header):
    out = []
    if args.format == "text" and header:
        out.append(f"# {header}")
    out.extend(lines)
    sys.stdout.write("\n".join(out) + "\n")


def cmd_keygen(args) -> int:
    kp = keygen(args.n, args.k, args.l, args.q0, args.variant, seed=args.seed)
    _write_bytes(args.pub, serialize_public_key(kp.public))
    _write_bytes(args.sec, serialize_secret_key(kp.secret))
    _emit_stdout(
        args,
        [
            f"public = {args.pub}",
            f"secret = {args.sec}",
            f"n = {kp.public.n}",
            f"k = {kp.public.k}",
            f"tau = {kp.public.tau}",
            f"seed = {args.seed}",
            f"capacity_bytes = {message_capacity_bytes(args.k, kp.public.base_degree)}",
        ],
        "key generation",
    )
    return EXIT_OK


def _load_public(path: str) -> PublicKey:
    key = deserialize_key(_read_bytes(path))
    if not isinstance(key, PublicKey):
        raise KeyFormatError(f"{path} holds a secret key, not a public key")
    return key


def _load_secret(path: str) -> SecretKey:
    key = deserialize_key(_read_bytes(path))
    if not isinstance(key, SecretKey):
        raise KeyFormatError(f"{path} holds a public key, not a secret key")
    return key


def cmd_encrypt(args) -> int:
    pub = _load_public(args.pub)
    m0 = pub.base_degree
    if args.message_hex is not None:
        data = bytes.fromhex(args.message_hex)
    else:
        data = _read_bytes(args.infile)
    message = pack_message(data, pub.k, m0)
    c = encrypt(pub, message, seed=args.seed)
    _write_bytes(args.out, write_ciphertext(c, pub.tower.element_bytes))
    _emit_stdout(
        args,
        [f"ciphertext = {args.out}", f"bytes = {len(data)}", f"seed = {args.seed}"],
        "encrypt",
    )
    return EXIT_OK


def cmd_decrypt(args) -> int:
    sec = _load_secret(args.sec)
    c = read_ciphertext(_read_bytes(args.infile))
    message = decrypt(sec, c, budget=args.budget, tau=args.tau)
    if message is None:
        sys.stderr.write("decoding failure\n")
        return EXIT_DECODE
    m0 = sec.params.tower.base_degree
    data = unpack_message(message, sec.params.k, m0)
    _write_bytes(args.out, data)
    _emit_stdout(args, [f"plaintext = {args.out}", f"bytes = {len(data)}"], "decrypt")
    return EXIT_OK


def cmd_analyze(args) -> int:
    params = None
    if args.sec:
        sec = _load_secret(args.sec)
        params = sec.params
        G = generator_matrix(params)
    elif args.params:
        with open(args.params) as fh:
            params = params_from_text(fh.read())
        G = generator_matrix(params)
    else:
        pub = _load_public(args.pub)
        G = pub.systematic_matrix()

    rng = StreamRNG(args.seed)
    n = G.cols
    shortenings: list[tuple[int, ...]] = []
    singles = n if args.singles < 0 else min(args.singles, n)
    if singles:
        picks = range(n) if singles == n else sorted(rng.sample_positions(n, singles))
        shortenings += [(i,) for i in picks]
    if args.pairs:
        want = min(args.pairs, n * (n - 1) // 2)
        seen = set()
        while len(seen) < want:
            i, j = rng.sample_positions(n, 2)
            seen.add((min(i, j), max(i, j)))
        shortenings += sorted(seen)

    rep = distinguisher_report(G, params, shortenings)
    lines = rep.to_text().splitlines()
    lines.append(f"seed = {args.seed}")
    if params is not None:
        lines.append(f"mds_tower_certificate = {str(mds_tower_certificate(params)).lower()}")
        if params.n <= 30:
            lines.append(f"mds_brute_check = {str(mds_brute_check(generator_matrix(params))).lower()}")
        if is_multiplicative_group(params.tower, params.alpha):
            dual_parity_check(params, verify=True)  # raises if G . H^T != 0
            lines.append("dual_verified = true")
    _emit(args, lines, f"structural analysis ({BACKEND} kernels)")
    return EXIT_OK


def cmd_estimate(args) -> int:
    lines = []
    if args.paper_table:
        rows = [
            ("twisted-unique", 255, 117, 16, 69),
            ("twisted-list", 255, 117, 16, 83),
            ("goppa-2^100", 2048, 1608, 1, 40),
            ("goppa-2^128", 3262, 2482, 1, 66),
        ]
        for name, n, k, l2q, tau in rows:
            e = security_estimate(n, k, l2q, tau)
            lines.append(
                f"row[{name}] = n={n} k={k} log2q={l2q} tau={tau} "
                f"W_log2={e.work_factor_log2:.2f} K_kb={e.key_size_kb:.4f}"
            )
    else:
        e = security_estimate(args.n, args.k, args.log2q, args.tau)
        lines += [
            f"n = {e.n}",
            f"k = {e.k}",
            f"log2_q = {e.log2_q}",
            f"tau = {e.tau}",
            f"work_factor_log2 = {e.work_factor_log2:.4f}",
            f"key_size_kb = {e.key_size_kb:.4f}",
            f"tau_unique = {e.tau_unique}",
            f"tau_list = {e.tau_list}",
            f"keyspace_log2 = {e.keyspace_log2:.4f}",
        ]
    _emit_stdout(args, lines, "security estimate")
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument plumbing


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="twistedrs",
        description="multi-twisted Reed-Solomon codes: parameters, keys, analysis",
        epilog=_EPILOG,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    top.add_argument("--version", action="version", version=f"twistedrs {__version__}")
    top.add_argument(
        "--threads",
        type=int,
        default=int(os.environ.get("TWISTEDRS_THREADS", "1")),
        help="reserved; current kernels are serial (default from TWISTEDRS_THREADS)",
    )
    sub = top.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=("text", "machine"), default="text")

    p = sub.add_parser("params", help="derive and validate family parameters")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--l", type=int, required=True, help="number of twists")
    p.add_argument("--q0", type=int, required=True, help="base field size (power of 2)")
    p.add_argument("--variant", choices=("F", "Ftilde"), default="F")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="write sampled parameters to this file")
    common(p)
    p.set_defaults(func=cmd_params)

    p = sub.add_parser("keygen", help="generate a key pair")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--q0", type=int, required=True)
    p.add_argument("--variant", choices=KEYGEN_VARIANTS, default="F")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--pub", required=True, help="public key output path")
    p.add_argument("--sec", required=True, help="secret key output path")
    common(p)
    p.set_defaults(func=cmd_keygen)

    p = sub.add_parser("encrypt", help="encrypt one message block")
    p.add_argument("--pub", required=True)
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--in", dest="infile", help="message bytes file")
    src.add_argument("--message-hex", help="message bytes as hex")
    p.add_argument("--out", required=True, help="ciphertext output path")
    p.add_argument("--seed", type=int, required=True)
    common(p)
    p.set_defaults(func=cmd_encrypt)

    p = sub.add_parser("decrypt", help="decrypt a ciphertext file")
    p.add_argument("--sec", required=True)
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", required=True, help="plaintext output path")
    p.add_argument("--tau", type=int, default=None, help="override the decoding radius")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    common(p)
    p.set_defaults(func=cmd_decrypt)

    p = sub.add_parser("analyze", help="structural distinguisher report")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--pub", help="public key file ([I | A] matrix)")
    src.add_argument("--sec", help="secret key file (full parameters)")
    src.add_argument("--params", help="parameter text file")
    p.add_argument("--singles", type=int, default=0,
                   help="single-position shortenings to measure (-1 = all)")
    p.add_argument("--pairs", type=int, default=0,
                   help="random two-position shortenings to measure")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="write the report to this file")
    common(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("estimate", help="security and key-size estimators")
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--log2q", type=int)
    p.add_argument("--tau", type=int)
    p.add_argument("--paper-table", action="store_true",
                   help="print the reference parameter table instead")
    common(p)
    p.set_defaults(func=cmd_estimate)

    return top


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "estimate" and not args.paper_table:
        missing = [f for f in ("n", "k", "log2q", "tau") if getattr(args, f) is None]
        if missing:
            sys.stderr.write(f"estimate: missing --{' --'.join(missing)}\n")
            return EXIT_PARAMS
    try:
        return args.func(args)
    except (ParameterError, SizeGuardError) as exc:
        sys.stderr.write(f"parameter rejection: {exc}\n")
        return EXIT_PARAMS
    except BudgetExceededError as exc:
        sys.stderr.write(f"budget exceeded: {exc}\n")
        return EXIT_BUDGET
    except KeyFormatError as exc:
        sys.stderr.write(f"malformed input: {exc}\n")
        return EXIT_FORMAT
    except OSError as exc:
        sys.stderr.write(f"file error: {exc}\n")
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
