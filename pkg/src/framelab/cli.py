"""Command line front end.

Exit codes: 0 the property holds, 2 it fails mathematically, 1 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from . import erasure
from .cyclotomic import CycloNum
from .dihedral import Representation, elements
from .literals import LiteralError, format_scalar, format_vector, parse_vector
from .minors import (
    EXACT,
    FLOAT,
    HaarCertificate,
    chebotarev_check,
    check_haar,
    even_dependence_certificate,
    orbit_matrix,
    pair_independence_tau,
)
from .sympoly import prime_case_audit

EXIT_PASS, EXIT_USAGE, EXIT_FAIL = 0, 1, 2

CERTIFICATE_SCHEMA = {
    "type": "object",
    "required": ["n", "rep", "mode", "status", "subsets_checked", "failing_subset", "kernel_witness"],
    "properties": {
        "n": {"type": "integer", "minimum": 1},
        "rep": {"type": "string", "pattern": r"^(kappa|sigma|tau:\d+|char:[a-z]+)$"},
        "mode": {"enum": [EXACT, FLOAT]},
        "status": {"enum": ["PASS", "FAIL"]},
        "subsets_checked": {"type": "integer", "minimum": 0},
        "failing_subset": {
            "type": ["array", "null"],
            "items": {"type": "string", "pattern": r"^(e|r(\^\d+)?s?|s)$"},
        },
        "kernel_witness": {"type": ["array", "null"], "items": {"type": "string"}},
        "vector": {"type": "string"},
        "seed": {"type": ["integer", "null"]},
    },
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def random_vector(dim: int, n: int, rng: random.Random, *, nonzero_entries: bool = False) -> list[CycloNum]:
    """Gaussian rationals a + b i, numerators in [-10, 10], denominators in [1, 10]."""
    F = Representation.kappa(n).field

    def q() -> Fraction:
        return Fraction(rng.randint(-10, 10), rng.randint(1, 10))

    while True:
        v = [F.gaussian(q(), q()) for _ in range(dim)]
        if nonzero_entries and not all(v):
            continue
        if any(v):
            return v


def certificate_to_json(cert: HaarCertificate, vector: Sequence[CycloNum] | None = None,
                        seed: int | None = None) -> dict:
    witness = None
    if cert.kernel_witness is not None:
        if cert.mode == EXACT:
            witness = [format_scalar(x, cert.n) for x in cert.kernel_witness]
        else:
            witness = [repr(complex(x)) for x in cert.kernel_witness]
    out = {
        "n": cert.n,
        "rep": cert.rep,
        "mode": cert.mode,
        "status": cert.status,
        "subsets_checked": cert.subsets_checked,
        "failing_subset": None if cert.failing_subset is None else [str(g) for g in cert.failing_subset],
        "kernel_witness": witness,
        "seed": seed,
    }
    if vector is not None:
        out["vector"] = format_vector(vector, cert.n)
    return out


def _write_json(path: str | None, payload) -> None:
    if path:
        with open(path, "w") as fh:
            json.dump(payload, fh, indent=2)
            fh.write("\n")


def _vectors(args, rep: Representation) -> list[tuple[list[CycloNum], int | None]]:
    if args.vector is not None and args.random:
        raise UsageError("give either --vector or --random, not both")
    if args.vector is not None:
        v = parse_vector(args.vector, rep.n)
        if len(v) != rep.dim:
            raise UsageError(f"vector has {len(v)} entries, {rep} needs {rep.dim}")
        return [(v, None)]
    if not args.random:
        raise UsageError("one of --vector or --random is required")
    rng = random.Random(args.seed)
    return [(random_vector(rep.dim, rep.n, rng), args.seed) for _ in range(args.trials)]


def _check_n(n: int, minimum: int = 1) -> None:
    if n < minimum:
        raise UsageError(f"--n must be at least {minimum}")


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_check_haar(args) -> int:
    _check_n(args.n)
    rep = Representation.parse(args.rep, args.n)
    runs = _vectors(args, rep)
    payload = []
    status = EXIT_PASS
    for v, seed in runs:
        cert = check_haar(orbit_matrix(rep, v), args.mode, workers=args.threads)
        payload.append(certificate_to_json(cert, v, seed))
        print(f"vector: {format_vector(v, rep.n)}")
        if cert.passed:
            note = "" if cert.mode == EXACT else " (numerically nonsingular, not a certificate)"
            print(f"PASS{note}: {cert.subsets_checked} subsets checked [{rep}, {cert.mode}]")
        else:
            status = EXIT_FAIL
            print(f"FAIL: dependent subset {{{', '.join(map(str, cert.failing_subset))}}} "
                  f"after {cert.subsets_checked} subsets [{rep}, {cert.mode}]")
            print(f"kernel witness: {', '.join(payload[-1]['kernel_witness'])}")
    _write_json(args.json, payload[0] if len(payload) == 1 else payload)
    return status


def cmd_certify_even(args) -> int:
    if args.n % 2 or args.n <= 2:
        raise UsageError("certify-even needs an even n > 2")
    cert = even_dependence_certificate(args.n)
    print(cert.identity)
    print("plus:  " + " + ".join(map(str, cert.plus_set)))
    print("minus: " + " + ".join(map(str, cert.minus_set)))
    for row in cert.lhs.entries:
        print("  " + " ".join(format_scalar(x, args.n) for x in row))
    print("VERIFIED" if cert.verified else "NOT VERIFIED")
    _write_json(args.json, {
        "n": args.n,
        "identity": cert.identity,
        "plus_set": [str(g) for g in cert.plus_set],
        "minus_set": [str(g) for g in cert.minus_set],
        "verified": cert.verified,
    })
    return EXIT_PASS if cert.verified else EXIT_FAIL


def cmd_chebotarev(args) -> int:
    _check_n(args.n, 2)
    rep = chebotarev_check(args.n, args.mode)
    if rep.all_nonzero:
        note = "" if args.mode == EXACT else " (numerically, not a certificate)"
        print(f"all {rep.minors_checked} minors of the {args.n}x{args.n} DFT are nonzero{note}")
    else:
        rows, cols = rep.zero_minor_witness
        print(f"zero minor: rows {{{', '.join(map(str, rows))}}} cols {{{', '.join(map(str, cols))}}}")
    _write_json(args.json, {
        "n": args.n,
        "mode": args.mode,
        "all_nonzero": rep.all_nonzero,
        "minors_checked": rep.minors_checked,
        "zero_minor_witness": None if rep.zero_minor_witness is None
        else {"rows": list(rep.zero_minor_witness[0]), "cols": list(rep.zero_minor_witness[1])},
    })
    return EXIT_PASS if rep.all_nonzero else EXIT_FAIL


def cmd_audit_erasures(args) -> int:
    _check_n(args.n)
    rep = Representation.parse(args.rep, args.n)
    (v, seed), *_ = _vectors(args, rep)
    M = orbit_matrix(rep, v)
    summary = erasure.exhaustive_erasure_audit(M, seed=args.seed)
    bounds = erasure.frame_bounds(M)
    cert = check_haar(M, EXACT, workers=args.threads)
    print(f"vector: {format_vector(v, rep.n)}")
    print(f"frame bounds: a={bounds.lower:.6g} b={bounds.upper:.6g}"
          + ("" if bounds.is_frame else " (not a frame)"))
    print(f"patterns: {summary.patterns_checked}  singular: {summary.singular_patterns}  "
          f"worst error: {summary.worst_error:.3e}  worst condition: {summary.worst_condition:.3e}")
    consistent = (summary.singular_patterns == 0) == cert.passed
    print(f"exact Haar check: {cert.status} ({'consistent' if consistent else 'INCONSISTENT'})")
    if args.csv:
        erasure.write_csv(summary.reports, args.csv)
    _write_json(args.json, {
        "n": args.n,
        "rep": str(rep),
        "vector": format_vector(v, rep.n),
        "seed": seed,
        "frame_bounds": [bounds.lower, bounds.upper],
        "patterns_checked": summary.patterns_checked,
        "singular_patterns": summary.singular_patterns,
        "worst_error": summary.worst_error,
        "worst_condition": summary.worst_condition,
        "haar_status": cert.status,
    })
    return EXIT_PASS if summary.singular_patterns == 0 else EXIT_FAIL


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % p for p in range(2, int(n ** 0.5) + 1))


def cmd_prime_audit(args) -> int:
    n = args.n
    if not _is_prime(n) or n < 3:
        raise UsageError("prime-audit needs a prime n >= 3")
    els = elements(n)
    if n <= 5:
        subsets = list(combinations(els, n))
        how = "all"
    else:
        rng = random.Random(args.seed)
        subsets = [tuple(rng.sample(els, n)) for _ in range(args.samples)]
        how = f"{args.samples} sampled"
    bad = []
    signs = {1: 0, -1: 0, None: 0}
    for S in subsets:
        r = prime_case_audit(n, S)
        signs[r.sign] += 1
        if r.contradiction:
            bad.append(r)
    print(f"n={n}: {how} subsets ({len(subsets)}) audited; nonvanishing determinant for "
          f"{len(subsets) - len(bad)}")
    print(f"isolated coefficient = +DFT minor product: {signs[1]}, = -product: {signs[-1]}, "
          f"other: {signs[None]}")
    for r in bad:
        print("CONTRADICTION: {" + ", ".join(map(str, r.subset)) + "}")
    _write_json(args.json, {
        "n": n,
        "subsets": len(subsets),
        "sampled": n > 5,
        "seed": args.seed if n > 5 else None,
        "contradictions": [[str(g) for g in r.subset] for r in bad],
        "sign_counts": {"+1": signs[1], "-1": signs[-1], "none": signs[None]},
    })
    return EXIT_FAIL if bad else EXIT_PASS


def cmd_tau_audit(args) -> int:
    _check_n(args.n, 3)
    rep = Representation.tau(args.n, args.j)
    if args.vector is None:
        args.random = True
    (v, seed), *_ = _vectors(args, rep)
    report = pair_independence_tau(args.n, args.j, v)
    print(f"tau_{args.j}, n={args.n}, vector {format_vector(v, args.n)}: "
          f"{len(report.pairs)} pairs checked")
    for p in report.dependent_pairs:
        print(f"dependent pair {{{p.g}, {p.h}}} ({p.kind})")
    if report.all_independent:
        print("all pairs independent")
    _write_json(args.json, {
        "n": args.n,
        "j": args.j,
        "vector": format_vector(v, args.n),
        "seed": seed,
        "pairs_checked": len(report.pairs),
        "dependent_pairs": [[str(p.g), str(p.h)] for p in report.dependent_pairs],
    })
    return EXIT_PASS if report.all_independent else EXIT_FAIL


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="framelab", description="Dihedral group frames and the Haar property.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    def vector_opts(p):
        p.add_argument("--vector", help='comma separated entries, e.g. "i,-i,1,1+i,2-i"')
        p.add_argument("--random", action="store_true", help="use a seeded random vector")
        p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("check-haar", help="certify the Haar property of an orbit")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--rep", default="kappa", help="kappa | sigma | tau:J | char:NAME")
    p.add_argument("--mode", choices=[EXACT, FLOAT], default=EXACT)
    vector_opts(p)
    p.add_argument("--trials", type=int, default=1)
    p.add_argument("--threads", type=int, default=None)
    p.add_argument("--json")
    p.set_defaults(func=cmd_check_haar)

    p = sub.add_parser("certify-even", help="verify the even-n dependence identity")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--json")
    p.set_defaults(func=cmd_certify_even)

    p = sub.add_parser("chebotarev", help="check all minors of the DFT matrix")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--mode", choices=[EXACT, FLOAT], default=EXACT)
    p.add_argument("--json")
    p.set_defaults(func=cmd_chebotarev)

    p = sub.add_parser("audit-erasures", help="reconstruct under every maximal erasure pattern")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--rep", default="kappa")
    vector_opts(p)
    p.add_argument("--threads", type=int, default=None)
    p.add_argument("--csv")
    p.add_argument("--json")
    p.set_defaults(func=cmd_audit_erasures, trials=1)

    p = sub.add_parser("prime-audit", help="symbolic nonvanishing of orbit determinants, n prime")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--samples", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json")
    p.set_defaults(func=cmd_prime_audit)

    p = sub.add_parser("tau-audit", help="pairwise independence for a 2-dimensional irreducible")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--j", type=int, required=True)
    vector_opts(p)
    p.add_argument("--json")
    p.set_defaults(func=cmd_tau_audit, trials=1)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not getattr(args, "func", None):
            raise UsageError("missing command")
        return args.func(args)
    except (UsageError, LiteralError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
