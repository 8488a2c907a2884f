"""Batch front end: point-set files, counting, constructions, bound checks, scans.

Point-set file format (JSON, UTF-8)::

    {"ring": {"kind": "prime-field", "p": 5, "exponent": 1},
     "d": 2,
     "points": [[0, 0], [0, 1]]}

ring.kind is prime-field, extension-field, or residue-ring.  Extension
fields add "modulus_poly" (coefficients, highest degree first) and encode
each coordinate as one integer in [0, q) whose base-p digits are the
coefficient vector.  Coordinates outside [0, q) make the file invalid
unless --reduce is passed, in which case they are folded mod q.

Scalars on the command line are plain integers; for extension fields they
are base-p digit strings, most significant digit first (so "12" over F_9
means x + 2).

Exit codes: 0 success (and the bound holds, for verify), 1 malformed
point-set file, 2 invalid parameters, scalars, or a bound/ring family
mismatch, 3 a verified bound was violated (a bug signal, not usage error).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .bounds import (BoundFamilyError, BoundReport, density_scan, verify_ell1, verify_ell2,
                     verify_remainder_field, verify_remainder_ring, verify_zq_l1, verify_zq_l2)
from .constructions import (sharp_construction, sharp_lower_bound, zero_construction,
                            zero_triple_count)
from .counting import PointSet, brute_force_count, character_decomposition, fast_count
from .rings import EXTENSION_FIELD, PRIME_FIELD, RESIDUE_RING, Ring, RingError, make_ring

CSV_HEADER = "seed,q,p,l,d,n,alpha,beta,count,main_num,main_den,remainder,bound,rel_err,elapsed_ms"


class PointSetFileError(ValueError):
    """The point-set file cannot be parsed into a valid PointSet."""


# ---------------------------------------------------------------------------
# point-set files

def _ring_from_json(obj) -> Ring:
    if not isinstance(obj, dict):
        raise PointSetFileError("ring must be a JSON object")
    unknown = set(obj) - {"kind", "p", "exponent", "modulus_poly"}
    if unknown:
        raise PointSetFileError(f"unknown ring fields {sorted(unknown)}")
    try:
        return make_ring(obj.get("kind"), obj.get("p"), obj.get("exponent"),
                         obj.get("modulus_poly"))
    except RingError as exc:
        raise PointSetFileError(str(exc)) from exc


def load_point_set(path, reduce_coords: bool = False) -> PointSet:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise PointSetFileError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise PointSetFileError(f"{path} is not valid JSON: {exc}") from exc
    if not isinstance(obj, dict) or set(obj) != {"ring", "d", "points"}:
        raise PointSetFileError("point-set file needs exactly the fields ring, d, points")
    ring = _ring_from_json(obj["ring"])
    d = obj["d"]
    if not isinstance(d, int) or isinstance(d, bool) or d < 2:
        raise PointSetFileError("d must be an integer >= 2")
    raw = obj["points"]
    if not isinstance(raw, list):
        raise PointSetFileError("points must be a list of coordinate lists")
    q = ring.q
    pts = []
    for pt in raw:
        if (not isinstance(pt, list) or len(pt) != d
                or not all(isinstance(c, int) and not isinstance(c, bool) for c in pt)):
            raise PointSetFileError(f"bad point {pt!r}")
        if reduce_coords:
            pt = [c % q for c in pt]
        else:
            for c in pt:
                if not 0 <= c < q:
                    raise PointSetFileError(
                        f"coordinate {c} outside [0, {q}); pass --reduce to fold it")
        pts.append(tuple(pt))
    try:
        return PointSet(ring, d, pts)
    except ValueError as exc:
        raise PointSetFileError(str(exc)) from exc


def save_point_set(E: PointSet, path) -> None:
    ring = E.ring
    robj = {"kind": ring.kind, "p": ring.p, "exponent": ring.exponent}
    if ring.modulus_poly is not None:
        robj["modulus_poly"] = list(ring.modulus_poly)
    obj = {"ring": robj, "d": E.d, "points": [list(pt) for pt in E.points]}
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(obj, fh)
        fh.write("\n")


def parse_scalar(ring: Ring, text: str) -> int:
    """Command-line scalar: base-10 integer, or base-p digits for extension fields."""
    text = str(text).strip()
    if ring.kind == EXTENSION_FIELD:
        if ring.p > 36:
            raise ValueError("extension scalars are base-p digit strings; p > 36 "
                             "has no digit alphabet on the command line")
        try:
            rep = int(text, ring.p)
        except ValueError:
            raise ValueError(f"{text!r} is not a base-{ring.p} digit string") from None
        if rep < 0:
            raise ValueError(f"{text!r} is not a canonical scalar")
    else:
        try:
            rep = int(text, 10)
        except ValueError:
            raise ValueError(f"{text!r} is not an integer scalar") from None
    return ring.validate_rep(rep)


def ring_for_q(q: int, kind: str | None = None, modulus_poly=None) -> Ring:
    """Ring from a bare cardinality: prime q gives F_q, a proper power p^m
    defaults to Z_{p^m}; pass kind to override."""
    if not isinstance(q, int) or q < 2:
        raise ValueError(f"q must be an integer >= 2, got {q!r}")
    p = 2
    while q % p:
        p += 1
    m = 0
    r = q
    while r % p == 0:
        r //= p
        m += 1
    if r != 1:
        raise ValueError(f"q = {q} is not a prime power")
    if kind is None:
        kind = PRIME_FIELD if m == 1 else RESIDUE_RING
    return make_ring(kind, p, m, modulus_poly)


# ---------------------------------------------------------------------------
# result logs

def _frac_str(f: Fraction) -> str:
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def write_records_csv(records, path, timings: bool = False) -> None:
    lines = [CSV_HEADER]
    for r in records:
        lines.append(",".join([
            str(r.seed), str(r.q), str(r.p), str(r.l), str(r.d), str(r.n),
            str(r.alpha), str(r.beta), str(r.count), str(r.n**3), str(r.q**2),
            _frac_str(r.remainder), repr(r.remainder_bound), repr(r.relative_error),
            repr(r.elapsed_ms) if timings else "",
        ]))
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def write_records_jsonl(records, path, timings: bool = False) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for r in records:
            obj = {"seed": r.seed, "q": r.q, "p": r.p, "l": r.l, "d": r.d, "n": r.n,
                   "alpha": r.alpha, "beta": r.beta, "count": r.count,
                   "main_num": r.n**3, "main_den": r.q**2,
                   "remainder": _frac_str(r.remainder), "bound": r.remainder_bound,
                   "rel_err": r.relative_error,
                   "elapsed_ms": r.elapsed_ms if timings else None,
                   "below_threshold": r.below_threshold}
            fh.write(json.dumps(obj) + "\n")


def append_report_jsonl(report: BoundReport, path) -> None:
    obj = {"name": report.name, "lhs": str(report.lhs), "lhs_float": float(report.lhs),
           "rhs": report.rhs, "holds": report.holds, "params": report.params,
           "notes": report.notes}
    with open(path, "a", encoding="utf-8", newline="\n") as fh:
        fh.write(json.dumps(obj) + "\n")


# ---------------------------------------------------------------------------
# commands

def cmd_count(args) -> int:
    try:
        E = load_point_set(args.set, args.reduce)
    except PointSetFileError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    try:
        a = parse_scalar(E.ring, args.alpha)
        b = parse_scalar(E.ring, args.beta)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.method == "brute":
        print(brute_force_count(E, a, b))
    elif args.method == "fast":
        print(fast_count(E, a, b))
    else:
        dec = character_decomposition(E, a, b)
        print(int(dec.total))
        print(f"I = {_frac_str(dec.term_i)}")
        print(f"II = {_frac_str(dec.term_ii)}")
        print(f"III = {_frac_str(dec.term_iii)}")
    return 0


def cmd_construct(args) -> int:
    try:
        ring = ring_for_q(args.q, args.ring_kind)
        if args.kind == "sharp":
            if args.alpha is None or args.beta is None:
                raise ValueError("sharp construction needs --alpha and --beta")
            a = parse_scalar(ring, args.alpha)
            b = parse_scalar(ring, args.beta)
            E = sharp_construction(ring, args.n, a, b)
            bound = sharp_lower_bound(args.n)
        else:
            E = zero_construction(ring, args.n)
            bound = zero_triple_count(args.n)
    except (ValueError, RingError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    save_point_set(E, args.out)
    print(bound)
    return 0


_GAMMA_FAMILIES = {"ell1": verify_ell1, "ell2": verify_ell2,
                   "zq-l1": verify_zq_l1, "zq-l2": verify_zq_l2}
_PAIR_FAMILIES = {"remainder": verify_remainder_field, "zq-remainder": verify_remainder_ring}


def cmd_verify(args) -> int:
    try:
        E = load_point_set(args.set, args.reduce)
    except PointSetFileError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    try:
        if args.which in _GAMMA_FAMILIES:
            if args.gamma is None:
                raise ValueError(f"{args.which} needs --gamma")
            g = parse_scalar(E.ring, args.gamma)
            report = _GAMMA_FAMILIES[args.which](E, g)
        else:
            if args.alpha is None or args.beta is None:
                raise ValueError(f"{args.which} needs --alpha and --beta")
            a = parse_scalar(E.ring, args.alpha)
            b = parse_scalar(E.ring, args.beta)
            report = _PAIR_FAMILIES[args.which](E, a, b)
    except (BoundFamilyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(report.human())
    append_report_jsonl(report, args.out)
    return 0 if report.holds else 3


def cmd_scan(args) -> int:
    try:
        ring = ring_for_q(args.q, args.ring_kind)
        exps = [float(tok) for tok in args.exponents.split(",") if tok.strip()]
        if not exps:
            raise ValueError("empty exponent grid")
        if args.trials < 0:
            raise ValueError("trials must be >= 0")
        a = parse_scalar(ring, args.alpha)
        b = parse_scalar(ring, args.beta)
        records = density_scan(ring, args.d, exps, args.trials, args.seed, a, b)
    except (ValueError, RingError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    csv_path = args.out
    jsonl_path = os.path.splitext(str(csv_path))[0] + ".jsonl"
    write_records_csv(records, csv_path, args.timings)
    write_records_jsonl(records, jsonl_path, args.timings)
    print(f"{len(records)} records -> {csv_path}, {jsonl_path}")
    return 0


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dotpairs",
        description="Triple counts with a prescribed pair of dot products over "
                    "F_q and Z_(p^l): counting, constructions, bound checks, scans.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", help="count triples in a point-set file")
    p.add_argument("--set", required=True, help="point-set JSON file")
    p.add_argument("--alpha", required=True, help="first dot-product value")
    p.add_argument("--beta", required=True, help="second dot-product value")
    p.add_argument("--method", choices=("brute", "fast", "char"), default="fast")
    p.add_argument("--reduce", action="store_true",
                   help="fold out-of-range coordinates mod q instead of rejecting")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("construct", help="generate an extremal point set")
    p.add_argument("kind", choices=("sharp", "zero"))
    p.add_argument("--q", type=int, required=True, help="ring cardinality")
    p.add_argument("--n", type=int, required=True, help="number of points")
    p.add_argument("--alpha", help="first dot-product value (sharp only)")
    p.add_argument("--beta", help="second dot-product value (sharp only)")
    p.add_argument("--ring-kind", choices=(PRIME_FIELD, EXTENSION_FIELD, RESIDUE_RING),
                   help="override the default ring for q (prime: field, power: Z_q)")
    p.add_argument("--out", required=True, help="output point-set JSON file")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="check one stated inequality on a point set")
    p.add_argument("which", choices=tuple(_GAMMA_FAMILIES) + tuple(_PAIR_FAMILIES))
    p.add_argument("--set", required=True, help="point-set JSON file")
    p.add_argument("--gamma", help="dot-product value for ell1/ell2/zq-l1/zq-l2")
    p.add_argument("--alpha", help="first value for remainder checks")
    p.add_argument("--beta", help="second value for remainder checks")
    p.add_argument("--out", default="verify.jsonl", help="JSONL report log (appended)")
    p.add_argument("--reduce", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("scan", help="density scan: random sets across n = round(q^e)")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--exponents", required=True, help="comma-separated list, e.g. 1.2,1.4")
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--alpha", required=True)
    p.add_argument("--beta", required=True)
    p.add_argument("--ring-kind", choices=(PRIME_FIELD, EXTENSION_FIELD, RESIDUE_RING))
    p.add_argument("--out", required=True, help="CSV path; JSONL written alongside")
    p.add_argument("--timings", action="store_true",
                   help="emit wall-clock elapsed_ms (breaks byte reproducibility)")
    p.set_defaults(func=cmd_scan)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
