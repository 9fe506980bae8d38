"""Command line entry point: ``sggap <command> [options]``."""

from __future__ import annotations

import argparse
import csv
import json
import sys
from decimal import Decimal
from fractions import Fraction
from typing import Iterator

from . import gaps, limits
from .config import RunConfig
from .errors import (
    CertificationError,
    DomainError,
    MismatchError,
    NoConvergence,
    ToleranceNotReached,
)
from .report import GapReport
from .scalar import DEFAULT_PRECISION, Order, certified_compare
from .spectra import BC, spectrum

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_USAGE = 2
EXIT_INCONCLUSIVE = 3
EXIT_MISMATCH = 4

CLAIMS = ("key1", "key2", "induction", "prelowest", "fullmin", "theorem", "dyadic")

# default sweep ranges per claim (first value, last value)
_M_RANGE = {
    "key1": (1, None),
    "key2": (1, None),
    "induction": (3, 10),
    "prelowest": (3, 6),
    "fullmin": (1, 10),
    "dyadic": (2, 8),
}


class UsageError(Exception):
    pass


def _ordinal(n: int) -> str:
    suffix = {1: "st", 2: "nd", 3: "rd"}.get(n if n < 20 else n % 10, "th")
    return f"{n}{suffix}"


def _bcs(value: str | None) -> list[BC]:
    return list(BC) if value in (None, "both") else [BC.parse(value)]


def cmd_spectrum(args, cfg: RunConfig, out) -> int:
    spec = spectrum(args.level, args.bc, cfg.precision_bits)
    if cfg.output_format == "json":
        out.write(json.dumps(spec.to_json(args.digits)) + "\n")
    else:
        spec.to_csv(out, args.digits)
    return EXIT_OK


def cmd_constants(args, cfg: RunConfig, out) -> int:
    tol, p = cfg.limit_tol, cfg.precision_bits
    vals = {n: limits.named_constant(n, tol, p) for n in limits.NAMED_DESCRIPTORS}
    r1, r2 = limits.gap_ratios(tol, p)
    chain = [
        ("lambda0_2<lambda0_5", vals["lambda0_2"], vals["lambda0_5"]),
        ("lambda0_5<lambda6", vals["lambda0_5"], vals["lambda6"]),
        ("lambda0_5<lambda1_5", vals["lambda0_5"], vals["lambda1_5"]),
    ]
    tol_s = f"{float(tol):g}"

    def entry(name, b):
        return {"name": name, "midpoint": b.mid_str(), "radius": b.rad_str(),
                "precision_bits": b.prec, "tolerance": tol_s}

    diff = vals["lambda0_5"] - vals["lambda0_2"]
    doc = {
        "constants": [entry(n, b) for n, b in vals.items()],
        "ratios": [entry("g0", r1), entry("g1", r2)],
        "ratios_3dp": {"g0": r1.mid_fixed(3), "g1": r2.mid_fixed(3)},
        "differences": [entry("lambda0_5-lambda0_2", diff)],
        "ordering": {k: certified_compare(a, b) is Order.LESS for k, a, b in chain},
    }
    out.write(json.dumps(doc, indent=2) + "\n")
    return EXIT_OK


def _range(args, lo_default: int, hi_default: int | None, cfg: RunConfig) -> range:
    lo = args.min_m if args.min_m is not None else lo_default
    hi = args.max_m if args.max_m is not None else (hi_default or cfg.sweep_max_m)
    if lo > hi:
        raise UsageError(f"empty range {lo}..{hi}")
    return range(lo, hi + 1)


def _reports(args, cfg: RunConfig) -> Iterator[GapReport]:
    p, tol = cfg.precision_bits, cfg.limit_tol
    claim = args.claim
    if claim == "theorem":
        for bc in _bcs(args.bc):
            if args.fixation is not None:
                levels = [args.fixation]
            else:
                levels = _range(args, 4 if bc is BC.DIRICHLET else 1, 8, cfg)
            for L in levels:
                yield gaps.verify_min_gap_theorem(L, bc, tol, p)
        return
    ms = _range(args, *_M_RANGE[claim], cfg)
    if claim == "key1":
        yield from (gaps.verify_key1(m, p) for m in ms)
    elif claim == "key2":
        yield from (gaps.verify_key2(m, p) for m in ms)
    elif claim == "induction":
        yield from (gaps.verify_induction_step(m, p) for m in ms)
    elif claim == "prelowest":
        ks = range(args.min_k, args.max_k + 1)
        yield from (gaps.verify_pre_lowest(m, k, p) for m in ms for k in ks)
    elif claim == "fullmin":
        yield from (gaps.verify_full_level_minimum(m, bc, p) for bc in _bcs(args.bc) for m in ms)
    elif claim == "dyadic":
        yield limits.check_g0(tol, p)
        for m in ms:
            for m2 in ms:
                if m < m2:
                    yield limits.check_interval_separation(m, m2, tol, p)
        for m in ms:
            for m2 in ms:
                if m <= m2:
                    yield limits.check_sum_closure(m, m2, tol, p)


def cmd_verify(args, cfg: RunConfig, out) -> int:
    ok = True
    for rep in _reports(args, cfg):
        out.write(rep.to_json() + "\n")
        ok &= rep.certified
    return EXIT_OK if ok else EXIT_INCONCLUSIVE


def cmd_table1(args, cfg: RunConfig, out) -> int:
    rows = gaps.table1_rows(cfg.precision_bits)
    out.write("# differences between adjacent gaps and the first gap, base case of the induction\n")
    for r in rows:
        if r.flagged:
            out.write(
                f"# row {r.index}: reference prints {r.printed} but the computed difference is "
                f"{r.difference.mid_str(5)} (the printed digits in units of 1e-7); "
                "the row is checked as positive and below 1e-5\n"
            )
    for r in rows:
        rounded = r.difference.mid_fixed(4)
        if not r.flagged and Decimal(rounded) != Decimal(r.printed):
            out.write(
                f"# row {r.index}: half-even rounding gives {rounded}, reference prints "
                f"{r.printed} (within 1e-4)\n"
            )
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["index", "gap", "rounded", "raw", "reference", "flagged", "match"])
    for r in rows:
        w.writerow([
            r.index, f"{_ordinal(r.index)}-1st", r.difference.mid_fixed(4),
            r.difference.mid_str(20), r.printed, int(r.flagged), int(r.matches),
        ])
    return EXIT_OK if all(r.matches for r in rows) else EXIT_INCONCLUSIVE


def cmd_oracle(args, cfg: RunConfig, out) -> int:
    from . import oracle

    if args.level > oracle.LEVEL_CAP:
        raise UsageError(f"level {args.level} is above the oracle cap {oracle.LEVEL_CAP}")
    if args.level < 0:
        raise DomainError("level must be non-negative")
    bcs = _bcs(args.bc)
    if args.graph_out:
        with open(args.graph_out, "w", encoding="utf-8") as fh:
            oracle.write_edge_list(oracle.build_graph(args.level), fh)
    if args.matrix_out:
        if len(bcs) != 1:
            raise UsageError("--matrix-out needs a single --bc")
        with open(args.matrix_out, "w", encoding="utf-8") as fh:
            oracle.write_matrix(oracle.laplacian_matrix(oracle.build_graph(args.level), bcs[0]), fh)
    for bc in bcs:
        rep = oracle.cross_check(args.level, bc, cfg.oracle_tol)
        out.write(json.dumps(rep.to_dict()) + "\n")
    return EXIT_OK


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="sggap", description=__doc__)
    ap.add_argument("--precision", type=int, default=DEFAULT_PRECISION,
                    help="working precision in bits (env SGGAP_PRECISION)")
    ap.add_argument("--tol", type=Fraction, default=Fraction(1, 10**30),
                    help="radius bound for limit eigenvalues")
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("spectrum", help="finite-level spectrum A_m")
    s.add_argument("--level", type=int, required=True)
    s.add_argument("--bc", choices=[b.value for b in BC], required=True)
    s.add_argument("--format", choices=("csv", "json"), default="csv")
    s.add_argument("--digits", type=int, default=None)
    s.set_defaults(func=cmd_spectrum)

    c = sub.add_parser("constants", help="named limit eigenvalues and gap ratios")
    c.set_defaults(func=cmd_constants)

    v = sub.add_parser("verify", help="certify a claim over a parameter sweep")
    v.add_argument("--claim", choices=CLAIMS, required=True)
    v.add_argument("--min-m", type=int, default=None)
    v.add_argument("--max-m", type=int, default=None)
    v.add_argument("--min-k", type=int, default=2)
    v.add_argument("--max-k", type=int, default=5)
    v.add_argument("--bc", choices=[b.value for b in BC] + ["both"], default="both")
    v.add_argument("--fixation", type=int, default=None)
    v.add_argument("--sweep-max-m", type=int, default=40)
    v.set_defaults(func=cmd_verify)

    t = sub.add_parser("table1", help="gap differences of the induction base case")
    t.set_defaults(func=cmd_table1)

    o = sub.add_parser("oracle", help="cross-check A_m against direct diagonalization")
    o.add_argument("--level", type=int, required=True)
    o.add_argument("--bc", choices=[b.value for b in BC] + ["both"], default="both")
    o.add_argument("--oracle-tol", type=float, default=1e-9)
    o.add_argument("--graph-out", default=None)
    o.add_argument("--matrix-out", default=None)
    o.set_defaults(func=cmd_oracle)
    return ap


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    ap = _parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        cfg = RunConfig(
            precision_bits=args.precision,
            limit_tol=args.tol,
            oracle_tol=getattr(args, "oracle_tol", 1e-9),
            sweep_max_m=getattr(args, "sweep_max_m", 40),
            output_format=getattr(args, "format", "csv"),
        )
        return args.func(args, cfg, out)
    except DomainError as e:
        print(f"sggap: {e}", file=sys.stderr)
        return EXIT_DOMAIN
    except (UsageError, ValueError) as e:
        print(f"sggap: usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except MismatchError as e:
        print(f"sggap: mismatch: {e}", file=sys.stderr)
        return EXIT_MISMATCH
    except (ToleranceNotReached, CertificationError, NoConvergence) as e:
        print(f"sggap: inconclusive: {e}", file=sys.stderr)
        return EXIT_INCONCLUSIVE


def main_exit() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_exit()
