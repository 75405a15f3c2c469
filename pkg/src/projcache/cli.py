"""projcache command line.

Exit codes: 0 success, 1 verification or decoding failure, 2 usage error.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import bounds as bnd
from .delivery import FileLibrary, decode_all, deliver, make_demands, measure
from .errors import ArgumentError, CapExceededError, DecodeError, ProjcacheError, StructuralError
from .extensions import cdc_from_scheme_b, check_ic_schedule, ic_scheme, zero_force_round
from .graph import dumps, verify_cover
from .pda import cover_to_pda, validate_pda
from .render import fmt_decimal, fmt_rational, parse_rational
from .scheme_a import SchemeAParams, build_scheme_a, scheme_a_params
from .scheme_b import SchemeBParams, build_scheme_b, plan, plan_csv, scheme_b_params, scheme_c_params
from .subspace import DEFAULT_CAP
from .tables import TABLES, write_tables


class UsageError(Exception):
    pass


def _rational(text):
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _scheme_flags(p, with_c=True):
    choices = ["a", "b", "b-general", "c"] if with_c else ["b", "b-general", "c"]
    p.add_argument("--scheme", choices=choices, required=True)
    p.add_argument("-k", type=int)
    p.add_argument("-m", type=int)
    p.add_argument("-t", type=int)
    p.add_argument("-n", type=int)
    p.add_argument("-l", type=int, default=1)
    p.add_argument("-q", type=int)
    p.add_argument("--lam", type=_rational, help="cache parameter lambda for --scheme c")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP, help="enumeration cap")
    p.add_argument("--force-build", action="store_true", help="ignore the enumeration cap")


def _need(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"--scheme {args.scheme} needs " + ", ".join("-" + n for n in missing))


def _resolve(args):
    """Return (params, closed-form report)."""
    if args.scheme == "a":
        _need(args, "k", "m", "t", "q")
        p = SchemeAParams(args.k, args.m, args.t, args.q)
        return p, scheme_a_params(p)
    if args.scheme in ("b", "b-general"):
        _need(args, "k", "n", "m", "q")
        if args.scheme == "b" and args.l != 1:
            raise UsageError("--scheme b has l = 1; use --scheme b-general for -l > 1")
        p = SchemeBParams(args.k, args.n, args.m, args.l, args.q)
        return p, scheme_b_params(p)
    _need(args, "q", "lam")
    c = scheme_c_params(args.q, args.lam)
    return c.params, c.report


def _build(args, p):
    cap = None if args.force_build else args.cap
    if isinstance(p, SchemeAParams):
        return build_scheme_a(p, cap=cap)
    return build_scheme_b(p, cap=cap)


def _out(path, text):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


# -- subcommands -----------------------------------------------------------------

def cmd_construct(args):
    p, rep = _resolve(args)
    g, cover = _build(args, p)
    got = verify_cover(g, cover)
    if got != rep:
        raise StructuralError(f"built scheme {got} disagrees with closed form {rep}")
    if args.output:
        _out(args.output, dumps(g, cover) + "\n")
    if args.json:
        print(json.dumps(rep.as_dict()))
    else:
        print(rep.line())
    return 0


def cmd_simulate(args):
    p, rep = _resolve(args)
    g, cover = _build(args, p)
    verify_cover(g, cover)
    N = args.files if args.files is not None else g.K
    lib = FileLibrary(N, g.F, args.subfile_size, args.seed)
    demands = make_demands(args.demands, g.K, N, args.seed)
    tr = deliver(g, cover, lib, demands)
    report = decode_all(g, cover, lib, demands, tr)
    rate, gain = measure(tr, lib, g.K, rep.cache_fraction)
    if args.output:
        _out(args.output, tr.to_jsonl(dump_payloads=args.dump_payloads))
    summary = {
        "transmissions": tr.S,
        "rate": str(rate),
        "gain": str(gain),
        "bits_sent": tr.bits_sent,
        "uncoded_bits": g.K * rep.D * lib.subfile_size * 8,
        "users_decoded": report.n_ok,
        "users": g.K,
    }
    if args.json:
        print(json.dumps(summary))
    else:
        print(f"transmissions={tr.S} rate={fmt_rational(rate)} gain={fmt_rational(gain)} "
              f"bits={tr.bits_sent} decoded={report.n_ok}/{g.K}")
    return 0 if report.all_ok else 1


def cmd_pda(args):
    p, rep = _resolve(args)
    g, cover = _build(args, p)
    pda = cover_to_pda(g, cover)
    params = validate_pda(pda)
    if (params.K, params.F, params.Z, params.S, params.g) != (rep.K, rep.F, rep.F - rep.D, rep.S, rep.g):
        raise StructuralError(f"PDA parameters {params} disagree with {rep}")
    text = pda.to_csv(params)
    _out(args.output, text)
    if args.output not in (None, "-"):
        print(text.splitlines()[0])
    return 0


def cmd_bounds(args):
    if args.mn is None and args.D is None:
        raise UsageError("give --mn or -D")
    mn = args.mn if args.mn is not None else 1 - Fraction(args.D, args.F)
    D = args.F * (1 - mn)
    if D.denominator != 1:
        raise ArgumentError(f"F(1 - M/N) = {D} is not an integer")
    rep = bnd.bound_rows_report([(args.K, args.F, int(D))], attach_scheme_b=not args.no_scheme)[0]
    out = {
        "K": rep.K, "F": rep.F, "D": rep.D, "M/N": str(rep.cache_fraction),
        "bound_corollary2": str(rep.bound_corollary2), "bound_theorem6": str(rep.bound_theorem6),
        "bound_cheng": str(rep.bound_cheng), "bound_wtp": str(rep.bound_wtp),
        "achieved": None if rep.achieved_rate is None else str(rep.achieved_rate),
        "note": rep.note,
    }
    if args.json:
        print(json.dumps(out))
    else:
        print(bnd.bounds_csv([rep]), end="")
        if rep.note:
            print(f"# {rep.note}")
    return 0


def cmd_tables(args):
    names = args.only or list(TABLES)
    if args.output:
        for path in write_tables(args.output, names):
            print(path)
    else:
        from .tables import to_csv

        for name in names:
            header, rows = TABLES[name]()
            print(f"# {name}")
            print(to_csv(header, rows))
    return 0


def cmd_plan(args):
    rows = plan(args.users, args.mn, k_max=args.k_max, l_max=args.l_max, limit=args.limit)
    _out(args.output, plan_csv(rows))
    return 0


def cmd_cdc(args):
    p, rep = _resolve(args)
    if isinstance(p, SchemeAParams):
        raise UsageError("cdc works with Scheme B parameters")
    c = cdc_from_scheme_b(p, build=True if args.force_build else None, cap=None if args.force_build else args.cap)
    out = {"K": c.K, "r": str(c.computation_load), "F": c.F, "L": str(c.communication_load),
           "assignment_built": c.batch_assignment is not None}
    if args.json:
        print(json.dumps(out))
    else:
        print(f"K={c.K} r={fmt_rational(c.computation_load)} F={c.F} L={fmt_rational(c.communication_load)}")
    return 0


def cmd_ic(args):
    ic = ic_scheme(args.k, args.m, args.q, args.L, build=args.rounds > 0 or None)
    out = {"K_R": ic.K_R, "L": ic.L, "M_R/N": str(ic.cache_fraction), "F": ic.F, "sum_dof": ic.sum_dof}
    if args.rounds and ic.rounds is not None:
        check_ic_schedule(ic)
        worst = 0.0
        n = min(args.rounds, len(ic.rounds))
        for ri in range(n):
            res = zero_force_round(ic, ri, seed=args.seed + ri)
            worst = max(worst, max(res.residuals.values()))
        out["rounds_checked"] = n
        out["max_residual"] = worst
    if args.json:
        print(json.dumps(out))
    else:
        line = (f"K_R={ic.K_R} L={ic.L} M_R/N={fmt_decimal(ic.cache_fraction)} F={ic.F} "
                f"sum-DoF={ic.sum_dof}")
        if "max_residual" in out:
            line += f" rounds={out['rounds_checked']} max_residual={out['max_residual']:.2e}"
        print(line)
    return 0


def build_parser():
    ap = argparse.ArgumentParser(prog="projcache", description="Projective-geometry coded caching schemes.")
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("construct", help="build and verify a scheme")
    _scheme_flags(p)
    p.add_argument("-o", "--output", help="write graph/cover JSON here")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("simulate", help="deliver and decode bytes end to end")
    _scheme_flags(p)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--demands", default="worst-case", help="worst-case | random | constant:i")
    p.add_argument("--files", type=int, help="number of files N (default K)")
    p.add_argument("--subfile-size", type=int, default=64)
    p.add_argument("-o", "--output", help="write the transcript (JSON lines) here")
    p.add_argument("--dump-payloads", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("pda", help="export the placement delivery array")
    _scheme_flags(p)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_pda)

    p = sub.add_parser("bounds", help="rate lower bounds for (K, F, M/N)")
    p.add_argument("-K", type=int, required=True)
    p.add_argument("-F", type=int, required=True)
    p.add_argument("--mn", type=_rational)
    p.add_argument("-D", type=int)
    p.add_argument("--no-scheme", action="store_true", help="skip the Scheme B lookup")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("tables", help="regenerate the parameter and bound tables")
    p.add_argument("-o", "--output", help="directory for CSV files (default: stdout)")
    p.add_argument("--only", action="append", choices=list(TABLES))
    p.set_defaults(func=cmd_tables)

    p = sub.add_parser("plan", help="fit Scheme B parameters to a target user count and cache")
    p.add_argument("--users", type=int, required=True)
    p.add_argument("--mn", type=_rational, required=True)
    p.add_argument("--k-max", type=int, default=8)
    p.add_argument("--l-max", type=int, default=2)
    p.add_argument("--limit", type=int, default=20)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_plan)

    p = sub.add_parser("cdc", help="distributed-computing parameters from Scheme B")
    _scheme_flags(p, with_c=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_cdc)

    p = sub.add_parser("ic", help="interference-channel parameters and zero-forcing check")
    p.add_argument("-k", type=int, required=True)
    p.add_argument("-m", type=int, required=True)
    p.add_argument("-q", type=int, required=True)
    p.add_argument("-L", type=int, required=True)
    p.add_argument("--rounds", type=int, default=0, help="zero-force this many rounds")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_ic)
    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        ap.print_usage(sys.stderr)
        print(f"projcache: error: {exc}", file=sys.stderr)
        return 2
    except (ArgumentError, CapExceededError) as exc:
        print(f"projcache: error: {exc}", file=sys.stderr)
        return 2
    except (StructuralError, DecodeError) as exc:
        print(f"projcache: verification failed: {exc}", file=sys.stderr)
        return 1
    except ProjcacheError as exc:
        print(f"projcache: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
