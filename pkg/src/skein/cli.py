"""Command-line entry point: ``skein nf | verify | export``.

Exit codes: 0 all checks pass, 1 verification failure, 2 rewrite step cap
exceeded, 64 usage error.
"""

import argparse
import json
import os
import random
import sys

from skein.algebra import InvalidSymbol, format_element, random_element
from skein.oracle import check_matrix_identities, check_relations
from skein.parser import SyntaxError as ParseError
from skein.parser import parse_element
from skein.relcat import all_instances, export_lines
from skein.rewrite import (
    CASE_SHAPES,
    SPANNING_CASES,
    VERIFIED_RD,
    RewriteLimitExceeded,
    confluence_fuzz,
    normal_form,
    reduce,
    ruleset_for,
    spanning_check,
)

EXIT_OK, EXIT_FAIL, EXIT_CAP, EXIT_USAGE = 0, 1, 2, 64
SUITES = ("classical", "mirror", "confluence", "spanning", "matrix-identities")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


def default_seed():
    raw = os.environ.get("SKEIN_SEED", "0")
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"SKEIN_SEED must be an integer, got {raw!r}") from None


def build_parser():
    common = _Parser(add_help=False)
    common.add_argument("--n", type=int, default=6, help="number of punctures")
    common.add_argument("--seed", type=int, default=None, help="master seed (default $SKEIN_SEED or 0)")
    common.add_argument("--trials", type=int, default=None)
    common.add_argument("--max-steps", type=int, default=100000, dest="max_steps")
    common.add_argument("--format", "--report", choices=("text", "json"), default="text", dest="format")
    common.add_argument("--window-check", action="store_true", dest="window_check",
                        help="fail when the input lies outside the verified window")

    p = _Parser(prog="skein", description="Skein algebra rewriting and verification.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True
    nf = sub.add_parser("nf", parents=[common], help="normal form of an expression")
    nf.add_argument("expr")
    nf.add_argument("--trace", action="store_true")
    ver = sub.add_parser("verify", parents=[common], help="run a verification suite")
    ver.add_argument("suite", choices=SUITES)
    sub.add_parser("export", parents=[common], help="dump the instantiated catalog")
    return p


class Output:
    def __init__(self, fmt, stream):
        self.fmt = fmt
        self.stream = stream

    def header(self, **fields):
        if self.fmt == "json":
            self.row({"header": fields})
        else:
            self.line(" ".join(f"{k}={v}" for k, v in fields.items()))

    def row(self, obj):
        self.stream.write(json.dumps(obj, sort_keys=True) + "\n")

    def line(self, text):
        self.stream.write(text + "\n")


# -- commands ------------------------------------------------------------------


def cmd_nf(args, out):
    try:
        e = parse_element(args.expr, args.n)
    except (ParseError, InvalidSymbol) as exc:
        raise UsageError(f"skein nf: {type(exc).__name__}: {exc}") from None
    rs = ruleset_for(args.n)
    try:
        rep = normal_form(e, rs, cap=args.max_steps, trace=args.trace)
    except RewriteLimitExceeded as exc:
        out.line(f"error: {exc}")
        return EXIT_CAP
    outside = rep.unverified_window or e.max_reduced_degree() > VERIFIED_RD
    if out.fmt == "json":
        obj = {"input": args.expr, "n": args.n, "steps": rep.steps,
               "result": rep.result.to_json(), "text": format_element(rep.result),
               "unverified_window": outside}
        if args.trace:
            obj["trace"] = [[_origin_name(o), p] for o, p in rep.trace]
        out.row(obj)
    else:
        out.line(format_element(rep.result))
        out.line(f"# steps={rep.steps}" + (" unverified-window" if outside else ""))
        if args.trace:
            for origin, p in rep.trace:
                out.line(f"#   {_origin_name(origin)} @ {p}")
    if args.window_check and outside:
        return EXIT_FAIL
    return EXIT_OK


def _origin_name(origin):
    if origin is None or isinstance(origin, str):
        return origin or "derived"
    fam, tup, shift, mirrored, partner = origin.key()
    name = f"{fam}{list(tup)}/v{shift}" + ("/mirror" if mirrored else "")
    return name + (f"/{partner}" if partner else "")


def cmd_export(args, out):
    lines = export_lines(args.n)
    if out.fmt == "json":
        for line in lines:
            out.line(line)
    else:
        for inst in sorted(all_instances(args.n), key=lambda i: i.key()):
            out.line(f"{_origin_name(inst)}: {format_element(inst.element)} = 0")
    return EXIT_OK


def cmd_verify(args, out):
    out.header(suite=args.suite, n=args.n, seed=args.seed, trials=args.trials)
    return {
        "classical": verify_classical,
        "mirror": verify_mirror,
        "confluence": verify_confluence,
        "spanning": verify_spanning,
        "matrix-identities": verify_matrix_identities,
    }[args.suite](args, out)


def _summary(out, name, ok, **extra):
    if out.fmt == "json":
        out.row({"summary": name, "pass": ok, **extra})
    else:
        out.line(f"{name}: {'PASS' if ok else 'FAIL'} " + " ".join(f"{k}={v}" for k, v in extra.items()))
    return EXIT_OK if ok else EXIT_FAIL


def verify_classical(args, out):
    insts = all_instances(args.n)
    rep = check_relations(args.n, insts, trials=args.trials or 20, seed=args.seed)
    bad = {f["instance"]: f for f in rep.failures}
    for inst in insts:
        f = bad.get(inst.key())
        if out.fmt == "json":
            out.row({"instance": _origin_name(inst), "pass": f is None,
                     **({"residual": f["residual"], "trial": f["trial"]} if f else {})})
        elif f is not None:
            out.line(f"FAIL {_origin_name(inst)} trial={f['trial']} residual={f['residual']}")
    return _summary(out, "classical", rep.passed, instances=len(insts), failures=len(rep.failures))


def verify_mirror(args, out):
    """Mirrors of catalog instances reduce to zero; normal forms commute with the mirror."""
    rs = ruleset_for(args.n)
    failures = 0
    for inst in all_instances(args.n, mirrors=False):
        if reduce(inst.element.mirror(), rs, args.max_steps):
            failures += 1
            out.line(f"FAIL mirror of {_origin_name(inst)} does not reduce to zero")
    rng = random.Random(args.seed)
    trials = args.trials or 100
    for trial in range(trials):
        e = random_element(rng, args.n, VERIFIED_RD)
        lhs = reduce(e.mirror(), rs, args.max_steps)
        rhs = reduce(reduce(e, rs, args.max_steps).mirror(), rs, args.max_steps)
        if lhs != rhs:
            failures += 1
            out.line(f"FAIL mirror compatibility trial={trial} element={format_element(e)}")
    return _summary(out, "mirror", failures == 0, failures=failures, trials=trials)


def verify_confluence(args, out):
    trials = args.trials or 500
    ok = True
    for shape, n in CASE_SHAPES.items():
        n = args.n if n is None else n
        if n > args.n:
            continue
        bound = 9 if shape == "t-heavy" else VERIFIED_RD
        rep = confluence_fuzz(n, bound, trials, args.seed, shape, cap=args.max_steps)
        ok = ok and rep.passed
        _witness(out, shape, rep)
    for md in SPANNING_CASES:
        if len(md) > args.n:
            continue
        shape = "md:" + ",".join(map(str, md))
        rep = confluence_fuzz(len(md), sum(md), trials, args.seed, shape, cap=args.max_steps)
        ok = ok and rep.passed
        _witness(out, shape, rep)
    return _summary(out, "confluence", ok, trials=trials)


def _witness(out, shape, rep):
    if out.fmt == "json":
        out.row({"shape": shape, "n": rep.n, "trials": rep.trials,
                 "divergences": len(rep.divergences),
                 "witness": format_element(rep.divergences[0]["element"]) if rep.divergences else None})
        return
    out.line(f"{shape} n={rep.n}: {len(rep.divergences)} divergences in {rep.trials} trials")
    for d in rep.divergences[:3]:
        out.line(f"  witness: {format_element(d['element'])}")
        out.line(f"    canonical: {format_element(d['canonical'])}")
        out.line(f"    random:    {format_element(d['random'])}")


def verify_spanning(args, out):
    ok = True
    for md in SPANNING_CASES:
        if len(md) > args.n:
            continue
        rep = spanning_check(md, seed=args.seed)
        ok = ok and rep.passed
        row = {"md": list(md), "basis": rep.basis_count, "products": rep.products,
               "independent": rep.independent, "failures": len(rep.failures),
               "oracle_mismatches": len(rep.oracle_mismatches), "pass": rep.passed}
        if out.fmt == "json":
            out.row(row)
        else:
            out.line(" ".join(f"{k}={v}" for k, v in row.items()))
    return _summary(out, "spanning", ok)


def verify_matrix_identities(args, out):
    rep = check_matrix_identities(args.trials or 100, args.seed)
    for f in rep.failures:
        out.row(f) if out.fmt == "json" else out.line(f"FAIL {f}")
    return _summary(out, "matrix-identities", rep.passed, **rep.counts)


COMMANDS = {"nf": cmd_nf, "verify": cmd_verify, "export": cmd_export}


def main(argv=None, stdout=None):
    stdout = stdout or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        if args.seed is None:
            args.seed = default_seed()
        if args.n < 1:
            raise UsageError("--n must be positive")
        return COMMANDS[args.command](args, Output(args.format, stdout))
    except UsageError as exc:
        sys.stderr.write(f"{exc}\n")
        return EXIT_USAGE


def run():
    sys.exit(main())


if __name__ == "__main__":
    run()
