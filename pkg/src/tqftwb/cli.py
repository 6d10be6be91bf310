"""Command-line front end.

Four commands over the same exact engines:

* ``cob normalize --term T``        surface normal form of a term;
* ``tqft eval --model M --term T``  span semantics and fingerprint,
  optionally compared against the identity or the standard genus-zero
  span (``--expect id|genus0``);
* ``frobenius check --model M``     the full axiom report for a model;
* ``lie FAMILY``                    the verification suite of a family.

Exit status: 0 all checks passed, 1 a check failed, 2 bad usage or
unreadable input.  ``--json PATH`` additionally writes the structured
report (stable key order) to a file.  Seeds resolve from the ``--seed``
option, then the TQFTWB_SEED environment variable, then 0.
"""

import argparse
import json
import os
import sys

from . import __version__
from .cob2 import (ArityError, TermSyntaxError, normalize, parse_and_check,
                   signature)
from .frobenius import check_axioms, evaluate, genus0_span, iso_bound
from .groupoid import (AbelianModel, GroupoidError, abelian_power,
                       cardinality, fingerprint, identity_span)
from .lie import LieError, run_suite

FAMILIES = {"sln": "sl(n)", "sl2-semidirect": "sl2_semidirect",
            "sl3-centralizer": "sl3_centralizer"}


class UsageError(Exception):
    """Bad input that the tool reports on stderr with exit status 2."""


def _resolve_seed(option_value):
    if option_value is not None:
        return option_value
    env = os.environ.get("TQFTWB_SEED")
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"TQFTWB_SEED must be an integer, got {env!r}")


def _load_model(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read model file: {exc}")
    except json.JSONDecodeError as exc:
        raise UsageError(f"model file is not valid JSON: {exc}")
    try:
        return AbelianModel.from_json(data)
    except GroupoidError as exc:
        raise UsageError(f"invalid model: {exc}")


def _parse_term(text):
    try:
        return parse_and_check(text)
    except (TermSyntaxError, ArityError) as exc:
        raise UsageError(f"bad term: {exc}")


def _report_skeleton(command, options):
    return {"tool": "tqftwb", "version": __version__, "command": command,
            "options": options}


def _emit(report, json_path, out):
    if json_path:
        with open(json_path, "w", encoding="utf-8") as fh:
            json.dump(report, fh, indent=2, sort_keys=True)
            fh.write("\n")
    return out


def cmd_cob_normalize(args):
    term = _parse_term(args.term)
    nf = normalize(term)
    report = _report_skeleton("cob normalize", {"term": args.term})
    report["signature"] = list(signature(term))
    report["normal_form"] = nf.serialize()
    _emit(report, args.json, None)
    print(nf.serialize())
    return 0


def cmd_tqft_eval(args):
    model = _load_model(args.model)
    term = _parse_term(args.term)
    m, n = signature(term)
    nf = normalize(term)
    genus = sum(c.genus for c in nf.components)
    bound = iso_bound(model, power=m + n + 2 * genus + 2)
    try:
        span = evaluate(model, term)
        fp = fingerprint(span, max_isotropy=bound)
    except GroupoidError as exc:
        raise UsageError(f"evaluation failed: {exc}")
    report = _report_skeleton("tqft eval", {
        "model": model.to_json(), "term": args.term,
        "expect": args.expect})
    report["signature"] = [m, n]
    report["apex_cardinality"] = str(cardinality(span.apex))
    report["fingerprint"] = fp.serialize()
    lines = [fp.serialize(), f"cardinality: {cardinality(span.apex)}"]

    status = 0
    if args.expect == "id":
        if m != n:
            raise UsageError(f"--expect id needs equal boundaries, "
                             f"term has signature {m}->{n}")
        reference = fingerprint(identity_span(abelian_power(model, n)),
                                max_isotropy=bound)
        label = f"id({n})"
    elif args.expect == "genus0":
        if m + n == 0:
            raise UsageError("--expect genus0 needs a nonempty boundary")
        reference = fingerprint(genus0_span(model, m, n),
                                max_isotropy=bound)
        label = f"genus0({m},{n})"
    else:
        reference = None
    if reference is not None:
        equal = fp == reference
        verdict = ("fingerprint-equal: " if equal else
                   "fingerprint-distinct: ") + label
        report["verdict"] = verdict
        lines.append(verdict)
        status = 0 if equal else 1
    _emit(report, args.json, None)
    print("\n".join(lines))
    return status


def cmd_frobenius_check(args):
    model = _load_model(args.model)
    seed = _resolve_seed(args.seed)
    axioms = check_axioms(model, seed=seed)
    report = _report_skeleton("frobenius check",
                              {"model": model.to_json(), "seed": seed})
    report["report"] = axioms.to_json()
    _emit(report, args.json, None)
    for entry in axioms.entries:
        print(("PASS" if entry["passed"] else "FAIL") + f" {entry['name']}")
    ok = axioms.all_pass
    print("all axioms hold" if ok else "AXIOM CHECK FAILED")
    return 0 if ok else 1


def cmd_lie(args):
    family = FAMILIES[args.family]
    if args.family != "sln" and args.n is not None:
        raise UsageError(f"--n applies only to sln, not {args.family}")
    n = args.n if args.n is not None else (3 if args.family == "sln" else None)
    if args.family == "sln" and n < 2:
        raise UsageError("--n must be at least 2")
    seed = _resolve_seed(args.seed)
    try:
        suite = run_suite(family, n=n, trials=args.trials, seed=seed)
    except LieError as exc:
        raise UsageError(str(exc))
    report = _report_skeleton(f"lie {args.family}", {
        "family": args.family, "n": n, "trials": args.trials, "seed": seed})
    report["report"] = suite.to_json()
    _emit(report, args.json, None)
    for check in suite.checks:
        line = ("PASS" if check["passed"] else "FAIL") + f" {check['name']}"
        if check.get("samples"):
            line += f" (samples={check['samples']})"
        print(line)
    print("all checks passed" if suite.all_pass else "CHECKS FAILED")
    return 0 if suite.all_pass else 1


def build_parser():
    parser = argparse.ArgumentParser(
        prog="tqftwb",
        description="verification workbench for two-dimensional "
                    "topological field theories from finite groupoids")
    parser.add_argument("--version", action="version",
                        version=f"tqftwb {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    cob = sub.add_parser("cob", help="cobordism term calculus")
    cob_sub = cob.add_subparsers(dest="subcommand", required=True)
    cob_norm = cob_sub.add_parser("normalize",
                                  help="print the surface normal form")
    cob_norm.add_argument("--term", required=True)
    cob_norm.add_argument("--json", metavar="PATH")
    cob_norm.set_defaults(func=cmd_cob_normalize)

    tqft = sub.add_parser("tqft", help="span semantics of terms")
    tqft_sub = tqft.add_subparsers(dest="subcommand", required=True)
    tqft_eval = tqft_sub.add_parser("eval",
                                    help="evaluate a term in a model")
    tqft_eval.add_argument("--model", required=True, metavar="PATH")
    tqft_eval.add_argument("--term", required=True)
    tqft_eval.add_argument("--expect", choices=["id", "genus0"])
    tqft_eval.add_argument("--json", metavar="PATH")
    tqft_eval.set_defaults(func=cmd_tqft_eval)

    frob = sub.add_parser("frobenius", help="axiom checks for a model")
    frob_sub = frob.add_subparsers(dest="subcommand", required=True)
    frob_check = frob_sub.add_parser("check", help="run the axiom report")
    frob_check.add_argument("--model", required=True, metavar="PATH")
    frob_check.add_argument("--seed", type=int)
    frob_check.add_argument("--json", metavar="PATH")
    frob_check.set_defaults(func=cmd_frobenius_check)

    lie = sub.add_parser("lie", help="Lie-theory verification suites")
    lie.add_argument("family", choices=sorted(FAMILIES))
    lie.add_argument("--n", type=int)
    lie.add_argument("--trials", type=int, default=25)
    lie.add_argument("--seed", type=int)
    lie.add_argument("--json", metavar="PATH")
    lie.set_defaults(func=cmd_lie)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"tqftwb: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
