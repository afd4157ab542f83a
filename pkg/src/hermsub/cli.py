"""Command-line surface: analyze, construct, subdivide, cascade, factor.

Every command is deterministic; identical inputs and flags give
byte-identical output.  Exit codes: 0 success (analysis verdicts included),
2 parse/feasibility/file errors, 3 arithmetic precondition failures.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

from .cascade import build_initial, cascade_run
from .convergence import hermite_convergence_decision, smoothness_estimate
from .errors import (
    DivisionNotExact,
    HermsubError,
    Infeasible,
    InsufficientSumRules,
    MaskFormatError,
    NoSimpleEigenvalueOne,
    SingularResonance,
)
from .maskio import (
    MaskDocument,
    load_mask_argument,
    samples_to_csv,
    serialize_mask_document,
)
from .normal_form import factorize, normal_form_jets_ok
from .rational import format_crat
from .subdivision import basis_samples, is_interpolatory
from .sum_rules import construct_hermite_mask, is_hermite_mask, sum_rules_order

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_ARITH = 3


def _jet_lines(jet):
    out = []
    for j, m in enumerate(jet.derivs):
        row = ", ".join(format_crat(x) for x in m[0])
        out.append(f"  order {j}: [{row}]")
    return out


def _parse_interval(text: str):
    try:
        lo_s, hi_s = text.split(":")
        return (int(lo_s), int(hi_s))
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"interval must look like LO:HI, got {text!r}"
        )


def _write_output(text: str, path: str | None):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def cmd_analyze(args) -> int:
    doc = load_mask_argument(args.mask)
    a = doc.mask
    r = a.rows
    report = sum_rules_order(a, max_probe=args.max_order)
    lines = [f"mask: {doc.name or args.mask}  ({r}x{a.cols}, support {a.support()})"]
    lines.append(f"sum rules: order {report.order}"
                 + (f"  (stopped by {report.failure})" if report.failure else ""))
    if report.matching is not None:
        lines.append("matching filter jet at 0:")
        lines.extend(_jet_lines(report.matching))
    accuracy = max(report.order, r)
    hermite = is_hermite_mask(a, accuracy) if accuracy >= r else None
    if hermite is not None:
        verdict = "true" if hermite.ok else f"false ({hermite.reason})"
        lines.append(f"Hermite mask (r={r}) at accuracy {accuracy}: {verdict}")
    lines.append(f"interpolatory: {is_interpolatory(a)}")
    sm = smoothness_estimate(a, n_levels=args.levels, p=args.p)
    if sm.failure_stage is not None:
        lines.append(f"smoothness: unavailable ({sm.failure_stage})")
    else:
        lines.append(
            "eigenvalue condition at m=%d: %s (other moduli: %s; threshold 2^-%d)"
            % (
                sm.sum_rule_order - 1,
                "pass" if sm.eigencheck.passed else "fail",
                ", ".join(f"{x:.6g}" for x in sm.eigencheck.other_moduli) or "none",
                sm.sum_rule_order - 1,
            )
        )
        lines.append("rho estimates (n: 2*||b_n||^(1/n)):")
        for n, rho in enumerate(sm.rho_estimates, start=1):
            lines.append(f"  {n:2d}: {rho:.12g}")
        lines.append(f"sm_p estimate (p={args.p}): {sm.sm_estimate:.12g}")
    m_target = args.target if args.target is not None else r - 1
    decision = hermite_convergence_decision(
        a, r, m_target, n_levels=args.levels, margin=args.margin
    )
    lines.append(f"decision at m={m_target}: {decision.label}")
    if args.json:
        payload = {
            "mask": doc.name or args.mask,
            "sum_rule_order": report.order,
            "failure": str(report.failure) if report.failure else None,
            "hermite": None if hermite is None else hermite.ok,
            "interpolatory": is_interpolatory(a),
            "rho_estimates": list(sm.rho_estimates),
            "sm_estimate": sm.sm_estimate,
            "eigencheck_passed": None if sm.eigencheck is None else sm.eigencheck.passed,
            "decision": decision.label,
        }
        _write_output(json.dumps(payload, indent=2, sort_keys=True) + "\n", args.output)
    else:
        _write_output("\n".join(lines) + "\n", args.output)
    return EXIT_OK


def cmd_construct(args) -> int:
    mask = construct_hermite_mask(
        args.r, args.m, args.support, interpolatory=args.interpolatory
    )
    name = args.name or f"hermite-r{args.r}-m{args.m}"
    meta = {
        "accuracy": str(args.m + 1),
        "source": "construct",
        "support": f"{args.support[0]}:{args.support[1]}",
    }
    if args.interpolatory:
        meta["interpolatory"] = "true"
    doc = MaskDocument(mask=mask, name=name, metadata=meta)
    check = is_hermite_mask(mask, args.m + 1)
    sys.stderr.write("matching filter jet used:\n")
    for line in _jet_lines(check.matching):
        sys.stderr.write(line + "\n")
    _write_output(serialize_mask_document(doc), args.output)
    return EXIT_OK


def cmd_subdivide(args) -> int:
    doc = load_mask_argument(args.mask)
    if args.input != "delta":
        raise MaskFormatError("only the delta initial data is supported")
    samples = basis_samples(doc.mask, args.levels, window=args.window)
    _write_output(samples_to_csv(samples, as_float=args.as_float), args.output)
    return EXIT_OK


def cmd_cascade(args) -> int:
    doc = load_mask_argument(args.mask)
    a = doc.mask
    r = a.rows
    report = sum_rules_order(a)
    if report.order < r:
        raise InsufficientSumRules(
            f"cascade initial data needs accuracy >= r={r}; mask has order {report.order}"
        )
    m = report.order - 1
    matching = None
    if args.filter_correction:
        check = is_hermite_mask(a, report.order)
        if not check.ok:
            raise InsufficientSumRules(
                "the filter correction needs a Hermite mask at the maximal order"
            )
        matching = check.matching
    initial = build_initial(r, m, matching=matching)
    samples = cascade_run(a, initial, args.levels, window=args.window)
    _write_output(samples_to_csv(samples, as_float=args.as_float), args.output)
    return EXIT_OK


def cmd_factor(args) -> int:
    doc = load_mask_argument(args.mask)
    a = doc.mask
    order = args.order
    if order is None:
        order = sum_rules_order(a).order
    nf = factorize(a, order)
    base = doc.name or os.path.splitext(os.path.basename(args.mask))[0]
    outputs = {
        "U": nf.U,
        "V": nf.V,
        "b": nf.b,
    }
    os.makedirs(args.out_dir, exist_ok=True)
    for label, mask in outputs.items():
        path = os.path.join(args.out_dir, f"{base}.{label}.json")
        text = serialize_mask_document(
            MaskDocument(
                mask=mask,
                name=f"{base}.{label}",
                metadata={"factor_of": base, "order": str(order)},
            )
        )
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    ring_ok = normal_form_jets_ok(nf.a_ring, nf.m)
    lines = [
        f"factorized {base} at sum-rule order {order}",
        f"wrote {args.out_dir}/{base}.U.json, .V.json, .b.json",
        f"normal-form jet checks on the ring mask: {'pass' if ring_ok else 'FAIL'}",
        "conjugation identities U^(2.)ring = a U and V^(2.)b = a V: verified exactly",
        f"b support: {nf.b.support()}",
    ]
    _write_output("\n".join(lines) + "\n", args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="hermsub",
        description="Vector/Hermite subdivision masks: analysis, construction, "
        "subdivision and cascade sampling, factorization.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="sum rules, Hermite verdict, smoothness, decision")
    p.add_argument("mask", help="mask file or builtin name")
    p.add_argument("--max-order", type=int, default=None)
    p.add_argument("--levels", type=int, default=10, help="rho levels N")
    p.add_argument("--p", type=float, default=math.inf)
    p.add_argument("--target", type=int, default=None, help="smoothness target m (default r-1)")
    p.add_argument("--margin", type=float, default=0.05)
    p.add_argument("--json", action="store_true")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("construct", help="solve for a Hermite mask")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--support", type=_parse_interval, required=True, metavar="LO:HI")
    p.add_argument("--interpolatory", action="store_true")
    p.add_argument("--name", default=None)
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("subdivide", help="basis samples 2^n a_n D^-n as CSV")
    p.add_argument("mask")
    p.add_argument("--levels", type=int, required=True)
    p.add_argument("--input", default="delta")
    p.add_argument("--window", type=_parse_interval, default=None, metavar="LO:HI")
    p.add_argument("--float", dest="as_float", action="store_true")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_subdivide)

    p = sub.add_parser("cascade", help="cascade samples F_n as CSV")
    p.add_argument("mask")
    p.add_argument("--levels", type=int, required=True)
    p.add_argument("--window", type=_parse_interval, default=None, metavar="LO:HI")
    p.add_argument("--filter-correction", action="store_true",
                   help="convolve the initial data with the 1/c_l corrector jets")
    p.add_argument("--float", dest="as_float", action="store_true")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_cascade)

    p = sub.add_parser("factor", help="emit U, V, b mask files and a report")
    p.add_argument("mask")
    p.add_argument("--order", type=int, default=None, help="sum-rule order (default: maximal)")
    p.add_argument("--out-dir", default=".")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_factor)
    return ap


_INTERVAL_FLAGS = ("--support", "--window")


def _join_interval_flags(argv):
    """Allow `--support -1:1`: argparse would read the value as a flag."""
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in _INTERVAL_FLAGS and i + 1 < len(argv):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def main(argv=None) -> int:
    ap = build_parser()
    if argv is None:
        argv = sys.argv[1:]
    args = ap.parse_args(_join_interval_flags(list(argv)))
    try:
        return args.func(args)
    except (MaskFormatError, Infeasible, FileNotFoundError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_PARSE
    except (
        NoSimpleEigenvalueOne,
        SingularResonance,
        InsufficientSumRules,
        DivisionNotExact,
    ) as exc:
        sys.stderr.write(f"arithmetic precondition failed: {exc}\n")
        return EXIT_ARITH
    except HermsubError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_ARITH


if __name__ == "__main__":
    sys.exit(main())
