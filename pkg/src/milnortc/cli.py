"""Command-line surface: bound reports, the exact oracle, certificate
files, table emission, and binomial parity.

Exit codes: 0 success, 1 verification failure, 2 invalid input,
3 resource limit.  All outputs are deterministic: identical invocations
produce byte-identical text.
"""

from __future__ import annotations

import argparse
import json
import sys

from .bounds import BoundReport, cat_bounds, eqtc_bounds, tc_bounds
from .certgen import cert_case1, cert_case2, cert_cat_topclass, cert_proj, cert_r2t
from .cuplength import Certificate, SearchFailure, cup_exact, verify_certificate
from .errors import ExprSyntaxError, NoFreeActionError, ResourceLimitError
from .f2algebra import binom_mod2
from .spaces import cohomology_of, parse_space
from .tensorpower import DEFAULT_MAX_SLICE

SCHEMA_VERSION = 1

_QUANTITY_LABEL = {"cat": "cat", "tc": "TC", "eqtc": "TC_G"}


# --- certificate files -------------------------------------------------------


def certificate_to_json(cert: Certificate) -> str:
    """Canonical serialization: fixed key order, two-space indent, one
    trailing newline.  parse -> print round-trips byte-identically."""
    doc = {
        "schemaVersion": SCHEMA_VERSION,
        "space": cert.space,
        "n": cert.n,
        "factors": [
            {"expr": expr, "multiplicity": mult} for expr, mult in cert.factors
        ],
        "claimedCup": cert.claimed_cup,
        "claimedTcLower": cert.claimed_tc_lower,
    }
    if cert.note is not None:
        doc["note"] = cert.note
    if cert.cat_witness:
        doc["catWitness"] = True
    return json.dumps(doc, indent=2) + "\n"


def certificate_from_json(text: str) -> Certificate:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"malformed certificate file: {exc}") from None
    if not isinstance(doc, dict):
        raise ValueError("certificate file must hold a JSON object")
    if doc.get("schemaVersion") != SCHEMA_VERSION:
        raise ValueError(f"unsupported schema version {doc.get('schemaVersion')!r}")
    try:
        factors = tuple(
            (f["expr"], int(f["multiplicity"])) for f in doc["factors"]
        )
        return Certificate(
            space=doc["space"],
            n=int(doc["n"]),
            factors=factors,
            claimed_cup=int(doc["claimedCup"]),
            claimed_tc_lower=int(doc["claimedTcLower"]),
            note=doc.get("note"),
            cat_witness=bool(doc.get("catWitness", False)),
        )
    except (KeyError, TypeError) as exc:
        raise ValueError(f"certificate file missing or bad field: {exc}") from None


# --- report emission ---------------------------------------------------------


def _report_dict(report: BoundReport) -> dict:
    return {
        "space": report.space,
        "quantity": report.quantity,
        "n": report.n,
        "group": report.group,
        "lower": report.lower,
        "upper": report.upper,
        "verifiedLower": report.verified_lower,
        "inconsistent": report.inconsistent,
        "trace": [
            {
                "rule": t.rule,
                "source": t.source,
                "bound": t.bound,
                "value": t.value,
                "status": t.status,
            }
            for t in report.trace
        ],
    }


_MAIN_HEADER = "| space | n | quantity | lower | upper |\n|---|---|---|---|---|"
_TRACE_HEADER = "| rule | bound | value | status |\n|---|---|---|---|"
_CSV_HEADER = "space,n,quantity,group,lower,upper,rule,bound,value,status"


def _main_row(report: BoundReport) -> str:
    label = _QUANTITY_LABEL[report.quantity]
    return f"| {report.space} | {report.n} | {label} | {report.lower} | {report.upper} |"


def _csv_rows(report: BoundReport):
    base = [
        report.space,
        str(report.n),
        _QUANTITY_LABEL[report.quantity],
        report.group or "",
        str(report.lower),
        str(report.upper),
    ]
    for t in report.trace:
        yield ",".join(base + [t.rule, t.bound, str(t.value), t.status])


def emit_report(report: BoundReport, fmt: str = "md") -> str:
    if fmt == "md":
        lines = [_MAIN_HEADER, _main_row(report), "", _TRACE_HEADER]
        for t in report.trace:
            lines.append(f"| {t.rule} | {t.bound} | {t.value} | {t.status} |")
        if report.inconsistent:
            lines.append("")
            lines.append("**inconsistent: lower exceeds upper**")
        return "\n".join(lines) + "\n"
    if fmt == "csv":
        return "\n".join([_CSV_HEADER, *_csv_rows(report)]) + "\n"
    if fmt == "json":
        return json.dumps(_report_dict(report), indent=2) + "\n"
    raise ValueError(f"unknown format {fmt!r}")


def emit_table(reports, fmt: str = "md") -> str:
    reports = sorted(reports, key=lambda r: (r.space, r.n, r.quantity))
    if fmt == "md":
        lines = [_MAIN_HEADER] + [_main_row(r) for r in reports]
        return "\n".join(lines) + "\n"
    if fmt == "csv":
        lines = [_CSV_HEADER]
        for r in reports:
            lines.extend(_csv_rows(r))
        return "\n".join(lines) + "\n"
    if fmt == "json":
        return json.dumps([_report_dict(r) for r in reports], indent=2) + "\n"
    raise ValueError(f"unknown format {fmt!r}")


# --- argument plumbing -------------------------------------------------------


def _parse_params(items) -> dict:
    params = {}
    last = None
    for item in items or ():
        for piece in item.split(","):
            if not piece:
                continue
            key, sep, value = piece.partition("=")
            if sep:
                last = key.strip()
                params[last] = value.strip()
            elif last is not None:
                # commas inside a value (e.g. space=rh:2,1) reattach here
                params[last] += "," + piece.strip()
            else:
                raise ValueError(f"bad parameter {piece!r}; expected key=value")
    return params


def _parse_range(text: str):
    """'A..B' inclusive, or a single integer."""
    if ".." in text:
        lo, _, hi = text.partition("..")
        return range(int(lo), int(hi) + 1)
    v = int(text)
    return range(v, v + 1)


def _write_out(text: str, out: str | None):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="milnortc",
        description="Exact mod-2 bounds on category and higher topological "
        "complexity of Milnor manifolds and projective spaces.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bounds", help="emit a bound report for one space")
    p.add_argument("--space", required=True)
    p.add_argument("--quantity", choices=("cat", "tc", "eqtc"), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--group", choices=("z2", "s1"))
    p.add_argument("--use-oracle", action="store_true")
    p.add_argument("--no-certs", action="store_true")
    p.add_argument("--no-monotonicity", action="store_true")
    p.add_argument("--max-slice", type=int, default=DEFAULT_MAX_SLICE)
    p.add_argument("--format", choices=("md", "csv", "json"), default="md")
    p.add_argument("--out")

    p = sub.add_parser("cup", help="exact zero-divisor cup-length oracle")
    p.add_argument("--space", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--max-slice", type=int, default=DEFAULT_MAX_SLICE)
    p.add_argument("--out")

    p = sub.add_parser("verify", help="verify a certificate file")
    p.add_argument("--cert", required=True)
    p.add_argument("--format", choices=("md", "json"), default="md")
    p.add_argument("--out")

    p = sub.add_parser("gen-cert", help="generate a certificate file")
    p.add_argument(
        "--method", choices=("case1", "case2", "r2t", "proj", "cat"), required=True
    )
    p.add_argument("--params", action="append", default=[])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out", required=True)

    p = sub.add_parser("table", help="batch bound reports over a family")
    p.add_argument("--family", choices=("rh", "ch", "rp"), required=True)
    p.add_argument("--r", help="range A..B (r for Milnor, m for rp)")
    p.add_argument("--s", help="range C..D")
    p.add_argument("--n", required=True, help="range E..F")
    p.add_argument("--use-oracle", action="store_true")
    p.add_argument("--max-slice", type=int, default=DEFAULT_MAX_SLICE)
    p.add_argument("--format", choices=("md", "csv", "json"), default="md")
    p.add_argument("--out")

    p = sub.add_parser("lucas", help="binomial coefficient parity")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)

    return parser


# --- subcommand bodies -------------------------------------------------------


def _cmd_bounds(args) -> int:
    options = dict(
        use_oracle=args.use_oracle,
        use_certs=not args.no_certs,
        use_monotonicity=not args.no_monotonicity,
        max_slice=args.max_slice,
    )
    if args.quantity == "cat":
        report = cat_bounds(args.space, args.n, max_slice=args.max_slice)
    elif args.quantity == "tc":
        report = tc_bounds(args.space, args.n, **options)
    else:
        if not args.group:
            raise ValueError("--group is required for eqtc")
        report = eqtc_bounds(args.space, args.group, args.n, **options)
    _write_out(emit_report(report, args.format), args.out)
    return 0


def _cmd_cup(args) -> int:
    P = cohomology_of(parse_space(args.space))
    value = cup_exact(P, args.n, max_slice=args.max_slice)
    _write_out(f"{value}\n", args.out)
    return 0


def _cmd_verify(args) -> int:
    with open(args.cert, encoding="utf-8") as fh:
        cert = certificate_from_json(fh.read())
    report = verify_certificate(cert)
    if args.format == "json":
        doc = {
            "space": cert.space,
            "n": cert.n,
            "verdict": report.verdict,
            "productNonzero": report.product_nonzero,
            "verifiedCup": report.verified_cup,
            "verifiedTcLower": report.verified_tc_lower,
            "perFactor": [
                {
                    "expr": c.expression,
                    "isZeroDivisor": c.is_zero_divisor,
                    "degree": c.degree,
                }
                for c in report.per_factor
            ],
        }
        text = json.dumps(doc, indent=2) + "\n"
    else:
        lines = [f"verdict: {report.verdict}"]
        if report.verified_cup is not None:
            lines.append(f"verifiedCup: {report.verified_cup}")
            lines.append(f"verifiedTcLower: {report.verified_tc_lower}")
        for c in report.per_factor:
            tag = "zero-divisor" if c.is_zero_divisor else "NOT a zero divisor"
            lines.append(f"factor {c.expression}: degree {c.degree}, {tag}")
        text = "\n".join(lines) + "\n"
    _write_out(text, args.out)
    return 0 if report.verdict == "Verified" else 1


def _require_params(params: dict, *names) -> list:
    missing = [k for k in names if k not in params]
    if missing:
        raise ValueError(f"missing --params keys: {', '.join(missing)}")
    return [params[k] for k in names]


def _cmd_gen_cert(args) -> int:
    params = _parse_params(args.params)
    n = args.n
    if args.method == "case1":
        t1, t2 = map(int, _require_params(params, "t1", "t2"))
        cert = cert_case1(t1, t2, n)
    elif args.method == "case2":
        p1, p2 = map(int, _require_params(params, "p1", "p2"))
        cert = cert_case2(p1, p2, n)
    elif args.method == "r2t":
        s, t = map(int, _require_params(params, "s", "t"))
        cert = cert_r2t(s, t, n)
    elif args.method == "proj":
        (t,) = map(int, _require_params(params, "t"))
        cert = cert_proj(t, n)
    else:
        (space,) = _require_params(params, "space")
        cert = cert_cat_topclass(space, n)
    if isinstance(cert, SearchFailure):
        sys.stderr.write(f"certificate search failed: {cert.reason}\n")
        return 1
    _write_out(certificate_to_json(cert), args.out)
    return 0


def _cmd_table(args) -> int:
    n_range = _parse_range(args.n)
    reports = []
    if args.family in ("rh", "ch"):
        if not args.r or not args.s:
            raise ValueError("--r and --s ranges are required for Milnor families")
        for r in _parse_range(args.r):
            for s in _parse_range(args.s):
                if not 0 <= s <= r:
                    continue
                space = f"{args.family}:{r},{s}"
                for n in n_range:
                    reports.append(
                        tc_bounds(
                            space,
                            n,
                            use_oracle=args.use_oracle,
                            max_slice=args.max_slice,
                        )
                    )
    else:
        if not args.r:
            raise ValueError("--r (dimension range) is required for rp")
        for m in _parse_range(args.r):
            for n in n_range:
                reports.append(
                    tc_bounds(
                        f"rp:{m}",
                        n,
                        use_oracle=args.use_oracle,
                        max_slice=args.max_slice,
                    )
                )
    _write_out(emit_table(reports, args.format), args.out)
    return 0


def _cmd_lucas(args) -> int:
    if args.n < 0 or args.k < 0:
        raise ValueError("n and k must be non-negative")
    sys.stdout.write(f"{binom_mod2(args.n, args.k)}\n")
    return 0


_DISPATCH = {
    "bounds": _cmd_bounds,
    "cup": _cmd_cup,
    "verify": _cmd_verify,
    "gen-cert": _cmd_gen_cert,
    "table": _cmd_table,
    "lucas": _cmd_lucas,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        return _DISPATCH[args.command](args)
    except ResourceLimitError as exc:
        sys.stderr.write(f"resource limit: {exc}\n")
        return 3
    except (ValueError, ExprSyntaxError, NoFreeActionError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
