"""Command-line front end.

Exit codes: 0 success / all checks pass, 1 a check failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Sequence

from . import formulas, oracle, qseries, verify
from .errors import BudgetExceeded, DomainError, UnsupportedForm
from .oracle import Form

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _nonneg(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {v}")
    return v


def _positive(text: str) -> int:
    v = _nonneg(text)
    if v < 1:
        raise argparse.ArgumentTypeError("expected a positive integer")
    return v


def _form(text: str) -> tuple[Form, str]:
    try:
        return Form.of(text), text
    except DomainError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="trirep", description="Representation counts by four weighted triangular numbers.")
    p.add_argument("--budget", type=_positive, default=None,
                   help="brute-force work budget (default: $TRIREP_BUDGET or 1e9)")
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("eval", help="evaluate t(a,b,c,d;n)")
    e.add_argument("--form", type=_form, required=True)
    e.add_argument("--n", type=_nonneg, required=True)
    e.add_argument("--method", choices=["formula", "oracle", "both"], default="formula")
    e.add_argument("--format", choices=["text", "json"], default="text")

    o = sub.add_parser("oracle", help="brute-force count")
    o.add_argument("--form", type=_form, required=True)
    o.add_argument("--n", type=_nonneg, required=True)
    o.add_argument("--quantity", choices=["t", "tprime", "N", "N0"], default="t")

    s = sub.add_parser("series", help="print a truncated q-series")
    s.add_argument("kind", choices=["phi", "psi", "eta", "gen-n", "gen-tprime", "c"])
    s.add_argument("--k", type=_positive, default=1, help="q-power for phi/psi/eta")
    s.add_argument("--e", type=_positive, default=1, help="exponent for eta")
    s.add_argument("--form", type=_form, default=None)
    s.add_argument("--order", type=_nonneg, required=True)
    s.add_argument("--format", choices=["json", "csv"], default="json")

    v = sub.add_parser("verify", help="run verification suites")
    v.add_argument("--suite", choices=list(verify.SUITES) + ["all"], default="all")
    v.add_argument("--max", type=_nonneg, default=None, help="range bound (n, m or truncation order)")
    v.add_argument("--format", choices=["json", "csv"], default="json")
    v.add_argument("--jobs", type=_positive, default=1)
    v.add_argument("--dump", default=None, help="write every compared value to this CSV file")

    c = sub.add_parser("conjecture", help="check the conjectured t(1,1,3,4;n) formula")
    c.add_argument("--max-n", type=_nonneg, default=verify.DEFAULT_CONJECTURE_MAX)
    c.add_argument("--format", choices=["json", "csv"], default="json")
    c.add_argument("--jobs", type=_positive, default=1)

    t = sub.add_parser("table", help="formula and oracle values side by side")
    t.add_argument("--form", type=_form, required=True)
    t.add_argument("--max", type=_nonneg, required=True)
    t.add_argument("--format", choices=["csv", "json"], default="csv")
    t.add_argument("--dump", default=None, help="also write the CSV table to this file")
    return p


def _cmd_eval(args, out) -> int:
    form, raw = args.form
    formula_value = oracle_value = None
    if args.method in ("formula", "both"):
        try:
            formula_value = formulas.t_formula(form, args.n, include_conjectures=True)
        except UnsupportedForm:
            raise UsageError(f"unsupported form {raw}")
    if args.method in ("oracle", "both"):
        oracle_value = oracle.count_t(form, args.n, args.budget)
    result = {"form": raw, "n": args.n}
    if formula_value is not None:
        result["formula"] = formula_value
    if oracle_value is not None:
        result["oracle"] = oracle_value
    match = None
    if args.method == "both":
        match = formula_value == oracle_value
        result["match"] = match
    if args.format == "json":
        print(json.dumps(result), file=out)
    else:
        parts = [f"{k}={str(v).lower() if isinstance(v, bool) else v}"
                 for k, v in result.items() if k in ("formula", "oracle", "match")]
        print(" ".join(parts), file=out)
    return EXIT_FAIL if match is False else EXIT_OK


def _cmd_oracle(args, out) -> int:
    form, _ = args.form
    fn = {
        "t": oracle.count_t,
        "tprime": oracle.count_t_prime,
        "N": oracle.count_n,
        "N0": oracle.count_n0,
    }[args.quantity]
    print(fn(form, args.n, args.budget), file=out)
    return EXIT_OK


def _cmd_series(args, out) -> int:
    T = args.order
    if args.kind in ("gen-n", "gen-tprime") and args.form is None:
        raise UsageError(f"{args.kind} needs --form")
    if args.kind == "phi":
        s = qseries.phi(args.k, T)
    elif args.kind == "psi":
        s = qseries.psi(args.k, T)
    elif args.kind == "eta":
        s = qseries.eta_pow(args.k, args.e, T)
    elif args.kind == "gen-n":
        s = qseries.gen_n(args.form[0], T)
    elif args.kind == "gen-tprime":
        s = qseries.gen_t_prime(args.form[0], T)
    else:
        s = qseries.shift(qseries.eta_pow(6, 4, T), 1)
    if args.format == "json":
        print(json.dumps(s.to_list()), file=out)
    else:
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["index", "coefficient"])
        w.writerows(enumerate(s.coeffs))
    return EXIT_OK


def _emit_reports(reports: list[verify.Report], fmt: str, out) -> None:
    if fmt == "json":
        payload = reports[0].to_dict() if len(reports) == 1 else [r.to_dict() for r in reports]
        print(json.dumps(payload, indent=2), file=out)
    else:
        out.write(verify.reports_to_csv(reports))


def _cmd_verify(args, out) -> int:
    suites = verify.SUITES if args.suite == "all" else (args.suite,)
    if args.suite == "series" and args.max is not None and args.max < 8:
        raise UsageError("series suite needs --max >= 8")
    record = args.dump is not None
    reports = [verify.run_suite(s, args.max, args.jobs, args.budget, record) for s in suites]
    _emit_reports(reports, args.format, out)
    if record:
        verify.dump_values_csv(reports, args.dump)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


def _cmd_conjecture(args, out) -> int:
    report = verify.check_conjecture(args.max_n, args.jobs, args.budget)
    _emit_reports([report], args.format, out)
    return EXIT_OK if report.passed else EXIT_FAIL


def table_rows(form: Form, n_max: int, budget: int | None = None) -> tuple[list[dict], str | None]:
    """Rows (n, t_formula, t_oracle, match); a budget stop truncates the table and returns a warning."""
    entry = formulas.lookup_t(form, include_conjectures=True)
    rows = []
    for n in range(n_max + 1):
        try:
            o = oracle.count_t(form, n, budget)
        except BudgetExceeded as exc:
            return rows, f"budget exceeded at n={n}: {exc}"
        f = entry(n)
        rows.append({"n": n, "t_formula": f, "t_oracle": o, "match": f == o})
    return rows, None


def render_table(rows: list[dict], warning: str | None, fmt: str) -> str:
    if fmt == "json":
        payload: dict = {"rows": rows}
        if warning:
            payload["warning"] = warning
        return json.dumps(payload) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "t_formula", "t_oracle", "match"])
    for r in rows:
        w.writerow([r["n"], r["t_formula"], r["t_oracle"], str(r["match"]).lower()])
    if warning:
        w.writerow(["# warning", warning, "", ""])
    return buf.getvalue()


def _cmd_table(args, out) -> int:
    form, raw = args.form
    try:
        rows, warning = table_rows(form, args.max, args.budget)
    except UnsupportedForm:
        raise UsageError(f"unsupported form {raw}")
    out.write(render_table(rows, warning, args.format))
    if args.dump:
        with open(args.dump, "w", newline="") as fh:
            fh.write(render_table(rows, warning, "csv"))
    return EXIT_OK if all(r["match"] for r in rows) else EXIT_FAIL


COMMANDS = {
    "eval": _cmd_eval,
    "oracle": _cmd_oracle,
    "series": _cmd_series,
    "verify": _cmd_verify,
    "conjecture": _cmd_conjecture,
    "table": _cmd_table,
}


def run(argv: Sequence[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return COMMANDS[args.command](args, out)
    except (UsageError, DomainError) as exc:
        print(f"trirep: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"trirep: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_FAIL


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
