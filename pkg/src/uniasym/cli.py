"""Command-line front end.

    uniasym eval      --a 0.5 --c 2 --eps 2 --lambda 50 --x 0.3 [--m 1] [--terms 6]
    uniasym coeffs    --a 0.5 --c 2 --eps 2 --x 0.3 [--terms 6]
    uniasym reproduce --table {1,2,3,4} [--paper-style]
    uniasym sweep     --x-from 0.4 --x-to 0.6 --steps 21 --lambda 100 [--terms 3]
    uniasym compare   --a 0.5 --c 2 --eps 2 --lambda 100 --x 0.3

All evaluation runs in extended precision (``--digits`` or $UNIASYM_PRECISION,
default 60).  Exit status: 0 on success, 2 for usage errors, 3 when the
parameters violate a precondition, 4 when the reference series cannot be
certified.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from .coeff import K_MAX, coalescence_D, d_coeff
from .errors import DomainError, NonConvergenceError, RegimeError, UniasymError
from .expansion import ExpansionResult, eval_F1, eval_oracle
from .higher_m import eval_F2_ibp, eval_Fm
from .oracle import PrecisionConfig, reference_value
from .phase import Params, Regime, _fmt, classify
from .scalar import LogScaled, default_digits, extended
from .tables import TABLES, render_csv

EXIT_USAGE = 2
EXIT_DOMAIN = 3
EXIT_NONCONVERGENCE = 4

METHODS = ("auto", "theorem1", "theorem2", "appendix", "oracle", "ibp")
VALUE_DIGITS = 25


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a decimal or rational number: {text!r}") from None


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value <= 0:
        raise argparse.ArgumentTypeError(f"must be positive, got {value}")
    return value


def _add_params(p: argparse.ArgumentParser, need_x: bool = True, need_lambda: bool = True) -> None:
    p.add_argument("--a", type=_rational, required=True)
    p.add_argument("--c", type=_rational, required=True)
    p.add_argument("--eps", type=_rational, required=True)
    p.add_argument("--lambda", dest="lam", type=_rational, required=need_lambda,
                   default=None if need_lambda else Fraction(100))
    if need_x:
        p.add_argument("--x", type=_rational, required=True)
    p.add_argument("--m", type=_positive_int, default=1)


def _add_common(p: argparse.ArgumentParser, outputs=("human", "json")) -> None:
    p.add_argument("--terms", type=_positive_int, default=6,
                   help=f"number of series terms kept, K+1 (1..{K_MAX + 1})")
    p.add_argument("--output", choices=outputs, default=outputs[0])
    p.add_argument("--digits", type=_positive_int, default=None,
                   help="working decimal digits (default $UNIASYM_PRECISION or 60)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="uniasym",
        description="Uniform asymptotics of F(a + eps*lam, m; c + lam; x) for large lam.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate at one point")
    _add_params(p)
    _add_common(p)
    p.add_argument("--method", choices=METHODS, default="auto")

    p = sub.add_parser("coeffs", help="dump the expansion coefficients")
    _add_params(p, need_lambda=False)
    _add_common(p, outputs=("human", "json", "csv"))

    p = sub.add_parser("reproduce", help="recompute a published table as CSV")
    p.add_argument("--table", type=int, choices=sorted(TABLES), required=True)
    p.add_argument("--paper-style", action="store_true", help="print x(y) for x*10^y")
    p.add_argument("--digits", type=_positive_int, default=None)

    p = sub.add_parser("sweep", help="asymptotic vs reference over an x grid")
    _add_params(p, need_x=False)
    _add_common(p, outputs=("csv", "json"))
    p.add_argument("--x-from", type=_rational, required=True)
    p.add_argument("--x-to", type=_rational, required=True)
    p.add_argument("--steps", type=_positive_int, required=True)
    p.add_argument("--method", choices=METHODS, default="auto")

    p = sub.add_parser("compare", help="asymptotic value next to the reference value")
    _add_params(p)
    _add_common(p)
    p.add_argument("--method", choices=METHODS, default="auto")
    return parser


def _params(args, x=None) -> Params:
    return Params(a=args.a, c=args.c, eps=args.eps, lam=args.lam,
                  x=args.x if x is None else x, m=args.m)


def _K(args) -> int:
    K = args.terms - 1
    if K > K_MAX:
        raise DomainError(f"--terms must be at most {K_MAX + 1}, got {args.terms}")
    return K


def evaluate(params: Params, K: int, method: str, digits: int) -> ExpansionResult:
    ctx = extended(digits)
    if method == "oracle":
        return eval_oracle(params, ctx, cfg=PrecisionConfig(digits=digits))
    if method == "ibp":
        if params.m != 2:
            raise DomainError(f"method 'ibp' needs m = 2, got m = {params.m}")
        return eval_F2_ibp(params, K, ctx)
    if params.m == 1:
        return eval_F1(params, K, method, ctx)
    return eval_Fm(params, K, ctx, method)


def value_fields(value: LogScaled) -> dict:
    if value.sign == 0:
        return {"sign": 0, "mantissa": "0", "exponent": 0, "decimal": "0"}
    decimal = value.to_decimal_string(VALUE_DIGITS)
    mantissa, exponent = decimal.split("e")
    return {
        "sign": value.sign,
        "mantissa": mantissa.lstrip("-"),
        "exponent": int(exponent),
        "decimal": decimal,
    }


def _sci(v, digits: int = 6) -> str:
    return f"{float(v):.{digits - 1}e}"


def result_record(result: ExpansionResult, params: Params) -> dict:
    record = {
        "value": value_fields(result.value),
        "regime": result.regime.value,
        "method": result.method.value,
        "terms_used": result.terms_used,
        "last_term_magnitude": _sci(result.last_term_magnitude),
        "inputs": params.as_dict(),
    }
    if "tail_bound" in result.extras:
        record["tail_bound"] = _sci(result.extras["tail_bound"])
    return record


def _print_human(record: dict, out) -> None:
    value = record["value"]
    print(f"value               {value['decimal']}", file=out)
    for key in ("regime", "method", "terms_used", "last_term_magnitude", "tail_bound"):
        if key in record:
            print(f"{key:<20}{record[key]}", file=out)
    inputs = ", ".join(f"{k}={v}" for k, v in record["inputs"].items())
    print(f"inputs              {inputs}", file=out)


def run_eval(args, out) -> None:
    params = _params(args)
    digits = args.digits or default_digits()
    record = result_record(evaluate(params, _K(args), args.method, digits), params)
    if args.output == "json":
        print(json.dumps(record), file=out)
    else:
        _print_human(record, out)


def coefficient_rows(params: Params, K: int, digits: int) -> tuple[list, list]:
    ctx = extended(digits)
    if classify(params) is Regime.COALESCENT:
        coal = coalescence_D(params, K, ctx)
        return ["k", "D_2k", "d_2k"], [[k, coal.D[k], coal.d_at_coalescence[k]] for k in range(K + 1)]
    cs = d_coeff(params, K, ctx)
    rows = [[k, cs.C[k], cs.b[k], cs.d[k]] for k in range(K + 1)]
    return ["k", "C_2k", "b_2k", "d_2k"], rows


def run_coeffs(args, out) -> None:
    params = _params(args)
    header, rows = coefficient_rows(params, _K(args), args.digits or default_digits())
    cells = [[str(r[0])] + [_sci(v, 12) for v in r[1:]] for r in rows]
    if args.output == "json":
        data = {"regime": classify(params).value, "inputs": params.as_dict(),
                "coefficients": [dict(zip(header, c)) for c in cells]}
        print(json.dumps(data), file=out)
    elif args.output == "csv":
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(cells)
    else:
        print(f"regime: {classify(params).value}", file=out)
        print("".join(h.rjust(22) if i else h.rjust(3) for i, h in enumerate(header)), file=out)
        for c in cells:
            print("".join(v.rjust(22) if i else v.rjust(3) for i, v in enumerate(c)), file=out)


def run_reproduce(args, out) -> None:
    table = TABLES[args.table](digits=args.digits or default_digits())
    out.write(render_csv(table, paper_style=args.paper_style))


def sweep_grid(x_from: Fraction, x_to: Fraction, steps: int) -> list[Fraction]:
    """Evenly spaced exact rationals, so a grid through 1/2 hits it exactly."""
    if not 0 < x_from < x_to < 1:
        raise DomainError(f"sweep needs 0 < x-from < x-to < 1, got {float(x_from)}, {float(x_to)}")
    if steps == 1:
        return [x_from]
    return [x_from + (x_to - x_from) * Fraction(i, steps - 1) for i in range(steps)]


def sweep_rows(base: Params, xs, K: int, method: str, digits: int) -> list[dict]:
    # Each row is independent; they are computed in order so output is stable.
    rows = []
    cfg = PrecisionConfig(digits=digits)
    for x in xs:
        params = base.with_(x=x)
        result = evaluate(params, K, method, digits)
        row = {"x": _fmt(x), "regime": result.regime.value, "method": result.method.value,
               "asymptotic": result.value.to_decimal_string(VALUE_DIGITS)}
        try:
            ref = LogScaled.from_real(reference_value(params, cfg).value)
        except NonConvergenceError:
            row.update(oracle="nonconvergent", rel_error="")
        else:
            row.update(oracle=ref.to_decimal_string(VALUE_DIGITS),
                       rel_error=_sci(result.value.relative_difference(ref), 4))
        rows.append(row)
    return rows


SWEEP_COLUMNS = ["x", "regime", "method", "asymptotic", "oracle", "rel_error"]


def run_sweep(args, out) -> None:
    xs = sweep_grid(args.x_from, args.x_to, args.steps)
    base = _params(args, x=xs[0])
    rows = sweep_rows(base, xs, _K(args), args.method, args.digits or default_digits())
    if args.output == "json":
        print(json.dumps({"inputs": base.as_dict(), "rows": rows}), file=out)
        return
    writer = csv.DictWriter(out, fieldnames=SWEEP_COLUMNS, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)


def run_compare(args, out) -> None:
    params = _params(args)
    digits = args.digits or default_digits()
    result = evaluate(params, _K(args), args.method, digits)
    ref = reference_value(params, PrecisionConfig(digits=digits))
    ref_value = LogScaled.from_real(ref.value)
    record = {
        "asymptotic": result.value.to_decimal_string(VALUE_DIGITS),
        "oracle": ref_value.to_decimal_string(VALUE_DIGITS),
        "rel_error": _sci(result.value.relative_difference(ref_value), 4),
        "last_term_magnitude": _sci(result.last_term_magnitude, 4),
        "oracle_tail_bound": _sci(ref.relative_bound, 4),
        "oracle_terms": ref.terms,
        "regime": result.regime.value,
        "method": result.method.value,
        "inputs": params.as_dict(),
    }
    if args.output == "json":
        print(json.dumps(record), file=out)
        return
    for key, value in record.items():
        if key == "inputs":
            value = ", ".join(f"{k}={v}" for k, v in value.items())
        print(f"{key:<20}{value}", file=out)


COMMANDS = {
    "eval": run_eval,
    "coeffs": run_coeffs,
    "reproduce": run_reproduce,
    "sweep": run_sweep,
    "compare": run_compare,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)  # exits with status 2 on usage errors
    out = io.StringIO()
    try:
        COMMANDS[args.command](args, out)
    except NonConvergenceError as exc:
        print(f"uniasym: reference series did not converge: {exc}", file=sys.stderr)
        return EXIT_NONCONVERGENCE
    except (DomainError, RegimeError) as exc:
        print(f"uniasym: precondition violated: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except UniasymError as exc:
        print(f"uniasym: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    sys.stdout.write(out.getvalue())
    return 0


if __name__ == "__main__":
    sys.exit(main())
