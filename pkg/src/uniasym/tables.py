"""Recompute the four published tables for eps = 2, a = 1/2, c = 2.

Each ``tableN`` function returns a :class:`Table` (header plus rows of raw
numbers); :func:`render_csv` formats it.  Cells that need extended precision
(relative errors down to 1e-24) are computed in ``extended(digits)`` and the
oracle runs at the same number of digits.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction

from .coeff import coalescence_D, d_coeff
from .expansion import eval_theorem1, eval_theorem2
from .oracle import PrecisionConfig, reference_value
from .phase import Params
from .scalar import LogScaled, default_digits, extended

EPS = Fraction(2)
A = Fraction(1, 2)
C = Fraction(2)
X_VALUES = ("0.30", "0.45", "0.55", "0.70")
TABLE2_LAMBDAS = (50, 100)
TABLE4_LAMBDAS = (50, 100, 150)
COALESCENT_X = "0.50"


def paper_params(x, lam=100, m=1) -> Params:
    return Params(a=A, c=C, eps=EPS, lam=lam, x=x, m=m)


@dataclass
class Table:
    number: int
    header: list
    rows: list  # each row: list of labels followed by numeric cells
    kind: str   # "coefficient" or "error"
    n_labels: int = 1


def table1(K: int = 5, digits: int | None = None) -> Table:
    ctx = extended(digits)
    cols = [d_coeff(paper_params(x), K, ctx).d for x in X_VALUES]
    rows = [[k] + [col[k] for col in cols] for k in range(K + 1)]
    return Table(1, ["k"] + [f"x={x}" for x in X_VALUES], rows, "coefficient")


def _oracle(params: Params, digits: int) -> LogScaled:
    return LogScaled.from_real(reference_value(params, PrecisionConfig(digits=digits)).value)


def table2(M_max: int = 5, digits: int | None = None) -> Table:
    digits = digits or default_digits()
    ctx = extended(digits)
    rows = []
    for lam in TABLE2_LAMBDAS:
        errs = {}
        for x in X_VALUES:
            params = paper_params(x, lam)
            ref = _oracle(params, digits)
            errs[x] = [eval_theorem1(params, M, ctx).value.relative_difference(ref) for M in range(M_max + 1)]
        for M in range(M_max + 1):
            rows.append([lam, M] + [errs[x][M] for x in X_VALUES])
    return Table(2, ["lambda", "M"] + [f"x={x}" for x in X_VALUES], rows, "error", n_labels=2)


def table3(K: int = 2, digits: int | None = None) -> Table:
    coal = coalescence_D(paper_params(COALESCENT_X), K, extended(digits))
    rows = [[k, coal.D[k], coal.d_at_coalescence[k]] for k in range(K + 1)]
    return Table(3, ["k", "D_2k", "d_2k"], rows, "coefficient")


def table4(M_max: int = 2, digits: int | None = None) -> Table:
    digits = digits or default_digits()
    ctx = extended(digits)
    errs = {}
    for lam in TABLE4_LAMBDAS:
        params = paper_params(COALESCENT_X, lam)
        ref = _oracle(params, digits)
        errs[lam] = [eval_theorem2(params, M, ctx).value.relative_difference(ref) for M in range(M_max + 1)]
    rows = [[M] + [errs[lam][M] for lam in TABLE4_LAMBDAS] for M in range(M_max + 1)]
    return Table(4, ["M"] + [f"lambda={lam}" for lam in TABLE4_LAMBDAS], rows, "error")


TABLES = {1: table1, 2: table2, 3: table3, 4: table4}


def _split(value, sig: int) -> tuple[str, int]:
    """Mantissa string with ``sig`` significant digits and its decimal exponent."""
    text = f"{float(value):.{sig - 1}e}"
    mant, exp = text.split("e")
    return mant, int(exp)


def format_coefficient(value, paper_style: bool = False) -> str:
    v = float(value)
    if 0.1 <= abs(v) < 10:
        return f"{v:+.8f}" if paper_style else f"{v:.8f}"
    if paper_style:
        mant, exp = _split(v, 9)
        sign = "" if mant.startswith("-") else "+"
        return f"{sign}{mant}({exp})"
    return f"{v:.8e}"


def format_error(value, paper_style: bool = False) -> str:
    v = float(value)
    if paper_style:
        mant, exp = _split(v, 4)
        return f"{mant}({exp:+03d})".replace("(+", "(")
    return f"{v:.3e}"


def render_csv(table: Table, paper_style: bool = False) -> str:
    fmt = format_coefficient if table.kind == "coefficient" else format_error
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(table.header)
    for row in table.rows:
        labels = [str(v) for v in row[: table.n_labels]]
        writer.writerow(labels + [fmt(v, paper_style) for v in row[table.n_labels :]])
    return buf.getvalue()
