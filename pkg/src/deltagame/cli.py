"""Command-line front end: ``deltagame {curves,feasible,lp,witness,verify}``.

Exit codes: 0 success (or feasible), 1 error or failed verification,
2 infeasible point.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from contextlib import ExitStack
from dataclasses import asdict, dataclass
from unittest import mock

import numpy as np

from . import calgebra, checks, game, lp, vect

log = logging.getLogger("deltagame")

CSV_HEADER = ["theta", "f_l", "f_qc_u", "f_vect_u", "beta0", "beta_min_vect"]


@dataclass(frozen=True)
class CurveRow:
    theta: float
    f_l: float
    f_qc_u: float
    f_vect_u: float
    beta0: float
    beta_min_vect: float


def curve_rows(grid_points: int = 101, tol: float = 1e-8):
    if grid_points < 2:
        raise ValueError("grid_points must be at least 2")
    rows = []
    for th in np.linspace(0.0, 1.0, grid_points):
        th = float(th)
        ft, fv = lp.f_t(th), vect.f_vect(th)
        rows.append(CurveRow(th, ft.lower, ft.upper, fv.upper, lp.beta0_closed(th),
                             vect.beta_min_numeric(th, tol)))
    return rows


def _fmt(x: float) -> str:
    return f"{x + 0.0:.12f}"  # + 0.0 folds -0.0 into 0.0


def rows_to_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in rows:
        w.writerow([_fmt(getattr(r, k)) for k in CSV_HEADER])
    return buf.getvalue()


PLOT_SCRIPT = '''\
"""Plot the curves written by `deltagame curves`."""
import sys

import matplotlib.pyplot as plt
import numpy as np

data = np.genfromtxt(sys.argv[1] if len(sys.argv) > 1 else {csv_path!r}, delimiter=",", names=True)
fig, ax = plt.subplots(figsize=(6, 6))
ax.plot(data["theta"], data["f_l"], color="black")
ax.plot(data["theta"], data["f_qc_u"], color="black", label="q, qa, qc")
ax.plot(data["theta"], data["f_vect_u"], color="blue", label="vect")
ax.set_xlim(0, 1.1)
ax.set_ylim(0.4, 1.0)
ax.set_xticks([0, 1 / 3, 1 / 2, 2 / 3, 1], ["0", "1/3", "1/2", "2/3", "1"])
ax.set_yticks([0.5, 0.7, 0.9])
ax.set_xlabel("theta")
ax.set_ylabel("game value at fixed theta")
ax.legend()
fig.savefig({png_path!r}, dpi=150)
'''


def _write(text: str, path: str | None):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def cmd_curves(args) -> int:
    rows = curve_rows(args.grid, args.tol)
    if args.format == "json":
        text = json.dumps([asdict(r) for r in rows], indent=1) + "\n"
    else:
        text = rows_to_csv(rows)
    _write(text, args.out)
    if args.plot_script:
        csv_path = args.out if args.out and args.out != "-" else "curves.csv"
        png = csv_path.rsplit(".", 1)[0] + ".png"
        _write(PLOT_SCRIPT.format(csv_path=csv_path, png_path=png), args.plot_script)
    return 0


def feasibility_report(theta: float, beta: float, model: str, tol: float = 1e-12) -> dict:
    if model == "vect":
        lo, hi = vect.beta_range_closed(theta)
        numeric = vect.is_feasible(theta, beta, tol)
    else:
        lo, hi = lp.beta0_closed(theta), theta
        numeric = calgebra.state_with_moments(theta, beta, tol=max(tol, 1e-12)) is not None
    closed = lo - tol <= beta <= hi + tol
    return {
        "model": model,
        "theta": theta,
        "beta": beta,
        "interval": [lo, hi],
        "closed_form_feasible": closed,
        "numeric_feasible": bool(numeric),
        "feasible": bool(closed and numeric),
    }


def cmd_feasible(args) -> int:
    if not 0.0 <= args.theta <= 1.0:
        print(f"error: theta={args.theta} outside [0, 1]", file=sys.stderr)
        return 1
    rep = feasibility_report(args.theta, args.beta, args.model, args.tol)
    if args.format == "json":
        print(json.dumps(rep))
    else:
        lo, hi = rep["interval"]
        verdict = "feasible" if rep["feasible"] else "infeasible"
        print(f"{verdict}: model={args.model} theta={args.theta:g} beta={args.beta:g}")
        print(f"  closed-form beta range [{lo:.12g}, {hi:.12g}]")
        print(f"  numeric check: {'pass' if rep['numeric_feasible'] else 'fail'}")
        if rep["closed_form_feasible"] != rep["numeric_feasible"]:
            print("  warning: closed form and numeric check disagree", file=sys.stderr)
    return 0 if rep["feasible"] else 2


def cmd_lp(args) -> int:
    if args.file:
        with open(args.file) as fh:
            prog = lp.LinearProgram.from_dict(json.load(fh))
        closed = None
    else:
        if not 0.0 <= args.theta <= 1.0:
            print(f"error: theta={args.theta} outside [0, 1]", file=sys.stderr)
            return 1
        prog = lp.beta0_program(args.theta)
        closed = lp.beta0_closed(args.theta)
    sol = lp.solve(prog)
    out = {
        "status": sol.status,
        "x": [float(v) for v in sol.x],
        "objective": sol.objective_value,
        "iterations": sol.iterations,
    }
    if closed is not None:
        out["theta"] = args.theta
        out["beta0_closed"] = closed
    if args.format == "json":
        print(json.dumps(out))
    else:
        for k, v in out.items():
            print(f"{k}: {v}")
    return 0 if sol.status == "optimal" else 2


def witness_document(theta: float, model: str) -> dict:
    g = game.delta_game()
    if model == "vect":
        beta = vect.beta_range_closed(theta)[0]
        w = vect.vect_witness(theta, beta)
        corr = w.correlation
        extra = {"vectors": {"h": w.h.tolist(), "x": w.x.tolist(), "y": w.y.tolist()}}
    else:
        st, beta = calgebra.optimal_state(theta)
        corr = calgebra.correlation_from_state(st)
        extra = {"state": {"t": st.t.tolist(), "s": st.s}}
    flags = game.validate_correlation(corr, n=3, m=2)
    if not (flags.valid and flags.synchronous):
        raise RuntimeError("constructed witness failed validation")
    return {
        "model": model,
        "theta": theta,
        "beta": beta,
        "value": game.value(g, corr),
        "correlation": corr.p.tolist(),
        "witness": extra,
    }


def cmd_witness(args) -> int:
    if not 0.0 <= args.theta <= 1.0:
        print(f"error: theta={args.theta} outside [0, 1]", file=sys.stderr)
        return 1
    doc = witness_document(args.theta, args.model)
    _write(json.dumps(doc, indent=1) + "\n", args.out)
    return 0


def cmd_verify(args) -> int:
    with ExitStack() as stack:
        if args.perturb_beta0:
            original = lp.beta0_closed
            delta = args.perturb_beta0
            stack.enter_context(mock.patch.object(lp, "beta0_closed", lambda th: original(th) + delta))
        results = checks.run_all(args.level, seed=args.seed)
    for r in results:
        print(r.line())
    failed = [r for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} criteria passed")
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="deltagame", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("curves", help="tabulate the edge functions on a theta grid")
    p.add_argument("--grid", type=int, default=101)
    p.add_argument("--tol", type=float, default=1e-8, help="bisection tolerance")
    p.add_argument("--seed", type=int, default=42, help="accepted for uniformity; the curves use no randomness")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--out", default=None)
    p.add_argument("--plot-script", default=None, help="also write a matplotlib script here")
    p.set_defaults(func=cmd_curves)

    p = sub.add_parser("feasible", help="test whether (theta, beta) is attainable")
    p.add_argument("theta", type=float)
    p.add_argument("beta", type=float)
    p.add_argument("--model", choices=["vect", "qc"], default="vect")
    p.add_argument("--tol", type=float, default=1e-12)
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_feasible)

    p = sub.add_parser("lp", help="solve the overlap program or an LP from JSON")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--theta", type=float)
    src.add_argument("--file", help='JSON {"c": [...], "A": [[...]], "b": [...]}, constraints A x >= b, x >= 0')
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_lp)

    p = sub.add_parser("witness", help="export an optimal correlation as JSON")
    p.add_argument("theta", type=float)
    p.add_argument("--model", choices=["vect", "qc"], default="qc")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("verify", help="run the verification criteria")
    p.add_argument("--level", choices=["quick", "full"], default="quick")
    p.add_argument("--seed", type=int, default=42, help="seed for the randomised criteria")
    p.add_argument("--perturb-beta0", type=float, default=0.0,
                   help="shift the closed-form overlap by this much (harness self-test)")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    try:
        return args.func(args)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, RuntimeError) as exc:
        log.debug("command failed", exc_info=True)
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
