"""Command-line interface.

Files are UTF-8 CSV. Complex lists use a ``re,im`` header, data sets
``x_re,x_im,y_re,y_im``; coefficient output is ``index,re,im`` and matrix
output ``i,j,re,im``. Exit codes: 0 success, 1 bad input or usage, 2
numerical failure (singular matrix, overflow).
"""
import argparse
import csv
import io
import itertools
import os
import sys

import numpy as np

from . import __version__
from .coeffs import as_roots, eval_horner, get_solver, with_scaling
from .errors import PolykitError, RootError
from .experiments import (
    SAMPLE_FAMILIES,
    TEST_FAMILIES,
    SampleSpec,
    TestPolySpec,
    run_problem_a,
    run_problem_f,
    run_problem_h,
    run_problem_i,
)
from .interpolation import DataSet, interpolation_coefficients
from .vandermonde import STREAMING_THRESHOLD, invert, iter_columns, product_entries

EXIT_OK, EXIT_INPUT, EXIT_NUMERIC = 0, 1, 2
RESIDUAL_FULL_LIMIT = 512
RESIDUAL_SPOT_CHECKS = 100


class InputError(Exception):
    pass


def _read_rows(path, width, header):
    try:
        fh = sys.stdin if path == "-" else open(path, newline="", encoding="utf-8")
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    with fh:
        rows = []
        for lineno, row in enumerate(csv.reader(fh), start=1):
            if not row or all(not c.strip() for c in row):
                continue
            cells = [c.strip() for c in row]
            if lineno == 1 and [c.lower() for c in cells] == header:
                continue
            if len(cells) != width:
                raise InputError(f"{path}:{lineno}: expected {width} fields, got {len(cells)}")
            try:
                vals = [float(c) for c in cells]
            except ValueError:
                raise InputError(f"{path}:{lineno}: not a number in {','.join(cells)!r}") from None
            if not all(np.isfinite(vals)):
                raise InputError(f"{path}:{lineno}: values must be finite")
            rows.append((lineno, vals))
    if not rows:
        raise InputError(f"{path}: no data rows")
    return rows


def read_complex(path):
    rows = _read_rows(path, 2, ["re", "im"])
    return np.array([complex(r, i) for _, (r, i) in rows]), [ln for ln, _ in rows]


def read_roots(path):
    z, lines = read_complex(path)
    zero = np.flatnonzero(z == 0)
    if zero.size:
        raise InputError(f"{path}:{lines[zero[0]]}: roots must be nonzero")
    return z


def read_data(path):
    rows = _read_rows(path, 4, ["x_re", "x_im", "y_re", "y_im"])
    x = np.array([complex(v[0], v[1]) for _, v in rows])
    y = np.array([complex(v[2], v[3]) for _, v in rows])
    return x, y


def read_coeffs(path):
    rows = _read_rows(path, 3, ["index", "re", "im"])
    n = len(rows)
    a = np.zeros(n, dtype=np.complex128)
    seen = set()
    for lineno, (idx, re, im) in rows:
        if idx != int(idx) or not 0 <= idx < n or idx in seen:
            raise InputError(f"{path}:{lineno}: bad coefficient index {idx:g}")
        seen.add(idx)
        a[int(idx)] = complex(re, im)
    return a


def _fmt(v):
    return repr(float(v))


def write_vector(out, values):
    out.write("index,re,im\n")
    for m, v in enumerate(values):
        out.write(f"{m},{_fmt(v.real)},{_fmt(v.imag)}\n")


def parse_n_range(text):
    """``"110"``, ``"10,30,50"`` or ``"start..stop..step"`` (stop inclusive)."""
    out = []
    for part in text.split(","):
        part = part.strip()
        if ".." in part:
            bits = part.split("..")
            if len(bits) not in (2, 3):
                raise InputError(f"bad range {part!r}; use start..stop..step")
            start, stop = int(bits[0]), int(bits[1])
            step = int(bits[2]) if len(bits) == 3 else 1
            if step <= 0:
                raise InputError(f"range step must be positive in {part!r}")
            out.extend(range(start, stop + 1, step))
        else:
            out.append(int(part))
    if not out or min(out) < 1:
        raise InputError(f"degrees must be positive: {text!r}")
    return out


def parse_floats(text):
    return [float(t) for t in text.split(",")]


def _open_out(args):
    if args.out:
        return open(args.out, "w", encoding="utf-8", newline="\n")
    return _Unclosed(sys.stdout)


class _Unclosed(io.TextIOBase):
    def __init__(self, stream):
        self._s = stream

    def write(self, s):
        return self._s.write(s)

    def close(self):
        self._s.flush()


def cmd_coeffs(args):
    roots = read_roots(args.input)
    solve = get_solver(args.solver)
    a = with_scaling(solve, roots, args.sigma) if args.sigma is not None else solve(roots)
    with _open_out(args) as out:
        write_vector(out, a)


def _residual(inv_params, matrix, rng):
    n = inv_params.shape[0]
    if n <= RESIDUAL_FULL_LIMIT:
        v = np.power.outer(inv_params, np.arange(n))
        return float(np.max(np.abs(v @ matrix - np.eye(n)))), "full"
    rows = rng.integers(0, n, RESIDUAL_SPOT_CHECKS)
    cols = rng.integers(0, n, RESIDUAL_SPOT_CHECKS)
    got = product_entries(inv_params, matrix, rows, cols)
    return float(np.max(np.abs(got - (rows == cols)))), f"{RESIDUAL_SPOT_CHECKS} entries"


def cmd_invert(args):
    params = read_roots(args.input)
    stream = args.stream or (args.stream is None and params.shape[0] > STREAMING_THRESHOLD)
    if stream:
        cols = iter_columns(params, args.method)
        first = next(cols)  # surfaces singularity before any output
        with _open_out(args) as out:
            out.write("i,j,re,im\n")
            for j, col in itertools.chain([first], cols):
                for i, v in enumerate(col):
                    out.write(f"{i},{j},{_fmt(v.real)},{_fmt(v.imag)}\n")
        return
    inv = invert(params, args.method)
    with _open_out(args) as out:
        out.write("i,j,re,im\n")
        for i, row in enumerate(inv.matrix):
            for j, v in enumerate(row):
                out.write(f"{i},{j},{_fmt(v.real)},{_fmt(v.imag)}\n")
    res, how = _residual(inv.params, inv.matrix, np.random.default_rng(args.seed))
    print(f"residual max|V*M - I| = {res:.3e} ({how})", file=sys.stderr)


def cmd_interp(args):
    x, y = read_data(args.input)
    a = interpolation_coefficients(DataSet(x, y), method=args.method)
    with _open_out(args) as out:
        write_vector(out, a)


def cmd_eval(args):
    a = read_coeffs(args.coeffs)
    pts, _ = read_complex(args.points)
    vals = eval_horner(a, pts)
    with _open_out(args) as out:
        write_vector(out, vals)


def _experiment_rows(args):
    degrees = parse_n_range(args.n)
    rhos = parse_floats(args.rho)
    name = args.name
    if name == "a":
        if args.family not in TEST_FAMILIES:
            raise InputError(f"experiment a needs --family in {TEST_FAMILIES}")
    elif args.family not in SAMPLE_FAMILIES:
        raise InputError(f"experiment {name} needs --family in {SAMPLE_FAMILIES}")
    if name == "i":
        label = (args.method or "ga").lower()
        if label not in ("ga", "de"):
            raise InputError("experiment i needs --method ga or de")
    else:
        label = (args.solver or "p").lower()
        get_solver(label)
    for rho in rhos:
        for n in degrees:
            if name == "a":
                if n % args.q:
                    raise InputError(f"degree {n} is not a multiple of q={args.q}")
                spec = TestPolySpec(args.family, n // args.q, args.q, rho)
                stats = run_problem_a(spec, label, args.include_x_norm)
            else:
                spec = SampleSpec(args.family, rho, n, seed=args.seed, width=args.width,
                                  shift=args.shift, samples=args.samples)
                runner = {"f": run_problem_f, "h": run_problem_h, "i": run_problem_i}[name]
                stats = runner(spec, label, args.include_x_norm, args.threads)
            yield n, rho, label, stats


def _markdown(rows):
    head = ["n", "rho", "solver", "eps0", "nan_count", "samples"]
    widths = [max(len(h), *(len(r[i]) for r in rows)) for i, h in enumerate(head)]
    line = lambda cells: "| " + " | ".join(c.rjust(w) for c, w in zip(cells, widths)) + " |"
    out = [line(head), "|" + "|".join("-" * (w + 1) + ":" for w in widths) + "|"]
    out.extend(line(r) for r in rows)
    return "\n".join(out) + "\n"


def cmd_experiment(args):
    rows = []
    for n, rho, label, stats in _experiment_rows(args):
        rows.append([str(n), f"{rho:g}", label, f"{stats.eps0:.3e}", str(stats.nan_count),
                     str(stats.samples)])
    with _open_out(args) as out:
        if args.format == "markdown":
            out.write(_markdown(rows))
        else:
            out.write("n,rho,solver,eps0,nan_count,samples\n")
            for r in rows:
                out.write(",".join(r) + "\n")


def _default_threads():
    env = os.environ.get("POLYKIT_THREADS")
    try:
        return max(1, int(env)) if env else 1
    except ValueError:
        return 1


def build_parser():
    ap = argparse.ArgumentParser(prog="polykit", description="Polynomial coefficients, "
                                 "Vandermonde inverses and interpolation from roots.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write to this file instead of stdout")
    common.add_argument("--seed", type=int, default=0, help="random seed (default 0)")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("coeffs", parents=[common], help="coefficients from a roots file")
    p.add_argument("input", help="CSV of roots (re,im)")
    p.add_argument("--solver", default="p", choices=["p", "p-scaled", "r", "r+"])
    p.add_argument("--sigma", type=float, help="solve on sigma*roots and scale back")
    p.set_defaults(func=cmd_coeffs)

    p = sub.add_parser("invert", parents=[common], help="inverse Vandermonde matrix")
    p.add_argument("input", help="CSV of parameters (re,im)")
    p.add_argument("--method", default="pp", choices=["pp", "pt+"])
    p.add_argument("--stream", action=argparse.BooleanOptionalAction, default=None,
                   help=f"emit column by column (default above n={STREAMING_THRESHOLD})")
    p.set_defaults(func=cmd_invert)

    p = sub.add_parser("interp", parents=[common], help="interpolation coefficients")
    p.add_argument("input", help="CSV of data (x_re,x_im,y_re,y_im)")
    p.add_argument("--method", default="ga", choices=["ga", "de"])
    p.set_defaults(func=cmd_interp)

    p = sub.add_parser("eval", parents=[common], help="evaluate coefficients at points")
    p.add_argument("coeffs", help="CSV of coefficients (index,re,im)")
    p.add_argument("points", help="CSV of points (re,im)")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("experiment", parents=[common], help="run an accuracy experiment")
    p.add_argument("name", choices=["a", "f", "h", "i"])
    p.add_argument("--family", required=True)
    p.add_argument("--rho", default="1", help="radius, or a comma list")
    p.add_argument("--n", required=True, help="degree, list, or start..stop..step")
    p.add_argument("--q", type=int, default=1, help="root multiplicity for experiment a")
    p.add_argument("--solver", help="p, p-scaled, r or r+ (experiments a, f, h)")
    p.add_argument("--method", help="ga or de (experiment i)")
    p.add_argument("--samples", type=int, help="override the sample count")
    p.add_argument("--width", type=float, default=0.1, help="annulus width")
    p.add_argument("--shift", type=float, default=0.0, help="shift of line data")
    p.add_argument("--threads", type=int, default=_default_threads(),
                   help="worker threads (default $POLYKIT_THREADS or 1)")
    p.add_argument("--include-x-norm", action="store_true",
                   help="multiply each error by the norm of the roots")
    p.add_argument("--format", choices=["csv", "markdown"], default="csv")
    p.set_defaults(func=cmd_experiment)
    return ap


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except InputError as exc:
        print(f"polykit: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except RootError as exc:
        print(f"polykit: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except PolykitError as exc:
        step = getattr(exc, "step", None)
        where = f" (step: {step})" if step else ""
        print(f"polykit: numerical failure{where}: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ValueError as exc:
        print(f"polykit: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
