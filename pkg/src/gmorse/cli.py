"""Command-line front end.

Exit status: 0 success, 2 invalid input, 3 validation failure (``validate``),
4 numerical diagnostic error.
"""

from __future__ import annotations

import argparse
import contextlib
import csv
import io
import json
import math
import sys

import numpy as np

from . import coherent, oracle, spectrum, wavefn
from .durumap import build_chart
from .export import dumps, spectrum_to_json
from .potential import MorseParams, classify_symmetry, load_params, make_preset

EXIT_OK, EXIT_INPUT, EXIT_VALIDATION, EXIT_NUMERIC = 0, 2, 3, 4


class InputError(ValueError):
    pass


def parse_complex(text):
    parts = [p.strip() for p in str(text).split(",")]
    try:
        if len(parts) == 1:
            return complex(float(parts[0]), 0.0)
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        pass
    raise InputError(f"expected 're' or 're,im', got {text!r}")


def parse_grid(text):
    """``a:b:k`` -> k uniform points from a to b inclusive."""
    try:
        a, b, k = text.split(":")
        a, b, k = float(a), float(b), int(k)
    except ValueError:
        raise InputError(f"grid must look like a:b:k, got {text!r}") from None
    if not a < b or k < 2:
        raise InputError("grid needs a < b and k >= 2")
    return np.linspace(a, b, k)


def params_from_args(args):
    raw = {k: getattr(args, k) for k in ("v1", "v2", "alpha", "a", "A", "B", "C")
           if getattr(args, k) is not None}
    sources = sum([args.params is not None, args.preset is not None, bool(raw) and args.preset is None])
    if sources != 1:
        raise InputError("give exactly one of --params FILE, --preset NAME, or explicit --v1/--v2/--alpha")
    try:
        if args.params is not None:
            if raw:
                raise InputError("--params cannot be combined with explicit parameter flags")
            p = load_params(args.params)
            if args.mass is not None or args.hbar is not None:
                p = MorseParams(p.v1, p.v2, p.alpha,
                                p.mass if args.mass is None else args.mass,
                                p.hbar if args.hbar is None else args.hbar)
            return p
        mass = 1.0 if args.mass is None else args.mass
        hbar = 1.0 if args.hbar is None else args.hbar
        if args.preset is not None:
            reals = {}
            for k, v in raw.items():
                z = parse_complex(v)
                if z.imag != 0:
                    raise InputError(f"preset parameter --{k} must be real")
                reals[k] = z.real
            if args.preset == "pt_imaginary_alpha" and "a" not in reals and "alpha" in reals:
                reals["a"] = reals.pop("alpha")
            return make_preset(args.preset, mass=mass, hbar=hbar, **reals)
        missing = [k for k in ("v1", "v2", "alpha") if k not in raw]
        if missing:
            raise InputError(f"missing --{', --'.join(missing)}")
        return MorseParams(parse_complex(raw["v1"]), parse_complex(raw["v2"]),
                           parse_complex(raw["alpha"]), mass, hbar)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read parameters: {exc}") from exc
    except (ValueError, TypeError) as exc:
        raise InputError(str(exc)) from exc


def _csv_text(header, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([v if isinstance(v, (str, int)) else f"{float(v):.17g}" for v in row])
    return buf.getvalue()


def cmd_classify(args, params):
    tag = str(classify_symmetry(params))
    if args.format == "json":
        return dumps({"class": tag}) + "\n"
    return tag + "\n"


def cmd_spectrum(args, params):
    levels = spectrum.bound_levels(params)
    if args.format == "csv":
        rows = [(lv.n, lv.energy.real, lv.energy.imag, lv.s_exponent.real,
                 lv.s_exponent.imag, str(lv.is_real).lower()) for lv in levels]
        return _csv_text(("n", "re_E", "im_E", "re_s", "im_s", "real"), rows)
    return spectrum_to_json(levels) + "\n"


def cmd_wavefunction(args, params):
    x = parse_grid(args.grid)
    level = spectrum.energy_level(params, args.n)
    if level.s_exponent.real <= 0:
        print(f"warning: level {args.n} is not a bound level (Re s_n <= 0)", file=sys.stderr)
    spec = wavefn.wave_spec(params, level, normalizable=False)
    if args.normalize:
        spec = wavefn.normalize_numeric(params, level)
    psi = wavefn.eval_psi(params, level, x, spec.norm)
    if args.format == "json":
        return dumps({"n": level.n, "energy": level.energy, "normalized": spec.normalizable and args.normalize,
                      "x": x, "psi": [complex(p) for p in psi]}) + "\n"
    buf = io.StringIO()
    wavefn.write_csv(buf, x, psi)
    return buf.getvalue()


def cmd_coherent(args, params):
    if args.steps < 2:
        raise InputError("--steps must be >= 2")
    chart = build_chart(params)
    if chart.omega.imag != 0 or chart.omega.real <= 0:
        raise InputError("coherent trajectories need a real oscillator frequency (Hermitian chart)")
    state = coherent.CoherentState(parse_complex(args.au), parse_complex(args.av), chart)
    s_grid = np.linspace(0.0, args.smax, args.steps)
    traj = coherent.mean_morse_trajectory(state, s_grid, params)
    if args.format == "json":
        return dumps({"mapping": traj.mapping, "s": traj.s, "t": traj.t, "x_mean": traj.x_mean,
                      "a_u": [complex(a) for a in traj.a_u],
                      "a_v": [complex(a) for a in traj.a_v]}) + "\n"
    buf = io.StringIO()
    traj.write_csv(buf)
    return buf.getvalue()


def validate(params, grid=None, tol_abs=1e-6, residual_tol=None):
    """Oracle and residual checks for `params`; returns the report dict."""
    levels = spectrum.bound_levels(params)
    tag = str(classify_symmetry(params))
    report = {"case": tag, "params": params.to_dict()}
    confining = params.alpha.real > 0
    if confining:
        grid = grid or oracle.default_grid(params)
        if levels:
            numeric = oracle.eig_low(params, grid, len(levels) + 2)
        else:
            numeric = []
        matched = oracle.match_spectra(levels, numeric, tol_abs)
        report.update(matched.to_dict(case=tag, grid=grid))
        x = grid.x
        residual_tol = 1e-6 if residual_tol is None else residual_tol
        checked = levels
    else:
        # no decay on the real line: the grid oracle does not apply
        half = 10.0 / abs(params.alpha)
        x = np.linspace(-half, half, 8000)
        report.update({"grid": {}, "matches": [], "pass": True,
                       "note": "grid oracle skipped: potential does not confine on the real line"})
        residual_tol = 1e-5 if residual_tol is None else residual_tol
        checked = levels or [spectrum.energy_level(params, 0)]
    residuals = []
    for lv in checked:
        r = wavefn.ode_residual(params, lv, x)
        residuals.append({"n": lv.n, "residual": r if math.isfinite(r) else None,
                          "pass": bool(r < residual_tol)})
    report["residuals"] = residuals
    report["residual_tol"] = residual_tol
    report["pass"] = bool(report["pass"] and all(r["pass"] for r in residuals))
    return report


def cmd_validate(args, params):
    grid = None
    if args.grid:
        x = parse_grid(args.grid)
        try:
            grid = oracle.GridSpec(float(x[0]), float(x[-1]), x.size, args.stencil)
        except ValueError as exc:
            raise InputError(str(exc)) from exc
    report = validate(params, grid, args.tol)
    return dumps(report) + "\n", report["pass"]


def build_parser():
    parser = argparse.ArgumentParser(prog="gmorse", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    src = common.add_argument_group("model input")
    src.add_argument("--params", metavar="FILE", help="JSON parameter document")
    src.add_argument("--preset", choices=("hermitian", "pt_imaginary_alpha", "non_pt_complex"))
    for name in ("v1", "v2", "alpha", "a", "A", "B", "C"):
        src.add_argument(f"--{name}", metavar="X", help="number, or 're,im' for explicit complex input")
    src.add_argument("--mass", type=float)
    src.add_argument("--hbar", type=float)
    common.add_argument("--out", metavar="PATH", help="output file (default stdout)")
    common.add_argument("--format", choices=("json", "csv"))

    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("classify", parents=[common], help="symmetry class of the potential")
    sub.add_parser("spectrum", parents=[common], help="bound levels")
    p = sub.add_parser("wavefunction", parents=[common], help="psi_n table")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--grid", required=True, metavar="a:b:k")
    p.add_argument("--no-normalize", dest="normalize", action="store_false")
    p = sub.add_parser("coherent", parents=[common], help="coherent-state mean trajectory")
    p.add_argument("--au", required=True, metavar="re,im")
    p.add_argument("--av", required=True, metavar="re,im")
    p.add_argument("--smax", type=float, required=True)
    p.add_argument("--steps", type=int, required=True)
    p = sub.add_parser("validate", parents=[common], help="oracle and residual checks")
    p.add_argument("--grid", metavar="a:b:k")
    p.add_argument("--stencil", type=int, choices=(2, 4), default=4)
    p.add_argument("--tol", type=float, default=1e-6)
    return parser


_DEFAULT_FORMAT = {"classify": None, "spectrum": "json", "wavefunction": "csv",
                   "coherent": "csv", "validate": "json"}


def run(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    if args.format is None:
        args.format = _DEFAULT_FORMAT[args.command]
    if args.command == "validate" and args.format != "json":
        print("error: validate emits JSON only", file=sys.stderr)
        return EXIT_INPUT
    status = EXIT_OK
    try:
        params = params_from_args(args)
        if args.command == "validate":
            text, ok = cmd_validate(args, params)
            status = EXIT_OK if ok else EXIT_VALIDATION
        else:
            handler = {"classify": cmd_classify, "spectrum": cmd_spectrum,
                       "wavefunction": cmd_wavefunction, "coherent": cmd_coherent}[args.command]
            text = handler(args, params)
    except (wavefn.QuadratureError, oracle.SolverError) as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (InputError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    else:
        with contextlib.suppress(BrokenPipeError):
            sys.stdout.write(text)
    return status


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
