"""Command-line front end.

Subcommands::

    idqm qdilog   (--gamma G | --gamma-rational M/N) --z Z [--grid GRID] [--out FILE]
    idqm spectrum PARAMS
    idqm verify   SUITE [--params PARAMS] [--case C ...] [--json FILE] [--seed S]
    idqm weight   PARAMS [--samples N] [--out FILE] [--seed S]

Parameter files are UTF-8 text, one ``key = value`` per line; ``#`` starts a
comment and blank lines are ignored.  Keys:

    case           V, VI, VII or VIII (or 5..8)
    gamma          decimal, or an exact rational multiple of pi ("1/5 pi")
    gamma_rational M/N, meaning gamma = (M/N) pi (exclusive with gamma)
    alpha1 alpha2  required
    beta1 beta2    default 0
    K              case VIII only: 1, -1 or 0 (default 1)

Unknown, duplicate or malformed keys are input errors.

CSV output has a header row and RFC 4180 quoting.  ``weight`` columns are
``x, phi0_sq, P_0, ..., P_nmax`` (the polynomials are real on the real axis);
``qdilog --grid`` columns are ``re_z, im_z, re_phi, im_phi``.  When ``--out``
is given a ``<out>.manifest.json`` with the command, parameters and seed is
written next to it; JSON reports embed the same manifest.

Exit codes: 0 success, 1 input error, 2 mathematical-domain error,
3 verification failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import re
import sys
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from . import __version__
from . import systems as S
from .errors import DomainError, ParamFileError
from .qdilog import QDilogContext, eval_qdilog
from .suites import SUITES, run_suite
from .verify import reports_to_json

EXIT_OK, EXIT_INPUT, EXIT_DOMAIN, EXIT_VERIFY = 0, 1, 2, 3
PARAM_KEYS = ("case", "gamma", "gamma_rational", "alpha1", "alpha2", "beta1", "beta2", "K")
DECAY_LENGTHS = 6.0

_RATIONAL = re.compile(r"^\s*(\d+)\s*/\s*(\d+)\s*(?:\*?\s*pi)?\s*$", re.IGNORECASE)
_RATIONAL_PI = re.compile(r"^\s*(\d+)\s*/\s*(\d+)\s*\*?\s*pi\s*$", re.IGNORECASE)


class _Parser(argparse.ArgumentParser):
    """argparse exits with 2 on bad usage; here 2 is reserved for domain errors."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


# --------------------------------------------------------------------------
# input parsing
# --------------------------------------------------------------------------

def parse_rational(text: str) -> tuple:
    """'M/N' or 'M/N pi' -> (M, N)."""
    m = _RATIONAL.match(text)
    if not m or int(m.group(2)) == 0 or int(m.group(1)) == 0:
        raise ParamFileError(f"expected M/N with positive integers, got {text!r}")
    f = Fraction(int(m.group(1)), int(m.group(2)))
    return f.numerator, f.denominator


def parse_complex(text: str) -> complex:
    """'a+bi', 'a-bj', 'bi' or 'a' -> complex."""
    try:
        return complex(text.strip().replace(" ", "").replace("i", "j"))
    except ValueError:
        raise ParamFileError(f"cannot parse complex number {text!r}") from None


def _float(key: str, text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise ParamFileError(f"{key}: not a number: {text!r}") from None
    if not math.isfinite(v):
        raise ParamFileError(f"{key}: must be finite")
    return v


def parse_params_text(text: str) -> dict:
    """Parse a parameter file into keyword arguments for build_system."""
    raw = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParamFileError(f"line {lineno}: expected 'key = value'")
        key, value = (s.strip() for s in line.split("=", 1))
        if key not in PARAM_KEYS:
            raise ParamFileError(f"line {lineno}: unknown key {key!r}")
        if key in raw:
            raise ParamFileError(f"line {lineno}: duplicate key {key!r}")
        if not value:
            raise ParamFileError(f"line {lineno}: empty value for {key!r}")
        raw[key] = value
    for key in ("case", "alpha1", "alpha2"):
        if key not in raw:
            raise ParamFileError(f"missing key {key!r}")
    if ("gamma" in raw) == ("gamma_rational" in raw):
        raise ParamFileError("exactly one of 'gamma' and 'gamma_rational' is required")
    case = raw["case"].upper()
    if case not in S.CASES and case not in ("5", "6", "7", "8"):
        raise ParamFileError(f"case must be one of {', '.join(S.CASES)}, got {raw['case']!r}")
    kw = {"case": case}
    if "gamma_rational" in raw:
        kw["rational"] = parse_rational(raw["gamma_rational"])
    elif _RATIONAL_PI.match(raw["gamma"]):
        kw["rational"] = parse_rational(raw["gamma"])
    else:
        kw["gamma"] = _float("gamma", raw["gamma"])
    for key in ("alpha1", "alpha2", "beta1", "beta2"):
        if key in raw:
            kw[key] = _float(key, raw[key])
    if "K" in raw:
        try:
            kw["K"] = int(raw["K"])
        except ValueError:
            raise ParamFileError(f"K: not an integer: {raw['K']!r}") from None
    return kw


def load_params(path: str) -> S.SystemParams:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as e:
        raise ParamFileError(f"cannot read {path}: {e}") from None
    return S.build_system(**parse_params_text(text))


def _context(args) -> QDilogContext:
    if args.gamma_rational is not None:
        return QDilogContext.from_rational(*parse_rational(args.gamma_rational))
    return QDilogContext(args.gamma)


def _grid(text: str):
    """'re0:re1:nre,im0:im1:nim' -> (re values, im values)."""
    try:
        axes = []
        for part in text.split(","):
            lo, hi, n = part.split(":")
            axes.append(np.linspace(float(lo), float(hi), int(n)))
        re_axis, im_axis = axes
    except ValueError:
        raise ParamFileError(f"grid must look like 're0:re1:nre,im0:im1:nim', got {text!r}") from None
    return re_axis, im_axis


# --------------------------------------------------------------------------
# output helpers
# --------------------------------------------------------------------------

def _manifest(command: str, parameters: dict, seed, output_path, fmt: str) -> dict:
    return {"command": command, "parameters": parameters, "seed": seed,
            "output_path": output_path, "format": fmt, "version": __version__}


def _emit_csv(header: Sequence[str], rows, out: Optional[str], manifest: dict) -> None:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\r\n")
    w.writerow(header)
    w.writerows(rows)
    if out is None:
        sys.stdout.write(buf.getvalue())
        return
    Path(out).write_text(buf.getvalue(), encoding="utf-8", newline="")
    Path(out + ".manifest.json").write_text(json.dumps(manifest, indent=2), encoding="utf-8")


# --------------------------------------------------------------------------
# commands
# --------------------------------------------------------------------------

def cmd_qdilog(args) -> int:
    ctx = _context(args)
    params = {"gamma": ctx.gamma, "gamma_rational": "%d/%d" % ctx.rational if ctx.rational else None}
    if args.grid is None:
        z = parse_complex(args.z)
        v = complex(eval_qdilog(ctx, z))
        print(f"z = {z.real:.16g}{z.imag:+.16g}i  gamma = {ctx.gamma:.16g}"
              + (f" ({ctx.rational[0]}/{ctx.rational[1]} pi)" if ctx.rational else ""))
        print(f"re = {v.real:.16g}")
        print(f"im = {v.imag:.16g}")
        print(f"abs = {abs(v):.16g}")
        return EXIT_OK
    re_axis, im_axis = _grid(args.grid)
    Z = re_axis[None, :] + 1j * im_axis[:, None]
    vals = eval_qdilog(ctx, Z.ravel())
    rows = [(repr(z.real), repr(z.imag), repr(v.real), repr(v.imag)) for z, v in zip(Z.ravel(), vals)]
    _emit_csv(["re_z", "im_z", "re_phi", "im_phi"], rows, args.out,
              _manifest("qdilog", {**params, "grid": args.grid}, None, args.out, "CSV"))
    return EXIT_OK


def cmd_spectrum(args) -> int:
    p = load_params(args.params)
    print(f"case {p.case}  gamma {p.gamma:.12g}  n_max {p.n_max}")
    print(f"{'n':>3}  {'E_n':>22}  {'h_n':>22}")
    for n in range(p.n_max + 1):
        h = S.conjectured_norm(p, n)
        print(f"{n:>3}  {S.energy(p, n):>22.15g}  {h.real:>22.15g}")
    return EXIT_OK


def cmd_verify(args) -> int:
    rng = np.random.default_rng(args.seed)
    fixtures = None
    params = {"suite": args.suite, "cases": args.case}
    if args.params is not None:
        p = load_params(args.params)
        fixtures = {Path(args.params).stem: p}
        params["system"] = p.as_dict()
    reports = run_suite(args.suite, rng, fixtures=fixtures, cases=args.case)
    for r in reports:
        status = "PASS" if r.passed else "FAIL"
        print(f"{status}  {r.check_id:<28} {r.params.get('case', ''):<5} "
              f"residual {r.residual:.3e}  tol {r.tolerance:.1e}  {r.notes}")
    passed = sum(r.passed for r in reports)
    print(f"{passed}/{len(reports)} checks passed")
    if args.json is not None:
        manifest = _manifest("verify", params, args.seed, args.json, "JSON")
        Path(args.json).write_text(reports_to_json(reports, manifest), encoding="utf-8")
    return EXIT_OK if passed == len(reports) else EXIT_VERIFY


def weight_window(p: S.SystemParams, lengths: float = DECAY_LENGTHS) -> tuple:
    """Sampling window spanning ``lengths`` decay lengths 1/|r| of phi0 on each side."""
    right, left = S.decay_exponents(p)
    hi = lengths / abs(right)
    lo = 0.0 if p.case == "VII" else -lengths / abs(left)
    return lo, hi


def cmd_weight(args) -> int:
    p = load_params(args.params)
    if args.samples < 2:
        raise ParamFileError("--samples must be at least 2")
    lo, hi = weight_window(p)
    if p.case == "VII":
        # phi0 vanishes at the x = 0 end point; sample (0, hi]
        xs = np.linspace(lo, hi, args.samples + 1)[1:]
    else:
        xs = np.linspace(lo, hi, args.samples)
    w = S.weight(p, xs)
    e = S.eta(p, xs)
    polys = [S.eigenpoly(p, n, e).real for n in range(p.n_max + 1)]
    header = ["x", "phi0_sq"] + [f"P_{n}" for n in range(p.n_max + 1)]
    rows = [[repr(float(x)), repr(float(v))] + [repr(float(P[i])) for P in polys]
            for i, (x, v) in enumerate(zip(xs, w))]
    _emit_csv(header, rows, args.out,
              _manifest("weight", {**p.as_dict(), "samples": args.samples, "window": [lo, hi]},
                        args.seed, args.out, "CSV"))
    return EXIT_OK


# --------------------------------------------------------------------------
# entry point
# --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="idqm", description="Quantum dilogarithm and solvable discrete quantum mechanics.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    q = sub.add_parser("qdilog", help="evaluate Phi_gamma(z)")
    g = q.add_mutually_exclusive_group(required=True)
    g.add_argument("--gamma", type=float, help="decimal gamma in (0, pi)")
    g.add_argument("--gamma-rational", metavar="M/N", help="gamma = (M/N) pi exactly")
    q.add_argument("--z", default="0", help="complex argument, e.g. 0.5-1.2i")
    q.add_argument("--grid", metavar="GRID", help="'re0:re1:nre,im0:im1:nim' rectangular sampling as CSV")
    q.add_argument("--out", help="CSV output file for --grid (default stdout)")
    q.set_defaults(func=cmd_qdilog)

    s = sub.add_parser("spectrum", help="print E_n and the conjectured h_n")
    s.add_argument("params", help="parameter file")
    s.set_defaults(func=cmd_spectrum)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("suite", choices=SUITES)
    v.add_argument("--params", help="parameter file (default: shipped fixtures)")
    v.add_argument("--case", action="append", type=str.upper, choices=list(S.CASES),
                   help="restrict to a case (repeatable)")
    v.add_argument("--json", help="write the VerificationReport JSON here")
    v.add_argument("--seed", type=int, default=0)
    v.set_defaults(func=cmd_verify)

    w = sub.add_parser("weight", help="emit phi0^2 and P_n samples as CSV")
    w.add_argument("params", help="parameter file")
    w.add_argument("--samples", type=int, default=401)
    w.add_argument("--out", help="CSV output file (default stdout)")
    w.add_argument("--seed", type=int, default=0)
    w.set_defaults(func=cmd_weight)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except DomainError as e:
        print(f"idqm: domain error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_DOMAIN
    except (ParamFileError, OSError) as e:
        print(f"idqm: input error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
