"""Command-line surface: compute, verify, and export every quantity in
the package as plot-ready CSV or JSON.

Commands
    transform   build a truncated divisor-sum file from a named function
                or re-truncate an existing file
    correlate   evaluate a correlation profile over a shift list
                (tokens: plain integers, ranges lo:hi, and U+k for the
                product-of-odd-primes period plus k)
    verify      run a named identity suite; JSON verdict on stdout
    hl          model-comparison CSV plus a singular-series table

Exit codes: 0 success, 1 verification failure, 2 usage or config error.
Real numbers are serialized with 12 significant digits, big integers in
full decimal, so identical inputs give byte-identical output.

Configuration: defaults < config file (--config or RAMCORR_CONFIG,
key=value lines) < RAMCORR_* environment variables < flags.
"""

from __future__ import annotations

import argparse
import io
import json
import os
import sys
from dataclasses import dataclass

from . import __version__
from .arith_core import sieve_primes, tabulate, tabulated_function_names
from .correlations import build_profile, profile_to_csv, profile_to_json
from .hlmodels import (model_chain, model_rows_to_csv, singular_series,
                       singular_to_csv)
from .ramanujan import read_coefficients, universal_period
from .transforms import (lambda_tds, odd_lift, read_tds_path, retruncate,
                         tds_from_et, truncate, write_tds)
from .verify import SUITES, run_suite

EXIT_OK = 0
EXIT_VERIFY_FAIL = 1
EXIT_USAGE = 2


@dataclass
class RunConfig:
    sieve_limit: int = 2_000_000
    tolerance_real: float = 1e-9
    output_format: str = "csv"
    output_path: str | None = None


class UsageError(Exception):
    pass


def _load_config_file(path: str) -> dict:
    out = {}
    try:
        with open(path, "r", encoding="ascii") as fh:
            for lineno, line in enumerate(fh, start=1):
                line = line.strip()
                if not line or line.startswith("#"):
                    continue
                if "=" not in line:
                    raise UsageError(f"{path}:{lineno}: expected key=value")
                key, _, val = line.partition("=")
                out[key.strip()] = val.strip()
    except OSError as exc:
        raise UsageError(f"cannot read config file: {exc}") from None
    return out


def _resolve_config(args) -> RunConfig:
    cfg = RunConfig()
    path = getattr(args, "config", None) or os.environ.get("RAMCORR_CONFIG")
    raw: dict = {}
    if path:
        raw.update(_load_config_file(path))
    for key in ("sieve_limit", "tolerance_real", "output_format"):
        env = os.environ.get(f"RAMCORR_{key.upper()}")
        if env is not None:
            raw[key] = env
    try:
        if "sieve_limit" in raw:
            cfg.sieve_limit = int(raw["sieve_limit"])
        if "tolerance_real" in raw:
            cfg.tolerance_real = float(raw["tolerance_real"])
        if "output_format" in raw:
            cfg.output_format = raw["output_format"]
    except ValueError as exc:
        raise UsageError(f"bad config value: {exc}") from None
    if getattr(args, "sieve_limit", None) is not None:
        cfg.sieve_limit = args.sieve_limit
    if getattr(args, "tolerance_real", None) is not None:
        cfg.tolerance_real = args.tolerance_real
    if getattr(args, "format", None) is not None:
        cfg.output_format = args.format
    if getattr(args, "out", None) is not None:
        cfg.output_path = args.out
    if cfg.output_format not in ("csv", "json"):
        raise UsageError(f"unknown output format {cfg.output_format!r}")
    if cfg.tolerance_real <= 0:
        raise UsageError("tolerance_real must be positive")
    return cfg


def _need_sieve(cfg: RunConfig, need: int):
    if need > cfg.sieve_limit:
        raise UsageError(
            f"request needs sieve limit {need}, configured cap is "
            f"{cfg.sieve_limit}; raise sieve_limit")
    return sieve_primes(max(need, 2))


def _write_out(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="ascii") as fh:
            fh.write(text)


# ----------------------------------------------------------------------
# transform
# ----------------------------------------------------------------------

def _cmd_transform(args, cfg: RunConfig) -> int:
    if (args.fn is None) == (args.infile is None):
        raise UsageError("exactly one of --fn and --in is required")
    N = args.N
    if N < 1:
        raise UsageError("--N must be >= 1")
    if args.fn is not None:
        name = args.fn
        if name == "lambda":
            table = _need_sieve(cfg, N)
            g = lambda_tds(N, table)
        else:
            base = name
            if name.startswith("indicator:"):
                base = name.split(":", 1)[1]
            if base not in tabulated_function_names():
                raise UsageError(
                    f"unknown function name {name!r}; known: "
                    f"{', '.join(tabulated_function_names())} "
                    "(optionally prefixed indicator:)")
            table = _need_sieve(cfg, N)
            g = truncate(tabulate(base, N, table), N)
    else:
        try:
            g = retruncate(read_tds_path(args.infile), N)
        except (OSError, ValueError) as exc:
            raise UsageError(f"cannot load TDS file: {exc}") from None
    buf = io.StringIO()
    write_tds(g, buf)
    _write_out(buf.getvalue(), cfg.output_path)
    return EXIT_OK


# ----------------------------------------------------------------------
# correlate
# ----------------------------------------------------------------------

def _parse_shifts(text: str, N: int):
    shifts = []
    u_cache = None
    for token in text.split(","):
        token = token.strip()
        if not token:
            continue
        if token.startswith("U+"):
            if u_cache is None:
                u_cache = universal_period(N).value
            try:
                k = int(token[2:])
            except ValueError:
                raise UsageError(f"bad shift token {token!r}") from None
            shifts.append(u_cache + k)
        elif ":" in token:
            lo_s, _, hi_s = token.partition(":")
            try:
                lo, hi = int(lo_s), int(hi_s)
            except ValueError:
                raise UsageError(f"bad shift range {token!r}") from None
            if lo > hi:
                raise UsageError(f"empty shift range {token!r}")
            shifts.extend(range(lo, hi + 1))
        else:
            try:
                shifts.append(int(token))
            except ValueError:
                raise UsageError(f"bad shift token {token!r}") from None
    if not shifts:
        raise UsageError("no shifts given")
    if min(shifts) < 1:
        raise UsageError("shifts are naturals >= 1")
    return shifts


def _resolve_g(name: str, N: int, cfg: RunConfig):
    """Named shift-carrying factors, or a TDS file path.

    ``lambdaN`` is the odd-lifted truncation of von Mangoldt (the factor
    the huge-shift identities hold for); ``lambdaN_raw`` is the plain
    truncation; ``delta1`` the constant-1 divisor table.
    """
    if name == "lambdaN":
        return odd_lift(lambda_tds(N, _need_sieve(cfg, N)))
    if name == "lambdaN_raw":
        return lambda_tds(N, _need_sieve(cfg, N))
    if name == "delta1":
        return tds_from_et({1: 1}, N, "ExactInt", name="delta1")
    try:
        return read_tds_path(name)
    except OSError:
        raise UsageError(
            f"--g {name!r} is neither a readable file nor one of "
            "lambdaN, lambdaN_raw, delta1") from None
    except ValueError as exc:
        raise UsageError(f"cannot load TDS file: {exc}") from None


def _cmd_correlate(args, cfg: RunConfig) -> int:
    N = args.N
    if N < 1:
        raise UsageError("--N must be >= 1")
    shifts = _parse_shifts(args.shifts, N)
    fname = args.f
    if fname not in tabulated_function_names():
        raise UsageError(f"unknown factor {fname!r}; known: "
                         f"{', '.join(tabulated_function_names())}")
    table = _need_sieve(cfg, N)
    f = tabulate(fname, N, table)
    g = _resolve_g(args.g, N, cfg)
    try:
        profile = build_profile(f, g, N, shifts, f_id=fname, g_id=args.g,
                                method=args.mode)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if cfg.output_format == "json":
        _write_out(profile_to_json(profile) + "\n", cfg.output_path)
    else:
        buf = io.StringIO()
        profile_to_csv(profile, buf)
        _write_out(buf.getvalue(), cfg.output_path)
    return EXIT_OK


# ----------------------------------------------------------------------
# verify
# ----------------------------------------------------------------------

def _cmd_verify(args, cfg: RunConfig) -> int:
    tds = None
    coeffs = None
    if args.tds is not None:
        try:
            tds = read_tds_path(args.tds)
        except (OSError, ValueError) as exc:
            raise UsageError(f"cannot load TDS file: {exc}") from None
    if args.coeffs is not None:
        try:
            with open(args.coeffs, "r", encoding="ascii") as fh:
                coeffs = read_coefficients(fh)
        except (OSError, ValueError) as exc:
            raise UsageError(f"cannot load coefficient file: {exc}") from None
    try:
        verdict = run_suite(args.suite, seed=args.seed, tds=tds, coeffs=coeffs)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _write_out(json.dumps(verdict, indent=2, default=str) + "\n",
               cfg.output_path)
    return EXIT_OK if verdict["pass"] else EXIT_VERIFY_FAIL


# ----------------------------------------------------------------------
# hl
# ----------------------------------------------------------------------

def _parse_int_list(text: str, flag: str):
    try:
        items = [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise UsageError(f"bad integer list for {flag}: {text!r}") from None
    if not items:
        raise UsageError(f"{flag} must be a non-empty integer list")
    return items


def _cmd_hl(args, cfg: RunConfig) -> int:
    N_list = _parse_int_list(args.N_list, "--N-list")
    a_list = _parse_int_list(args.a_list, "--a-list")
    if min(N_list) < 3 or min(a_list) < 1:
        raise UsageError("need N >= 3 and a >= 1")
    need = max(max(N_list) + max(a_list), args.Q)
    table = _need_sieve(cfg, need)
    rows = [model_chain(N, a, table) for N in N_list for a in a_list]
    sing = [singular_series(a, Q=args.Q, table=table)
            for a in sorted(set(a_list))]
    buf = io.StringIO()
    model_rows_to_csv(rows, buf)
    models_csv = buf.getvalue()
    buf = io.StringIO()
    singular_to_csv(sing, buf)
    singular_csv = buf.getvalue()
    if cfg.output_path is None:
        sys.stdout.write(models_csv)
        sys.stdout.write("\n")
        sys.stdout.write(singular_csv)
    else:
        with open(cfg.output_path, "w", encoding="ascii") as fh:
            fh.write(models_csv)
        spath = args.singular_out or cfg.output_path + ".singular.csv"
        with open(spath, "w", encoding="ascii") as fh:
            fh.write(singular_csv)
    return EXIT_OK


# ----------------------------------------------------------------------
# entry point
# ----------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    # SUPPRESS defaults: a subparser must not clobber values the main
    # parser already consumed (flags are accepted on either side of the
    # subcommand)
    common = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    common.add_argument("--config", help="key=value config file")
    common.add_argument("--sieve-limit", type=int, dest="sieve_limit")
    common.add_argument("--tolerance-real", type=float, dest="tolerance_real")
    common.add_argument("--format", choices=("csv", "json"))
    common.add_argument("--out", help="output path (default stdout)")

    parser = argparse.ArgumentParser(
        prog="ramcorr",
        description="correlations of arithmetic functions via finite "
                    "Ramanujan expansions",
        parents=[common])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("transform", parents=[common],
                       help="emit a truncated divisor-sum file")
    p.add_argument("--fn", help="named arithmetic function")
    p.add_argument("--in", dest="infile", help="existing TDS file")
    p.add_argument("--N", type=int, required=True, help="truncation cutoff")
    p.set_defaults(func=_cmd_transform)

    p = sub.add_parser("correlate", parents=[common],
                       help="evaluate a correlation profile")
    p.add_argument("--f", required=True, help="named fixed factor")
    p.add_argument("--g", required=True,
                   help="shift factor: lambdaN | lambdaN_raw | delta1 | file")
    p.add_argument("--N", type=int, required=True, help="correlation length")
    p.add_argument("--shifts", required=True,
                   help="comma list; tokens k, lo:hi, U+k")
    p.add_argument("--mode", choices=("direct", "expansion"),
                   default="direct")
    p.set_defaults(func=_cmd_correlate)

    p = sub.add_parser("verify", parents=[common],
                       help="run an identity suite")
    p.add_argument("suite", help=f"one of: {', '.join(sorted(SUITES))}")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tds", help="TDS file to check (expansion/lucht)")
    p.add_argument("--coeffs", help="coefficient file to check against")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("hl", parents=[common],
                       help="model-comparison and singular-series CSV")
    p.add_argument("--N-list", dest="N_list", required=True)
    p.add_argument("--a-list", dest="a_list", required=True)
    p.add_argument("--Q", type=int, default=100_000,
                   help="singular-series truncation")
    p.add_argument("--singular-out", dest="singular_out",
                   help="singular-series CSV path (with --out)")
    p.set_defaults(func=_cmd_hl)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _resolve_config(args)
        return args.func(args, cfg)
    except UsageError as exc:
        print(f"ramcorr: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
