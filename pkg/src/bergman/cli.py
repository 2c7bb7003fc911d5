"""Command line front end.

Subcommands::

    inner     inner product of two holomorphic polynomials
    toeplitz  build an operator matrix (polynomial, Sobolev-form, or HS)
    berezin   Berezin transform of a radial symbol on a radial grid
    verify    run the identity verification suite (JSON lines)
    norm      truncated multiplication-operator norm report
    report    run the suite and render figures next to the delimited data

Data goes to --out (or standard output when --out is omitted); warnings
and progress go to standard error.  Exit codes: 0 success, 1 failing
verification, 2 usage or parameter errors.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from dataclasses import replace
from pathlib import Path
from typing import List, Optional

import numpy as np

from .polynomials import HoloPoly
from .quadrature import DivergentWeightError, RadialProfile
from .spaces import SpaceParams
from .symbols import SymbolParseError, parse_symbol
from .toeplitz import (
    OperatorMatrix,
    berezin_transform,
    hs_matrix,
    hs_norm_via_berezin,
    hs_norm_via_entries,
    toeplitz_poly_matrix,
    toeplitz_sobolev_entry,
)
from .verify import (
    DEFAULT_SEED,
    SuiteConfig,
    check_mult_norm,
    norm_growth_sequence,
    run_suite,
)

_RADIAL_HELP = "named radial profile: power:S for (1-t)^S, gauss:SIGMA, tpoly:c0,c1,..."


def _warn(msg: str) -> None:
    print(f"warning: {msg}", file=sys.stderr)


def _fail(msg: str) -> int:
    print(f"error: {msg}", file=sys.stderr)
    return 2


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("-d", "--d", type=int, default=None,
                   help="complex dimension (default 1; for verify: run d in 1..3)")
    p.add_argument("--lambda", "-l", dest="lam", type=float, default=None,
                   help="weight parameter, must be positive")
    p.add_argument("--n", type=int, default=None, help="Sobolev order override")
    p.add_argument("--degree", "-M", type=int, default=6, help="truncation degree M")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED, help="random seed")
    p.add_argument("--format", choices=("json", "csv"), default="json",
                   help="serialization format for matrix/report data")
    p.add_argument("--out", type=Path, default=None, help="output path (default stdout)")


def _dim(args) -> int:
    return args.d if args.d is not None else 1


def _space(args) -> SpaceParams:
    if args.lam is None:
        raise ValueError("--lambda is required")
    if args.lam <= 0:
        raise ValueError("lambda must be positive")
    if args.n is not None:
        return SpaceParams(_dim(args), args.lam, args.n)
    return SpaceParams(_dim(args), args.lam)


def _holo_from_string(text: str, d: int) -> HoloPoly:
    mixed = parse_symbol(text, d)
    coeffs = {}
    for (a, b), c in mixed.coeffs.items():
        if any(b):
            raise SymbolParseError(f"{text!r} is not holomorphic (contains conj factors)")
        coeffs[a] = c
    return HoloPoly(d, coeffs)


def _radial_from_spec(spec: str, d: int) -> RadialProfile:
    name, _, rest = spec.partition(":")
    if name == "power":
        return RadialProfile.power(float(rest), d)
    if name == "gauss":
        sigma = float(rest) if rest else 1.0
        return RadialProfile(g=lambda t: float(np.exp(-t * t / (2 * sigma * sigma))),
                             klass="bounded")
    if name == "tpoly":
        cs = [float(x) for x in rest.split(",") if x]
        return RadialProfile(g=lambda t: sum(c * t**j for j, c in enumerate(cs)),
                             klass="bounded")
    raise ValueError(f"unknown radial profile {name!r}; {_RADIAL_HELP}")


def _emit(text: str, out: Optional[Path]) -> None:
    if out is None:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    else:
        out.write_text(text if text.endswith("\n") else text + "\n")


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_inner(args) -> int:
    try:
        params = _space(args)
        f = _holo_from_string(args.f, _dim(args))
        g = _holo_from_string(args.g, _dim(args))
    except (ValueError, SymbolParseError) as exc:
        return _fail(str(exc))
    from .spaces import inner_product

    v = inner_product(f, g, params)
    if v.imag == 0.0:
        _emit(repr(v.real), args.out)
    else:
        _emit(f"{v.real!r} {v.imag!r}", args.out)
    return 0


def _matrix_for_args(args, params: SpaceParams) -> OperatorMatrix:
    method = args.method
    M = args.degree
    if method in ("poly", "sobolev"):
        if not args.symbol:
            raise ValueError(f"--method {method} needs --symbol")
        phi = parse_symbol(args.symbol, params.d)
        if method == "poly":
            return toeplitz_poly_matrix(phi, params, M)
        mat = toeplitz_poly_matrix(phi, params, M)  # layout and basis
        from .spaces import normalized_monomial

        basis = mat.basis
        for i, l in enumerate(basis):
            el = normalized_monomial(params.d, l, params.lam)
            for j, m in enumerate(basis):
                em = normalized_monomial(params.d, m, params.lam)
                mat.entries[i, j] = toeplitz_sobolev_entry(el, em, phi, params)
        return mat
    # HS methods
    if args.radial:
        phi = _radial_from_spec(args.radial, params.d)
        phi = replace(phi, klass="L1" if method == "hs-l1" else "L2")
    elif args.symbol:
        phi = parse_symbol(args.symbol, params.d)
    else:
        raise ValueError(f"--method {method} needs --radial or --symbol")
    return hs_matrix(phi, params, M, seed=args.seed)


def cmd_toeplitz(args) -> int:
    try:
        params = _space(args)
        if args.method == "hs-l2" and params.lam <= params.d / 2:
            raise ValueError(
                f"method hs-l2 needs lambda > d/2 = {params.d / 2}, got {params.lam}"
            )
        mat = _matrix_for_args(args, params)
    except (ValueError, SymbolParseError, DivergentWeightError) as exc:
        return _fail(str(exc))

    if args.method in ("hs-l1", "hs-l2") and params.c_lambda == 0.0:
        _warn(f"c_lambda = 0 at integer lambda = {params.lam} <= d: operator is identically zero")

    payload = mat.to_json() if args.format == "json" else mat.to_csv()
    _emit(payload, args.out)

    summary_stream = sys.stdout if args.out is not None else sys.stderr
    if mat.is_hermitian():
        eigs = mat.eigenvalues()
        prev = (
            _matrix_for_args(argparse.Namespace(**{**vars(args), "degree": args.degree - 1}),
                             params).eigenvalues()
            if args.degree > 0
            else eigs
        )
        converged = bool(abs(eigs.max() - prev.max()) <= 1e-8 * max(1.0, abs(eigs.max())))
        print(
            f"spectrum: min={float(eigs.min())!r} max={float(eigs.max())!r} dim={mat.dim} "
            f"M={mat.degree} converged={converged}",
            file=summary_stream,
        )
    else:
        print(
            f"spectrum: non-Hermitian matrix, largest singular value "
            f"{mat.operator_norm()!r} dim={mat.dim} M={mat.degree}",
            file=summary_stream,
        )
    return 0


def cmd_berezin(args) -> int:
    try:
        params = _space(args)
        phi = _radial_from_spec(args.radial, params.d)
        if args.klass:
            phi = replace(phi, klass=args.klass)
        if phi.klass == "L2" and params.lam <= params.d / 2:
            raise ValueError(f"L2 symbols need lambda > d/2, got {params.lam}")
        if phi.klass == "bounded" and params.lam <= params.d:
            raise ValueError(
                f"bounded symbols without decay need lambda > d, got {params.lam}"
            )
    except (ValueError, SymbolParseError) as exc:
        return _fail(str(exc))

    if params.c_lambda == 0.0:
        _warn(f"c_lambda = 0 at integer lambda = {params.lam} <= d: transform is identically zero")

    radii = np.linspace(0.0, 0.9, args.grid)
    rows = ["r,value_re,value_im"]
    try:
        for r in radii:
            z = np.zeros(params.d, dtype=complex)
            z[0] = r
            v = berezin_transform(phi, z, params)
            rows.append(f"{float(r)!r},{float(v.real)!r},{float(v.imag)!r}")
    except DivergentWeightError as exc:
        return _fail(str(exc))
    _emit("\n".join(rows), args.out)
    return 0


def _suite_config(args) -> SuiteConfig:
    dims = (args.d,) if args.d is not None else (1, 2, 3)
    return SuiteConfig(
        dims=dims,
        seed=args.seed,
        only=args.only,
        k_max=args.kmax,
        lam_override=args.lam,
        trials=args.trials,
    )


def cmd_verify(args) -> int:
    reports = run_suite(_suite_config(args))
    lines = [r.to_json() for r in reports]
    _emit("\n".join(lines), args.out)
    n_fail = sum(not r.passed for r in reports)
    print(f"{len(reports) - n_fail}/{len(reports)} checks passed", file=sys.stderr)
    return 0 if n_fail == 0 else 1


def cmd_norm(args) -> int:
    try:
        if args.lam is None or args.lam <= 0:
            raise ValueError("lambda must be positive")
        report = check_mult_norm(args.j, args.lam, _dim(args), args.degree)
    except ValueError as exc:
        return _fail(str(exc))
    _emit(report.to_json(), args.out)
    return 0 if report.passed else 1


def cmd_report(args) -> int:
    from . import plotting

    out_dir: Path = args.out_dir
    out_dir.mkdir(parents=True, exist_ok=True)
    d = _dim(args)
    lam_hs = args.lam if args.lam is not None else d / 2 + 1.1
    lam_low = 0.5 * d
    lam_high = d + 0.7

    # 1. identity suite: JSON lines + per-identity summary CSV + bar figure
    reports = run_suite(SuiteConfig(dims=(1, 2) if d <= 2 else (1, 2, 3), seed=args.seed,
                                    trials=args.trials))
    (out_dir / "verify.jsonl").write_text("\n".join(r.to_json() for r in reports) + "\n")
    by_id = {}
    for r in reports:
        ok, bad = by_id.get(r.identity_id, (0, 0))
        by_id[r.identity_id] = (ok + int(r.passed), bad + int(not r.passed))
    with (out_dir / "verify_summary.csv").open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["identity_id", "passed", "failed"])
        for key in sorted(by_id):
            w.writerow([key, by_id[key][0], by_id[key][1]])
    ids = sorted(by_id)
    plotting.plot_verify_summary(
        ids, [by_id[i][0] for i in ids], [by_id[i][1] for i in ids],
        out_dir / "verify_summary.png",
    )

    # 2. Berezin transform of the constant symbol on a radial grid
    params_hi = SpaceParams(d, lam_high)
    one = RadialProfile(g=lambda t: 1.0, klass="bounded")
    radii = np.linspace(0.0, 0.9, 10)
    values = []
    with (out_dir / "berezin_radial.csv").open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["r", "value"])
        for r in radii:
            z = np.zeros(d, dtype=complex)
            z[0] = r
            v = berezin_transform(one, z, params_hi).real
            values.append(v)
            w.writerow([repr(float(r)), repr(v)])
    plotting.plot_berezin_radial(radii, values, params_hi.c_lambda, lam_high, d,
                                 out_dir / "berezin_radial.png")

    # 3. HS norm convergence for a decaying radial symbol
    params_hs = SpaceParams(d, lam_hs)
    profile = RadialProfile.power(2.0 * d, d)
    target = hs_norm_via_berezin(profile, params_hs)
    degrees = list(range(0, args.degree + 1, 2))
    norms = [hs_norm_via_entries(hs_matrix(profile, params_hs, M)) for M in degrees]
    with (out_dir / "hs_convergence.csv").open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["M", "entries_norm", "berezin_norm"])
        for M, v in zip(degrees, norms):
            w.writerow([M, repr(v), repr(target)])
    plotting.plot_hs_convergence(degrees, norms, target, lam_hs, d,
                                 out_dir / "hs_convergence.png")

    # 4. norm growth witness below lambda = d
    seq = norm_growth_sequence(lam_low, d, args.kmax)
    ks = list(range(1, args.kmax + 1))
    with (out_dir / "norm_growth.csv").open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["k", "eigenvalue_on_constant"])
        for k, v in zip(ks, seq):
            w.writerow([k, repr(v)])
    plotting.plot_norm_growth(ks, seq, lam_low, d, out_dir / "norm_growth.png")

    n_fail = sum(not r.passed for r in reports)
    print(f"report written to {out_dir} ({len(reports) - n_fail}/{len(reports)} checks passed)",
          file=sys.stderr)
    return 0 if n_fail == 0 else 1


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bergman", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("inner", help="inner product of two holomorphic polynomials")
    _add_common(p)
    p.add_argument("--f", required=True, help="first polynomial, e.g. 'z1*z2'")
    p.add_argument("--g", required=True, help="second polynomial")
    p.set_defaults(func=cmd_inner)

    p = sub.add_parser("toeplitz", help="build a Toeplitz operator matrix")
    _add_common(p)
    p.add_argument("--method", choices=("poly", "sobolev", "hs-l1", "hs-l2"), default="poly")
    p.add_argument("--symbol", help="polynomial symbol, e.g. 'conj(z1)*z1'")
    p.add_argument("--radial", help=_RADIAL_HELP)
    p.set_defaults(func=cmd_toeplitz)

    p = sub.add_parser("berezin", help="Berezin transform of a radial symbol")
    _add_common(p)
    p.add_argument("--radial", required=True, help=_RADIAL_HELP)
    p.add_argument("--klass", choices=("bounded", "L1", "L2"), default=None,
                   help="override the declared integrability class")
    p.add_argument("--grid", type=int, default=10, help="number of radial grid points")
    p.set_defaults(func=cmd_berezin)

    p = sub.add_parser("verify", help="run the identity verification suite")
    _add_common(p)
    p.add_argument("--only", default=None, help="restrict to one identity id")
    p.add_argument("--kmax", type=int, default=10, help="largest symbol power for norm-growth")
    p.add_argument("--trials", type=int, default=3, help="random instances per parameter point")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("norm", help="truncated multiplication operator norm")
    _add_common(p)
    p.add_argument("-j", type=int, default=1, help="coordinate index, 1-based")
    p.set_defaults(func=cmd_norm)

    p = sub.add_parser("report", help="verification report with figures")
    _add_common(p)
    p.add_argument("--out-dir", type=Path, default=Path("bergman-report"))
    p.add_argument("--kmax", type=int, default=10)
    p.add_argument("--trials", type=int, default=2)
    p.set_defaults(func=cmd_report)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
