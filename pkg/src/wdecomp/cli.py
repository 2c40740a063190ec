"""Command-line front end: ``wdecomp {decompose,verify,sylvester,border,report}``.

Exit codes: 0 success, 2 invalid input or malformed file, 3 verification failure.
The environment variable ``WDECOMP_TOL`` overrides the default tolerance.
"""
from __future__ import annotations

import argparse
import itertools
import json
import os
import sys
import warnings
from fractions import Fraction

from . import __version__
from . import io as wio
from .binwaring import BinaryForm, sylvester_decompose
from .borderrank import flattening_rank, jet_convergence
from .decomposer import (
    bound_value,
    decompose_w_product,
    prior_bound_delta,
    verify_decomposition,
)
from .exceptions import (
    InvalidProfileError,
    MalformedFileError,
    SylvesterFailure,
    VerificationError,
    ZeroFormError,
)
from .indexcomb import DegreeProfile

EXIT_OK, EXIT_INPUT, EXIT_VERIFY = 0, 2, 3
JET_RATIO_RANGE = (0.4, 0.6)


def default_tol() -> float:
    env = os.environ.get("WDECOMP_TOL")
    if env:
        try:
            return float(env)
        except ValueError:
            pass
    return 1e-8


class InputError(Exception):
    pass


def parse_dims(text: str) -> DegreeProfile:
    try:
        dims = tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise InputError(f"cannot parse dims {text!r}") from None
    try:
        return DegreeProfile(dims)
    except InvalidProfileError as exc:
        raise InputError(str(exc)) from None


def _parse_scalar(text: str):
    text = text.strip()
    try:
        return Fraction(text)
    except ValueError:
        try:
            return complex(text.replace("i", "j"))
        except ValueError:
            raise InputError(f"cannot parse coefficient {text!r}") from None


def _fmt(z) -> str:
    if isinstance(z, Fraction):
        return str(z)
    z = complex(z)
    if abs(z.imag) < 1e-15:
        return f"{z.real:.12g}"
    return f"{z.real:.12g}{z.imag:+.12g}j"


def _jsonable(z):
    if isinstance(z, Fraction):
        return str(z)
    z = complex(z)
    return [z.real, z.imag]


def cmd_decompose(args) -> int:
    profile = parse_dims(args.dims)
    tol = args.tol if args.tol is not None else default_tol()
    try:
        rep = decompose_w_product(profile, tol=tol, scaled=args.scaled, n_jobs=args.parallel)
    except VerificationError as exc:
        print(f"verification failed: residual {exc.residual:.3e} > {tol:.3e}", file=sys.stderr)
        return EXIT_VERIFY
    meta = {"anchors": wio.anchors_to_json(rep.anchors), "tolerance": tol, "residual": rep.residual}
    if args.format == "json":
        text = wio.dumps(rep.decomposition, meta)
    else:
        lines = [f"# W product {profile.degrees}, scale {rep.decomposition.target_scale}"]
        for n, t in enumerate(rep.decomposition.terms):
            vecs = " ".join(f"({_fmt(p)}, {_fmt(q)})" for p, q in t.vectors)
            lines.append(f"{n:4d}  {_fmt(t.weight)}  {vecs}")
        text = "\n".join(lines)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    elif args.format == "text":
        print(text)
    print(
        f"length {rep.length}  bound {rep.bound}  prior bound {rep.bound + prior_bound_delta(profile)}  "
        f"residual {rep.residual:.3e}",
        file=sys.stderr if args.out is None and args.format == "json" else sys.stdout,
    )
    if args.out is None and args.format == "json":
        print(text)
    return EXIT_OK


def cmd_verify(args) -> int:
    tol = args.tol if args.tol is not None else default_tol()
    dec, _meta = wio.load(args.path)
    ok, res = verify_decomposition(dec, tol)
    print(f"{'ok' if ok else 'FAIL'}  terms {len(dec)}  residual {res:.3e}  tolerance {tol:.3e}")
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_sylvester(args) -> int:
    coeffs = [_parse_scalar(x) for x in args.coeffs.split(",") if x.strip()]
    if len(coeffs) < 2:
        raise InputError("need at least two coefficients")
    if all(isinstance(c, Fraction) for c in coeffs):
        F = BinaryForm(coeffs)
    else:
        F = BinaryForm([complex(c) for c in coeffs])
    try:
        W = sylvester_decompose(F)
    except ZeroFormError as exc:
        raise InputError(str(exc)) from None
    except SylvesterFailure as exc:
        print(f"sylvester failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    if args.format == "json":
        out = {
            "degree": F.degree,
            "rank": len(W),
            "kernel_element": [_jsonable(c) for c in W.kernel_element.coeffs],
            "roots": [[_jsonable(a), _jsonable(b)] for _, a, b in W.terms],
            "weights": [_jsonable(l) for l, _, _ in W.terms],
        }
        print(json.dumps(out))
    else:
        print(f"degree {F.degree}  rank {len(W)}")
        print(f"kernel element: {W.kernel_element}")
        for l, a, b in W.terms:
            print(f"  {_fmt(l)} * ({_fmt(a)} u + {_fmt(b)} v)^{F.degree}")
    return EXIT_OK


def cmd_border(args) -> int:
    profile = parse_dims(args.dims)
    fr = flattening_rank(profile)
    expected = 2**profile.k
    print(f"flattening rank {fr} {'=' if fr == expected else '!='} 2^{profile.k}")
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        grid, ratios = jet_convergence(profile, args.eps)
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    for eps, res in grid:
        print(f"  eps {eps:.3e}  residual {res:.3e}")
    lo, hi = JET_RATIO_RANGE
    converging = all(lo <= r <= hi for r in ratios)
    print(f"halving ratios {', '.join(f'{r:.4f}' for r in ratios)}  {'first-order' if converging else 'NOT first-order'}")
    return EXIT_OK if fr == expected and converging else EXIT_VERIFY


def report_rows(kmax: int, dmax: int, tol: float) -> list:
    rows = []
    for k in range(2, kmax + 1):
        for dims in itertools.combinations_with_replacement(range(3, dmax + 1), k):
            rep = decompose_w_product(dims, tol=tol)
            rows.append(
                {
                    "dims": list(dims),
                    "bound": bound_value(dims),
                    "prior": bound_value(dims) + prior_bound_delta(dims),
                    "achieved": rep.length,
                    "residual": rep.residual,
                    "flattening_rank": flattening_rank(dims),
                }
            )
    return rows


def cmd_report(args) -> int:
    tol = default_tol()
    rows = report_rows(args.kmax, args.dmax, tol)
    header = f"{'dims':<16}{'bound':>7}{'prior':>7}{'achieved':>10}{'residual':>12}{'flat.rank':>11}"
    lines = [header]
    for r in rows:
        dims = ",".join(map(str, r["dims"]))
        lines.append(
            f"{dims:<16}{r['bound']:>7}{r['prior']:>7}{r['achieved']:>10}{r['residual']:>12.2e}{r['flattening_rank']:>11}"
        )
    text = "\n".join(lines)
    if args.out:
        with open(args.out, "w") as fh:
            if args.out.endswith(".json"):
                json.dump(rows, fh, indent=1)
            else:
                fh.write(text + "\n")
    print(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="wdecomp", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"wdecomp {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decompose", help="decompose W_{d1} x ... x W_{dk}")
    p.add_argument("--dims", required=True, help="comma-separated degrees, e.g. 3,3")
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--out", default=None)
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--scaled", action="store_true", help="decompose prod(d_j) * W instead of W")
    p.add_argument("--parallel", type=int, default=os.cpu_count(), metavar="N")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("verify", help="check a decomposition file against W")
    p.add_argument("path")
    p.add_argument("--tol", type=float, default=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sylvester", help="Waring rank and decomposition of a binary form")
    p.add_argument("--coeffs", required=True, help="a_0,...,a_e of sum a_i C(e,i) u^(e-i) v^i")
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.set_defaults(func=cmd_sylvester)

    p = sub.add_parser("border", help="border-rank certificate")
    p.add_argument("--dims", required=True)
    p.add_argument("--eps", type=float, default=1e-4)
    p.set_defaults(func=cmd_border)

    p = sub.add_parser("report", help="bound comparison table over a grid of profiles")
    p.add_argument("--kmax", type=int, default=3)
    p.add_argument("--dmax", type=int, default=4)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_report)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, MalformedFileError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
