"""Command-line front end.

Subcommands: analyze, df, destabilize, verify, sweep. Results go to
standard output, diagnostics to standard error. Exit codes: 0 success,
1 verification or mathematical failure, 2 usage or parse error. All
output is exact and deterministic; identical flags give identical bytes.
"""

from __future__ import annotations

import argparse
import csv
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from .bigraded import AmbientShape, OneParameterSubgroup
from .certificate import CertificateFormatError, emit, verify
from .dfcalc import (
    CrossCheckError,
    Inconclusive,
    Polarization,
    decide_instability,
    df_closed,
    df_general,
    expansion,
)
from .geometry import (
    BilinearForm,
    NormalForm,
    destabilizer,
    is_normal,
    is_smooth,
    normalize,
    semiinvariant_alpha,
)


class InputError(Exception):
    """Malformed user input (file or flags); maps to exit code 2."""


def _decimal_str(q: Fraction, places: int = 6) -> str:
    """Decimal approximation computed without floating point."""
    scaled = round(q * 10**places)
    sign = "-" if scaled < 0 else ""
    digits = abs(scaled)
    return f"{sign}{digits // 10**places}.{digits % 10**places:0{places}d}"


def _parse_weights(text: str, expected_len: int, flag: str) -> tuple[int, ...]:
    try:
        weights = tuple(int(tok) for tok in text.split(","))
    except ValueError as exc:
        raise InputError(f"{flag} must be a comma-separated integer list: {exc}") from exc
    if len(weights) != expected_len:
        raise InputError(f"{flag} must have {expected_len} entries, got {len(weights)}")
    return weights


def _read_matrix(path: str) -> BilinearForm:
    try:
        with open(path, newline="", encoding="utf-8") as handle:
            rows = [row for row in csv.reader(handle) if row]
    except OSError as exc:
        raise InputError(f"cannot read matrix file {path!r}: {exc}") from exc
    if not rows:
        raise InputError(f"matrix file {path!r} is empty")
    try:
        parsed = [[Fraction(tok.strip()) for tok in row] for row in rows]
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"malformed matrix entry in {path!r}: {exc}") from exc
    if any(len(row) != len(parsed[0]) for row in parsed):
        raise InputError(f"matrix file {path!r} is not rectangular")
    try:
        return BilinearForm.from_rows(parsed)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def _normal_form(args: argparse.Namespace) -> NormalForm:
    try:
        shape = AmbientShape(args.m, args.n)
        return NormalForm(shape, args.r)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def cmd_analyze(args: argparse.Namespace) -> int:
    if args.matrix is not None:
        form = _read_matrix(args.matrix)
        nf = normalize(form)  # ValueError on the zero matrix -> exit 1
    else:
        if args.m is None or args.n is None or args.r is None:
            raise InputError("provide either --matrix FILE or all of --m, --n, --r")
        nf = _normal_form(args)
    m, n, r = nf.shape.m, nf.shape.n, nf.r
    print(f"m: {m}")
    print(f"n: {n}")
    print(f"r: {r}")
    print(f"normal: {'yes' if is_normal(nf) else 'no (r = 0)'}")
    print(f"smooth: {'yes' if is_smooth(nf) else 'no'}")
    if not is_normal(nf):
        print("method applies: no (not normal)")
    elif m == n and r == min(m, n):
        print("method applies: no (m = n and the hypersurface is smooth)")
    else:
        print("method applies: yes")
    return 0


def cmd_df(args: argparse.Namespace) -> int:
    r = args.r if args.r is not None else min(args.m, args.n)
    nf = _normal_form(argparse.Namespace(m=args.m, n=args.n, r=r))
    lam = OneParameterSubgroup(
        _parse_weights(args.u, args.m + 1, "--u"),
        _parse_weights(args.v, args.n + 1, "--v"),
    )
    lam.require_special_linear()  # ValueError -> exit 1 with the violated sum
    pol = Polarization(args.d, args.e)
    alpha = semiinvariant_alpha(nf, lam)
    coeffs = expansion(nf.shape, pol, lam, alpha)
    from_definition = df_general(coeffs)
    from_closed_form = df_closed(nf.shape, pol, alpha)
    if from_definition != from_closed_form:
        raise CrossCheckError(
            f"DF routes disagree: definition {from_definition}, closed form {from_closed_form}"
        )
    print(f"alpha = {alpha}")
    print(f"a0 = {coeffs.a0}")
    print(f"a1 = {coeffs.a1}")
    print(f"b0 = {coeffs.b0}")
    print(f"b1 = {coeffs.b1}")
    print(f"DF (definition) = {from_definition}")
    print(f"DF (closed form) = {from_closed_form}")
    if args.decimal:
        print(f"DF approx = {_decimal_str(from_definition)} (approximate, informational only)")
    print("paths agree: yes")
    return 0


def cmd_destabilize(args: argparse.Namespace) -> int:
    nf = _normal_form(args)
    pol = Polarization(args.d, args.e)
    result = decide_instability(nf, pol)
    if isinstance(result, Inconclusive):
        print(f"inconclusive: {result.reason}", file=sys.stderr)
        return 1
    text = emit(result)
    summary = [
        f"lambda_u = {','.join(str(w) for w in result.lambda_u)}",
        f"lambda_v = {','.join(str(w) for w in result.lambda_v)}",
        f"alpha = {result.alpha}",
        f"DF = {result.df}",
    ]
    if args.out is None:
        sys.stdout.write(text)
        print("\n".join(summary), file=sys.stderr)
    else:
        try:
            with open(args.out, "w", encoding="utf-8") as handle:
                handle.write(text)
        except OSError as exc:
            raise InputError(f"cannot write certificate to {args.out!r}: {exc}") from exc
        print("\n".join(summary))
        print(f"certificate written to {args.out}", file=sys.stderr)
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    try:
        with open(args.certificate, encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise InputError(f"cannot read certificate {args.certificate!r}: {exc}") from exc
    verdict = verify(text)
    if verdict.ok:
        print("OK")
        return 0
    for failure in verdict.failures:
        print(f"FAIL {failure.check}: expected {failure.expected}, found {failure.found}")
    return 1


def _sweep_cell(cell: tuple[int, int, int, int, int]) -> str:
    m, n, r, d, e = cell
    result = decide_instability(NormalForm(AmbientShape(m, n), r), Polarization(d, e))
    assert not isinstance(result, Inconclusive)  # hypothesis was checked upfront
    return str(result.df)


def cmd_sweep(args: argparse.Namespace) -> int:
    nf = _normal_form(args)
    if args.parallel < 1:
        raise InputError("--parallel must be >= 1")
    probe = decide_instability(nf, Polarization(1, 1))
    if isinstance(probe, Inconclusive):
        print(f"inconclusive: {probe.reason}", file=sys.stderr)
        return 1
    cells = [
        (nf.shape.m, nf.shape.n, nf.r, d, e)
        for d in range(1, args.dmax + 1)
        for e in range(1, args.emax + 1)
    ]
    if args.parallel == 1:
        values = [_sweep_cell(cell) for cell in cells]
    else:
        with ProcessPoolExecutor(max_workers=args.parallel) as pool:
            values = list(pool.map(_sweep_cell, cells))
    table = {
        (cell[3], cell[4]): value for cell, value in zip(cells, values)
    }
    print(f"DF for m={nf.shape.m} n={nf.shape.n} r={nf.r} (rows d, columns e)")
    _print_grid(table, args.dmax, args.emax)
    if args.decimal:
        print("approximate values (6 decimal places, informational only)")
        approx = {key: _decimal_str(Fraction(value)) for key, value in table.items()}
        _print_grid(approx, args.dmax, args.emax)
    return 0


def _print_grid(table: dict[tuple[int, int], str], dmax: int, emax: int) -> None:
    header = ["d\\e"] + [str(e) for e in range(1, emax + 1)]
    rows = [
        [str(d)] + [table[(d, e)] for e in range(1, emax + 1)]
        for d in range(1, dmax + 1)
    ]
    widths = [
        max(len(line[col]) for line in [header] + rows)
        for col in range(len(header))
    ]
    for line in [header] + rows:
        print("  ".join(cell.rjust(width) for cell, width in zip(line, widths)))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kstab",
        description=(
            "Exact Donaldson-Futaki invariants and K-instability certificates "
            "for bidegree-(1,1) hypersurfaces in P^m x P^n."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_analyze = sub.add_parser("analyze", help="normal form, smoothness and applicability report")
    p_analyze.add_argument("--matrix", help="CSV coefficient matrix (rows = x variables)")
    p_analyze.add_argument("--m", type=int)
    p_analyze.add_argument("--n", type=int)
    p_analyze.add_argument("--r", type=int)
    p_analyze.set_defaults(func=cmd_analyze)

    p_df = sub.add_parser("df", help="Donaldson-Futaki invariant of a given subgroup")
    p_df.add_argument("--m", type=int, required=True)
    p_df.add_argument("--n", type=int, required=True)
    p_df.add_argument("--r", type=int, help="normal form rank data (default min(m, n))")
    p_df.add_argument("--d", type=int, required=True)
    p_df.add_argument("--e", type=int, required=True)
    p_df.add_argument("--u", required=True, help="comma-separated weights on x coordinates")
    p_df.add_argument("--v", required=True, help="comma-separated weights on y coordinates")
    p_df.add_argument("--decimal", action="store_true", help="also print a marked decimal approximation")
    p_df.set_defaults(func=cmd_df)

    p_dest = sub.add_parser("destabilize", help="build the destabilizer and write a certificate")
    p_dest.add_argument("--m", type=int, required=True)
    p_dest.add_argument("--n", type=int, required=True)
    p_dest.add_argument("--r", type=int, required=True)
    p_dest.add_argument("--d", type=int, required=True)
    p_dest.add_argument("--e", type=int, required=True)
    p_dest.add_argument("--out", help="certificate path (default: certificate JSON to stdout)")
    p_dest.set_defaults(func=cmd_destabilize)

    p_verify = sub.add_parser("verify", help="recheck a certificate from scratch")
    p_verify.add_argument("certificate", help="certificate JSON file")
    p_verify.set_defaults(func=cmd_verify)

    p_sweep = sub.add_parser("sweep", help="table of DF values over a (d, e) grid")
    p_sweep.add_argument("--m", type=int, required=True)
    p_sweep.add_argument("--n", type=int, required=True)
    p_sweep.add_argument("--r", type=int, required=True)
    p_sweep.add_argument("--dmax", type=int, required=True)
    p_sweep.add_argument("--emax", type=int, required=True)
    p_sweep.add_argument("--parallel", type=int, default=1, help="worker processes (output is unchanged)")
    p_sweep.add_argument("--decimal", action="store_true", help="also print a marked decimal approximation")
    p_sweep.set_defaults(func=cmd_sweep)
    return parser


def _merge_weight_flags(argv: list[str]) -> list[str]:
    """Join '--u -1,-1,2' into '--u=-1,-1,2' so argparse does not mistake a
    leading minus for an option."""
    merged: list[str] = []
    i = 0
    while i < len(argv):
        if argv[i] in ("--u", "--v") and i + 1 < len(argv):
            merged.append(f"{argv[i]}={argv[i + 1]}")
            i += 2
        else:
            merged.append(argv[i])
            i += 1
    return merged


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    argv = _merge_weight_flags(sys.argv[1:] if argv is None else list(argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse has already printed the diagnostic
        return int(exc.code or 0)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CertificateFormatError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except CrossCheckError as exc:
        print(f"cross-check failed: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def entrypoint() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entrypoint()
