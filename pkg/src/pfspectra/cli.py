"""Command-line front end: surveys, certificates, and experiments.

Exit codes: 0 all checks passed; 1 a mathematical check failed; 2 usage
error; 3 incomplete enumeration; 4 certification failure; 5 no center
near the requested anchor; 6 numerical non-convergence.  All artifacts
are deterministic: fixed sort orders, 17-significant-digit decimals, and
a worker pool that never reorders output.
"""

import argparse
import dataclasses
import io
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .dynamics import (
    IncompleteEnumeration,
    SearchConfig,
    find_centers,
    find_cycles,
)
from .equidist import (
    ANCHOR_MINUS_TWO,
    NoNearbyCenter,
    run_experiment,
)
from .gleason import build_tower, certify_poonen, certify_simple_roots, degree_check
from .spectrum import (
    ContourTooClose,
    NonConvergence,
    build_matrix_explicit,
    build_matrix_residues,
    charpoly_structural,
    chi2_from_orbit,
    derivative_identity_check,
    solve_spectra,
)
from .svg import annulus_scatter, rings_scatter
from .units import CeilingExceeded, certify, certificate_json_dict, crosscheck_numeric

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_INCOMPLETE = 3
EXIT_CERTIFICATION = 4
EXIT_NO_NEARBY = 5
EXIT_NUMERIC = 6

ANCHORS = {(2, -2 + 0j): ANCHOR_MINUS_TWO}


def _g17(x) -> str:
    return format(float(x), ".17g")


def _complex_json(z) -> dict:
    z = complex(z)
    return {
        "re": float(z.real),
        "im": float(z.imag),
        "re_hex": float(z.real).hex(),
        "im_hex": float(z.imag).hex(),
    }


def _thread_count(args) -> int:
    if getattr(args, "threads", None):
        return max(1, args.threads)
    env = os.environ.get("PF_SPECTRA_THREADS", "")
    if env.strip():
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return 1


def _parse_periods(text: str, parser) -> list:
    try:
        periods = [int(p) for p in text.split(",") if p.strip()]
    except ValueError:
        parser.error(f"cannot parse period list {text!r}")
    if not periods or any(m < 1 for m in periods):
        parser.error("periods must be positive integers")
    return periods


def _write_out(args, content: str) -> None:
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(content)
    else:
        sys.stdout.write(content)


def _emit_failure(args, payload: dict) -> None:
    text = json.dumps(payload, sort_keys=True)
    if getattr(args, "json", False):
        sys.stdout.write(text + "\n")
    else:
        print(text, file=sys.stderr)


def cmd_gleason(args, parser) -> int:
    tower = build_tower(args.degree, args.max_period)
    payload = {
        "degree": args.degree,
        "g": {
            str(n): tower.g_poly(n).to_decimal_strings()
            for n in range(1, args.max_period + 1)
        },
        "h": {
            str(m): tower.h_poly(m).to_decimal_strings()
            for m in range(1, args.max_period + 1)
        },
    }
    failed = []
    if args.certify:
        simple = all(
            certify_simple_roots(tower, n).passed
            for n in range(1, args.max_period + 1)
        )
        poonen = all(
            certify_poonen(tower, m, n).passed
            for m in range(1, args.max_period + 1)
            for n in range(m + 1, args.max_period + 1)
        )
        try:
            degree_check(tower)
            degrees = True
        except AssertionError:
            degrees = False
        payload["certificates"] = {
            "simple_roots": simple,
            "coprime_pairs": poonen,
            "degrees": degrees,
        }
        for name, ok in payload["certificates"].items():
            if not ok:
                failed.append(name)
    if args.json:
        _write_out(args, json.dumps(payload, sort_keys=True, indent=2) + "\n")
    else:
        lines = []
        for m in range(1, args.max_period + 1):
            lines.append(f"H_{m} = {tower.h_poly(m).to_str()}")
        if args.certify:
            for name, ok in payload["certificates"].items():
                lines.append(f"{name}: {'pass' if ok else 'FAIL'}")
        _write_out(args, "\n".join(lines) + "\n")
    if failed:
        _emit_failure(args, {"failed": failed})
        return EXIT_CHECK_FAILED
    return EXIT_OK


def cmd_centers(args, parser) -> int:
    config = dataclasses.replace(SearchConfig(), precision=args.precision)
    try:
        records = find_centers(args.degree, args.period, config)
    except IncompleteEnumeration as exc:
        _emit_failure(args, {"failed": ["enumeration"], "detail": str(exc)})
        return EXIT_INCOMPLETE
    if args.json:
        rows = [
            {
                "degree": r.degree,
                "period": r.period,
                "center": _complex_json(r.center),
                "residual": r.residual,
            }
            for r in records
        ]
        _write_out(args, json.dumps(rows, sort_keys=True, indent=2) + "\n")
    else:
        buf = io.StringIO()
        buf.write("degree,period,re_c,im_c,residual\n")
        for r in records:
            c = complex(r.center)
            buf.write(
                f"{r.degree},{r.period},{_g17(c.real)},{_g17(c.imag)},"
                f"{_g17(r.residual)}\n"
            )
        _write_out(args, buf.getvalue())
    return EXIT_OK


def _survey_one(degree: int, period: int, precision: int):
    config = dataclasses.replace(SearchConfig(), precision=precision)
    records = find_centers(degree, period, config)
    if period < 3:
        return period, records, None
    results = solve_spectra([chi2_from_orbit(r) for r in records])
    return period, records, results


def survey_csv(outputs):
    """CSV text, pooled eigenvalues, failed checks, and notes for a survey.

    outputs is a list of (period, records, results-or-None) triples in the
    canonical period order, as produced by _survey_one.
    """
    buf = io.StringIO()
    buf.write("degree,period,re_c,im_c,re_lambda,im_lambda,residual,abs_lambda\n")
    all_eigs = []
    failed = []
    notes = []
    for period, records, results in outputs:
        if results is None:
            notes.append(
                f"period {period}: differential space has dimension "
                f"{max(period - 2, 0)}, no eigenvalues"
            )
            continue
        for rec, res in zip(records, results):
            c = complex(rec.center)
            if not res.gap_ok:
                failed.append(
                    {"period": period, "center": _complex_json(c), "check": "gap"}
                )
            ident = derivative_identity_check(rec, res)
            if not ident.passed:
                failed.append(
                    {
                        "period": period,
                        "center": _complex_json(c),
                        "check": "derivative_identity",
                    }
                )
            for lam, resid in zip(res.eigenvalues, res.eigenvalue_residuals):
                all_eigs.append(lam)
                buf.write(
                    f"{rec.degree},{period},{_g17(c.real)},{_g17(c.imag)},"
                    f"{_g17(lam.real)},{_g17(lam.imag)},{_g17(resid)},"
                    f"{_g17(abs(lam))}\n"
                )
    return buf.getvalue(), all_eigs, failed, notes


def cmd_survey(args, parser) -> int:
    periods = _parse_periods(args.periods, parser)
    pool = ThreadPoolExecutor(max_workers=_thread_count(args))
    try:
        outputs = list(
            pool.map(
                lambda m: _survey_one(args.degree, m, args.precision), periods
            )
        )
    except IncompleteEnumeration as exc:
        _emit_failure(args, {"failed": ["enumeration"], "detail": str(exc)})
        return EXIT_INCOMPLETE
    except NonConvergence as exc:
        _emit_failure(args, {"failed": ["eigen_solve"], "detail": str(exc)})
        return EXIT_NUMERIC
    finally:
        pool.shutdown()
    csv_text, all_eigs, failed, notes = survey_csv(outputs)
    _write_out(args, csv_text)
    if args.svg:
        label = f"degree {args.degree}, periods {','.join(map(str, periods))}"
        with open(args.svg, "w") as fh:
            fh.write(annulus_scatter(all_eigs, args.degree, label))
    for note in notes:
        print(note, file=sys.stderr)
    if failed:
        _emit_failure(args, {"failed": failed})
        return EXIT_CHECK_FAILED
    return EXIT_OK


def cmd_certify_units(args, parser) -> int:
    tower = build_tower(args.degree, args.period)
    try:
        cert = certify(tower, args.period, force=args.force)
    except CeilingExceeded as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        parser.error(str(exc))
    try:
        records = find_centers(args.degree, args.period)
        spectra = solve_spectra([chi2_from_orbit(r) for r in records])
        distance = crosscheck_numeric(cert, spectra)
    except IncompleteEnumeration as exc:
        _emit_failure(args, {"failed": ["enumeration"], "detail": str(exc)})
        return EXIT_INCOMPLETE
    except (ArithmeticError, NonConvergence) as exc:
        _emit_failure(args, {"failed": ["crosscheck"], "detail": str(exc)})
        return EXIT_CERTIFICATION
    cert = dataclasses.replace(cert, crosscheck=distance)
    payload = certificate_json_dict(cert)
    _write_out(args, json.dumps(payload, sort_keys=True, indent=2) + "\n")
    if not cert.unit_ok or distance > 1e-6:
        _emit_failure(
            args,
            {
                "failed": ["unit_certificate"],
                "unit_ok": cert.unit_ok,
                "crosscheck": distance,
            },
        )
        return EXIT_CERTIFICATION
    return EXIT_OK


def cmd_cycles(args, parser) -> int:
    try:
        param = complex(args.param)
    except ValueError:
        parser.error(f"cannot parse parameter {args.param!r}")
    try:
        cycles = find_cycles(args.degree, param, args.max_period)
    except IncompleteEnumeration as exc:
        _emit_failure(args, {"failed": ["enumeration"], "detail": str(exc)})
        return EXIT_INCOMPLETE
    lo = 1.0 / (2 * args.degree)
    failed = []
    rows = []
    for cyc in cycles:
        for lam in cyc.eigenvalues:
            if not lo - 1e-9 <= abs(lam) < 1.0:
                failed.append(
                    {"period": cyc.period, "eigenvalue": _complex_json(lam)}
                )
        rows.append(
            {
                "period": cyc.period,
                "postcritical": cyc.postcritical,
                "multiplier": _complex_json(cyc.multiplier),
                "points": [_complex_json(z) for z in cyc.points],
                "eigenvalues": [_complex_json(z) for z in cyc.eigenvalues],
            }
        )
    if args.json:
        _write_out(args, json.dumps(rows, sort_keys=True, indent=2) + "\n")
    else:
        lines = []
        for row in rows:
            mult = row["multiplier"]
            tag = " (postcritical)" if row["postcritical"] else ""
            lines.append(
                f"period {row['period']}{tag}: multiplier "
                f"{_g17(mult['re'])}{'+' if mult['im'] >= 0 else ''}"
                f"{_g17(mult['im'])}j, {len(row['eigenvalues'])} eigenvalues"
            )
        _write_out(args, "\n".join(lines) + "\n")
    if failed:
        _emit_failure(args, {"failed": failed})
        return EXIT_CHECK_FAILED
    return EXIT_OK


def cmd_equidist(args, parser) -> int:
    try:
        c0 = complex(args.anchor)
    except ValueError:
        parser.error(f"cannot parse anchor {args.anchor!r}")
    anchor = ANCHORS.get((args.degree, c0))
    if anchor is None:
        supported = ", ".join(
            f"degree {d} anchor {a}" for d, a in sorted(ANCHORS, key=str)
        )
        parser.error(f"unsupported anchor; available: {supported}")
    periods = _parse_periods(args.periods, parser)
    try:
        records, measures, report = run_experiment(
            anchor, periods, precision=args.precision
        )
    except NoNearbyCenter as exc:
        _emit_failure(args, {"failed": ["center_sequence"], "detail": str(exc)})
        return EXIT_NO_NEARBY
    payload = {
        "anchor": _complex_json(anchor.c0),
        "multiplier": _complex_json(anchor.multiplier),
        "periods": list(report.periods),
        "centers": [_complex_json(r.center) for r in records],
        "max_moments": [float(x) for x in report.max_moments],
        "radial_deviations": [float(x) for x in report.radial_deviations],
        "moment_slope": report.moment_slope,
        "radial_slope": report.radial_slope,
        "passed": report.passed,
    }
    _write_out(args, json.dumps(payload, sort_keys=True, indent=2) + "\n")
    if args.svg:
        with open(args.svg, "w") as fh:
            fh.write(rings_scatter(measures))
    return EXIT_OK if report.passed else EXIT_CHECK_FAILED


def cmd_matrix(args, parser) -> int:
    try:
        records = find_centers(args.degree, args.period)
    except IncompleteEnumeration as exc:
        _emit_failure(args, {"failed": ["enumeration"], "detail": str(exc)})
        return EXIT_INCOMPLETE
    if not 0 <= args.index < len(records):
        parser.error(
            f"index {args.index} out of range: {len(records)} centers"
        )
    rec = records[args.index]
    explicit = build_matrix_explicit(rec)
    try:
        residue = build_matrix_residues(
            rec.degree, rec.center_complex(), rec.orbit_complex()
        )
    except ContourTooClose as exc:
        _emit_failure(args, {"failed": ["contour"], "detail": str(exc)})
        return EXIT_NUMERIC
    deviation = float(np.max(np.abs(explicit.entries - residue.entries)))
    charpoly = charpoly_structural(explicit)
    payload = {
        "degree": rec.degree,
        "period": rec.period,
        "center": _complex_json(rec.center),
        "entries": [
            [_complex_json(z) for z in row] for row in explicit.entries
        ],
        "residue_deviation": deviation,
        "charpoly_ascending": [_complex_json(z) for z in charpoly],
    }
    _write_out(args, json.dumps(payload, sort_keys=True, indent=2) + "\n")
    if deviation > 1e-8:
        _emit_failure(args, {"failed": ["residue_match"], "deviation": deviation})
        return EXIT_CHECK_FAILED
    return EXIT_OK


def _add_common(sub) -> None:
    sub.add_argument("--degree", type=int, required=True, help="polynomial degree D >= 2")
    sub.add_argument("--precision", type=int, default=53, help="working precision in bits")
    sub.add_argument("--out", help="output file (default stdout)")
    sub.add_argument("--json", action="store_true", help="machine-readable output")
    sub.add_argument("--threads", type=int, help="worker pool width (or PF_SPECTRA_THREADS)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pfspectra",
        description="Spectra of the pushforward operator for unicritical polynomials",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("gleason", help="orbit and period polynomials with exact certificates")
    _add_common(p)
    p.add_argument("--max-period", type=int, required=True)
    p.add_argument("--certify", action="store_true", help="run simple-root and coprimality certificates")
    p.set_defaults(func=cmd_gleason)

    p = subs.add_parser("centers", help="enumerate all centers of one period")
    _add_common(p)
    p.add_argument("--period", type=int, required=True)
    p.set_defaults(func=cmd_centers)

    p = subs.add_parser("survey", help="center spectra over a range of periods")
    _add_common(p)
    p.add_argument("--periods", required=True, help="comma-separated period list")
    p.add_argument("--svg", help="write an annulus scatter figure")
    p.set_defaults(func=cmd_survey)

    p = subs.add_parser("certify-units", help="exact algebraic-unit certificate for one period")
    _add_common(p)
    p.add_argument("--period", type=int, required=True)
    p.add_argument("--force", action="store_true", help="exceed the default size ceiling")
    p.set_defaults(func=cmd_certify_units)

    p = subs.add_parser("cycles", help="periodic cycles and multiplier eigenvalues at a parameter")
    _add_common(p)
    p.add_argument("--param", required=True, help="complex parameter, e.g. -1 or 0.28+0.53j")
    p.add_argument("--max-period", type=int, required=True)
    p.set_defaults(func=cmd_cycles)

    p = subs.add_parser("equidist", help="equidistribution experiment near an anchor parameter")
    _add_common(p)
    p.add_argument("--anchor", required=True, help="anchor parameter, e.g. -2")
    p.add_argument("--periods", required=True, help="comma-separated period list")
    p.add_argument("--svg", help="write the scaled-spectra ring figure")
    p.set_defaults(func=cmd_equidist)

    p = subs.add_parser("matrix", help="pushforward matrix of one center, two constructions")
    _add_common(p)
    p.add_argument("--period", type=int, required=True)
    p.add_argument("--index", type=int, default=0, help="center index in sorted order")
    p.set_defaults(func=cmd_matrix)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.degree < 2:
        parser.error("degree must be >= 2")
    if args.precision < 53:
        parser.error("precision must be at least 53 bits")
    if getattr(args, "period", None) is not None and args.period < 1:
        parser.error("period must be >= 1")
    if getattr(args, "max_period", None) is not None and args.max_period < 1:
        parser.error("max period must be >= 1")
    return args.func(args, parser)


if __name__ == "__main__":
    sys.exit(main())
