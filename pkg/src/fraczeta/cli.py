"""Command-line surface for the package.

One executable, one subcommand per capability, JSON or CSV output with a
run manifest embedded in every artifact.  Numeric payloads are
locale-independent and byte-identical across reruns with the same
parameters (timestamps live only in the manifest).

Exit codes: 0 success, 2 usage (argparse), 3 input error, 4 capacity
error, 5 domain error, 6 parse error, 1 unexpected failure.
"""

from __future__ import annotations

import argparse
import io
import json
import os
import sys
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from fractions import Fraction

import mpmath as mp

from . import __version__
from .cardinality import (
    axiom_suite,
    catalog,
    catalog_map,
    compare_extended,
    compare_trace,
    conservation_report,
)
from .dimension import (
    box_dimension_fit,
    multifractal_spectrum,
    similarity_dimension,
    write_fit_points_csv,
)
from .errors import (
    CapacityError,
    DomainError,
    FraczetaError,
    InputError,
    ParseError,
)
from .grids import (
    DEFAULT_ENUMERATION_CAP,
    GeneralIfsSpec,
    GridSpec,
    IfsMap,
    build_stage,
    ifs_of_grid,
    make_named_spec,
    make_zf_spec,
    stage_to_json,
    write_stage_csv,
)
from .montecarlo import RetentionConfig, run_trials
from .zeros import (
    DEFAULT_BOUNDARY_TOL,
    digit_stats,
    digitize,
    parse_zero_file,
    reorder,
    reorder_external_weights,
)
from .zeta import DEFAULT_PRECISION_DIGITS, zeta_euler_maclaurin

EXIT_OK = 0
EXIT_UNEXPECTED = 1
EXIT_INPUT = 3
EXIT_CAPACITY = 4
EXIT_DOMAIN = 5
EXIT_PARSE = 6

_ERROR_CODES = (
    (CapacityError, EXIT_CAPACITY),
    (ParseError, EXIT_PARSE),
    (DomainError, EXIT_DOMAIN),
    (InputError, EXIT_INPUT),
)


def default_precision() -> int:
    raw = os.environ.get("FRACZETA_PRECISION")
    if raw is None:
        return DEFAULT_PRECISION_DIGITS
    try:
        return int(raw)
    except ValueError as exc:
        raise InputError(f"FRACZETA_PRECISION must be an integer, got {raw!r}") from exc


@dataclass
class RunManifest:
    command: str
    parameters: dict
    precision_digits: int
    seed: int | None = None
    tool_version: str = __version__
    timestamp: str = field(
        default_factory=lambda: datetime.now(timezone.utc).isoformat(timespec="seconds")
    )

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "parameters": self.parameters,
            "seed": self.seed,
            "precision_digits": self.precision_digits,
            "tool_version": self.tool_version,
            "timestamp": self.timestamp,
        }


def _manifest(args, **extra) -> RunManifest:
    params = {
        k: v
        for k, v in vars(args).items()
        if k not in {"func", "command", "out"} and v is not None
    }
    params.update(extra)
    params = {k: (str(v) if isinstance(v, Fraction) else v) for k, v in params.items()}
    return RunManifest(
        command=args.command,
        parameters=params,
        precision_digits=getattr(args, "digits", None) or default_precision(),
        seed=getattr(args, "seed", None),
    )


def _emit_json(args, manifest: RunManifest, result) -> None:
    payload = {"manifest": manifest.to_dict(), "result": result}
    _write_text(args, json.dumps(payload, indent=2) + "\n")


def _write_text(args, text: str) -> None:
    out = getattr(args, "out", None)
    if out:
        with open(out, "w") as fp:
            fp.write(text)
    else:
        sys.stdout.write(text)


def _mpf_str(value, digits: int) -> str:
    # conversion must run at full precision; mp.mpf rounds to the context
    with mp.workdps(max(digits, mp.mp.dps)):
        return mp.nstr(mp.mpf(value), digits)


def _parse_fraction_list(text: str, flag: str) -> list[Fraction]:
    try:
        return [Fraction(tok.strip()) for tok in text.split(",") if tok.strip()]
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"{flag}: cannot parse {text!r} as fractions") from exc


def _parse_int_list(text: str, flag: str) -> list[int]:
    try:
        return [int(tok.strip()) for tok in text.split(",") if tok.strip()]
    except ValueError as exc:
        raise InputError(f"{flag}: cannot parse {text!r} as integers") from exc


def _add_set_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("name", nargs="?", help="built-in set name (pess, cantor13, classic-cantor, mod6, mod8)")
    parser.add_argument("--zeros", metavar="FILE", help="zero-ordinate file driving a zf construction")
    parser.add_argument("--modq", type=int, metavar="Q", help="base of a custom residue grid")
    parser.add_argument("--keep", metavar="LIST", help="comma-separated residues kept by --modq")
    parser.add_argument("--order", choices=["standard", "random"], default="standard", help="zero ordering before digitization")
    parser.add_argument("--seed", type=int, help="seed for --order random")
    parser.add_argument("--tol", type=float, default=DEFAULT_BOUNDARY_TOL, help="digit boundary tolerance")


def _spec_from_args(args, digits: int) -> GridSpec:
    chosen = [bool(args.name), bool(args.zeros), args.modq is not None]
    if sum(chosen) != 1:
        raise InputError("choose exactly one of: a set name, --zeros FILE, or --modq/--keep")
    if args.name:
        return make_named_spec(args.name)
    if args.zeros:
        table = parse_zero_file(args.zeros)
        if args.order == "random":
            table = reorder(table, "random", args.seed)
        seq = digitize(table, precision_digits=max(digits, 40), boundary_tol=args.tol)
        return make_zf_spec(seq)
    if args.keep is None:
        raise InputError("--modq requires --keep with the residues to retain")
    keep = _parse_int_list(args.keep, "--keep")
    return GridSpec(base=args.modq, label=f"mod{args.modq}", constant=tuple(keep))


def cmd_construct(args) -> int:
    digits = args.digits or default_precision()
    spec = _spec_from_args(args, digits)
    stage = build_stage(spec, args.depth)
    if stage.interval_count > args.cap:
        raise CapacityError(
            f"stage {args.depth} of '{spec.label}' has {stage.interval_count} "
            f"intervals, above the enumeration cap {args.cap}"
        )
    manifest = _manifest(args, label=spec.label)
    if args.format == "json":
        _emit_json(args, manifest, stage_to_json(stage, cap=args.cap))
    else:
        buf = io.StringIO()
        write_stage_csv(
            stage, buf, comments=[f"manifest: {json.dumps(manifest.to_dict())}"]
        )
        _write_text(args, buf.getvalue())
    return EXIT_OK


def cmd_dimension(args) -> int:
    digits = args.digits or default_precision()
    spec = _spec_from_args(args, digits)
    manifest = _manifest(args, label=spec.label)
    if args.method == "similarity":
        est = similarity_dimension(ifs_of_grid(spec).ratios)
        result = {
            "method": est.method,
            "label": spec.label,
            "value": est.value,
            "residual": est.residual,
        }
    else:
        stage = build_stage(spec, args.depth)
        if args.scales:
            scales = _parse_fraction_list(args.scales, "--scales")
        else:
            scales = [Fraction(1, spec.base**k) for k in range(1, args.depth + 1)]
        est = box_dimension_fit(stage, scales)
        if args.points_csv:
            with open(args.points_csv, "w") as fp:
                write_fit_points_csv(
                    est, fp, comments=[f"manifest: {json.dumps(manifest.to_dict())}"]
                )
        result = {
            "method": est.method,
            "label": spec.label,
            "depth": args.depth,
            "value": est.value,
            "r_squared": est.residual,
            "sample_points": [
                {"epsilon": str(eps), "count": count}
                for eps, count in est.sample_points
            ],
        }
    _emit_json(args, manifest, result)
    return EXIT_OK


def cmd_zeta(args) -> int:
    digits = args.digits or default_precision()
    zv = zeta_euler_maclaurin(args.s, args.terms, args.k, digits)
    manifest = _manifest(args)
    result = {
        "s": str(zv.s),
        "value": _mpf_str(zv.value, digits),
        "terms_N": zv.terms_N,
        "correction_K": zv.correction_K,
        "error_bound": _mpf_str(zv.error_bound, 10),
        "precision_digits": zv.precision_digits,
    }
    _emit_json(args, manifest, result)
    return EXIT_OK


def _load_table(args):
    table = parse_zero_file(args.file)
    if getattr(args, "mode", None):
        if args.mode == "external":
            if not args.weights:
                raise InputError("--mode external requires --weights FILE")
            table = reorder_external_weights(table, args.weights)
        elif args.mode != "as-is":
            table = reorder(table, args.mode, args.seed)
    return table


def cmd_zeros_digitize(args) -> int:
    digits = args.digits or default_precision()
    table = _load_table(args)
    seq = digitize(table, precision_digits=max(digits, 40), boundary_tol=args.tol)
    manifest = _manifest(args, ordering=table.ordering)
    if args.format == "json":
        result = {
            "precision_digits": seq.precision_digits,
            "boundary_tol": seq.boundary_tol,
            "ordering": table.ordering,
            "entries": [
                {
                    "n": e.n,
                    "gamma": e.gamma,
                    "t": _mpf_str(e.t, seq.precision_digits),
                    "a": e.a,
                    "boundary_flag": e.boundary_flag,
                }
                for e in seq
            ],
        }
        _emit_json(args, manifest, result)
    else:
        lines = [f"# manifest: {json.dumps(manifest.to_dict())}"]
        lines.append("n,gamma,t,a,boundary_flag")
        for e in seq:
            lines.append(
                f"{e.n},{e.gamma},{_mpf_str(e.t, seq.precision_digits)},{e.a},"
                f"{str(e.boundary_flag).lower()}"
            )
        _write_text(args, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_zeros_stats(args) -> int:
    digits = args.digits or default_precision()
    table = _load_table(args)
    seq = digitize(table, precision_digits=max(digits, 40), boundary_tol=args.tol)
    stats = digit_stats(seq)
    manifest = _manifest(args, ordering=table.ordering)
    result = {
        "length": len(seq),
        "counts": list(stats.counts),
        "chi_square": stats.chi_square,
        "df": stats.df,
        "reject_at_05": stats.reject_at_05,
        "boundary_flags": sum(1 for e in seq if e.boundary_flag),
    }
    _emit_json(args, manifest, result)
    return EXIT_OK


def cmd_zeros_reorder(args) -> int:
    table = _load_table(args)
    manifest = _manifest(args, ordering=table.ordering)
    lines = [f"# manifest: {json.dumps(manifest.to_dict())}"]
    lines.extend(table.gamma_strings)
    _write_text(args, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_compare(args) -> int:
    digits = args.digits or default_precision()
    entries = catalog_map(precision_digits=digits)
    missing = [n for n in (args.a, args.b) if n not in entries]
    if missing:
        raise InputError(
            f"unknown catalog name(s) {missing}; valid: {', '.join(sorted(entries))}"
        )
    a = entries[args.a].cardinality
    b = entries[args.b].cardinality
    manifest = _manifest(args)
    if args.extended:
        result = {"mode": "extended", "result": compare_extended(a, b)}
    else:
        rel, trace = compare_trace(a, b)
        result = {"mode": "lexicographic", "result": rel, "trace": trace}
    _emit_json(args, manifest, result)
    return EXIT_OK


def _catalog_rows(digits: int):
    rows = []
    for e in catalog(precision_digits=digits):
        c = e.cardinality
        rows.append(
            {
                "name": e.name,
                "alpha": c.alpha,
                "delta": c.delta,
                "delta_exact": str(c.delta_exact) if c.delta_exact is not None else None,
                "iota": _mpf_str(c.iota, digits),
                "dim_vector": list(c.dim_vector) if c.dim_vector else None,
                "provenance": dict(c.provenance),
                "notes": e.notes,
            }
        )
    return rows


def cmd_catalog(args) -> int:
    digits = args.digits or default_precision()
    rows = _catalog_rows(digits)
    manifest = _manifest(args)
    if args.format == "json":
        _emit_json(args, manifest, rows)
        return EXIT_OK
    # plain-text table layout
    headers = ["Set", "alpha", "delta", "iota", "I(M)"]
    table_rows = []
    for r in rows:
        delta_txt = f"{r['delta']:.6g}"
        if r["delta_exact"] and "/" in r["delta_exact"] and "log" in r["delta_exact"]:
            delta_txt += f" ({r['delta_exact']})"
        iota_short = mp.nstr(mp.mpf(r["iota"]), 8)
        table_rows.append(
            [
                r["name"],
                str(r["alpha"]),
                delta_txt,
                iota_short,
                f"({r['alpha']}, {r['delta']:.6g}, {iota_short})",
            ]
        )
    widths = [
        max(len(headers[i]), *(len(row[i]) for row in table_rows))
        for i in range(len(headers))
    ]
    lines = [
        "  ".join(h.ljust(widths[i]) for i, h in enumerate(headers)),
        "  ".join("-" * w for w in widths),
    ]
    for row in table_rows:
        lines.append("  ".join(cell.ljust(widths[i]) for i, cell in enumerate(row)))
    _write_text(args, "\n".join(lines) + "\n")
    return EXIT_OK


def _pair_table(report) -> str:
    """Side-by-side property table for the two signed constructions."""
    iota_p = mp.nstr(report.iota_pess, 10)
    iota_z = mp.nstr(report.iota_zf, 10)
    rows = [
        ("Property", "pess", "zf"),
        ("hausdorff dimension", "1/2", "1/2"),
        ("cardinality", "uncountable", "uncountable"),
        ("lebesgue measure", "0", "0"),
        ("self-similar", "yes (fixed rule)", "yes (data-driven)"),
        ("information measure", f"{iota_p} (> 0)", f"{iota_z} (< 0)"),
        ("arithmetic origin", "residues 1,3 mod 4", "zero ordinates mod 2pi"),
    ]
    widths = [max(len(r[i]) for r in rows) for i in range(3)]
    lines = ["  ".join(cell.ljust(widths[i]) for i, cell in enumerate(rows[0]))]
    lines.append("  ".join("-" * w for w in widths))
    lines.extend(
        "  ".join(cell.ljust(widths[i]) for i, cell in enumerate(row))
        for row in rows[1:]
    )
    lines.append("")
    lines.append(f"sum of information measures: {mp.nstr(report.total, 5)}")
    lines.append(f"caveat: {report.caveat}")
    return "\n".join(lines) + "\n"


def cmd_conservation(args) -> int:
    digits = args.digits or default_precision()
    seq = None
    if args.zeros:
        table = parse_zero_file(args.zeros)
        seq = digitize(table, precision_digits=max(digits, 40))
    report = conservation_report(precision_digits=digits, zero_digits=seq)
    manifest = _manifest(args)
    if args.format == "table":
        _write_text(args, _pair_table(report))
        return EXIT_OK
    result = {
        "iota_pess": _mpf_str(report.iota_pess, digits),
        "iota_zf": _mpf_str(report.iota_zf, digits),
        "sum": _mpf_str(report.total, digits),
        "sum_is_exact_zero": report.total == 0,
        "caveat": report.caveat,
        "zeta": {
            "s": str(report.zeta.s),
            "value": _mpf_str(report.zeta.value, digits),
            "terms_N": report.zeta.terms_N,
            "correction_K": report.zeta.correction_K,
            "error_bound": _mpf_str(report.zeta.error_bound, 10),
        },
    }
    if report.digit_stats is not None:
        result["digit_stats"] = {
            "counts": list(report.digit_stats.counts),
            "chi_square": report.digit_stats.chi_square,
            "df": report.digit_stats.df,
            "reject_at_05": report.digit_stats.reject_at_05,
        }
    _emit_json(args, manifest, result)
    return EXIT_OK


def cmd_axioms(args) -> int:
    digits = args.digits or default_precision()
    checks = axiom_suite(precision_digits=digits)
    manifest = _manifest(args)
    _emit_json(args, manifest, [asdict(c) for c in checks])
    return EXIT_OK


def cmd_perturb(args) -> int:
    if (args.p is None) == (args.bias is None):
        raise InputError("give exactly one of --p or --bias p1,p3")
    if args.p is not None:
        probs = (args.p, args.p)
    else:
        parts = [float(x) for x in args.bias.split(",")]
        if len(parts) != 2:
            raise InputError(f"--bias needs two probabilities, got {args.bias!r}")
        probs = (parts[0], parts[1])
    config = RetentionConfig(
        probs=probs, depth=args.depth, trials=args.trials, seed=args.seed, base=args.base
    )
    run = run_trials(config)
    manifest = _manifest(args)
    agg = run.aggregate
    result = {
        "p": args.p if args.p is not None else list(probs),
        "depth": agg.depth,
        "trials": agg.trials,
        "seed": agg.seed,
        "base": agg.base,
        "extinction_rate": agg.extinction_rate,
        "mean_dim": agg.mean_dim,
        "std_dim": agg.std_dim,
        "predicted_dim": agg.predicted_dim,
    }
    if args.per_trial:
        lines = [f"# manifest: {json.dumps(manifest.to_dict())}"]
        lines.append("trial,final_count,extinct,dim_estimate")
        for i, o in enumerate(run.outcomes):
            dim = "" if o.dim_estimate is None else repr(o.dim_estimate)
            lines.append(
                f"{i},{o.survivor_counts[-1]},{str(o.extinct).lower()},{dim}"
            )
        with open(args.per_trial, "w") as fp:
            fp.write("\n".join(lines) + "\n")
    _emit_json(args, manifest, result)
    return EXIT_OK


def _parse_q_grid(args) -> list[float]:
    if args.q:
        try:
            return [float(tok) for tok in args.q.split(",") if tok.strip()]
        except ValueError as exc:
            raise InputError(f"--q: cannot parse {args.q!r}") from exc
    if not args.q_range:
        raise InputError("give --q LIST or --q-range START:STOP:STEP")
    parts = args.q_range.split(":")
    if len(parts) != 3:
        raise InputError(f"--q-range must be START:STOP:STEP, got {args.q_range!r}")
    try:
        start, stop, step = (Fraction(p) for p in parts)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"--q-range: cannot parse {args.q_range!r}") from exc
    if step <= 0 or stop < start:
        raise InputError("--q-range needs step > 0 and stop >= start")
    grid = []
    q = start
    while q <= stop:
        grid.append(float(q))
        q += step
    return grid


def cmd_multifractal(args) -> int:
    ratios = _parse_fraction_list(args.ratios, "--ratios")
    weights = _parse_fraction_list(args.weights, "--weights")
    if len(ratios) != len(weights):
        raise InputError("--ratios and --weights must have the same length")
    offsets = [Fraction(0)] * len(ratios)  # offsets do not enter the spectrum
    ifs = GeneralIfsSpec(
        maps=tuple(
            IfsMap(ratio=r, offset=o, weight=w)
            for r, o, w in zip(ratios, offsets, weights)
        ),
        label="cli-ifs",
    )
    points = multifractal_spectrum(ifs, _parse_q_grid(args))
    manifest = _manifest(args)
    result = [
        {"q": p.q, "tau": p.tau, "alpha": p.alpha, "f": p.f} for p in points
    ]
    _emit_json(args, manifest, result)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fraczeta",
        description="Exact digit-grid fractals, dimensions, zeta values, and "
        "zero digitization",
    )
    parser.add_argument("--version", action="version", version=f"fraczeta {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=func)
        p.add_argument("--digits", type=int, default=None, help="working decimal precision")
        p.add_argument("--out", metavar="FILE", help="write output here instead of stdout")
        return p

    p = add("construct", cmd_construct, "export the exact intervals of a stage")
    _add_set_flags(p)
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--cap", type=int, default=DEFAULT_ENUMERATION_CAP)

    p = add("dimension", cmd_dimension, "similarity or box-counting dimension")
    _add_set_flags(p)
    p.add_argument("--method", choices=["similarity", "boxcount"], default="similarity")
    p.add_argument("--depth", type=int, default=10)
    p.add_argument("--scales", help="comma-separated epsilon fractions for boxcount")
    p.add_argument("--points-csv", metavar="FILE", help="also write plot-ready regression points here")

    p = add("zeta", cmd_zeta, "Euler-Maclaurin zeta value at a real argument")
    p.add_argument("--s", required=True, help="argument, e.g. 0.5 or 2/3")
    p.add_argument("--terms", type=int, default=10_000)
    p.add_argument("--k", type=int, default=10)

    zeros = sub.add_parser("zeros", help="zero-file operations")
    zsub = zeros.add_subparsers(dest="zeros_command", required=True)

    def add_z(name, func, help_text):
        p = zsub.add_parser(name, help=help_text)
        p.set_defaults(func=func, command=f"zeros {name}")
        p.add_argument("--file", required=True)
        p.add_argument("--digits", type=int, default=None)
        p.add_argument("--tol", type=float, default=DEFAULT_BOUNDARY_TOL)
        p.add_argument(
            "--mode",
            choices=["as-is", "standard", "random", "external"],
            default="as-is",
            help="reorder before use",
        )
        p.add_argument("--seed", type=int)
        p.add_argument("--weights", metavar="FILE", help="sidecar (index, weight) file")
        p.add_argument("--out", metavar="FILE")
        return p

    p = add_z("digitize", cmd_zeros_digitize, "emit (n, gamma, t, a, boundary) rows")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    add_z("stats", cmd_zeros_stats, "digit-uniformity chi-square report")
    add_z("reorder", cmd_zeros_reorder, "write the reordered ordinate list")

    p = add("compare", cmd_compare, "compare two catalog entries")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--extended", action="store_true", help="componentwise dimension vectors")

    p = add("catalog", cmd_catalog, "the built-in comparison table")
    p.add_argument("--format", choices=["json", "table"], default="json")

    p = add("conservation", cmd_conservation, "signed zeta(1/2) pair and its exact sum")
    p.add_argument("--zeros", metavar="FILE", help="attach digit statistics from this file")
    p.add_argument("--format", choices=["json", "table"], default="json")

    add("axioms", cmd_axioms, "assertable axiom checks")

    p = add("perturb", cmd_perturb, "probabilistic-retention Monte Carlo")
    p.add_argument("--p", type=float)
    p.add_argument("--bias", help="p1,p3 pair")
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--base", type=int, default=4)
    p.add_argument("--per-trial", metavar="FILE", help="also write per-trial CSV here")

    p = add("multifractal", cmd_multifractal, "tau/alpha/f spectrum of a weighted IFS")
    p.add_argument("--ratios", required=True)
    p.add_argument("--weights", required=True)
    p.add_argument("--q", help="comma-separated q values")
    p.add_argument("--q-range", help="START:STOP:STEP inclusive")

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except FraczetaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        for err_type, code in _ERROR_CODES:
            if isinstance(exc, err_type):
                return code
        return EXIT_UNEXPECTED


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
