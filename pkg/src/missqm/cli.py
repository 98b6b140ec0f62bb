"""Command-line entry point.

Every subcommand is a thin wrapper around one core operation; outputs are
produced by the same writers the library exposes, so files written here are
byte-identical to programmatic exports. Exit codes: 0 success, 2 usage,
3 ingestion problem, 4 infeasible/invalid generation targets, 5 I/O error.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys

from .conditional import cm_matrices
from .dataset import IngestConfig, default_missing_tokens, load_csv, save_csv
from .errors import (
    FeasibilityError,
    IncompleteInputError,
    IngestError,
    InvalidSpecError,
    MissqmError,
)
from .exports import compute_all_matrices, export_network, write_matrix_csv, write_network_csv
from .filters import Q_AM, parse_filter
from .generate import MODES, inject, load_spec
from .joint import jm_matrices
from .matrices import PAIRWISE_METRICS
from .ordering import order_by_pairwise, order_by_univariate, threshold_select
from .univariate import profile, write_profile_rows

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INGEST = 3
EXIT_FEASIBILITY = 4
EXIT_IO = 5


def _add_ingest_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--delimiter", default=",", help="field delimiter (default: comma)")
    parser.add_argument("--no-header", action="store_true",
                        help="treat the first row as data, not column names")
    parser.add_argument("--missing-tokens", default=None,
                        help="comma-separated missing-value tokens "
                             "(default from MISSQM_MISSING_TOKENS or NaN,NA,N/A,null,'')")
    parser.add_argument("--kind", action="append", default=[], metavar="NAME=KIND",
                        help="force a variable kind (numerical|categorical); repeatable")


def _ingest_config(args) -> IngestConfig:
    tokens = default_missing_tokens()
    if args.missing_tokens is not None:
        tokens = frozenset(t.strip() for t in args.missing_tokens.split(","))
    overrides = {}
    for entry in args.kind:
        name, _, kind = entry.partition("=")
        if not kind:
            raise IngestError(f"--kind expects NAME=KIND, got {entry!r}")
        overrides[name] = kind
    return IngestConfig(missing_tokens=tokens, kind_overrides=overrides,
                        delimiter=args.delimiter, header=not args.no_header)


def _open_out(path: str | None):
    if path is None or path == "-":
        return sys.stdout, False
    return open(path, "w", newline="", encoding="utf-8"), True


def _write_with(path: str | None, write_fn) -> None:
    fh, own = _open_out(path)
    try:
        write_fn(fh)
    finally:
        if own:
            fh.close()


def cmd_profile(args) -> int:
    d = load_csv(args.data, _ingest_config(args))
    p = profile(d)
    if args.json:
        _write_with(args.output, lambda fh: fh.write(p.to_json() + "\n"))
    else:
        _write_with(args.output, lambda fh: write_profile_rows(p, fh))
    return EXIT_OK


def cmd_jm(args) -> int:
    d = load_csv(args.data, _ingest_config(args))
    mag, direction, absolute = jm_matrices(d)
    matrices = {m.metric: m for m in (mag, direction, absolute)}
    matrix = matrices[args.metric]
    if args.json:
        _write_with(args.output, lambda fh: fh.write(json.dumps(matrix.to_dict(), indent=2) + "\n"))
    else:
        _write_with(args.output, lambda fh: write_matrix_csv(matrix, fh))
    return EXIT_OK


def cmd_cm(args) -> int:
    d = load_csv(args.data, _ingest_config(args))
    did, ent = cm_matrices(d)
    matrix = {m.metric: m for m in (did, ent)}[args.metric]
    if args.json:
        _write_with(args.output, lambda fh: fh.write(json.dumps(matrix.to_dict(), indent=2) + "\n"))
    else:
        _write_with(args.output, lambda fh: write_matrix_csv(matrix, fh))
    return EXIT_OK


def cmd_order(args) -> int:
    d = load_csv(args.data, _ingest_config(args))
    if args.metric == Q_AM:
        ordering = order_by_univariate(profile(d), descending=not args.ascending)
    else:
        matrices = compute_all_matrices(d)
        ordering = order_by_pairwise(matrices[args.metric], aggregation=args.aggregation)
    names = [d.variable_names[j] for j in ordering.permutation]
    if args.json:
        out = ordering.to_dict()
        out["variables"] = names
        _write_with(args.output, lambda fh: fh.write(json.dumps(out, indent=2) + "\n"))
    else:
        _write_with(args.output, lambda fh: fh.write("\n".join(names) + "\n"))
    return EXIT_OK


def cmd_select(args) -> int:
    d = load_csv(args.data, _ingest_config(args))
    predicates = parse_filter(args.filter) if args.filter else []
    metrics = {p.metric for p in predicates}
    if args.metric:
        metrics.add(args.metric)
    if not metrics or metrics == {Q_AM}:
        indices = threshold_select(profile(d), predicates, top_n=args.top_n)
    else:
        matrices = list(compute_all_matrices(d).values())
        indices = threshold_select(matrices, predicates, top_n=args.top_n,
                                   rank_metric=args.metric)
    names = [d.variable_names[j] for j in indices]
    if args.json:
        _write_with(args.output, lambda fh: fh.write(
            json.dumps({"indices": indices, "variables": names}, indent=2) + "\n"))
    else:
        text = "\n".join(names) + "\n" if names else ""
        _write_with(args.output, lambda fh: fh.write(text))
    return EXIT_OK


def cmd_generate(args) -> int:
    spec = load_spec(args.spec)
    if args.mode != spec.mode:
        spec = dataclasses.replace(spec, mode=args.mode)
    if args.seed is not None:
        spec = dataclasses.replace(spec, seed=args.seed)
    source = args.data or spec.source
    if source is None:
        raise InvalidSpecError("no input dataset: pass DATA or set 'source' in the spec file")
    complete = load_csv(source, _ingest_config(args))
    generated, manifest = inject(complete, spec)
    save_csv(generated, args.output, missing_token=args.missing_token)
    if args.manifest:
        with open(args.manifest, "w", encoding="utf-8") as fh:
            fh.write(manifest.to_json() + "\n")
    return EXIT_OK


def cmd_export_network(args) -> int:
    d = load_csv(args.data, _ingest_config(args))
    predicates = parse_filter(args.filter) if args.filter else []
    matrices = compute_all_matrices(d)
    network = export_network(d, matrices.values(), predicates)
    nodes_path, edges_path = write_network_csv(network, args.output)
    print(f"wrote {nodes_path} ({len(network.nodes)} nodes) and "
          f"{edges_path} ({len(network.edges)} edges)", file=sys.stderr)
    return EXIT_OK


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    app = create_app(ui_dir=args.ui_dir)
    if args.data:
        config = _ingest_config(args)
        for path in args.data:
            entry = app.state.session.load_path(path, config)
            print(f"loaded {path} as {entry.dataset_id}", file=sys.stderr)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="missqm",
        description="Quality metrics and generators for structural missingness.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("profile", help="per-variable amount missing")
    p.add_argument("data", help="input CSV")
    p.add_argument("-o", "--output", default=None, help="output path (default: stdout)")
    p.add_argument("--json", action="store_true", help="emit JSON instead of CSV")
    _add_ingest_flags(p)
    p.set_defaults(func=cmd_profile)

    p = sub.add_parser("jm", help="joint missingness matrix (long-form CSV)")
    p.add_argument("data", help="input CSV")
    p.add_argument("--metric", default="jm_abs", choices=["jm_mag", "jm_dir", "jm_abs"],
                   help="which joint metric to export (default: jm_abs)")
    p.add_argument("-o", "--output", default=None, help="output path (default: stdout)")
    p.add_argument("--json", action="store_true", help="emit JSON instead of CSV")
    _add_ingest_flags(p)
    p.set_defaults(func=cmd_jm)

    p = sub.add_parser("cm", help="conditional missingness matrix (long-form CSV)")
    p.add_argument("data", help="input CSV")
    p.add_argument("--metric", default="cm_did", choices=["cm_did", "cm_h"],
                   help="which conditional metric to export (default: cm_did)")
    p.add_argument("-o", "--output", default=None, help="output path (default: stdout)")
    p.add_argument("--json", action="store_true", help="emit JSON instead of CSV")
    _add_ingest_flags(p)
    p.set_defaults(func=cmd_cm)

    p = sub.add_parser("order", help="metric-driven variable ordering")
    p.add_argument("data", help="input CSV")
    p.add_argument("--metric", default=Q_AM, choices=[Q_AM, *PAIRWISE_METRICS],
                   help="ordering metric (default: q_am)")
    p.add_argument("--ascending", action="store_true",
                   help="sort q_am ascending instead of descending")
    p.add_argument("--aggregation", default="max", choices=["max", "min", "avg"],
                   help="how directional metrics collapse per pair (default: max)")
    p.add_argument("-o", "--output", default=None, help="output path (default: stdout)")
    p.add_argument("--json", action="store_true", help="emit the permutation as JSON")
    _add_ingest_flags(p)
    p.set_defaults(func=cmd_order)

    p = sub.add_parser("select", help="threshold/top-n variable selection")
    p.add_argument("data", help="input CSV")
    p.add_argument("--filter", default="",
                   help="conjunctive predicates, e.g. \"jm_dir<0.05,cm_did>0.9\"")
    p.add_argument("--metric", default=None,
                   help="rank metric when no filter is given (e.g. q_am)")
    p.add_argument("--top-n", type=int, default=None, help="keep the strongest N variables")
    p.add_argument("-o", "--output", default=None, help="output path (default: stdout)")
    p.add_argument("--json", action="store_true", help="emit indices and names as JSON")
    _add_ingest_flags(p)
    p.set_defaults(func=cmd_select)

    p = sub.add_parser("generate", help="inject synthetic missingness structures")
    p.add_argument("mode", choices=list(MODES), help="which structure to inject")
    p.add_argument("data", nargs="?", default=None,
                   help="complete input CSV (falls back to the spec file's 'source')")
    p.add_argument("--spec", required=True, help="spec document (JSON, or TOML by extension)")
    p.add_argument("--seed", type=int, default=None, help="override the seed from the spec file")
    p.add_argument("-o", "--output", required=True, help="output CSV path")
    p.add_argument("--manifest", default=None, help="write the ground-truth manifest here")
    p.add_argument("--missing-token", default="NaN",
                   help="token written for missing cells (default: NaN)")
    _add_ingest_flags(p)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("export-network", help="write nodes.csv and edges.csv for graph tools")
    p.add_argument("data", help="input CSV")
    p.add_argument("--filter", default="",
                   help="conjunctive edge predicates, e.g. \"jm_dir<0.05,cm_did>0.9\"")
    p.add_argument("-o", "--output", required=True, help="output directory")
    _add_ingest_flags(p)
    p.set_defaults(func=cmd_export_network)

    p = sub.add_parser("serve", help="run the HTTP service (and the explorer UI if built)")
    p.add_argument("data", nargs="*", help="CSV files to preload")
    p.add_argument("--host", default=os.environ.get("MISSQM_HOST", "127.0.0.1"),
                   help="bind address (default: $MISSQM_HOST or 127.0.0.1)")
    p.add_argument("--port", type=int, default=int(os.environ.get("MISSQM_PORT", "8077")),
                   help="port (default: $MISSQM_PORT or 8077)")
    p.add_argument("--ui-dir", default=None,
                   help="directory with the built UI bundle (default: autodetect)")
    _add_ingest_flags(p)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except IngestError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INGEST
    except (FeasibilityError, InvalidSpecError, IncompleteInputError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FEASIBILITY
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (MissqmError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
