"""Command-line front door: preprocess stores, assess ink, batch scoring, serve.

Exit codes: 0 ok, 2 input error, 3 not-found, 4 environment problem.
The serve flags can also be supplied via KWB_-prefixed environment
variables (KWB_PORT, KWB_STORE, KWB_THRESHOLDS, KWB_PERSIST).
"""

from __future__ import annotations

import argparse
import csv
import errno
import os
import socket
import sys
from pathlib import Path

from .errors import ConfigError, InkParseError, KwbError, StoreError, TemplateNotFoundError
from .ink import parse_events, parse_ink
from .scoring import METRIC_IDS, ThresholdConfig, assess_character, serialize_report
from .store import TemplateStore, preprocess_templates

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_NOT_FOUND = 3
EXIT_ENVIRONMENT = 4


def _load_config(path) -> ThresholdConfig:
    return ThresholdConfig.from_file(path) if path else ThresholdConfig()


def _stars(n: int) -> str:
    return "★" * n + "☆" * (3 - n)


def _cmd_preprocess(args) -> int:
    cfg = _load_config(args.thresholds)
    try:
        store = preprocess_templates(
            args.raw, args.catalog, args.out, cfg.resample_n, cfg.scale_size
        )
    except (StoreError, InkParseError, ConfigError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    for label in store.labels():
        t = store.lookup_template(label)
        print(f"{label}: {t.stroke_count} strokes, {t.total_duration:.0f} ms")
    print(f"wrote {len(store.labels())} templates to {args.out}")
    return EXIT_OK


def _assess_file(store: TemplateStore, cfg: ThresholdConfig, path: Path):
    text = path.read_text(encoding="utf-8")
    sketch = parse_ink(text)
    events = parse_events(text)
    return assess_character(sketch, events, sketch.metadata.label, store, cfg)


def _cmd_assess(args) -> int:
    try:
        cfg = _load_config(args.thresholds)
        store = TemplateStore.load(args.store)
        report = _assess_file(store, cfg, Path(args.input))
    except TemplateNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NOT_FOUND
    except (OSError, KwbError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.json:
        print(serialize_report(report))
    else:
        print(f"character: {report.label}")
        for m in report.metrics:
            raw = "-" if m.raw is None else f"{m.raw:.4f}"
            print(f"{m.id:<17} {raw:>8}  {_stars(m.stars)}")
    return EXIT_OK


def _cmd_batch(args) -> int:
    try:
        cfg = _load_config(args.thresholds)
        store = TemplateStore.load(args.store)
    except (OSError, KwbError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    inputs_dir = Path(args.inputs)
    if not inputs_dir.is_dir():
        print(f"error: inputs directory not found: {inputs_dir}", file=sys.stderr)
        return EXIT_INPUT

    header = (["file", "label"]
              + [f"raw_{mid}" for mid in METRIC_IDS]
              + [f"stars_{mid}" for mid in METRIC_IDS])
    rows = []
    for path in sorted(inputs_dir.glob("*.json")):
        try:
            report = _assess_file(store, cfg, path)
        except (OSError, KwbError) as exc:
            print(f"error: {path.name}: {exc}", file=sys.stderr)
            return EXIT_INPUT
        raws = {m.id: m.raw for m in report.metrics}
        stars = {m.id: m.stars for m in report.metrics}
        rows.append([path.name, report.label]
                    + ["" if raws[mid] is None else repr(raws[mid]) for mid in METRIC_IDS]
                    + [stars[mid] for mid in METRIC_IDS])

    with open(args.csv, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)
    print(f"wrote {len(rows)} rows to {args.csv}")
    return EXIT_OK


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    try:
        cfg = _load_config(args.thresholds)
        store = TemplateStore.load(args.store)
    except (OSError, KwbError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT

    # fail fast with a stable exit code when the port is taken
    probe = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
    probe.setsockopt(socket.SOL_SOCKET, socket.SO_REUSEADDR, 1)
    try:
        probe.bind((args.host, args.port))
    except OSError as exc:
        if exc.errno == errno.EADDRINUSE:
            print(f"error: port {args.port} already in use", file=sys.stderr)
            return EXIT_ENVIRONMENT
        print(f"error: cannot bind {args.host}:{args.port}: {exc}", file=sys.stderr)
        return EXIT_ENVIRONMENT
    finally:
        probe.close()

    app = create_app(store, cfg, persist_dir=args.persist)
    print(f"kwb service listening on http://{args.host}:{args.port}", flush=True)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kwb", description="Kanji writing assessment engine"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("preprocess", help="build a template store from raw expert ink")
    p.add_argument("--raw", required=True, help="directory of raw ink JSON files")
    p.add_argument("--catalog", required=True, help="lesson catalog JSON file")
    p.add_argument("--out", required=True, help="output store directory")
    p.add_argument("--thresholds", default=None, help="threshold config JSON")
    p.set_defaults(func=_cmd_preprocess)

    p = sub.add_parser("assess", help="assess one ink file against the store")
    p.add_argument("--store", required=True)
    p.add_argument("--input", required=True, help="ink JSON file")
    p.add_argument("--thresholds", default=None)
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="print the report JSON")
    fmt.add_argument("--table", action="store_true", help="print a score table (default)")
    p.set_defaults(func=_cmd_assess)

    p = sub.add_parser("batch", help="assess a directory of ink files into a CSV")
    p.add_argument("--store", required=True)
    p.add_argument("--inputs", required=True, help="directory of ink JSON files")
    p.add_argument("--csv", required=True, help="output CSV path")
    p.add_argument("--thresholds", default=None)
    p.set_defaults(func=_cmd_batch)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--store", default=os.environ.get("KWB_STORE"), required="KWB_STORE" not in os.environ)
    p.add_argument("--port", type=int, default=int(os.environ.get("KWB_PORT", "8077")))
    p.add_argument("--host", default=os.environ.get("KWB_HOST", "127.0.0.1"))
    p.add_argument("--thresholds", default=os.environ.get("KWB_THRESHOLDS"))
    p.add_argument("--persist", default=os.environ.get("KWB_PERSIST"), help="JSON-lines attempt log directory")
    p.set_defaults(func=_cmd_serve)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
