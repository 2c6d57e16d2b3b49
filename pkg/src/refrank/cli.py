"""Command-line entry point: ``refrank run | eval | cache warm``."""
from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from .config import OUTPUT_FORMATS, PipelineConfig, resolve_config
from .errors import ConfigError, ExtractionFailed, FetchError, MissingLabel, ParseFailure, UnsupportedFormat
from .evaluate import GroundTruth, evaluate
from .fetch import FETCH_MODES
from .ingest import SourceDocument, extract_text
from .pipeline import run_pipeline
from .rank import ScoreWeights
from .refparse import header_authors
from .report import emit, load_report

EXIT_OK, EXIT_PARSE, EXIT_FETCH, EXIT_CONFIG = 0, 2, 3, 4

log = logging.getLogger("refrank")


def _split_authors(text: str) -> list[str]:
    return [a.strip() for a in text.split(";") if a.strip()]


def _add_pipeline_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("input", type=Path, help="manuscript (plain text or PDF)")
    p.add_argument("--authors", help='submitting authors, ";"-separated; read from the header if omitted')
    p.add_argument("--cache", dest="cache_dir", help="cache directory (env REFRANK_CACHE)")
    p.add_argument("--top", dest="top_n", type=int)
    p.add_argument("--pool", dest="candidate_pool", type=int)
    p.add_argument("--weights", help="alpha,beta,gamma")
    p.add_argument("--config", type=Path, help="JSON config file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="refrank", description=__doc__)
    parser.add_argument("-v", "--verbose", action="count", default=0)
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="rank reviewer candidates for a manuscript")
    _add_pipeline_args(run)
    run.add_argument("--mode", dest="fetch_mode", choices=FETCH_MODES)
    run.add_argument("--format", dest="output_format", choices=OUTPUT_FORMATS)
    run.add_argument("-o", "--output", type=Path, help="write report here instead of stdout")

    ev = sub.add_parser("eval", help="score json reports against ground truth")
    ev.add_argument("--truth", type=Path, required=True)
    ev.add_argument("--reports", type=Path, nargs="+", required=True)
    ev.add_argument("--format", choices=("csv", "json"), default="csv")
    ev.add_argument("--out-dir", type=Path, help="also write accuracy.csv and accuracy.json here")

    cache = sub.add_parser("cache", help="cache maintenance")
    cache_sub = cache.add_subparsers(dest="cache_command", required=True)
    warm = cache_sub.add_parser("warm", help="live-fetch everything a run needs into the cache")
    _add_pipeline_args(warm)
    return parser


def _config_from_args(args, **fixed) -> PipelineConfig:
    weights = ScoreWeights.parse(args.weights) if args.weights else None
    overrides = {
        "cache_dir": args.cache_dir,
        "top_n": args.top_n,
        "candidate_pool": args.candidate_pool,
        "weights": weights,
        "fetch_mode": getattr(args, "fetch_mode", None),
        "output_format": getattr(args, "output_format", None),
    }
    overrides.update(fixed)
    return resolve_config(args.config, **overrides)


def _submitters(args, doc: SourceDocument) -> list[str]:
    if args.authors is not None:
        return _split_authors(args.authors)
    authors = header_authors(extract_text(doc))
    log.info("submitting authors from header: %s", authors)
    return authors


def cmd_run(args, fixed=None) -> int:
    config = _config_from_args(args, **(fixed or {}))
    doc = SourceDocument.from_path(args.input)
    report = run_pipeline(doc, _submitters(args, doc), config, label=args.input.stem)
    data = emit(report, config.output_format)
    if getattr(args, "output", None):
        args.output.write_bytes(data)
    elif fixed is None:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    return EXIT_OK


def cmd_eval(args) -> int:
    truth = GroundTruth.load(args.truth)
    table = evaluate([load_report(p) for p in args.reports], truth)
    if args.out_dir:
        args.out_dir.mkdir(parents=True, exist_ok=True)
        (args.out_dir / "accuracy.csv").write_text(table.to_csv(), encoding="utf-8")
        (args.out_dir / "accuracy.json").write_text(table.to_json(), encoding="utf-8")
    sys.stdout.write(table.to_csv() if args.format == "csv" else table.to_json())
    return EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.WARNING - 10 * min(args.verbose, 2),
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        if args.command == "run":
            return cmd_run(args)
        if args.command == "eval":
            return cmd_eval(args)
        if args.command == "cache" and args.cache_command == "warm":
            return cmd_run(args, fixed={"fetch_mode": "cached"})
    except (ParseFailure, UnsupportedFormat, ExtractionFailed) as exc:
        log.error("%s", exc)
        return EXIT_PARSE
    except FetchError as exc:
        log.error("%s", exc)
        return EXIT_FETCH
    except (ConfigError, MissingLabel, OSError) as exc:
        log.error("%s", exc)
        return EXIT_CONFIG
    return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
