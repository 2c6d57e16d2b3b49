"""Run the three fixture data sets offline and print the result tables.

Writes one json report per data set plus accuracy.csv/accuracy.json to the
output directory (default: results/).

    python scripts/reproduce_tables.py [--out results]
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from refrank.config import PipelineConfig  # noqa: E402
from refrank.evaluate import GroundTruth, evaluate, frequency_accuracy  # noqa: E402
from refrank.ingest import SourceDocument  # noqa: E402
from refrank.pipeline import run_pipeline  # noqa: E402
from refrank.report import emit  # noqa: E402
from refrank.scholar import build_profile_url, build_search_url, extract_profile_id, parse_profile  # noqa: E402
from refrank.fetch import DiskCache  # noqa: E402

FIXTURES = ROOT / "tests" / "fixtures"
DATASETS = ("dataset1", "dataset2", "dataset3")
SAMPLE = ("R. Heat", "S. Sum", "C. Fischione")


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=ROOT / "results")
    args = ap.parse_args(argv)
    args.out.mkdir(parents=True, exist_ok=True)

    cache = DiskCache(FIXTURES / "cache")
    print("Profile ids and metrics")
    for name in SAMPLE:
        sid = extract_profile_id(cache.get(build_search_url(name)).text())
        p = parse_profile(cache.get(build_profile_url(sid)).text(), name, sid)
        print(f"  {name:<14} {sid}  h={p.h_index} i10={p.i10_index} citations={p.citations}")

    config = PipelineConfig(cache_dir=str(FIXTURES / "cache"))
    truth = GroundTruth.load(FIXTURES / "truth.json")
    reports = []
    for ds in DATASETS:
        doc = SourceDocument.from_path(FIXTURES / f"{ds}.txt")
        report = run_pipeline(doc, (), config=config, label=ds)
        reports.append(report)
        (args.out / f"{ds}.json").write_bytes(emit(report, "json"))
        correct, total = frequency_accuracy(report, truth)
        print(f"\n{ds} (frequencies {correct}/{total} correct)")
        print(emit(report, "table").decode(), end="")

    table = evaluate(reports, truth)
    (args.out / "accuracy.csv").write_text(table.to_csv())
    (args.out / "accuracy.json").write_text(table.to_json())
    print("\nAccuracy")
    print(table.to_csv(), end="")
    print(f"\nwrote reports to {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
