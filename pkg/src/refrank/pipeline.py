"""End-to-end orchestration: manuscript in, ranked reviewer report out."""
from __future__ import annotations

import hashlib
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Any, Optional, Sequence

from . import __version__
from .coi import detect_conflicts
from .config import PipelineConfig
from .emails import find_reviewer_email
from .fetch import Fetcher, RecordingFetcher, make_fetcher
from .freq import count_frequencies, sort_by_frequency
from .ingest import PdfAdapter, SourceDocument, extract_text
from .rank import RankedCandidate, rank_candidates
from .refparse import StopWords, author_mentions, default_stopwords, parse_citations
from .scholar import Resolution, ScholarProfile, resolve

logger = logging.getLogger(__name__)

COI_NOTE = (
    "conflict rules are proxies: co-authorship = shared reference author list or "
    "scholar co-author list; colleague = same verified email domain"
)


@dataclass
class ReviewerReport:
    rows: list[RankedCandidate]
    discarded: list[RankedCandidate] = field(default_factory=list)
    unresolved: list[tuple[str, str]] = field(default_factory=list)
    frequencies: list[tuple[str, int]] = field(default_factory=list)
    provenance: dict[str, Any] = field(default_factory=dict)

    @property
    def dataset(self) -> str:
        return self.provenance.get("dataset", "")


def _resolve_all(names: Sequence[str], fetcher: Fetcher, config: PipelineConfig) -> dict[str, Resolution]:
    if not names:
        return {}
    with ThreadPoolExecutor(max_workers=config.parallelism) as pool:
        results = list(pool.map(lambda n: resolve(n, fetcher, config.scholar), names))
    return dict(zip(names, results))


def _cache_state(config: PipelineConfig, fetcher: RecordingFetcher) -> dict[str, Any]:
    used = sorted({(r.url, r.fetched_at, r.status) for r in fetcher.records})
    h = hashlib.sha256()
    for url, fetched_at, status in used:
        h.update(f"{url}\t{fetched_at}\t{status}\n".encode("utf-8"))
    return {
        "mode": config.fetch_mode,
        "records_used": len(used),
        "records_digest": h.hexdigest(),
    }


def run_pipeline(
    doc: SourceDocument,
    submitting_authors: Sequence[str] = (),
    config: Optional[PipelineConfig] = None,
    fetcher: Optional[Fetcher] = None,
    label: str = "",
    pdf_adapter: Optional[PdfAdapter] = None,
) -> ReviewerReport:
    """Run every stage on ``doc`` and assemble a report.

    Only NoReferenceSection / NoCitationsFound (and FetchError in live mode)
    abort the run; every per-candidate failure is recorded as a reason code.
    ``fetcher`` defaults to the one implied by ``config.fetch_mode``.
    """
    config = config or PipelineConfig()
    stopwords = StopWords.from_file(config.stopword_path) if config.stopword_path else default_stopwords()
    fetcher = RecordingFetcher(
        fetcher or make_fetcher(config.fetch_mode, config.cache_dir, config.politeness_delay_ms)
    )

    text = extract_text(doc, pdf_adapter)
    citations = parse_citations(text, stopwords)
    table = count_frequencies(author_mentions(citations))
    ordered = sort_by_frequency(table)
    pool = [name for name, _ in ordered[: config.candidate_pool]]
    logger.info("%d citations, %d distinct authors, pool of %d", len(citations), len(table), len(pool))

    resolutions = _resolve_all(pool, fetcher, config)
    profiles = {n: r.profile for n, r in resolutions.items()}
    reasons = {n: r.reason for n, r in resolutions.items()}

    submitter_profiles: dict[str, Optional[ScholarProfile]] = {}
    if submitting_authors and (config.rules.same_email_domain or config.rules.scholar_coauthor):
        submitter_profiles = {n: r.profile for n, r in _resolve_all(list(submitting_authors), fetcher, config).items()}

    ranked = rank_candidates(table, profiles, config.weights, reasons=reasons)
    kept, discarded = detect_conflicts(ranked, submitting_authors, citations, config.rules, submitter_profiles)

    rows = []
    for cand in kept[: config.top_n]:
        if cand.profile is not None:
            found = find_reviewer_email(cand.profile, fetcher)
            if found.email is not None:
                cand = replace(cand, email=found.email.address, email_domain_verified=found.email.domain_verified)
            else:
                cand = replace(cand, email_reason=found.reason)
        rows.append(cand)

    fetched = [r.fetched_at for r in fetcher.records]
    provenance = {
        "dataset": label,
        "input_sha256": hashlib.sha256(doc.data).hexdigest(),
        "config_sha256": config.digest(),
        "cache": _cache_state(config, fetcher),
        # latest data timestamp, not wall-clock: keeps cache_only reports reproducible
        "timestamp": max(fetched) if fetched else None,
        "refrank_version": __version__,
        "submitting_authors": list(submitting_authors),
        "citations": len(citations),
        "candidate_pool": len(pool),
        "conflict_rules": config.rules.enabled(),
        "conflict_note": COI_NOTE,
    }
    return ReviewerReport(
        rows=rows,
        discarded=discarded,
        unresolved=[(n, reasons[n] or "unknown") for n in pool if profiles[n] is None],
        frequencies=ordered,
        provenance=provenance,
    )
