"""Conflict-of-interest screening of ranked candidates.

Co-authorship is approximated by co-citation (the candidate and a submitting
author share a reference's author list) and, when available, by a submitting
author's scholar co-author list. Colleagues are approximated by a shared
verified email domain.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, replace
from typing import Mapping, Optional, Sequence

from .freq import name_key
from .rank import RankedCandidate, rerank
from .refparse import Citation
from .scholar import ScholarProfile

RULE_ORDER = ("is_submitting_author", "co_cited_with_submitter", "same_email_domain", "scholar_coauthor")


@dataclass(frozen=True)
class ConflictRules:
    is_submitting_author: bool = True
    co_cited_with_submitter: bool = True
    same_email_domain: bool = True
    scholar_coauthor: bool = True

    @classmethod
    def none(cls) -> "ConflictRules":
        return cls(False, False, False, False)

    def enabled(self) -> list[str]:
        return [k for k in RULE_ORDER if getattr(self, k)]


def _surname_initial(name: str) -> tuple[str, str]:
    words = re.findall(r"[^\W\d_][\w'’-]*", name)
    if not words:
        return "", ""
    return words[-1].casefold(), words[0][0].casefold()


def names_match(a: str, b: str) -> bool:
    """Exact (case/space-insensitive) match, or same surname and first initial."""
    if not name_key(a) or not name_key(b):
        return False
    if name_key(a) == name_key(b):
        return True
    sa, sb = _surname_initial(a), _surname_initial(b)
    return bool(sa[0]) and sa == sb


def detect_conflicts(
    candidates: Sequence[RankedCandidate],
    submitting_authors: Sequence[str],
    citations: Sequence[Citation] = (),
    rules: ConflictRules = ConflictRules(),
    submitter_profiles: Optional[Mapping[str, Optional[ScholarProfile]]] = None,
) -> tuple[list[RankedCandidate], list[RankedCandidate]]:
    """Split candidates into (survivors, discarded).

    Each discarded candidate carries the first matching rule name in
    ``conflict``; survivors keep their relative order and are re-ranked 1..K.
    """
    submitter_profiles = submitter_profiles or {}
    submitter_keys = {name_key(s) for s in submitting_authors}
    co_cited = _co_cited_keys(citations, submitter_keys) if rules.co_cited_with_submitter else set()
    submitter_domains = {
        p.verified_email_domain.casefold()
        for p in submitter_profiles.values()
        if p is not None and p.verified_email_domain
    }
    coauthor_names = [c for p in submitter_profiles.values() if p is not None for c in p.coauthors]

    kept, discarded = [], []
    for cand in candidates:
        reason = _first_conflict(cand, rules, submitter_keys, co_cited, submitter_domains, coauthor_names)
        if reason is None:
            kept.append(cand)
        else:
            discarded.append(replace(cand, conflict=reason))
    return rerank(kept), discarded


def _co_cited_keys(citations: Sequence[Citation], submitter_keys: set[str]) -> set[str]:
    """Names sharing some reference's author list with a submitting author other than themselves."""
    out: set[str] = set()
    for c in citations:
        keys = {name_key(t) for t in c.author_tokens}
        present = keys & submitter_keys
        for k in keys:
            if present - {k}:
                out.add(k)
    return out


def _first_conflict(cand, rules, submitter_keys, co_cited, domains, coauthor_names) -> Optional[str]:
    key = name_key(cand.name)
    profile = cand.profile
    for rule in rules.enabled():
        if rule == "is_submitting_author" and key in submitter_keys:
            return rule
        if rule == "co_cited_with_submitter" and key in co_cited:
            return rule
        if (
            rule == "same_email_domain"
            and profile is not None
            and profile.verified_email_domain
            and profile.verified_email_domain.casefold() in domains
        ):
            return rule
        if rule == "scholar_coauthor" and coauthor_names:
            names = [cand.name] + ([profile.full_name] if profile else [])
            if any(names_match(n, co) for n in names for co in coauthor_names):
                return rule
    return None
