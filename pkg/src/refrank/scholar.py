"""Resolve a cited author name to a scholar profile and read its metrics."""
from __future__ import annotations

import html
import logging
import re
from dataclasses import dataclass, field
from typing import Optional

from .errors import CacheMiss, EmptyName, IdNotFound, ProfileParseError
from .fetch import Fetcher
from .refparse import collapse_ws

logger = logging.getLogger(__name__)

SCHOLAR_ID = re.compile(r"[A-Za-z0-9_-]{12}")

DEFAULT_FIELD_PATTERNS = {
    "full_name": r'<div id="gsc_prf_in"[^>]*>(.*?)</div>',
    "affiliation": r'<div class="gsc_prf_il">(.*?)</div>',
    "citations": r'>Citations</a></td>\s*<td class="gsc_rsb_std">([\d,]+)</td>',
    "h_index": r'>h-index</a></td>\s*<td class="gsc_rsb_std">([\d,]+)</td>',
    "i10_index": r'>i10-index</a></td>\s*<td class="gsc_rsb_std">([\d,]+)</td>',
    "verified_email_domain": r"Verified email at ([A-Za-z0-9.-]+?)(?:\s|<|$)",
    "homepage_url": r'<a href="([^"]+)"[^>]*>Homepage</a>',
    "coauthors": r'<span class="gsc_rsb_a_desc"><a [^>]*>(.*?)</a>',
}


@dataclass
class ScholarConfig:
    search_url_template: str = (
        "https://scholar.google.com/citations?view_op=search_authors&hl=en&mauthors={name}"
    )
    profile_url_template: str = "https://scholar.google.com/citations?hl=en&user={id}"
    id_pattern: str = r"[?&;]user=([A-Za-z0-9_-]+)"
    field_patterns: dict[str, str] = field(default_factory=lambda: dict(DEFAULT_FIELD_PATTERNS))

    def pattern(self, name: str) -> re.Pattern:
        return re.compile(self.field_patterns[name], re.DOTALL)


@dataclass(frozen=True)
class ScholarProfile:
    id: str
    short_name: str
    full_name: str
    affiliation: str
    h_index: int
    i10_index: int
    citations: int
    verified_email_domain: Optional[str] = None
    homepage_url: Optional[str] = None
    coauthors: tuple[str, ...] = ()


@dataclass(frozen=True)
class Resolution:
    """Outcome of resolving one name: a profile, or the reason there is none."""

    name: str
    profile: Optional[ScholarProfile] = None
    reason: Optional[str] = None


def is_valid_scholar_id(value: str) -> bool:
    return isinstance(value, str) and SCHOLAR_ID.fullmatch(value) is not None


def build_search_url(name: str, config: Optional[ScholarConfig] = None) -> str:
    config = config or ScholarConfig()
    name = collapse_ws(name)
    if not name:
        raise EmptyName("cannot search for an empty name")
    return config.search_url_template.replace("{name}", name.replace(" ", "+"))


def build_profile_url(scholar_id: str, config: Optional[ScholarConfig] = None) -> str:
    config = config or ScholarConfig()
    return config.profile_url_template.replace("{id}", scholar_id)


def extract_profile_id(page: str, config: Optional[ScholarConfig] = None) -> str:
    """First id-bearing match on a search page that is a well-formed 12-character id."""
    config = config or ScholarConfig()
    for m in re.finditer(config.id_pattern, page):
        if is_valid_scholar_id(m.group(1)):
            return m.group(1)
    raise IdNotFound("no profile id on search page")


def _strip_tags(fragment: str) -> str:
    return collapse_ws(html.unescape(re.sub(r"<[^>]+>", " ", fragment)))


def _required_int(config: ScholarConfig, page: str, name: str) -> int:
    m = config.pattern(name).search(page)
    if m is None:
        raise ProfileParseError(name)
    return int(m.group(1).replace(",", ""))


def parse_profile(page: str, query_name: str, scholar_id: str = "", config: Optional[ScholarConfig] = None) -> ScholarProfile:
    config = config or ScholarConfig()
    m = config.pattern("full_name").search(page)
    full_name = _strip_tags(m.group(1)) if m else ""
    if not full_name:
        raise ProfileParseError("full_name")
    m = config.pattern("affiliation").search(page)
    affiliation = _strip_tags(m.group(1)) if m else ""

    citations = _required_int(config, page, "citations")
    h_index = _required_int(config, page, "h_index")
    i10_index = _required_int(config, page, "i10_index")
    if h_index > citations:
        raise ProfileParseError("h_index", f"h-index {h_index} exceeds citations {citations}")
    if i10_index > citations:
        raise ProfileParseError("i10_index", f"i10-index {i10_index} exceeds citations {citations}")
    if h_index * h_index > citations:
        logger.warning("%s: h-index %d inconsistent with %d citations", full_name, h_index, citations)

    m = config.pattern("verified_email_domain").search(page)
    domain = m.group(1).lower().rstrip(".") if m else None
    m = config.pattern("homepage_url").search(page)
    homepage = html.unescape(m.group(1)) if m else None
    coauthors = tuple(_strip_tags(c) for c in config.pattern("coauthors").findall(page))

    if not scholar_id:
        try:
            scholar_id = extract_profile_id(page, config)
        except IdNotFound:
            scholar_id = ""
    return ScholarProfile(
        id=scholar_id,
        short_name=collapse_ws(query_name),
        full_name=full_name,
        affiliation=affiliation,
        h_index=h_index,
        i10_index=i10_index,
        citations=citations,
        verified_email_domain=domain,
        homepage_url=homepage,
        coauthors=coauthors,
    )


def resolve(name: str, fetcher: Fetcher, config: Optional[ScholarConfig] = None) -> Resolution:
    """search page -> first profile id -> profile page -> parsed profile.

    Soft failures come back as a Resolution with a reason code
    (empty_name, cache_miss, http_<status>, id_not_found,
    profile_parse_error:<field>). FetchError propagates.
    """
    config = config or ScholarConfig()
    try:
        search = fetcher.fetch(build_search_url(name, config))
        if search.status >= 400:
            return Resolution(name, reason=f"http_{search.status}")
        scholar_id = extract_profile_id(search.text(), config)
        page = fetcher.fetch(build_profile_url(scholar_id, config))
        if page.status >= 400:
            return Resolution(name, reason=f"http_{page.status}")
        return Resolution(name, parse_profile(page.text(), name, scholar_id, config))
    except EmptyName:
        return Resolution(name, reason="empty_name")
    except CacheMiss:
        return Resolution(name, reason="cache_miss")
    except IdNotFound:
        return Resolution(name, reason="id_not_found")
    except ProfileParseError as exc:
        return Resolution(name, reason=f"profile_parse_error:{exc.field}")
