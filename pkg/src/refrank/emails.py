"""Contact-email discovery from a candidate's homepage."""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional

from .errors import CacheMiss
from .fetch import Fetcher
from .scholar import ScholarProfile

EMAIL = re.compile(r"[A-Za-z0-9._-]+@[A-Za-z0-9-]+(?:\.[A-Za-z0-9-]+)+")


@dataclass(frozen=True)
class EmailCandidate:
    address: str
    source_url: str = ""
    domain_verified: bool = False

    @property
    def domain(self) -> str:
        return self.address.rsplit("@", 1)[1].lower()


@dataclass(frozen=True)
class EmailLookup:
    """Result of a homepage lookup: the chosen address, or why there is none."""

    email: Optional[EmailCandidate] = None
    reason: Optional[str] = None


def is_valid_email(address: str) -> bool:
    return EMAIL.fullmatch(address) is not None


def extract_emails(text: str) -> list[str]:
    seen: set[str] = set()
    out = []
    for m in EMAIL.finditer(text):
        key = m.group(0).casefold()
        if key not in seen:
            seen.add(key)
            out.append(m.group(0))
    return out


def _name_tokens(profile: ScholarProfile) -> set[str]:
    words = re.findall(r"[^\W\d_]+", f"{profile.full_name} {profile.short_name}")
    return {w.casefold() for w in words if len(w) > 1}


def choose_email(addresses: list[str], profile: ScholarProfile, source_url: str = "") -> Optional[EmailCandidate]:
    """Pick verified-domain first, then a local part sharing a name token, then the first.

    The ladder is applied lexicographically, so among several verified-domain
    addresses the one naming the candidate wins.
    """
    if not addresses:
        return None
    domain = (profile.verified_email_domain or "").casefold()
    tokens = _name_tokens(profile)

    def verified(addr: str) -> bool:
        return bool(domain) and addr.rsplit("@", 1)[1].casefold() == domain

    def named(addr: str) -> bool:
        local = {t.casefold() for t in re.split(r"[._-]+", addr.split("@", 1)[0]) if t}
        return bool(local & tokens)

    best = min(range(len(addresses)), key=lambda i: (not verified(addresses[i]), not named(addresses[i]), i))
    addr = addresses[best]
    return EmailCandidate(addr, source_url, verified(addr))


def find_reviewer_email(profile: ScholarProfile, fetcher: Fetcher) -> EmailLookup:
    if not profile.homepage_url:
        return EmailLookup(reason="no_homepage")
    try:
        record = fetcher.fetch(profile.homepage_url)
    except CacheMiss:
        return EmailLookup(reason="cache_miss")
    if record.status >= 400:
        return EmailLookup(reason=f"http_{record.status}")
    chosen = choose_email(extract_emails(record.text()), profile, profile.homepage_url)
    if chosen is None:
        return EmailLookup(reason="none_found")
    return EmailLookup(chosen)
