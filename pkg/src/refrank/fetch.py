"""Fetchers (live, read-through cached, cache-only) and the on-disk response cache.

Cache layout: one flat directory, two files per URL keyed by the SHA-256 hex
digest of the URL: ``<digest>.body`` holds the raw response bytes and
``<digest>.meta`` a small JSON document with ``url``, ``status`` and
``fetched_at``.
"""
from __future__ import annotations

import hashlib
import json
import logging
import os
import tempfile
import threading
import time
from collections import defaultdict
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import Literal, Optional, Protocol
from urllib.parse import urlsplit

from .errors import CacheMiss, ConfigError, FetchError

logger = logging.getLogger(__name__)

FetchMode = Literal["live", "cached", "cache_only"]
FETCH_MODES = ("live", "cached", "cache_only")
USER_AGENT = "refrank/0.1 (reviewer-candidate research tool)"


@dataclass(frozen=True)
class FetchRecord:
    url: str
    body: bytes
    status: int
    fetched_at: str
    source: Literal["live", "cache"] = "live"

    def __post_init__(self):
        if not 100 <= self.status <= 599:
            raise ValueError(f"HTTP status out of range: {self.status}")

    def text(self) -> str:
        return self.body.decode("utf-8", errors="replace")


class Fetcher(Protocol):
    def fetch(self, url: str) -> FetchRecord: ...


def url_digest(url: str) -> str:
    return hashlib.sha256(url.encode("utf-8")).hexdigest()


def utc_now() -> str:
    return datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


class DiskCache:
    def __init__(self, directory):
        self.directory = Path(directory)

    def _paths(self, url: str) -> tuple[Path, Path]:
        d = url_digest(url)
        return self.directory / f"{d}.body", self.directory / f"{d}.meta"

    def get(self, url: str) -> Optional[FetchRecord]:
        body_path, meta_path = self._paths(url)
        try:
            meta = json.loads(meta_path.read_text(encoding="utf-8"))
            body = body_path.read_bytes()
        except FileNotFoundError:
            return None
        return FetchRecord(meta["url"], body, int(meta["status"]), meta["fetched_at"], "cache")

    def put(self, record: FetchRecord) -> None:
        self.directory.mkdir(parents=True, exist_ok=True)
        body_path, meta_path = self._paths(record.url)
        meta = {"url": record.url, "status": record.status, "fetched_at": record.fetched_at}
        # body first: a reader only trusts entries whose meta exists
        _atomic_write(body_path, record.body)
        _atomic_write(meta_path, (json.dumps(meta, indent=2, sort_keys=True) + "\n").encode("utf-8"))

    def __contains__(self, url: str) -> bool:
        return self._paths(url)[1].exists()

    def urls(self) -> list[str]:
        if not self.directory.is_dir():
            return []
        out = []
        for p in sorted(self.directory.glob("*.meta")):
            out.append(json.loads(p.read_text(encoding="utf-8"))["url"])
        return out


def _atomic_write(path: Path, data: bytes) -> None:
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


class LiveFetcher:
    """HTTP GET with a per-host politeness delay; requests to one host are serialized."""

    def __init__(self, politeness_delay_ms: int = 1000, timeout: float = 30.0, session=None):
        if politeness_delay_ms < 1000:
            logger.warning("politeness delay below 1s (%d ms)", politeness_delay_ms)
        self.delay = politeness_delay_ms / 1000.0
        self.timeout = timeout
        self._session = session
        self._locks: defaultdict[str, threading.Lock] = defaultdict(threading.Lock)
        self._locks_guard = threading.Lock()
        self._last: dict[str, float] = {}

    @property
    def session(self):
        if self._session is None:
            import requests

            self._session = requests.Session()
            self._session.headers["User-Agent"] = USER_AGENT
        return self._session

    def _host_lock(self, host: str) -> threading.Lock:
        with self._locks_guard:
            return self._locks[host]

    def fetch(self, url: str) -> FetchRecord:
        host = urlsplit(url).netloc.lower()
        with self._host_lock(host):
            wait = self._last.get(host, float("-inf")) + self.delay - time.monotonic()
            if wait > 0:
                time.sleep(wait)
            try:
                resp = self.session.get(url, timeout=self.timeout)
            except Exception as exc:
                raise FetchError(f"{url}: {exc}") from exc
            finally:
                self._last[host] = time.monotonic()
        logger.info("GET %s -> %d", url, resp.status_code)
        return FetchRecord(url, resp.content, resp.status_code, utc_now(), "live")


class CachedFetcher:
    """Read-through cache in front of an upstream fetcher."""

    def __init__(self, cache: DiskCache, upstream: Fetcher):
        self.cache = cache
        self.upstream = upstream

    def fetch(self, url: str) -> FetchRecord:
        hit = self.cache.get(url)
        if hit is not None:
            return hit
        record = self.upstream.fetch(url)
        self.cache.put(record)
        return record


class CacheOnlyFetcher:
    def __init__(self, cache: DiskCache):
        self.cache = cache

    def fetch(self, url: str) -> FetchRecord:
        hit = self.cache.get(url)
        if hit is None:
            raise CacheMiss(url)
        return hit


class RecordingFetcher:
    """Wraps a fetcher and remembers every record it returned, in call order."""

    def __init__(self, inner: Fetcher):
        self.inner = inner
        self.records: list[FetchRecord] = []
        self._lock = threading.Lock()

    def fetch(self, url: str) -> FetchRecord:
        record = self.inner.fetch(url)
        with self._lock:
            self.records.append(record)
        return record


def make_fetcher(mode: str, cache_dir, politeness_delay_ms: int = 1000) -> Fetcher:
    if mode == "cache_only":
        return CacheOnlyFetcher(DiskCache(cache_dir))
    if mode == "cached":
        return CachedFetcher(DiskCache(cache_dir), LiveFetcher(politeness_delay_ms))
    if mode == "live":
        return LiveFetcher(politeness_delay_ms)
    raise ConfigError(f"fetch_mode must be one of {FETCH_MODES}, got {mode!r}")
