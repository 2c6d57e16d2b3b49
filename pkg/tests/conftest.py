import socket
from pathlib import Path

import pytest

from refrank.fetch import CacheOnlyFetcher, DiskCache

FIXTURES = Path(__file__).parent / "fixtures"
CACHE_DIR = FIXTURES / "cache"
DATASETS = ("dataset1", "dataset2", "dataset3")


class NetworkBlocked(AssertionError):
    pass


class CountingFetcher:
    """Delegates to a fetcher and counts calls; `live_calls` counts anything not served from cache."""

    def __init__(self, inner):
        self.inner = inner
        self.calls = []
        self.live_calls = 0

    def fetch(self, url):
        self.calls.append(url)
        record = self.inner.fetch(url)
        if record.source != "cache":
            self.live_calls += 1
        return record


@pytest.fixture(autouse=True)
def no_network(monkeypatch):
    """Any socket connection attempt fails the test."""
    attempts = []

    def blocked(*args, **kwargs):
        attempts.append(args)
        raise NetworkBlocked(f"network access attempted: {args!r}")

    monkeypatch.setattr(socket.socket, "connect", blocked)
    monkeypatch.setattr(socket.socket, "connect_ex", blocked)
    monkeypatch.setattr(socket, "create_connection", blocked)
    yield attempts
    assert not attempts, f"{len(attempts)} network attempts"


@pytest.fixture
def cache():
    return DiskCache(CACHE_DIR)


@pytest.fixture
def fixture_fetcher(cache):
    return CountingFetcher(CacheOnlyFetcher(cache))


def fixture_text(name):
    return (FIXTURES / f"{name}.txt").read_bytes()
