"""Composite publication-weight score and top-N ordering."""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Mapping, Optional

from .errors import ConfigError
from .freq import FrequencyTable, name_key
from .scholar import ScholarProfile


@dataclass(frozen=True)
class ScoreWeights:
    alpha: float = 1.0  # h-index
    beta: float = 0.5  # i10-index
    gamma: float = 5.0  # log10(1 + citations)

    def __post_init__(self):
        if min(self.alpha, self.beta, self.gamma) < 0:
            raise ConfigError("score weights must be non-negative")
        if self.alpha + self.beta + self.gamma <= 0:
            raise ConfigError("at least one score weight must be positive")

    @classmethod
    def parse(cls, text: str) -> "ScoreWeights":
        try:
            a, b, g = (float(x) for x in text.split(","))
        except ValueError as exc:
            raise ConfigError(f"weights must be 'alpha,beta,gamma', got {text!r}") from exc
        return cls(a, b, g)


@dataclass(frozen=True)
class RankedCandidate:
    name: str
    frequency: int
    profile: Optional[ScholarProfile]
    score: float
    rank: int
    conflict: Optional[str] = None
    email: Optional[str] = None
    email_domain_verified: Optional[bool] = None
    unresolved_reason: Optional[str] = None
    email_reason: Optional[str] = None


def score(frequency: int, profile: ScholarProfile, w: ScoreWeights = ScoreWeights()) -> float:
    return frequency * (
        w.alpha * profile.h_index + w.beta * profile.i10_index + w.gamma * math.log10(1 + profile.citations)
    )


def rank_candidates(
    table: FrequencyTable,
    profiles: Mapping[str, Optional[ScholarProfile]],
    w: ScoreWeights = ScoreWeights(),
    top_n: Optional[int] = None,
    reasons: Optional[Mapping[str, Optional[str]]] = None,
) -> list[RankedCandidate]:
    """Score every name in ``profiles`` and order by score, frequency, name.

    Names are looked up in ``table`` for their frequency. Profile-less names
    get score 0 and, by construction, sort after every positive score.
    """
    if top_n is not None and top_n < 1:
        raise ValueError("top_n must be >= 1")
    reasons = reasons or {}
    scored = []
    for name, profile in profiles.items():
        freq = table.get(name)
        if freq < 1:
            continue
        s = score(freq, profile, w) if profile is not None else 0.0
        scored.append((s, freq, name, profile))
    scored.sort(key=lambda t: (t[3] is None, -t[0], -t[1], name_key(t[2]), t[2]))
    if top_n is not None:
        scored = scored[:top_n]
    return [
        RankedCandidate(name, freq, profile, s, i + 1, unresolved_reason=None if profile else reasons.get(name))
        for i, (s, freq, name, profile) in enumerate(scored)
    ]


def rerank(candidates: list[RankedCandidate]) -> list[RankedCandidate]:
    return [replace(c, rank=i + 1) for i, c in enumerate(candidates)]
