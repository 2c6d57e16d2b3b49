"""Pipeline configuration and its JSON file form."""
from __future__ import annotations

import dataclasses
import hashlib
import json
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Optional

from .coi import ConflictRules
from .errors import ConfigError
from .fetch import FETCH_MODES
from .rank import ScoreWeights
from .scholar import ScholarConfig

OUTPUT_FORMATS = ("table", "csv", "json")
CACHE_ENV = "REFRANK_CACHE"


@dataclass
class PipelineConfig:
    fetch_mode: str = "cache_only"
    cache_dir: str = ".refrank-cache"
    weights: ScoreWeights = field(default_factory=ScoreWeights)
    top_n: int = 3
    candidate_pool: int = 10
    stopword_path: Optional[str] = None
    rules: ConflictRules = field(default_factory=ConflictRules)
    output_format: str = "table"
    parallelism: int = 4
    politeness_delay_ms: int = 1000
    scholar: ScholarConfig = field(default_factory=ScholarConfig)

    def __post_init__(self):
        self.validate()

    def validate(self) -> None:
        if self.fetch_mode not in FETCH_MODES:
            raise ConfigError(f"fetch_mode must be one of {FETCH_MODES}")
        if self.output_format not in OUTPUT_FORMATS:
            raise ConfigError(f"output_format must be one of {OUTPUT_FORMATS}")
        if self.top_n < 1 or self.candidate_pool < 1:
            raise ConfigError("top_n and candidate_pool must be positive")
        if self.top_n > self.candidate_pool:
            raise ConfigError(f"top_n ({self.top_n}) exceeds candidate_pool ({self.candidate_pool})")
        if self.parallelism < 1:
            raise ConfigError("parallelism must be >= 1")

    def to_dict(self) -> dict[str, Any]:
        return dataclasses.asdict(self)

    def digest(self) -> str:
        """Hash of the settings that influence report content (not where the cache lives)."""
        d = self.to_dict()
        for k in ("cache_dir", "output_format", "parallelism", "politeness_delay_ms"):
            d.pop(k)
        blob = json.dumps(d, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode("utf-8")).hexdigest()

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "PipelineConfig":
        data = dict(data)
        known = {f.name for f in dataclasses.fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        try:
            if "weights" in data:
                data["weights"] = ScoreWeights(**data["weights"])
            if "rules" in data:
                data["rules"] = ConflictRules(**data["rules"])
            if "scholar" in data:
                sc = dict(data["scholar"])
                patterns = dict(ScholarConfig().field_patterns)
                patterns.update(sc.pop("field_patterns", {}))
                data["scholar"] = ScholarConfig(field_patterns=patterns, **sc)
            return cls(**data)
        except TypeError as exc:
            raise ConfigError(str(exc)) from exc

    @classmethod
    def load(cls, path) -> "PipelineConfig":
        try:
            data = json.loads(Path(path).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        return cls.from_dict(data)


def resolve_config(path=None, **overrides) -> PipelineConfig:
    """File settings, then REFRANK_CACHE, then explicit (non-None) overrides."""
    data: dict[str, Any] = {}
    if path is not None:
        data = PipelineConfig.load(path).to_dict()
    if os.environ.get(CACHE_ENV):
        data["cache_dir"] = os.environ[CACHE_ENV]
    data.update({k: v for k, v in overrides.items() if v is not None})
    if isinstance(data.get("weights"), ScoreWeights):
        data["weights"] = dataclasses.asdict(data["weights"])
    return PipelineConfig.from_dict(data)
