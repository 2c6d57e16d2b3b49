"""Author mention counting and deterministic frequency ordering."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Union

from .refparse import AuthorMention, collapse_ws


def name_key(name: str) -> str:
    return collapse_ws(name).casefold()


@dataclass
class FrequencyTable:
    """Insertion-ordered mapping of first-seen surface name to mention count."""

    entries: dict[str, int] = field(default_factory=dict)
    _keys: dict[str, str] = field(default_factory=dict, repr=False, compare=False)

    @property
    def total_mentions(self) -> int:
        return sum(self.entries.values())

    def add(self, name: str) -> None:
        key = name_key(name)
        surface = self._keys.get(key)
        if surface is None:
            surface = collapse_ws(name)
            self._keys[key] = surface
            self.entries[surface] = 1
        else:
            self.entries[surface] += 1

    def get(self, name: str) -> int:
        surface = self._keys.get(name_key(name))
        return self.entries[surface] if surface is not None else 0

    def __len__(self) -> int:
        return len(self.entries)


def count_frequencies(mentions: Iterable[Union[AuthorMention, str]]) -> FrequencyTable:
    table = FrequencyTable()
    for m in mentions:
        table.add(m.canonical_name if isinstance(m, AuthorMention) else m)
    return table


def sort_by_frequency(table: FrequencyTable) -> list[tuple[str, int]]:
    return sorted(table.entries.items(), key=lambda kv: (-kv[1], kv[0].casefold(), kv[0]))


def format_frequency_lines(ordered: Iterable[tuple[str, int]]) -> str:
    return "".join(f"{name} {count}\n" for name, count in ordered)
