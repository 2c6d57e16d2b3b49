"""Per-attribute accuracy of reports against hand-labeled ground truth."""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import Any, Callable, Sequence

from .errors import MissingLabel
from .freq import name_key
from .pipeline import ReviewerReport
from .rank import RankedCandidate

ATTRIBUTES = (
    "Frequency", "ID", "Email Domain", "Professional Info", "H-index",
    "i10-index", "Citations", "Homepage", "Email",
)
LABEL_KEYS = (
    "frequency", "id", "email_domain", "professional_info", "h_index",
    "i10_index", "citations", "homepage", "email",
)


def _fold(v):
    return v.casefold() if isinstance(v, str) else v


def _profile_attr(attr: str) -> Callable[[RankedCandidate], Any]:
    return lambda c: getattr(c.profile, attr) if c.profile is not None else None


_PREDICTED: dict[str, Callable[[RankedCandidate], Any]] = {
    "frequency": lambda c: c.frequency,
    "id": _profile_attr("id"),
    "email_domain": _profile_attr("verified_email_domain"),
    "professional_info": _profile_attr("affiliation"),
    "h_index": _profile_attr("h_index"),
    "i10_index": _profile_attr("i10_index"),
    "citations": _profile_attr("citations"),
    "homepage": _profile_attr("homepage_url"),
    "email": lambda c: c.email,
}


@dataclass
class GroundTruth:
    """Labels keyed by (dataset, case-folded name).

    A null label means the value does not exist publicly; a missing
    prediction then counts as correct.
    """

    labels: dict[tuple[str, str], dict[str, Any]] = field(default_factory=dict)
    frequencies: dict[str, dict[str, int]] = field(default_factory=dict)

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "GroundTruth":
        truth = cls()
        for dataset, body in data["datasets"].items():
            truth.frequencies[dataset] = dict(body.get("frequencies", {}))
            for entry in body.get("candidates", []):
                missing = [k for k in LABEL_KEYS if k not in entry]
                if missing:
                    raise MissingLabel(f"{dataset}/{entry.get('name')}: missing {missing}")
                truth.labels[(dataset, name_key(entry["name"]))] = entry
        return truth

    @classmethod
    def load(cls, path) -> "GroundTruth":
        with open(path, encoding="utf-8") as fh:
            return cls.from_dict(json.load(fh))

    def label_for(self, dataset: str, name: str) -> dict[str, Any]:
        try:
            return self.labels[(dataset, name_key(name))]
        except KeyError:
            raise MissingLabel(f"no ground-truth label for {name!r} in {dataset!r}") from None


@dataclass
class AccuracyTable:
    counts: dict[str, tuple[int, int]]
    wrong_id: tuple[int, int]

    def percent(self, attribute: str) -> float:
        correct, total = self.counts[attribute]
        return 100.0 * correct / total if total else 0.0

    @property
    def wrong_id_rate(self) -> float:
        wrong, total = self.wrong_id
        return 100.0 * wrong / total if total else 0.0

    @property
    def mean(self) -> float:
        return sum(self.percent(a) for a in ATTRIBUTES) / len(ATTRIBUTES)

    def rows(self) -> list[tuple[str, int, int, float]]:
        out = [(a, *self.counts[a], self.percent(a)) for a in ATTRIBUTES]
        out.append(("Wrong-ID", *self.wrong_id, self.wrong_id_rate))
        return out

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["attribute", "correct", "total", "percent"])
        for name, correct, total, pct in self.rows():
            w.writerow([name, correct, total, f"{pct:.2f}"])
        w.writerow(["Mean", "", "", f"{self.mean:.2f}"])
        return buf.getvalue()

    def to_json(self) -> str:
        body = {
            "attributes": [
                {"attribute": n, "correct": c, "total": t, "percent": round(p, 4)} for n, c, t, p in self.rows()
            ],
            "mean_percent": round(self.mean, 4),
        }
        return json.dumps(body, indent=2, sort_keys=True) + "\n"


def evaluated_candidates(report: ReviewerReport) -> list[RankedCandidate]:
    """Output rows plus conflict-discarded candidates (every candidate the report shows)."""
    return list(report.rows) + list(report.discarded)


def evaluate(reports: Sequence[ReviewerReport], truth: GroundTruth) -> AccuracyTable:
    counts = {a: [0, 0] for a in ATTRIBUTES}
    wrong = [0, 0]
    for report in reports:
        for cand in evaluated_candidates(report):
            label = truth.label_for(report.dataset, cand.name)
            for attr, key in zip(ATTRIBUTES, LABEL_KEYS):
                counts[attr][1] += 1
                if _fold(_PREDICTED[key](cand)) == _fold(label[key]):
                    counts[attr][0] += 1
            wrong[1] += 1
            if cand.profile is not None and cand.profile.id != label["id"]:
                wrong[0] += 1
    return AccuracyTable({a: (c, t) for a, (c, t) in counts.items()}, (wrong[0], wrong[1]))


def frequency_accuracy(report: ReviewerReport, truth: GroundTruth) -> tuple[int, int]:
    """Correct/total over the report's full author frequency list."""
    labels = {name_key(n): k for n, k in truth.frequencies.get(report.dataset, {}).items()}
    if len(labels) != len(report.frequencies):
        missing = {name_key(n) for n, _ in report.frequencies} ^ set(labels)
        raise MissingLabel(f"frequency labels and report differ on: {sorted(missing)}")
    correct = sum(1 for n, k in report.frequencies if labels.get(name_key(n)) == k)
    return correct, len(report.frequencies)
