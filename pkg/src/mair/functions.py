"""Document-function classification with a transparent keyword baseline.

The classifier interface is pluggable: the shipped baseline is an ordered
keyword-rule list over titles, and :class:`PredictionFileClassifier` mounts
an externally produced title -> label prediction file so heavier models stay
out of the toolkit.  The evaluation harness reports a six-way confusion
matrix and accuracy.
"""

from __future__ import annotations

import csv
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Protocol, Sequence

import numpy as np

from .corpus import DOCUMENT_FUNCTIONS

__all__ = [
    "LabeledTitle",
    "Classifier",
    "KeywordClassifier",
    "PredictionFileClassifier",
    "classify",
    "evaluate",
    "load_labeled_titles",
    "write_confusion_csv",
]


@dataclass(frozen=True)
class LabeledTitle:
    title: str
    label: str

    def __post_init__(self) -> None:
        if self.label not in DOCUMENT_FUNCTIONS:
            raise ValueError(f"unknown function label {self.label!r}")


class Classifier(Protocol):
    def predict(self, title: str) -> str: ...


class KeywordClassifier:
    """Ordered first-match keyword rules; defaults to ``diagnosis``."""

    RULES: tuple[tuple[str, tuple[str, ...]], ...] = (
        ("regulations", ("regulation", "regulations", "act", "law", "laws", "decree", "ordinance")),
        ("pre_regulations", ("draft", "proposal", "proposals", "bill", "white paper")),
        ("strategies", ("strategy", "strategies", "plan", "plans", "roadmap", "agenda")),
        ("principles", ("ethics", "ethical", "principles", "guidelines", "guideline", "charter")),
        ("body", ("committee", "council", "office", "body", "commission", "taskforce", "task force")),
    )

    def __init__(self) -> None:
        self._patterns = [
            (label, re.compile(r"\b(?:" + "|".join(re.escape(k) for k in keywords) + r")\b"))
            for label, keywords in self.RULES
        ]

    def predict(self, title: str) -> str:
        lowered = title.casefold()
        for label, pattern in self._patterns:
            if pattern.search(lowered):
                return label
        return "diagnosis"


class PredictionFileClassifier:
    """Serves predictions recorded in a ``title<TAB>label`` file."""

    def __init__(self, path: str | Path, fallback: Classifier | None = None) -> None:
        self._predictions: dict[str, str] = {}
        self._fallback = fallback or KeywordClassifier()
        with open(path, encoding="utf-8") as handle:
            for raw in handle:
                line = raw.rstrip("\n")
                if not line or line.startswith("#"):
                    continue
                title, _, label = line.partition("\t")
                if label not in DOCUMENT_FUNCTIONS:
                    raise ValueError(f"unknown label {label!r} for {title!r}")
                self._predictions[title.strip().casefold()] = label

    def predict(self, title: str) -> str:
        hit = self._predictions.get(title.strip().casefold())
        return hit if hit is not None else self._fallback.predict(title)


def classify(title: str, model: Classifier) -> str:
    if not title.strip():
        raise ValueError("empty title")
    return model.predict(title)


def evaluate(pairs: Sequence[LabeledTitle], model: Classifier) -> tuple[np.ndarray, float]:
    """Confusion matrix (rows true, columns predicted) and accuracy."""
    if not pairs:
        raise ValueError("evaluation needs at least one labeled title")
    index = {label: i for i, label in enumerate(DOCUMENT_FUNCTIONS)}
    matrix = np.zeros((len(DOCUMENT_FUNCTIONS), len(DOCUMENT_FUNCTIONS)), dtype=int)
    for pair in pairs:
        predicted = classify(pair.title, model)
        matrix[index[pair.label], index[predicted]] += 1
    accuracy = float(np.trace(matrix)) / len(pairs)
    return matrix, accuracy


def load_labeled_titles(path: str | Path) -> list[LabeledTitle]:
    pairs: list[LabeledTitle] = []
    with open(path, encoding="utf-8") as handle:
        for raw in handle:
            line = raw.rstrip("\n")
            if not line or line.startswith("#"):
                continue
            title, _, label = line.partition("\t")
            pairs.append(LabeledTitle(title=title.strip(), label=label.strip()))
    return pairs


def write_confusion_csv(matrix: np.ndarray, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["true\\predicted", *DOCUMENT_FUNCTIONS])
        for label, row in zip(DOCUMENT_FUNCTIONS, matrix):
            writer.writerow([label, *row.tolist()])
