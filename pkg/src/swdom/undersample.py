"""Class-imbalance reduction through domination on the majority kNN graph.

The majority class is arranged in a directed k-nearest-neighbour graph
(every majority point demands domination from its own k neighbours), a
theta-dominating subset is constructed and shrunk, and only that subset of
the majority survives; minority points always pass through untouched.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass

import numpy as np

from .graph_core import DirectedGraph
from .neigh_dom import DominationCertificate, greedy_shrink, lll_construct

__all__ = [
    "Dataset",
    "KnnGraph",
    "EvaluationReport",
    "UndersampleResult",
    "load_dataset",
    "save_dataset",
    "distance_matrix",
    "knn_graph",
    "choose_k",
    "undersample_majority",
    "evaluate_knn_classifier",
]

_METRICS = ("euclidean", "manhattan", "cosine")


@dataclass(frozen=True)
class Dataset:
    """Numeric points with one string label per row."""

    points: np.ndarray
    labels: tuple[str, ...]
    feature_names: tuple[str, ...]
    label_name: str = "label"

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        if pts.ndim != 2 or pts.shape[0] == 0 or pts.shape[1] == 0:
            raise ValueError("points must be a non-empty 2-D array")
        if not np.isfinite(pts).all():
            raise ValueError("points must be finite")
        if len(self.labels) != pts.shape[0]:
            raise ValueError("one label per row is required")
        if len(self.feature_names) != pts.shape[1]:
            raise ValueError("one feature name per column is required")
        if len(set(self.feature_names)) != len(self.feature_names):
            raise ValueError("feature names must be unique")
        if self.label_name in self.feature_names:
            raise ValueError("label column clashes with a feature name")
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "labels", tuple(str(v) for v in self.labels))
        object.__setattr__(self, "feature_names", tuple(self.feature_names))

    def __len__(self) -> int:
        return self.points.shape[0]

    def class_counts(self) -> dict[str, int]:
        counts: dict[str, int] = {}
        for lab in self.labels:
            counts[lab] = counts.get(lab, 0) + 1
        return counts

    @property
    def majority_label(self) -> str:
        # Ties go to the lexicographically smallest label.
        counts = self.class_counts()
        best = max(counts.values())
        return min(lab for lab, c in counts.items() if c == best)

    def majority_indices(self) -> np.ndarray:
        lab = self.majority_label
        return np.asarray([i for i, v in enumerate(self.labels) if v == lab],
                          dtype=np.int64)

    def minority_indices(self) -> np.ndarray:
        lab = self.majority_label
        return np.asarray([i for i, v in enumerate(self.labels) if v != lab],
                          dtype=np.int64)

    def take(self, indices) -> "Dataset":
        idx = np.asarray(indices, dtype=np.int64)
        return Dataset(points=self.points[idx].copy(),
                       labels=tuple(self.labels[int(i)] for i in idx),
                       feature_names=self.feature_names,
                       label_name=self.label_name)


def load_dataset(path, label_column: str) -> Dataset:
    """Read a dataset from CSV; every non-label column must parse as float."""
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None:
            raise ValueError(f"{path}: empty file")
        if label_column not in reader.fieldnames:
            raise ValueError(f"{path}: no column named {label_column!r}")
        features = [c for c in reader.fieldnames if c != label_column]
        if not features:
            raise ValueError(f"{path}: no feature columns besides the label")
        rows, labels = [], []
        for i, rec in enumerate(reader, start=2):
            vals = []
            for c in features:
                cell = rec.get(c)
                if cell is None or cell.strip() == "":
                    raise ValueError(f"{path}: line {i}: missing value in column {c!r}")
                try:
                    vals.append(float(cell))
                except ValueError:
                    raise ValueError(
                        f"{path}: line {i}: column {c!r} is not numeric: {cell!r}"
                    ) from None
            lab = rec.get(label_column)
            if lab is None or lab.strip() == "":
                raise ValueError(f"{path}: line {i}: missing label")
            rows.append(vals)
            labels.append(lab.strip())
    if not rows:
        raise ValueError(f"{path}: no data rows")
    return Dataset(points=np.asarray(rows, dtype=float), labels=tuple(labels),
                   feature_names=tuple(features), label_name=label_column)


def save_dataset(dataset: Dataset, path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(list(dataset.feature_names) + [dataset.label_name])
        for row, lab in zip(dataset.points, dataset.labels):
            writer.writerow([repr(float(v)) for v in row] + [lab])


def distance_matrix(a: np.ndarray, b: np.ndarray, metric: str) -> np.ndarray:
    """Pairwise distances, rows of a against rows of b.

    Euclidean distances are returned squared; the graph and classifier only
    compare distances, and squaring preserves the order.
    """
    if metric not in _METRICS:
        raise ValueError(f"unknown metric {metric!r}; pick one of {_METRICS}")
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if metric == "euclidean":
        sq_a = (a * a).sum(axis=1)
        sq_b = (b * b).sum(axis=1)
        d = sq_a[:, None] + sq_b[None, :] - 2.0 * (a @ b.T)
        return np.maximum(d, 0.0)
    if metric == "manhattan":
        return np.abs(a[:, None, :] - b[None, :, :]).sum(axis=2)
    norm_a = np.linalg.norm(a, axis=1)
    norm_b = np.linalg.norm(b, axis=1)
    if (norm_a == 0.0).any() or (norm_b == 0.0).any():
        raise ValueError("cosine distance is undefined for zero vectors")
    return 1.0 - (a / norm_a[:, None]) @ (b / norm_b[:, None]).T


class KnnGraph:
    """Directed graph with an edge u -> v when v is one of u's k nearest
    points (distance ties broken by ascending index)."""

    def __init__(self, points: np.ndarray, k: int, metric: str = "euclidean"):
        points = np.asarray(points, dtype=float)
        n = points.shape[0]
        if not 1 <= k < n:
            raise ValueError(f"k must satisfy 1 <= k < {n}, got {k}")
        d = distance_matrix(points, points, metric)
        np.fill_diagonal(d, np.inf)
        order = np.argsort(d, axis=1, kind="stable")
        self.neighbor_lists = order[:, :k].astype(np.int64)
        self._graph = DirectedGraph([row.tolist() for row in self.neighbor_lists])
        self.k = k
        self.metric = metric

    @property
    def vertex_count(self) -> int:
        return self._graph.vertex_count

    def neighbors_of(self, v: int) -> np.ndarray:
        return self._graph.neighbors_of(v)

    def influence_of(self, v: int) -> np.ndarray:
        return self._graph.influence_of(v)

    def degree_of(self, v: int) -> int:
        return self._graph.degree_of(v)


def knn_graph(points, k: int, metric: str = "euclidean") -> KnnGraph:
    return KnnGraph(points, k, metric)


def choose_k(n: int, m_const: float = 3.0) -> int:
    """Default neighbourhood size, M * log2(n) rounded up, capped at n - 1."""
    if n < 2:
        raise ValueError("need at least two points")
    if m_const <= 0.0:
        raise ValueError("the log multiplier must be positive")
    return min(n - 1, math.ceil(m_const * math.log2(n) - 1e-12))


@dataclass(frozen=True)
class UndersampleResult:
    """Retained rows (original dataset indices) and the domination
    certificate over the majority kNN graph (majority-local vertex ids)."""

    retained_majority: tuple[int, ...]
    minority: tuple[int, ...]
    certificate: DominationCertificate
    k: int
    metric: str
    theta: float
    eta: float
    majority_label: str
    majority_total: int

    def retained_indices(self) -> tuple[int, ...]:
        return tuple(sorted(set(self.retained_majority) | set(self.minority)))

    def retention_fraction(self) -> float:
        return len(self.retained_majority) / self.majority_total

    def subset(self, dataset: Dataset) -> Dataset:
        return dataset.take(list(self.retained_indices()))


def undersample_majority(dataset: Dataset, theta: float, eta: float, seed,
                         k: int | None = None, metric: str = "euclidean",
                         m_const: float = 3.0,
                         max_rounds: int | None = None) -> UndersampleResult:
    """Keep a theta-dominating subset of the majority class.

    The graph is built over majority points only, k defaults to
    choose_k(#majority, m_const), and the constructed set is greedily
    shrunk before mapping back to original row indices.
    """
    if len(dataset.class_counts()) < 2:
        raise ValueError("undersampling needs at least two classes")
    major = dataset.majority_indices()
    minor = dataset.minority_indices()
    if k is None:
        k = choose_k(int(major.size), m_const)
    graph = KnnGraph(dataset.points[major], k, metric)
    built = lll_construct(graph, theta, eta, seed, max_rounds=max_rounds)
    cert = greedy_shrink(graph, theta, built)
    retained = tuple(int(major[v]) for v in cert.selected)
    return UndersampleResult(retained_majority=retained,
                             minority=tuple(int(i) for i in minor),
                             certificate=cert, k=k, metric=metric,
                             theta=theta, eta=eta,
                             majority_label=dataset.majority_label,
                             majority_total=int(major.size))


@dataclass(frozen=True)
class EvaluationReport:
    """Per-class recalls of a kNN classifier, with their plain mean
    (balanced accuracy) and the raw fraction correct."""

    per_class_recall: dict[str, float]
    balanced_accuracy: float
    accuracy: float
    test_counts: dict[str, int]
    k: int
    metric: str

    def to_json_dict(self) -> dict:
        return {
            "per_class_recall": dict(sorted(self.per_class_recall.items())),
            "balanced_accuracy": self.balanced_accuracy,
            "accuracy": self.accuracy,
            "test_counts": dict(sorted(self.test_counts.items())),
            "k": self.k,
            "metric": self.metric,
        }


def evaluate_knn_classifier(train: Dataset, test: Dataset, k: int,
                            metric: str = "euclidean") -> EvaluationReport:
    """Classify test rows by majority vote among the k nearest training rows.

    A tied vote falls to the nearest neighbour whose label is among the tied
    labels, so the result never depends on hash or insertion order.
    """
    if train.feature_names != test.feature_names:
        raise ValueError("train and test disagree on feature columns")
    if not 1 <= k <= len(train):
        raise ValueError(f"k must satisfy 1 <= k <= {len(train)}, got {k}")
    d = distance_matrix(test.points, train.points, metric)
    order = np.argsort(d, axis=1, kind="stable")[:, :k]

    correct: dict[str, int] = {}
    totals: dict[str, int] = {}
    hits = 0
    for i, truth in enumerate(test.labels):
        votes: dict[str, int] = {}
        for j in order[i]:
            lab = train.labels[int(j)]
            votes[lab] = votes.get(lab, 0) + 1
        top = max(votes.values())
        tied = {lab for lab, c in votes.items() if c == top}
        if len(tied) == 1:
            guess = next(iter(tied))
        else:
            guess = next(train.labels[int(j)] for j in order[i]
                         if train.labels[int(j)] in tied)
        totals[truth] = totals.get(truth, 0) + 1
        if guess == truth:
            correct[truth] = correct.get(truth, 0) + 1
            hits += 1

    recalls = {lab: correct.get(lab, 0) / cnt for lab, cnt in totals.items()}
    return EvaluationReport(per_class_recall=recalls,
                            balanced_accuracy=sum(recalls.values()) / len(recalls),
                            accuracy=hits / len(test),
                            test_counts=totals, k=k, metric=metric)
