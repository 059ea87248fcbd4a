"""Evaluation protocol: repeated stratified 70/30 splits, SVM, micro F-measure.

The classifier is C-SVC (libsvm SMO via scikit-learn), RBF kernel with
gamma = 1 / (n_features * var) and C = 1 by default. Features are
standardized to zero mean / unit variance with statistics fitted on the
training split only.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np
from sklearn.svm import SVC

from .errors import (DatasetTooSmall, LengthMismatch, NonFiniteFeature,
                     SingleClassTraining)
from .util import rng_for

__all__ = ["SplitPlan", "SvmHyper", "SvmModel", "EvalResult", "make_splits",
           "standardize_fit", "train_svm", "micro_f", "evaluate"]

N_REPETITIONS = 10
TEST_FRACTION = 0.3
MIN_PER_CLASS = 10


@dataclass(frozen=True)
class SplitPlan:
    repetitions: tuple[tuple[np.ndarray, np.ndarray], ...]  # (train, test) indices
    seed: int
    test_fraction: float = TEST_FRACTION


@dataclass(frozen=True)
class SvmHyper:
    kernel: str = "rbf"        # "rbf" | "linear"
    c: float = 1.0
    gamma: float | str = "scale"


@dataclass(frozen=True)
class EvalResult:
    f_measures: tuple[float, ...]
    mean: float
    std: float

    @staticmethod
    def from_scores(scores: Sequence[float]) -> "EvalResult":
        arr = np.asarray(scores, dtype=float)
        return EvalResult(tuple(float(x) for x in arr),
                          float(arr.mean()), float(arr.std()))


def make_splits(labels: Sequence[str], seed: int,
                repetitions: int = N_REPETITIONS,
                test_fraction: float = TEST_FRACTION) -> SplitPlan:
    """Stratified random 70/30 splits; test size floor(fraction * class size)."""
    labels = list(labels)
    classes = sorted(set(labels))
    per_class = {c: [i for i, y in enumerate(labels) if y == c] for c in classes}
    smallest = min(len(v) for v in per_class.values())
    if smallest < MIN_PER_CLASS:
        raise DatasetTooSmall(
            f"need at least {MIN_PER_CLASS} items per class, smallest has {smallest}")
    reps = []
    for rep in range(repetitions):
        rng = rng_for(seed, "split", rep)
        train: list[int] = []
        test: list[int] = []
        for c in classes:
            idx = np.array(per_class[c])
            order = rng.permutation(len(idx))
            n_test = int(np.floor(test_fraction * len(idx)))
            test.extend(idx[order[:n_test]])
            train.extend(idx[order[n_test:]])
        reps.append((np.array(sorted(train)), np.array(sorted(test))))
    return SplitPlan(repetitions=tuple(reps), seed=seed, test_fraction=test_fraction)


def standardize_fit(train: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Per-feature mean and stddev from the training rows only."""
    mu = train.mean(axis=0)
    sigma = train.std(axis=0)
    sigma = np.where(sigma < 1e-12, 1.0, sigma)
    return mu, sigma


@dataclass(frozen=True)
class SvmModel:
    hyper: SvmHyper
    classes: tuple[str, ...]
    mu: np.ndarray
    sigma: np.ndarray
    support_vectors: np.ndarray     # standardized
    dual_coef: np.ndarray
    intercept: float
    gamma_value: float

    def decision_function(self, x: np.ndarray) -> np.ndarray:
        z = (np.asarray(x, dtype=float) - self.mu) / self.sigma
        if self.hyper.kernel == "linear":
            k = z @ self.support_vectors.T
        else:
            d2 = ((z[:, None, :] - self.support_vectors[None, :, :]) ** 2).sum(axis=2)
            k = np.exp(-self.gamma_value * d2)
        return k @ self.dual_coef + self.intercept

    def predict(self, x: np.ndarray) -> list[str]:
        scores = self.decision_function(x)
        return [self.classes[1] if s > 0 else self.classes[0] for s in scores]

    def to_dict(self) -> dict:
        return {
            "kernel": self.hyper.kernel, "c": self.hyper.c,
            "gamma_value": self.gamma_value, "classes": list(self.classes),
            "mu": self.mu.tolist(), "sigma": self.sigma.tolist(),
            "support_vectors": self.support_vectors.tolist(),
            "dual_coef": self.dual_coef.tolist(), "intercept": self.intercept,
        }

    @staticmethod
    def from_dict(d: dict) -> "SvmModel":
        return SvmModel(
            hyper=SvmHyper(kernel=d["kernel"], c=d["c"], gamma=d["gamma_value"]),
            classes=tuple(d["classes"]), mu=np.array(d["mu"]),
            sigma=np.array(d["sigma"]),
            support_vectors=np.array(d["support_vectors"]),
            dual_coef=np.array(d["dual_coef"]), intercept=float(d["intercept"]),
            gamma_value=float(d["gamma_value"]),
        )


def train_svm(features: np.ndarray, labels: Sequence[str],
              hyper: SvmHyper = SvmHyper()) -> SvmModel:
    """Fit C-SVC on standardized features; solver tolerance 1e-4."""
    x = np.asarray(features, dtype=float)
    if not np.all(np.isfinite(x)):
        raise NonFiniteFeature("training matrix contains NaN or infinity")
    y = list(labels)
    if len(y) != x.shape[0]:
        raise LengthMismatch(f"{x.shape[0]} rows vs {len(y)} labels")
    classes = sorted(set(y))
    if len(classes) < 2:
        raise SingleClassTraining(f"only class {classes!r} present")
    mu, sigma = standardize_fit(x)
    z = (x - mu) / sigma
    svc = SVC(C=hyper.c, kernel=hyper.kernel, gamma=hyper.gamma, tol=1e-4)
    svc.fit(z, y)
    if hyper.gamma == "scale":
        var = z.var()
        gamma_value = 1.0 / (z.shape[1] * var) if var > 0 else 1.0
    else:
        gamma_value = float(hyper.gamma) if hyper.kernel == "rbf" else 0.0
    return SvmModel(
        hyper=hyper, classes=tuple(svc.classes_), mu=mu, sigma=sigma,
        support_vectors=z[svc.support_], dual_coef=svc.dual_coef_[0].copy(),
        intercept=float(svc.intercept_[0]), gamma_value=gamma_value,
    )


def micro_f(predictions: Sequence[str], labels: Sequence[str]) -> float:
    """Micro-averaged F over all classes; equals accuracy for single-label data."""
    if len(predictions) != len(labels):
        raise LengthMismatch(f"{len(predictions)} predictions vs {len(labels)} labels")
    if not labels:
        raise LengthMismatch("empty inputs")
    classes = sorted(set(labels) | set(predictions))
    tp = fp = fn = 0
    for c in classes:
        tp += sum(1 for p, y in zip(predictions, labels) if p == c and y == c)
        fp += sum(1 for p, y in zip(predictions, labels) if p == c and y != c)
        fn += sum(1 for p, y in zip(predictions, labels) if p != c and y == c)
    precision = tp / (tp + fp) if tp + fp else 0.0
    recall = tp / (tp + fn) if tp + fn else 0.0
    if precision + recall == 0:
        return 0.0
    return 2 * precision * recall / (precision + recall)


def evaluate(features: np.ndarray, labels: Sequence[str], plan: SplitPlan,
             hyper: SvmHyper = SvmHyper()) -> EvalResult:
    """Train/test per repetition; standardization refit on each training split."""
    x = np.asarray(features, dtype=float)
    y = list(labels)
    if x.shape[0] != len(y):
        raise LengthMismatch(f"{x.shape[0]} rows vs {len(y)} labels")
    scores = []
    for train_idx, test_idx in plan.repetitions:
        model = train_svm(x[train_idx], [y[i] for i in train_idx], hyper)
        preds = model.predict(x[test_idx])
        truth = [y[i] for i in test_idx]
        f = micro_f(preds, truth)
        counts = {c: truth.count(c) for c in set(truth)}
        if len(counts) == 2 and len(set(counts.values())) == 1:
            accuracy = sum(p == t for p, t in zip(preds, truth)) / len(truth)
            assert abs(f - accuracy) < 1e-12, "micro-F must equal accuracy here"
        scores.append(f)
    return EvalResult.from_scores(scores)
