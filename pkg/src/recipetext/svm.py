"""One-vs-one linear SVM over tf-idf vectors.

One binary hinge-loss classifier per unordered class pair, trained by
primal stochastic subgradient descent with step 1/(lambda*t) and a
seed-controlled epoch shuffle (splitmix64 Fisher-Yates), so two runs
with the same seed produce identical weights bit for bit. Multi-class
decisions aggregate the |C|-1 signed margins oriented toward each
class and take the argmax.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .corpus import Corpus, Recipe
from .errors import ConfigError, DataError, ModelMismatchError
from .features import LexiconStats, SparseVector, tfidf_vector
from .rng import SplitMix64, mix64
from .scores import ScoreVector


@dataclass(frozen=True)
class SvmConfig:
    regularization: float = 1e-4
    epochs: int = 20
    seed: int = 0

    def __post_init__(self):
        if self.regularization <= 0:
            raise ConfigError("regularization must be > 0")
        if self.epochs < 1:
            raise ConfigError("epochs must be >= 1")


@dataclass
class PairModel:
    class_pair: tuple[str, str]
    weights: SparseVector
    bias: float


@dataclass
class OvoModel:
    pair_models: list[PairModel]
    classes: list[str]
    vocab_filter: frozenset[str] | None = None

    def pair(self, first: str, second: str) -> PairModel:
        for model in self.pair_models:
            if model.class_pair == (first, second):
                return model
        raise ModelMismatchError(f"no pair model for ({first!r}, {second!r})")


def _restrict(vector: SparseVector, vocab: frozenset[str] | None) -> SparseVector:
    if vocab is None:
        return vector
    return {t: w for t, w in vector.items() if t in vocab}


def margin(model: PairModel, vector: SparseVector) -> float:
    """w.x + b, accumulated over the vector's terms in sorted order."""
    total = 0.0
    for term in sorted(vector):
        w = model.weights.get(term)
        if w is not None:
            total += w * vector[term]
    return total + model.bias


def train_pair(docs: list[tuple[str, SparseVector, int]], config: SvmConfig,
               pair: tuple[str, str], pair_seed: int) -> PairModel:
    """SGD on the hinge loss for one class pair.

    ``docs`` holds (recipe id, tf-idf vector, label +1/-1) with +1 for
    the pair's first class. Steps run in shuffled epoch order; on a
    margin violation the example is added with step weight, and the
    whole weight vector decays by (1 - eta*lambda) every step. The
    bias follows violations unregularized.
    """
    lam = config.regularization
    weights: SparseVector = {}
    bias = 0.0
    rng = SplitMix64(pair_seed)
    order = list(range(len(docs)))
    t = 0
    for _ in range(config.epochs):
        rng.shuffle(order)
        for idx in order:
            t += 1
            eta = 1.0 / (lam * t)
            _, vector, y = docs[idx]
            total = 0.0
            for term in sorted(vector):
                w = weights.get(term)
                if w is not None:
                    total += w * vector[term]
            violated = y * (total + bias) < 1.0
            decay = 1.0 - eta * lam
            for term in list(weights):
                weights[term] *= decay
            if violated:
                for term in sorted(vector):
                    weights[term] = weights.get(term, 0.0) + eta * y * vector[term]
                bias += eta * y
    weights = {t_: w for t_, w in weights.items() if w != 0.0}
    return PairModel(pair, weights, bias)


def train_ovo(train: Corpus, stats: LexiconStats, config: SvmConfig,
              vocab_filter: frozenset[str] | None = None,
              labels: dict[str, str] | None = None) -> OvoModel:
    """One PairModel per unordered class pair, classes in sorted order."""
    if labels is None:
        labels = train.labels()
    classes = sorted(set(labels.values()))
    if len(classes) < 2:
        raise DataError("one-vs-one training needs at least 2 classes")
    vectors = {r.id: _restrict(tfidf_vector(r, stats), vocab_filter) for r in train}

    by_class: dict[str, list[str]] = {c: [] for c in classes}
    for recipe in train:
        by_class[labels[recipe.id]].append(recipe.id)
    for cls in classes:
        if not by_class[cls]:
            raise DataError(f"class {cls!r} has no training documents")

    pair_models = []
    pair_idx = 0
    for i, first in enumerate(classes):
        for second in classes[i + 1:]:
            docs = []
            for recipe in train:
                cls = labels[recipe.id]
                if cls == first:
                    docs.append((recipe.id, vectors[recipe.id], +1))
                elif cls == second:
                    docs.append((recipe.id, vectors[recipe.id], -1))
            pair_seed = mix64(config.seed + pair_idx)
            pair_models.append(train_pair(docs, config, (first, second), pair_seed))
            pair_idx += 1
    return OvoModel(pair_models, classes, vocab_filter)


def score_ovo(model: OvoModel, recipe: Recipe, stats: LexiconStats,
              method_id: str = "svm") -> ScoreVector:
    """Aggregate margins: each pair's margin counts positively for its
    first class and negatively for its second."""
    vector = _restrict(tfidf_vector(recipe, stats), model.vocab_filter)
    scores = {cls: 0.0 for cls in model.classes}
    for pair_model in model.pair_models:
        first, second = pair_model.class_pair
        m = margin(pair_model, vector)
        scores[first] += m
        scores[second] -= m
    return ScoreVector(recipe.id, method_id, scores)


def save_ovo(model: OvoModel, path: str | Path) -> None:
    lines = ["#ovo\tv1", "#classes\t" + ",".join(model.classes)]
    if model.vocab_filter is not None:
        lines.append("#vocab_filter\t" + ",".join(sorted(model.vocab_filter)))
    for pair_model in model.pair_models:
        first, second = pair_model.class_pair
        lines.append(f"pair\t{first}\t{second}\t{pair_model.bias:.17g}")
        for term in sorted(pair_model.weights):
            lines.append(f"w\t{term}\t{pair_model.weights[term]:.17g}")
    Path(path).write_text("".join(line + "\n" for line in lines), encoding="utf-8")


def load_ovo(path: str | Path) -> OvoModel:
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    if not lines or lines[0] != "#ovo\tv1":
        raise ModelMismatchError(f"{path}: not a v1 one-vs-one model file")
    classes: list[str] = []
    vocab_filter = None
    pair_models: list[PairModel] = []
    current: PairModel | None = None
    for line in lines:
        cells = line.split("\t")
        if cells[0] == "#classes":
            classes = cells[1].split(",")
        elif cells[0] == "#vocab_filter":
            vocab_filter = frozenset(cells[1].split(","))
        elif cells[0] == "pair":
            current = PairModel((cells[1], cells[2]), {}, float(cells[3]))
            pair_models.append(current)
        elif cells[0] == "w":
            if current is None:
                raise ModelMismatchError(f"{path}: weight line before any pair header")
            current.weights[cells[1]] = float(cells[2])
    expected = len(classes) * (len(classes) - 1) // 2
    if len(pair_models) != expected:
        raise ModelMismatchError(
            f"{path}: {len(pair_models)} pair models for {len(classes)} classes")
    return OvoModel(pair_models, classes, vocab_filter)


__all__ = [
    "OvoModel",
    "PairModel",
    "SvmConfig",
    "load_ovo",
    "margin",
    "save_ovo",
    "score_ovo",
    "train_ovo",
    "train_pair",
]
