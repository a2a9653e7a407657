"""Multi-class boosting over text n-grams and continuous features.

Real-valued AdaBoost.MH: a weight distribution runs over (example,
class) pairs; each round picks the weak hypothesis minimizing the
exponential bound Z on the weighted Hamming loss, among

* text presence stumps -- does the field contain this n-gram? (title
  n-grams up to 3 words, body up to 4, ingredient unigrams; candidates
  seen in fewer than 2 training documents are pruned), and
* numeric threshold stumps -- is the field value above a midpoint of
  consecutive distinct observed values?

Block votes are 0.5*ln((W+ + eps)/(W- + eps)); well-classified pairs
shed weight each round and misclassified pairs gain it. The round
count is chosen on the dev corpus by micro-F with a patience window.

Everything is accumulated in a documented deterministic order (docs
ascending within a block, the present block before the absent one,
classes in sorted order) and ties in Z break toward the
lexicographically smallest feature, so identical inputs give identical
models across runs and implementations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from pathlib import Path

from .corpus import Corpus
from .errors import ConfigError, DataError, ModelMismatchError
from .features import NUMERIC_FIELDS, numeric_features
from .scores import ScoreVector
from .textnorm import AgglutinationModel, NormConfig, ngrams, normalize

TEXT_FIELDS = [("title", 3), ("body", 4), ("ingredients", 1)]
FIELD_ORDER = [name for name, _ in TEXT_FIELDS] + NUMERIC_FIELDS


@dataclass
class BoostFeatures:
    recipe_id: str
    text: dict[str, frozenset[str]]
    numeric: dict[str, float]


def recipe_boost_features(recipe, ingredients: list[str], config: NormConfig,
                          agglutination_model: AgglutinationModel | None = None,
                          ) -> BoostFeatures:
    """Extract the boosting feature view of one recipe."""
    title_tokens = normalize(recipe.title, config, agglutination_model)
    body_tokens = normalize(recipe.body, config, agglutination_model)
    ingredient_tokens = []
    for item in ingredients:
        ingredient_tokens.extend(normalize(item, config, agglutination_model))
    text = {
        "title": frozenset(ngrams(title_tokens, 3)),
        "body": frozenset(ngrams(body_tokens, 4)),
        "ingredients": frozenset(ingredient_tokens),
    }
    numbers = numeric_features(recipe, ingredients, config, agglutination_model)
    return BoostFeatures(recipe.id, text, numbers.as_mapping())


@dataclass(frozen=True)
class BoostConfig:
    max_rounds: int = 100
    smoothing_epsilon: float = 1e-3
    dev_patience: int = 10

    def __post_init__(self):
        if self.max_rounds < 1:
            raise ConfigError("max_rounds must be >= 1")
        if self.smoothing_epsilon <= 0:
            raise ConfigError("smoothing_epsilon must be > 0")
        if self.dev_patience < 1:
            raise ConfigError("dev_patience must be >= 1")


@dataclass
class WeakHypothesis:
    kind: str                      # "text" or "numeric"
    field: str
    ngram: str | None
    threshold: float | None
    votes_present: dict[str, float]
    votes_absent: dict[str, float]


@dataclass
class RoundInfo:
    z: float
    weighted_error: float
    dev_micro_f: float | None


@dataclass
class BoostModel:
    rounds: list[WeakHypothesis]
    classes: list[str]
    feature_schema: dict[str, int]  # text field -> max n; numeric fields -> 0
    history: list[RoundInfo] = dc_field(default_factory=list)


def _default_schema() -> dict[str, int]:
    schema = {name: max_n for name, max_n in TEXT_FIELDS}
    schema.update({name: 0 for name in NUMERIC_FIELDS})
    return schema


@dataclass
class _Candidate:
    sort_key: tuple
    kind: str
    field: str
    ngram: str | None
    threshold: float | None
    present: list[int]       # ascending doc indices
    absent: list[int]
    present_set: frozenset[int]


def _candidates(ids, feats: dict[str, BoostFeatures]) -> list[_Candidate]:
    """All candidate stumps with their 'present'/'absent' doc index
    lists, ordered by (field order, feature value)."""
    n = len(ids)
    out = []

    def add(sort_key, kind, field_name, gram, theta, present):
        present_set = frozenset(present)
        absent = [i for i in range(n) if i not in present_set]
        out.append(_Candidate(sort_key, kind, field_name, gram, theta,
                              present, absent, present_set))

    for field_idx, (field_name, _max_n) in enumerate(TEXT_FIELDS):
        by_ngram: dict[str, list[int]] = {}
        for i, rid in enumerate(ids):
            for gram in feats[rid].text[field_name]:
                by_ngram.setdefault(gram, []).append(i)
        for gram in sorted(by_ngram):
            present = by_ngram[gram]
            if len(present) < 2:
                continue
            add((field_idx, gram), "text", field_name, gram, None, present)
    base = len(TEXT_FIELDS)
    for offset, field_name in enumerate(NUMERIC_FIELDS):
        values = [feats[rid].numeric[field_name] for rid in ids]
        distinct = sorted(set(values))
        for lo, hi in zip(distinct, distinct[1:]):
            theta = (lo + hi) / 2.0
            present = [i for i, v in enumerate(values) if v > theta]
            add((base + offset, theta), "numeric", field_name, None, theta, present)
    return out


def _block_weights(indices, dist, y, n_classes):
    w_plus = [0.0] * n_classes
    w_minus = [0.0] * n_classes
    for i in indices:
        row_d = dist[i]
        row_y = y[i]
        for ci in range(n_classes):
            if row_y[ci] > 0:
                w_plus[ci] += row_d[ci]
            else:
                w_minus[ci] += row_d[ci]
    return w_plus, w_minus


def _votes(w_plus, w_minus, eps):
    return [0.5 * math.log((wp + eps) / (wm + eps)) for wp, wm in zip(w_plus, w_minus)]


def train_boost(train: Corpus, dev: Corpus | None, features: dict[str, BoostFeatures],
                config: BoostConfig, labels: dict[str, str] | None = None,
                dev_labels: dict[str, str] | None = None) -> BoostModel:
    """Fit the boosted model; the returned round list is truncated to
    the dev-best round when a dev corpus is given."""
    if labels is None:
        labels = train.labels()
    if dev is not None and dev_labels is None:
        dev_labels = dev.labels()

    ids = [r.id for r in train.recipes]
    if not ids:
        raise DataError("empty training corpus")
    classes = sorted(set(labels.values()))
    if len(classes) < 2:
        raise DataError("boosting needs at least 2 classes")
    n, k = len(ids), len(classes)
    class_index = {c: ci for ci, c in enumerate(classes)}
    for rid in ids:
        if rid not in features:
            raise DataError(f"no features supplied for training recipe {rid!r}")

    y = [[1 if class_index[labels[rid]] == ci else -1 for ci in range(k)] for rid in ids]
    dist = [[1.0 / (n * k)] * k for _ in range(n)]
    candidates = _candidates(ids, features)
    if not candidates:
        raise DataError("no candidate weak hypotheses (corpus too small or uniform)")
    eps = config.smoothing_epsilon

    dev_ids = [r.id for r in dev.recipes] if dev is not None else []
    for rid in dev_ids:
        if rid not in features:
            raise DataError(f"no features supplied for dev recipe {rid!r}")
    dev_margins = {rid: [0.0] * k for rid in dev_ids}

    model = BoostModel([], classes, _default_schema())
    best_dev_f = -1.0
    best_round = 0

    for round_no in range(1, config.max_rounds + 1):
        best_key = None
        best_cand = None
        best_votes = None
        for cand in candidates:
            w1p, w1m = _block_weights(cand.present, dist, y, k)
            w0p, w0m = _block_weights(cand.absent, dist, y, k)
            vp = _votes(w1p, w1m, eps)
            va = _votes(w0p, w0m, eps)
            z = 0.0
            for ci in range(k):
                z += w1p[ci] * math.exp(-vp[ci])
                z += w1m[ci] * math.exp(vp[ci])
            for ci in range(k):
                z += w0p[ci] * math.exp(-va[ci])
                z += w0m[ci] * math.exp(va[ci])
            key = (z, cand.sort_key)
            if best_key is None or key < best_key:
                best_key = key
                best_cand = cand
                best_votes = (vp, va, w1p, w1m, w0p, w0m)

        vp, va, w1p, w1m, w0p, w0m = best_votes
        err = 0.0
        for ci in range(k):
            for v, wp, wm in ((vp[ci], w1p[ci], w1m[ci]), (va[ci], w0p[ci], w0m[ci])):
                if v > 0.0:
                    err += wm
                elif v < 0.0:
                    err += wp
                else:
                    err += 0.5 * (wp + wm)
        if err >= 0.5:
            if not model.rounds:
                raise DataError("no weak hypothesis beats chance on this corpus")
            break

        hypothesis = WeakHypothesis(
            best_cand.kind, best_cand.field, best_cand.ngram, best_cand.threshold,
            votes_present={c: vp[class_index[c]] for c in classes},
            votes_absent={c: va[class_index[c]] for c in classes},
        )
        model.rounds.append(hypothesis)

        z_actual = 0.0
        for i in range(n):
            votes = vp if i in best_cand.present_set else va
            row = dist[i]
            for ci in range(k):
                row[ci] *= math.exp(-y[i][ci] * votes[ci])
                z_actual += row[ci]
        for i in range(n):
            for ci in range(k):
                dist[i][ci] /= z_actual

        dev_f = None
        if dev_ids:
            for rid in dev_ids:
                block = vp if _is_present(features[rid], best_cand.kind, best_cand.field,
                                          best_cand.ngram, best_cand.threshold) else va
                margins = dev_margins[rid]
                for ci in range(k):
                    margins[ci] += block[ci]
            correct = 0
            for rid in dev_ids:
                margins = dev_margins[rid]
                pred = min(range(k), key=lambda ci: (-margins[ci], classes[ci]))
                if classes[pred] == dev_labels[rid]:
                    correct += 1
            dev_f = correct / len(dev_ids)
            if dev_f > best_dev_f:
                best_dev_f = dev_f
                best_round = round_no
        model.history.append(RoundInfo(z_actual, err, dev_f))

        if dev_ids and round_no - best_round >= config.dev_patience:
            break

    if dev_ids and best_round >= 1:
        model.rounds = model.rounds[:best_round]
    return model


def _is_present(feats: BoostFeatures, kind: str, field_name: str,
                gram: str | None, theta: float | None) -> bool:
    if kind == "text":
        if field_name not in feats.text:
            raise ModelMismatchError(f"features lack text field {field_name!r}")
        return gram in feats.text[field_name]
    if field_name not in feats.numeric:
        raise ModelMismatchError(f"features lack numeric field {field_name!r}")
    return feats.numeric[field_name] > theta


def margins(model: BoostModel, feats: BoostFeatures) -> dict[str, float]:
    """Summed votes per class across all rounds."""
    totals = {c: 0.0 for c in model.classes}
    for hyp in model.rounds:
        votes = hyp.votes_present if _is_present(
            feats, hyp.kind, hyp.field, hyp.ngram, hyp.threshold) else hyp.votes_absent
        for c in model.classes:
            totals[c] += votes[c]
    return totals


def _confidence(margin: float) -> float:
    # logistic of twice the margin, overflow-safe
    if margin >= 0.0:
        return 1.0 / (1.0 + math.exp(-2.0 * margin))
    e = math.exp(2.0 * margin)
    return e / (1.0 + e)


def score_boost(model: BoostModel, feats: BoostFeatures,
                method_id: str = "boost") -> ScoreVector:
    """Per-class confidence in [0, 1], strictly monotone in the margin."""
    totals = margins(model, feats)
    return ScoreVector(feats.recipe_id, method_id,
                       {c: _confidence(m) for c, m in totals.items()})


def save_boost(model: BoostModel, path: str | Path) -> None:
    lines = ["#boost\tv1", "#classes\t" + ",".join(model.classes)]
    for name in FIELD_ORDER:
        lines.append(f"#field\t{name}\t{model.feature_schema[name]}")
    for hyp in model.rounds:
        if hyp.kind == "text":
            cells = ["text", hyp.field, hyp.ngram]
        else:
            cells = ["numeric", hyp.field, f"{hyp.threshold:.17g}"]
        cells += [f"{hyp.votes_present[c]:.17g}" for c in model.classes]
        cells += [f"{hyp.votes_absent[c]:.17g}" for c in model.classes]
        lines.append("\t".join(cells))
    Path(path).write_text("".join(line + "\n" for line in lines), encoding="utf-8")


def load_boost(path: str | Path) -> BoostModel:
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    if not lines or lines[0] != "#boost\tv1":
        raise ModelMismatchError(f"{path}: not a v1 boost model file")
    classes: list[str] = []
    schema: dict[str, int] = {}
    rounds: list[WeakHypothesis] = []
    for line in lines[1:]:
        cells = line.split("\t")
        if cells[0] == "#classes":
            classes = cells[1].split(",")
        elif cells[0] == "#field":
            schema[cells[1]] = int(cells[2])
        elif cells[0] in ("text", "numeric"):
            k = len(classes)
            votes = [float(x) for x in cells[3:3 + 2 * k]]
            rounds.append(WeakHypothesis(
                kind=cells[0],
                field=cells[1],
                ngram=cells[2] if cells[0] == "text" else None,
                threshold=float(cells[2]) if cells[0] == "numeric" else None,
                votes_present=dict(zip(classes, votes[:k])),
                votes_absent=dict(zip(classes, votes[k:])),
            ))
    if not rounds:
        raise ModelMismatchError(f"{path}: model has no rounds")
    return BoostModel(rounds, classes, schema)


__all__ = [
    "BoostConfig",
    "BoostFeatures",
    "BoostModel",
    "RoundInfo",
    "WeakHypothesis",
    "load_boost",
    "margins",
    "recipe_boost_features",
    "save_boost",
    "score_boost",
    "train_boost",
]
