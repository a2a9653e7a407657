"""Gini-weighted cosine classifier, flat and hierarchical.

Flat mode matches a recipe vector (tf*idf*G per term) against one bag
vector per class (df_c*idf*G), over the vocabulary of terms whose Gini
purity reaches the configured threshold. Two denominators ship:

* standard  -- ||v_r|| * ||v_c||, each norm over the vector's full
  support; this is the cosine of the angle between the vectors;
* literal   -- sqrt(sum over shared terms of w_r^2 * w_c^2), the
  product-of-squares form kept for comparison.

Hierarchical mode stacks two (or more) flat stages: each stage scores
superclass groups with two models fed from different views (title
only / title plus body), mixes the two normalized score vectors
linearly, and the final leaf score is the product of its path's stage
scores, so a full distribution over leaves comes out.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

from .corpus import Corpus, Recipe
from .errors import ConfigError, DataError, ModelMismatchError
from .features import (
    Feed,
    LexiconStats,
    SparseVector,
    build_stats,
    class_vector,
    gini_filtered_vocabulary,
    stats_from_lines,
    stats_lines,
)
from .fusion import normalize_scores
from .scores import ScoreVector
from .textnorm import AgglutinationModel, NormConfig

STANDARD = "standard"
LITERAL = "literal"


@dataclass
class CosineModel:
    class_vectors: dict[str, SparseVector]
    stats: LexiconStats
    gini_threshold: float
    denominator_mode: str = STANDARD
    method_id: str = "cosine"

    def classes(self) -> list[str]:
        return sorted(self.class_vectors)


def build_class_vectors(stats: LexiconStats, classes: list[str], gini_threshold: float,
                        class_boosts: dict[tuple[str, str], int] | None = None,
                        ) -> dict[str, SparseVector]:
    """df_c*idf*G vectors over the Gini-filtered vocabulary, one per class.

    The construction is a pure function of the statistics, so a model
    reloaded from its stats rebuilds bit-identical vectors.
    """
    vocab = gini_filtered_vocabulary(stats, gini_threshold)
    vectors = {}
    for cls in classes:
        vector = class_vector(cls, stats, vocab)
        if class_boosts:
            for (term, boost_cls), extra in sorted(class_boosts.items()):
                if boost_cls != cls or term not in stats.terms:
                    continue
                g = stats.gini(term)
                if g is None or g < gini_threshold:
                    continue
                df_c = stats.terms[term].df_class.get(cls, 0) + extra
                vector[term] = df_c * stats.idf(term) * g
        vectors[cls] = vector
    return vectors


def train_cosine(train: Corpus, stats: LexiconStats, gini_threshold: float,
                 mode: str = STANDARD, labels: dict[str, str] | None = None,
                 class_boosts: dict[tuple[str, str], int] | None = None,
                 method_id: str = "cosine") -> CosineModel:
    """One bag-of-words vector per class over the Gini-filtered vocabulary.

    ``class_boosts`` optionally adds fictitious df_c counts for chosen
    (term, class) pairs before weighting, to reinforce pure high-coverage
    terms; a class whose vector comes out empty is kept (it scores 0).
    """
    if mode not in (STANDARD, LITERAL):
        raise ConfigError(f"unknown denominator mode {mode!r}")
    if labels is None:
        labels = train.labels()
    classes = sorted(set(labels.values()))
    vectors = build_class_vectors(stats, classes, gini_threshold, class_boosts)
    return CosineModel(vectors, stats, gini_threshold, mode, method_id)


def _recipe_vector(model: CosineModel, recipe: Recipe) -> SparseVector:
    stats = model.stats
    vector: SparseVector = {}
    counts: dict[str, int] = {}
    for token in stats.tokenize(recipe):
        counts[token] = counts.get(token, 0) + 1
    for term, tf in counts.items():
        g = stats.gini(term)
        if g is None or g < model.gini_threshold:
            continue
        weight = tf * stats.idf(term) * g
        if weight != 0.0:
            vector[term] = weight
    return vector


def score_cosine(model: CosineModel, recipe: Recipe) -> ScoreVector:
    """Similarity of the recipe to each class; empty overlaps score 0."""
    v_r = _recipe_vector(model, recipe)
    norm_r = math.sqrt(sum(w * w for _, w in sorted(v_r.items())))
    scores = {}
    for cls in model.classes():
        v_c = model.class_vectors[cls]
        shared = sorted(set(v_r) & set(v_c))
        numerator = sum(v_r[t] * v_c[t] for t in shared)
        if numerator == 0.0:
            scores[cls] = 0.0
            continue
        if model.denominator_mode == STANDARD:
            norm_c = math.sqrt(sum(w * w for _, w in sorted(v_c.items())))
            denominator = norm_r * norm_c
        else:
            denominator = math.sqrt(sum((v_r[t] * v_c[t]) ** 2 for t in shared))
        scores[cls] = numerator / denominator if denominator != 0.0 else 0.0
    return ScoreVector(recipe.id, model.method_id, scores)


# --------------------------------------------------------------------
# Hierarchical strategy
# --------------------------------------------------------------------

@dataclass(frozen=True)
class HierarchyStage:
    grouping: dict[str, str]  # leaf class -> group label at this stage
    alpha: float = 0.5        # weight of the title-only feed

    def __post_init__(self):
        if not 0.0 <= self.alpha <= 1.0:
            raise ConfigError("feed mix alpha must lie in [0, 1]")


@dataclass(frozen=True)
class HierarchySpec:
    stages: tuple[HierarchyStage, ...]

    def __post_init__(self):
        if not self.stages:
            raise ConfigError("hierarchy needs at least one stage")
        leaves = set(self.stages[0].grouping)
        for i, stage in enumerate(self.stages):
            if set(stage.grouping) != leaves:
                raise ConfigError(f"stage {i} does not map every leaf class")
        final = self.stages[-1].grouping
        for leaf, group in final.items():
            if group != leaf:
                raise ConfigError("final stage must map each leaf to itself")
        for i in range(1, len(self.stages)):
            prev, cur = self.stages[i - 1].grouping, self.stages[i].grouping
            for a in leaves:
                for b in leaves:
                    if cur[a] == cur[b] and prev[a] != prev[b]:
                        raise ConfigError(
                            f"stage {i} group {cur[a]!r} straddles stage {i-1} groups")

    def leaves(self) -> list[str]:
        return sorted(self.stages[0].grouping)


def default_hierarchy(task: str) -> HierarchySpec:
    """The shipped two-stage hierarchies.

    Difficulty (T1): easy vs hard first, then the two sublevels inside
    each branch. Dish type (T2): dessert vs everything else first, then
    starter vs main dish inside the second branch.
    """
    if task == "T1":
        stage1 = HierarchyStage({
            "TresFacile": "FACILE", "Facile": "FACILE",
            "MoyennementDifficile": "DIFFICILE", "Difficile": "DIFFICILE",
        })
        stage2 = HierarchyStage({c: c for c in
                                 ("TresFacile", "Facile", "MoyennementDifficile", "Difficile")})
        return HierarchySpec((stage1, stage2))
    if task == "T2":
        stage1 = HierarchyStage({
            "Dessert": "DESSERT", "Entree": "AUTRE", "PlatPrincipal": "AUTRE",
        })
        stage2 = HierarchyStage({c: c for c in ("Dessert", "Entree", "PlatPrincipal")})
        return HierarchySpec((stage1, stage2))
    raise ConfigError(f"no default hierarchy for task {task!r}")


@dataclass
class HierarchicalCosineModel:
    spec: HierarchySpec
    # (stage index, context group) -> feed -> CosineModel; a context with
    # a single outgoing group carries no models (probability 1).
    stage_models: dict[tuple[int, str], dict[Feed, CosineModel]]
    method_id: str = "cosine_hier"

    ROOT = "__root__"


def _context_of(spec: HierarchySpec, stage_idx: int, leaf: str) -> str:
    if stage_idx == 0:
        return HierarchicalCosineModel.ROOT
    return spec.stages[stage_idx - 1].grouping[leaf]


def train_hierarchical(train: Corpus, full: Corpus, spec: HierarchySpec,
                       tokenizer: NormConfig,
                       agglutination_model: AgglutinationModel | None,
                       gini_threshold: float,
                       mode: str = STANDARD) -> HierarchicalCosineModel:
    """Fit one cosine model per (stage, context, feed).

    Each stage/context model sees only the training recipes whose leaf
    label falls inside that context, relabeled by the stage grouping;
    its lexicon statistics are rebuilt on that subset (df still over
    the full corpus). Contexts with a single outgoing group are left
    modelless and contribute probability 1.
    """
    leaf_labels = train.labels()
    missing = sorted(set(leaf_labels.values()) - set(spec.leaves()))
    if missing:
        raise DataError(f"training labels {missing} absent from the hierarchy spec")

    stage_models: dict[tuple[int, str], dict[Feed, CosineModel]] = {}
    for stage_idx, stage in enumerate(spec.stages):
        contexts = sorted({_context_of(spec, stage_idx, leaf) for leaf in spec.leaves()})
        for context in contexts:
            member_leaves = {leaf for leaf in spec.leaves()
                             if _context_of(spec, stage_idx, leaf) == context}
            groups = sorted({stage.grouping[leaf] for leaf in member_leaves})
            if len(groups) < 2:
                continue
            subset_ids = {rid for rid, leaf in leaf_labels.items() if leaf in member_leaves}
            subset = Corpus([r for r in train.recipes if r.id in subset_ids],
                            train.label_kind)
            group_labels = {rid: stage.grouping[leaf_labels[rid]] for rid in subset_ids}
            per_feed = {}
            for feed in (Feed.TITLE_ONLY, Feed.TITLE_AND_BODY):
                stats = build_stats(subset, full, tokenizer, agglutination_model,
                                    feed=feed, labels=group_labels)
                per_feed[feed] = train_cosine(subset, stats, gini_threshold, mode,
                                              labels=group_labels)
            stage_models[(stage_idx, context)] = per_feed
    return HierarchicalCosineModel(spec, stage_models)


def _stage_distribution(model: HierarchicalCosineModel, stage_idx: int,
                        context: str, groups: list[str], alpha: float,
                        recipe: Recipe) -> dict[str, float]:
    if len(groups) == 1:
        return {groups[0]: 1.0}
    per_feed = model.stage_models[(stage_idx, context)]
    mixed = {}
    title = normalize_scores(score_cosine(per_feed[Feed.TITLE_ONLY], recipe))
    both = normalize_scores(score_cosine(per_feed[Feed.TITLE_AND_BODY], recipe))
    for group in groups:
        mixed[group] = alpha * title.scores[group] + (1.0 - alpha) * both.scores[group]
    return mixed


def classify_hierarchical(model: HierarchicalCosineModel, recipe: Recipe) -> ScoreVector:
    """Full leaf distribution: each leaf scores the product of its own
    path's mixed stage scores."""
    spec = model.spec
    leaf_scores = {}
    distributions: dict[tuple[int, str], dict[str, float]] = {}
    for leaf in spec.leaves():
        product = 1.0
        for stage_idx, stage in enumerate(spec.stages):
            context = _context_of(spec, stage_idx, leaf)
            key = (stage_idx, context)
            if key not in distributions:
                member_leaves = {l for l in spec.leaves()
                                 if _context_of(spec, stage_idx, l) == context}
                groups = sorted({stage.grouping[l] for l in member_leaves})
                if len(groups) > 1 and key not in model.stage_models:
                    raise ModelMismatchError(
                        f"hierarchical model lacks stage {stage_idx} context {context!r}")
                distributions[key] = _stage_distribution(
                    model, stage_idx, context, groups, stage.alpha, recipe)
            product *= distributions[key][stage.grouping[leaf]]
        leaf_scores[leaf] = product
    return ScoreVector(recipe.id, model.method_id, leaf_scores)


# --------------------------------------------------------------------
# Serialization. Class vectors are a pure function of the statistics,
# so model files store the stats plus the few scalars and the vectors
# are rebuilt on load, which keeps the files small and diff-able.
# --------------------------------------------------------------------

def save_cosine(model: CosineModel, path: str | Path,
                class_boosts: dict[tuple[str, str], int] | None = None) -> None:
    lines = [
        "#cosine\tv1",
        f"#threshold\t{model.gini_threshold:.17g}",
        f"#mode\t{model.denominator_mode}",
        f"#method_id\t{model.method_id}",
        "#classes\t" + ",".join(model.classes()),
    ]
    if class_boosts:
        for (term, cls), extra in sorted(class_boosts.items()):
            lines.append(f"boost\t{term}\t{cls}\t{extra}")
    Path(path).write_text("".join(line + "\n" for line in lines), encoding="utf-8")


def load_cosine(path: str | Path, stats: LexiconStats) -> CosineModel:
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    if not lines or lines[0] != "#cosine\tv1":
        raise ModelMismatchError(f"{path}: not a v1 cosine model file")
    header: dict[str, str] = {}
    boosts: dict[tuple[str, str], int] = {}
    for line in lines[1:]:
        cells = line.split("\t")
        if cells[0].startswith("#"):
            header[cells[0][1:]] = cells[1]
        elif cells[0] == "boost":
            boosts[(cells[1], cells[2])] = int(cells[3])
    classes = header["classes"].split(",")
    threshold = float(header["threshold"])
    vectors = build_class_vectors(stats, classes, threshold, boosts or None)
    return CosineModel(vectors, stats, threshold, header["mode"], header["method_id"])


def save_hierarchical(model: HierarchicalCosineModel, path: str | Path) -> None:
    first = next(iter(model.stage_models.values()), None)
    threshold = first[Feed.TITLE_ONLY].gini_threshold if first else 0.0
    mode = first[Feed.TITLE_ONLY].denominator_mode if first else STANDARD
    lines = [
        "#cosine_hier\tv1",
        f"#threshold\t{threshold:.17g}",
        f"#mode\t{mode}",
        f"#method_id\t{model.method_id}",
    ]
    for stage in model.spec.stages:
        cells = ["#stage", f"alpha={stage.alpha!r}"]
        cells += [f"{leaf}={group}" for leaf, group in sorted(stage.grouping.items())]
        lines.append("\t".join(cells))
    for (stage_idx, context) in sorted(model.stage_models):
        per_feed = model.stage_models[(stage_idx, context)]
        for feed in (Feed.TITLE_ONLY, Feed.TITLE_AND_BODY):
            sub = per_feed[feed]
            lines.append("#begin_context\t" + "\t".join(
                [str(stage_idx), context, feed.value, ",".join(sub.classes())]))
            lines.extend(stats_lines(sub.stats))
            lines.append("#end_context")
    Path(path).write_text("".join(line + "\n" for line in lines), encoding="utf-8")


def load_hierarchical(path: str | Path, tokenizer: NormConfig,
                      agglutination_model: AgglutinationModel | None = None,
                      ) -> HierarchicalCosineModel:
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    if not lines or lines[0] != "#cosine_hier\tv1":
        raise ModelMismatchError(f"{path}: not a v1 hierarchical cosine model file")
    threshold = 0.0
    mode = STANDARD
    method_id = "cosine_hier"
    stages: list[HierarchyStage] = []
    stage_models: dict[tuple[int, str], dict[Feed, CosineModel]] = {}
    i = 1
    while i < len(lines):
        cells = lines[i].split("\t")
        if cells[0] == "#threshold":
            threshold = float(cells[1])
        elif cells[0] == "#mode":
            mode = cells[1]
        elif cells[0] == "#method_id":
            method_id = cells[1]
        elif cells[0] == "#stage":
            alpha = float(cells[1][len("alpha="):])
            grouping = {}
            for cell in cells[2:]:
                leaf, _, group = cell.partition("=")
                grouping[leaf] = group
            stages.append(HierarchyStage(grouping, alpha))
        elif cells[0] == "#begin_context":
            stage_idx, context, feed_value, classes_csv = cells[1], cells[2], cells[3], cells[4]
            block = []
            i += 1
            while i < len(lines) and lines[i] != "#end_context":
                block.append(lines[i])
                i += 1
            stats = stats_from_lines(block, tokenizer, agglutination_model,
                                     source=f"{path}:{context}")
            classes = classes_csv.split(",")
            vectors = build_class_vectors(stats, classes, threshold)
            sub = CosineModel(vectors, stats, threshold, mode, method_id)
            stage_models.setdefault((int(stage_idx), context), {})[Feed(feed_value)] = sub
        i += 1
    return HierarchicalCosineModel(HierarchySpec(tuple(stages)), stage_models, method_id)


# --------------------------------------------------------------------
# Hierarchy spec file format: one "stage" line per stage, holding
# alpha and leaf=GROUP assignments, tab-separated.
# --------------------------------------------------------------------

def save_hierarchy_spec(spec: HierarchySpec, path: str | Path) -> None:
    lines = []
    for stage in spec.stages:
        cells = ["stage", f"alpha={stage.alpha!r}"]
        cells += [f"{leaf}={group}" for leaf, group in sorted(stage.grouping.items())]
        lines.append("\t".join(cells))
    Path(path).write_text("".join(line + "\n" for line in lines), encoding="utf-8")


def load_hierarchy_spec(path: str | Path) -> HierarchySpec:
    stages = []
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        if not line.strip() or line.startswith("#"):
            continue
        cells = line.split("\t")
        if cells[0] != "stage" or len(cells) < 3 or not cells[1].startswith("alpha="):
            raise ConfigError(f"{path}:{lineno}: expected 'stage<TAB>alpha=...<TAB>leaf=GROUP...'")
        alpha = float(cells[1][len("alpha="):])
        grouping = {}
        for cell in cells[2:]:
            leaf, _, group = cell.partition("=")
            if not leaf or not group:
                raise ConfigError(f"{path}:{lineno}: bad mapping {cell!r}")
            grouping[leaf] = group
        stages.append(HierarchyStage(grouping, alpha))
    return HierarchySpec(tuple(stages))


__all__ = [
    "LITERAL",
    "STANDARD",
    "CosineModel",
    "HierarchicalCosineModel",
    "HierarchySpec",
    "HierarchyStage",
    "build_class_vectors",
    "classify_hierarchical",
    "default_hierarchy",
    "load_cosine",
    "load_hierarchical",
    "load_hierarchy_spec",
    "save_cosine",
    "save_hierarchical",
    "save_hierarchy_spec",
    "score_cosine",
    "train_cosine",
    "train_hierarchical",
]
