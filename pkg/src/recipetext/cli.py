"""Command-line pipeline: train, classify, fuse, extract, evaluate, sweep.

One JSON config file drives a run; command-line flags override config
values. Every command is deterministic for a fixed config and seed,
down to the bytes of the files it writes. Exit codes: 0 ok, 2 config
error, 3 data error, 4 model mismatch.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import boost as boost_mod
from . import cosine as cosine_mod
from . import extraction as extraction_mod
from . import svm as svm_mod
from .corpus import Corpus, LabelKind, SplitSpec, load_corpus, stratified_split
from .errors import ConfigError, DataError, ModelMismatchError, RecipetextError
from .evaluation import (
    classification_report,
    load_qrels,
    mean_average_precision,
    qrels_from_corpus,
)
from .features import Feed, build_stats, load_stats, mutual_information_select, save_stats
from .fusion import (
    DEFAULT_CONCORDANCE,
    DEFAULT_VETO,
    ElectreParams,
    fuse_electre,
    fuse_linear,
    normalize_scores,
)
from .scores import ScoreVector
from .textnorm import (
    NormConfig,
    fit_agglutinator,
    load_abbrev_table,
    load_agglutination_model,
    save_agglutination_model,
)

TASK_LABEL_KIND = {
    "T1": LabelKind.DIFFICULTY,
    "T2": LabelKind.DISH_TYPE,
    "T4": LabelKind.NONE,
}

# Method inventory per classification task; sorted ids keep every
# downstream iteration deterministic.
TASK_METHODS = {
    "T1": ["boost", "cosine_hier", "svm"],
    "T2": ["boost", "cosine_flat", "cosine_hier", "svm"],
}

# The single-method run each task's run1 is built from.
RUN1_METHOD = {"T1": "svm", "T2": "cosine_hier"}


@dataclass
class PipelineConfig:
    task: str = "T2"
    seed: int = 0
    train_xml: str | None = None
    test_xml: str | None = None
    model_dir: str = "models"
    run_dir: str = "runs"
    dev_fraction: float = 0.28
    abbreviations_tsv: str | None = None
    hierarchy_spec: str | None = None
    class_boosts_tsv: str | None = None
    norm: dict = field(default_factory=dict)
    boost: dict = field(default_factory=dict)
    svm: dict = field(default_factory=dict)
    cosine: dict = field(default_factory=dict)
    mi_k: int | None = 10000
    fusion: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.task not in TASK_LABEL_KIND:
            raise ConfigError(f"unknown task {self.task!r} (expected T1, T2 or T4)")

    def norm_config(self) -> NormConfig:
        if self.abbreviations_tsv is not None:
            path = Path(self.abbreviations_tsv)
            if not path.exists():
                raise ConfigError(f"abbreviation file not found: {path}")
            table = load_abbrev_table(path)
            base = {"abbrev_table": table}
        else:
            base = {}
        known = {"number_conversion", "agglutinate", "agglutination_min_count",
                 "agglutination_max_n"}
        unknown = set(self.norm) - known
        if unknown:
            raise ConfigError(f"unknown norm options: {sorted(unknown)}")
        return NormConfig(**base, **self.norm)


def load_config(path: str | Path) -> PipelineConfig:
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"config file not found: {path}")
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON ({exc})") from exc
    known = {f for f in PipelineConfig.__dataclass_fields__}
    unknown = set(raw) - known
    if unknown:
        raise ConfigError(f"{path}: unknown config keys {sorted(unknown)}")
    return PipelineConfig(**raw)


def _apply_overrides(config: PipelineConfig, args) -> PipelineConfig:
    for attr, flag in (("task", "task"), ("seed", "seed"),
                       ("train_xml", "train_xml"), ("test_xml", "test_xml"),
                       ("model_dir", "model_dir"), ("run_dir", "run_dir"),
                       ("dev_fraction", "dev_fraction")):
        value = getattr(args, flag, None)
        if value is not None:
            setattr(config, attr, value)
    if config.task not in TASK_LABEL_KIND:
        raise ConfigError(f"unknown task {config.task!r} (expected T1, T2 or T4)")
    return config


def _require_file(path: str | Path | None, what: str) -> Path:
    if path is None:
        raise ConfigError(f"no {what} configured")
    p = Path(path)
    if not p.exists():
        raise ConfigError(f"{what} not found: {p}")
    return p


def _sha256(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def _write_manifest(model_dir: Path, payload: dict) -> None:
    files = {}
    for child in sorted(model_dir.iterdir()):
        if child.name == "manifest.json" or child.is_dir():
            continue
        files[child.name] = _sha256(child)
    payload["files"] = files
    manifest = json.dumps(payload, ensure_ascii=False, indent=2, sort_keys=True)
    (model_dir / "manifest.json").write_text(manifest + "\n", encoding="utf-8")


def _class_boosts(config: PipelineConfig) -> dict[tuple[str, str], int] | None:
    if config.class_boosts_tsv is None:
        return None
    path = _require_file(config.class_boosts_tsv, "class boost file")
    boosts: dict[tuple[str, str], int] = {}
    for lineno, line in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
        if not line.strip() or line.startswith("#"):
            continue
        cells = line.split("\t")
        if len(cells) != 3:
            raise DataError(f"{path}:{lineno}: expected term<TAB>class<TAB>count")
        boosts[(cells[0], cells[1])] = int(cells[2])
    return boosts


def _extract_all(corpus: Corpus, lexicon) -> dict[str, list[str]]:
    """Ingredient lists for every recipe (empty without a lexicon)."""
    if lexicon is None:
        return {r.id: [] for r in corpus}
    return {r.id: extraction_mod.extract(r, lexicon).ingredients() for r in corpus}


# --------------------------------------------------------------------
# train
# --------------------------------------------------------------------

def cmd_train(config: PipelineConfig) -> int:
    train_path = _require_file(config.train_xml, "training corpus")
    model_dir = Path(config.model_dir)
    model_dir.mkdir(parents=True, exist_ok=True)
    norm = config.norm_config()

    label_kind = TASK_LABEL_KIND[config.task]
    full = load_corpus(train_path, label_kind)

    agglut = None
    if norm.agglutinate:
        agglut = fit_agglutinator(full, norm)
        save_agglutination_model(agglut, model_dir / "agglutination.txt")

    if config.task == "T4":
        lexicon = extraction_mod.build_lexicon(full, norm)
        extraction_mod.save_lexicon(lexicon, model_dir / "lexicon.tsv")
        _write_manifest(model_dir, {
            "task": config.task, "seed": config.seed,
            "train_size": len(full), "dev_size": 0,
        })
        print(f"trained T4 lexicon on {len(full)} recipes -> {model_dir}")
        return 0

    split = SplitSpec(dev_fraction=config.dev_fraction, seed=config.seed)
    train, dev = stratified_split(full, split)

    lexicon = None
    if any(r.gold_ingredients for r in train):
        lexicon = extraction_mod.build_lexicon(train, norm)
        extraction_mod.save_lexicon(lexicon, model_dir / "lexicon.tsv")
    ingredients = _extract_all(full, lexicon)

    stats = build_stats(train, full, norm, agglut, feed=Feed.TITLE_AND_BODY)
    save_stats(stats, model_dir / "stats.tsv")

    feats = {r.id: boost_mod.recipe_boost_features(r, ingredients[r.id], norm, agglut)
             for r in full}
    boost_cfg = boost_mod.BoostConfig(**config.boost)
    boost_model = boost_mod.train_boost(train, dev, feats, boost_cfg)
    boost_mod.save_boost(boost_model, model_dir / "boost.model")

    vocab_filter = None
    if config.task == "T2" and config.mi_k:
        vocab_filter = frozenset(mutual_information_select(stats, config.mi_k))
    svm_cfg = svm_mod.SvmConfig(seed=config.seed, **config.svm)
    svm_model = svm_mod.train_ovo(train, stats, svm_cfg, vocab_filter)
    svm_mod.save_ovo(svm_model, model_dir / "svm.model")

    cosine_opts = dict(config.cosine)
    threshold = cosine_opts.pop("gini_threshold", 0.45)
    mode = cosine_opts.pop("denominator_mode", cosine_mod.STANDARD)
    alpha = cosine_opts.pop("alpha", None)
    if cosine_opts:
        raise ConfigError(f"unknown cosine options: {sorted(cosine_opts)}")

    if config.task == "T2":
        boosts = _class_boosts(config)
        flat = cosine_mod.train_cosine(train, stats, threshold, mode,
                                       class_boosts=boosts,
                                       method_id="cosine_flat")
        cosine_mod.save_cosine(flat, model_dir / "cosine_flat.model", boosts)

    if config.hierarchy_spec is not None:
        spec = cosine_mod.load_hierarchy_spec(
            _require_file(config.hierarchy_spec, "hierarchy spec"))
    else:
        spec = cosine_mod.default_hierarchy(config.task)
    if alpha is not None:
        spec = cosine_mod.HierarchySpec(tuple(
            cosine_mod.HierarchyStage(stage.grouping, alpha) for stage in spec.stages))
    hier = cosine_mod.train_hierarchical(train, full, spec, norm, agglut, threshold, mode)
    cosine_mod.save_hierarchical(hier, model_dir / "cosine_hier.model")

    _write_manifest(model_dir, {
        "task": config.task, "seed": config.seed,
        "train_size": len(train), "dev_size": len(dev),
        "boost_rounds": len(boost_model.rounds),
        "classes": stats.classes,
    })
    print(f"trained {len(TASK_METHODS[config.task])} classifiers "
          f"on {len(train)}+{len(dev)} recipes -> {model_dir}")
    return 0


# --------------------------------------------------------------------
# classify
# --------------------------------------------------------------------

def _load_artifacts(config: PipelineConfig):
    model_dir = Path(config.model_dir)
    if not model_dir.exists():
        raise ConfigError(f"model directory not found: {model_dir}")
    norm = config.norm_config()
    agglut = None
    agglut_path = model_dir / "agglutination.txt"
    if norm.agglutinate:
        if not agglut_path.exists():
            raise ModelMismatchError(
                f"config asks for agglutination but {agglut_path} is missing")
        agglut = load_agglutination_model(agglut_path)
    lexicon = None
    lexicon_path = model_dir / "lexicon.tsv"
    if lexicon_path.exists():
        lexicon = extraction_mod.load_lexicon(lexicon_path, norm)
    return model_dir, norm, agglut, lexicon


def _save_score_tsv(vectors: list[ScoreVector], classes: list[str], method: str,
                    path: Path) -> None:
    lines = ["#scores\tv1", f"#method\t{method}", "#classes\t" + ",".join(classes)]
    for v in vectors:
        cells = [v.recipe_id] + [f"{v.scores[c]:.17g}" for c in classes]
        lines.append("\t".join(cells))
    path.write_text("".join(line + "\n" for line in lines), encoding="utf-8")


def _load_score_tsv(path: Path) -> list[ScoreVector]:
    lines = path.read_text(encoding="utf-8").splitlines()
    if not lines or lines[0] != "#scores\tv1":
        raise ModelMismatchError(f"{path}: not a v1 score file")
    method = ""
    classes: list[str] = []
    vectors = []
    for line in lines[1:]:
        cells = line.split("\t")
        if cells[0] == "#method":
            method = cells[1]
        elif cells[0] == "#classes":
            classes = cells[1].split(",")
        elif cells[0]:
            scores = {c: float(x) for c, x in zip(classes, cells[1:])}
            vectors.append(ScoreVector(cells[0], method, scores))
    return vectors


def cmd_classify(config: PipelineConfig) -> int:
    if config.task == "T4":
        raise ConfigError("classify applies to tasks T1 and T2; use extract for T4")
    test_path = _require_file(config.test_xml, "test corpus")
    model_dir, norm, agglut, lexicon = _load_artifacts(config)
    run_dir = Path(config.run_dir)
    run_dir.mkdir(parents=True, exist_ok=True)

    test = load_corpus(test_path, LabelKind.NONE)
    stats = load_stats(_require_file(model_dir / "stats.tsv", "stats table"), norm, agglut)
    ingredients = _extract_all(test, lexicon)

    methods = TASK_METHODS[config.task]
    per_method: dict[str, list[ScoreVector]] = {}

    boost_model = boost_mod.load_boost(
        _require_file(model_dir / "boost.model", "boost model"))
    per_method["boost"] = [
        boost_mod.score_boost(
            boost_model,
            boost_mod.recipe_boost_features(r, ingredients[r.id], norm, agglut))
        for r in test]

    svm_model = svm_mod.load_ovo(_require_file(model_dir / "svm.model", "svm model"))
    per_method["svm"] = [svm_mod.score_ovo(svm_model, r, stats) for r in test]

    hier_model = cosine_mod.load_hierarchical(
        _require_file(model_dir / "cosine_hier.model", "hierarchical cosine model"),
        norm, agglut)
    per_method["cosine_hier"] = [cosine_mod.classify_hierarchical(hier_model, r)
                                 for r in test]

    if "cosine_flat" in methods:
        flat_model = cosine_mod.load_cosine(
            _require_file(model_dir / "cosine_flat.model", "flat cosine model"), stats)
        per_method["cosine_flat"] = [cosine_mod.score_cosine(flat_model, r) for r in test]

    classes = sorted(per_method["boost"][0].scores)
    for method in methods:
        for v in per_method[method]:
            if sorted(v.scores) != classes:
                raise ModelMismatchError(
                    f"method {method!r} emits classes {sorted(v.scores)}, "
                    f"expected {classes}")
        _save_score_tsv(per_method[method], classes, method,
                        run_dir / f"scores_{method}.tsv")
    print(f"wrote {len(methods)} score files for {len(test)} recipes -> {run_dir}")
    return 0


# --------------------------------------------------------------------
# fuse
# --------------------------------------------------------------------

def _electre_params(config: PipelineConfig, methods: list[str]) -> ElectreParams:
    fusion_opts = dict(config.fusion)
    sc = fusion_opts.pop("concordance_threshold", None)
    if sc is None:
        sc = DEFAULT_CONCORDANCE.get(config.task, 0.7)
    veto = fusion_opts.pop("veto", DEFAULT_VETO)
    weights = fusion_opts.pop("method_weights", None)
    if fusion_opts:
        raise ConfigError(f"unknown fusion options: {sorted(fusion_opts)}")
    if weights is None:
        weights = {m: 1.0 for m in methods}
    missing = [m for m in methods if m not in weights]
    if missing:
        raise ConfigError(f"fusion weights missing methods {missing}")
    vetoes = {m: veto for m in methods} if isinstance(veto, (int, float)) else dict(veto)
    return ElectreParams(method_weights=weights, concordance_threshold=sc,
                         veto_values=vetoes)


def cmd_fuse(config: PipelineConfig, runs_preset: str | None) -> int:
    if config.task == "T4":
        raise ConfigError("fuse applies to tasks T1 and T2")
    run_dir = Path(config.run_dir)
    methods = TASK_METHODS[config.task]
    by_method: dict[str, dict[str, ScoreVector]] = {}
    for method in methods:
        path = run_dir / f"scores_{method}.tsv"
        if not path.exists():
            raise ConfigError(f"score file not found: {path} (run classify first)")
        by_method[method] = {v.recipe_id: v for v in _load_score_tsv(path)}

    ids = sorted(by_method[methods[0]])
    for method in methods[1:]:
        if sorted(by_method[method]) != ids:
            raise DataError(f"score files disagree on recipe ids ({method!r})")

    params = _electre_params(config, methods)
    normalized = {
        rid: [normalize_scores(by_method[m][rid]) for m in methods] for rid in ids}

    linear_rows, electre_rows, detail_rows = [], [], []
    for rid in ids:
        vectors = normalized[rid]
        linear_winner, _ = fuse_linear(vectors)
        electre_winner, relation = fuse_electre(vectors, params)
        linear_rows.append(f"{rid}\t{linear_winner}")
        electre_rows.append(f"{rid}\t{electre_winner}")
        cells = [rid]
        for method, vector in zip(methods, vectors):
            for cls in sorted(vector.scores):
                cells.append(f"{method}:{cls}={vector.scores[cls]:.6f}")
        kernel = ",".join(sorted(relation.kernel)) or "-"
        cells.append(f"kernel={kernel}")
        cells.append(f"linear={linear_winner}")
        cells.append(f"electre={electre_winner}")
        detail_rows.append("\t".join(cells))

    (run_dir / "fused_linear.tsv").write_text(
        "".join(r + "\n" for r in linear_rows), encoding="utf-8")
    (run_dir / "fused_electre.tsv").write_text(
        "".join(r + "\n" for r in electre_rows), encoding="utf-8")
    (run_dir / "fusion_details.tsv").write_text(
        "".join(r + "\n" for r in detail_rows), encoding="utf-8")

    if runs_preset == "paper":
        single = RUN1_METHOD[config.task]
        run1 = [f"{rid}\t{normalized[rid][methods.index(single)].top_class()}"
                for rid in ids]
        (run_dir / "run1.tsv").write_text("".join(r + "\n" for r in run1),
                                          encoding="utf-8")
        (run_dir / "run2.tsv").write_text("".join(r + "\n" for r in electre_rows),
                                          encoding="utf-8")
        (run_dir / "run3.tsv").write_text("".join(r + "\n" for r in linear_rows),
                                          encoding="utf-8")
        print(f"wrote run1 ({single}), run2 (electre), run3 (linear) -> {run_dir}")
    else:
        print(f"wrote linear and electre fusion runs for {len(ids)} recipes -> {run_dir}")
    return 0


# --------------------------------------------------------------------
# extract / evaluate / sweep
# --------------------------------------------------------------------

def cmd_extract(config: PipelineConfig) -> int:
    test_path = _require_file(config.test_xml, "test corpus")
    model_dir, norm, agglut, lexicon = _load_artifacts(config)
    if lexicon is None:
        raise ModelMismatchError(f"no ingredient lexicon in {model_dir}")
    run_dir = Path(config.run_dir)
    run_dir.mkdir(parents=True, exist_ok=True)
    test = load_corpus(test_path, LabelKind.NONE)
    run = {r.id: extraction_mod.extract(r, lexicon) for r in test}
    extraction_mod.save_run(run, run_dir / "ingredients.tsv")
    total = sum(len(cl.items) for cl in run.values())
    print(f"extracted {total} candidates over {len(test)} recipes -> {run_dir}")
    return 0


def _load_label_run(path: Path) -> dict[str, str]:
    predicted = {}
    for lineno, line in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
        if not line.strip():
            continue
        cells = line.split("\t")
        if len(cells) != 2:
            raise DataError(f"{path}:{lineno}: expected recipe_id<TAB>class")
        predicted[cells[0]] = cells[1]
    return predicted


def cmd_evaluate(config: PipelineConfig, run_file: str, qrels_file: str | None,
                 deaccent: bool = False) -> int:
    run_path = _require_file(run_file, "run file")
    if config.task == "T4":
        norm = config.norm_config()
        run = extraction_mod.load_run(run_path)
        if qrels_file is not None:
            qrels = load_qrels(_require_file(qrels_file, "qrels file"))
        else:
            gold_path = _require_file(config.test_xml, "test corpus (for gold lists)")
            qrels = qrels_from_corpus(load_corpus(gold_path, LabelKind.NONE), norm)
        score = mean_average_precision(run, qrels, norm, deaccent=deaccent)
        print(f"map\t{score:.6f}")
        return 0

    gold_path = _require_file(config.test_xml, "test corpus (with gold labels)")
    gold = load_corpus(gold_path, TASK_LABEL_KIND[config.task])
    predicted = _load_label_run(run_path)
    report = classification_report(gold, predicted, ordinal=(config.task == "T1"))
    for line in report.lines():
        print(line)
    return 0


def cmd_sweep(config: PipelineConfig, param: str, start: float, stop: float,
              step: float) -> int:
    if step <= 0:
        raise ConfigError("sweep step must be > 0")
    values = []
    v = start
    while v <= stop + 1e-12:
        values.append(round(v, 10))
        v += step

    train_path = _require_file(config.train_xml, "training corpus")
    label_kind = TASK_LABEL_KIND[config.task]
    if label_kind is LabelKind.NONE:
        raise ConfigError("sweep applies to classification tasks")
    norm = config.norm_config()
    full = load_corpus(train_path, label_kind)
    agglut = fit_agglutinator(full, norm) if norm.agglutinate else None
    train, dev = stratified_split(
        full, SplitSpec(dev_fraction=config.dev_fraction, seed=config.seed))

    if param == "gini_threshold":
        stats = build_stats(train, full, norm, agglut)
        mode = config.cosine.get("denominator_mode", cosine_mod.STANDARD)
        print("gini_threshold\tdev_macro_f")
        for threshold in values:
            model = cosine_mod.train_cosine(train, stats, threshold, mode)
            predicted = {r.id: cosine_mod.score_cosine(model, r).top_class()
                         for r in dev}
            report = classification_report(dev, predicted)
            print(f"{threshold:.6f}\t{report.macro_f:.6f}")
        return 0
    if param == "concordance_threshold":
        run_dir = Path(config.run_dir)
        methods = TASK_METHODS[config.task]
        by_method = {}
        for method in methods:
            path = run_dir / f"scores_{method}.tsv"
            if not path.exists():
                raise ConfigError(f"score file not found: {path} (run classify first)")
            by_method[method] = {v.recipe_id: v for v in _load_score_tsv(path)}
        ids = sorted(by_method[methods[0]])
        gold = load_corpus(_require_file(config.test_xml, "test corpus"), label_kind)
        print("concordance_threshold\tmicro_f")
        for sc in values:
            params = ElectreParams.uniform(methods, sc, config.fusion.get(
                "veto", DEFAULT_VETO))
            predicted = {}
            for rid in ids:
                vectors = [normalize_scores(by_method[m][rid]) for m in methods]
                predicted[rid], _ = fuse_electre(vectors, params)
            report = classification_report(gold, predicted)
            print(f"{sc:.6f}\t{report.micro_f:.6f}")
        return 0
    raise ConfigError(f"unknown sweep parameter {param!r}")


# --------------------------------------------------------------------
# entry point
# --------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="recipetext",
        description="Recipe classification and ingredient extraction pipeline.")
    parser.add_argument("--config", help="JSON pipeline config file")
    parser.add_argument("--task", choices=sorted(TASK_LABEL_KIND))
    parser.add_argument("--seed", type=int)
    parser.add_argument("--train-xml", dest="train_xml")
    parser.add_argument("--test-xml", dest="test_xml")
    parser.add_argument("--model-dir", dest="model_dir")
    parser.add_argument("--run-dir", dest="run_dir")
    parser.add_argument("--dev-fraction", dest="dev_fraction", type=float)

    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("train", help="fit all models for the task")
    sub.add_parser("classify", help="emit per-method score files for the test corpus")
    fuse = sub.add_parser("fuse", help="combine score files into final runs")
    fuse.add_argument("--runs", choices=["paper"], default=None,
                      help="also emit the run1/run2/run3 preset")
    sub.add_parser("extract", help="emit the ranked ingredient run")
    ev = sub.add_parser("evaluate", help="score a run file")
    ev.add_argument("run_file")
    ev.add_argument("--qrels", default=None, help="qrels file (T4)")
    ev.add_argument("--deaccent", action="store_true",
                    help="strip accents before matching ingredients (T4, comparison only)")
    sw = sub.add_parser("sweep", help="grid-sweep one parameter on dev")
    sw.add_argument("--param", required=True,
                    choices=["gini_threshold", "concordance_threshold"])
    sw.add_argument("--start", type=float, required=True)
    sw.add_argument("--stop", type=float, required=True)
    sw.add_argument("--step", type=float, required=True)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        config = load_config(args.config) if args.config else PipelineConfig()
        config = _apply_overrides(config, args)
        if args.command == "train":
            return cmd_train(config)
        if args.command == "classify":
            return cmd_classify(config)
        if args.command == "fuse":
            return cmd_fuse(config, args.runs)
        if args.command == "extract":
            return cmd_extract(config)
        if args.command == "evaluate":
            return cmd_evaluate(config, args.run_file, args.qrels, args.deaccent)
        if args.command == "sweep":
            return cmd_sweep(config, args.param, args.start, args.stop, args.step)
        parser.error(f"unknown command {args.command!r}")
    except ConfigError as exc:
        print(f"error:config: {exc}", file=sys.stderr)
        return 2
    except DataError as exc:
        print(f"error:data: {exc}", file=sys.stderr)
        return 3
    except ModelMismatchError as exc:
        print(f"error:model-mismatch: {exc}", file=sys.stderr)
        return 4
    except RecipetextError as exc:
        print(f"error:internal: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
