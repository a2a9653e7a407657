#!/usr/bin/env python3
"""Regenerate the committed golden pipeline outputs.

Runs the paper-preset pipeline for both classification tasks on the
committed 60-recipe corpus and stores every run file (plus the model
manifest, which pins the byte digests of all trained models) under
tests/fixtures/golden/. The end-to-end acceptance test replays the
same commands into a scratch directory and compares byte for byte.

    python scripts/gen_goldens.py
"""

import shutil
import sys
import tempfile
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "tests" / "fixtures"

sys.path.insert(0, str(ROOT / "src"))

from recipetext.cli import main  # noqa: E402


def run_task(task: str) -> None:
    corpus = str(FIXTURES / "golden60.xml")
    config = str(FIXTURES / f"golden_config_{task.lower()}.json")
    golden_dir = FIXTURES / "golden" / task.lower()
    if golden_dir.exists():
        shutil.rmtree(golden_dir)
    golden_dir.mkdir(parents=True)

    with tempfile.TemporaryDirectory() as tmp:
        model_dir = str(Path(tmp) / "models")
        base = ["--config", config, "--train-xml", corpus, "--test-xml", corpus,
                "--model-dir", model_dir, "--run-dir", str(golden_dir)]
        assert main(base + ["train"]) == 0
        assert main(base + ["classify"]) == 0
        assert main(base + ["fuse", "--runs", "paper"]) == 0
        if task == "T2":
            assert main(base + ["extract"]) == 0
        shutil.copy(Path(model_dir) / "manifest.json", golden_dir / "manifest.json")
    print(f"{task}: {sorted(p.name for p in golden_dir.iterdir())}")


def main_():
    for task in ("T1", "T2"):
        run_task(task)


if __name__ == "__main__":
    main_()
