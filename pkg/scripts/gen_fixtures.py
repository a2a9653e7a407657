#!/usr/bin/env python3
"""Generate the synthetic test corpora committed under tests/fixtures/.

Run from the repository root:

    python scripts/gen_fixtures.py

Both corpora are produced deterministically from fixed seeds; rerunning
rewrites identical files. boost40.xml is a 4-class difficulty corpus for
the boosting tests; golden60.xml carries difficulty, dish type and gold
ingredient lists and drives the end-to-end golden pipeline test.
"""

from pathlib import Path

from recipetext.corpus import Corpus, Difficulty, DishType, LabelKind, Recipe, save_corpus
from recipetext.rng import SplitMix64

OUT = Path(__file__).resolve().parent.parent / "tests" / "fixtures"

DIFFICULTY_WORDS = {
    "TresFacile": ["simple", "rapide", "express", "direct", "facile"],
    "Facile": ["classique", "courant", "familial", "habituel", "pratique"],
    "MoyennementDifficile": ["soigné", "patient", "attentif", "progressif", "mesuré"],
    "Difficile": ["délicat", "minutieux", "exigeant", "technique", "précis"],
}

DISH_WORDS = {
    "Entree": ["salade", "terrine", "velouté", "tartine", "bouchée", "carpaccio"],
    "PlatPrincipal": ["rôti", "gratin", "mijoté", "sauté", "braisé", "poêlée"],
    "Dessert": ["gâteau", "tarte", "mousse", "crumble", "clafoutis", "compote"],
}

INGREDIENTS = {
    "Entree": ["tomate", "concombre", "oignon", "radis", "betterave", "chèvre",
               "noix", "endive"],
    "PlatPrincipal": ["poulet", "boeuf", "lardons", "riz", "carotte", "pomme de terre",
                      "champignon", "gruyère"],
    "Dessert": ["chocolat", "sucre", "farine", "beurre", "oeuf", "vanille",
                "pomme", "amande"],
}

VERBS = ["mélanger", "verser", "couper", "ajouter", "remuer", "laisser", "chauffer",
         "incorporer", "égoutter", "fouetter"]
FILLER = ["doucement", "ensuite", "aussitôt", "longuement", "librement", "encore",
          "le", "la", "un", "une", "avec", "puis", "dans", "sans", "bien"]
CROSS = ["plat", "four", "sel", "poivre", "huile", "eau", "feu", "minute",
         "cuisson", "assiette", "saveur", "maison"]


def _pick(rng, pool):
    return pool[rng.below(len(pool))]


def _sentence(rng, words, noise=0.0):
    length = 4 + rng.below(5)
    parts = [_pick(rng, VERBS)]
    for _ in range(length):
        roll = rng.uniform()
        if roll < noise:
            parts.append(_pick(rng, CROSS))
        elif roll < noise + 0.25:
            parts.append(_pick(rng, FILLER))
        else:
            parts.append(_pick(rng, words))
    if rng.uniform() < 0.3:
        parts.append(str(1 + rng.below(12)))
        parts.append(_pick(rng, ["minutes", "grammes", "centilitres"]))
    return " ".join(parts) + "."


def gen_boost40() -> Corpus:
    rng = SplitMix64(40_040)
    recipes = []
    idx = 0
    for level in Difficulty:
        marker = DIFFICULTY_WORDS[level.name]
        # harder levels get longer bodies so numeric stumps have signal
        n_sentences = 2 + level.rank
        for _ in range(10):
            dish = _pick(rng, list(DISH_WORDS))
            words = marker + DISH_WORDS[dish] + FILLER
            title = f"{_pick(rng, DISH_WORDS[dish])} {_pick(rng, marker)}"
            body = " ".join(_sentence(rng, words) for _ in range(n_sentences))
            gold = sorted({_pick(rng, INGREDIENTS[dish]) for _ in range(3)})
            body += " Prévoir " + ", ".join(gold) + "."
            recipes.append(Recipe(
                f"b{idx:03d}", title, body,
                difficulty=level, dish_type=DishType[dish],
                gold_ingredients=gold))
            idx += 1
    return Corpus(recipes, LabelKind.DIFFICULTY)


def gen_golden60() -> Corpus:
    rng = SplitMix64(60_060)
    recipes = []
    idx = 0
    levels = list(Difficulty)
    dishes = list(DISH_WORDS)
    for dish in ("Entree", "PlatPrincipal", "Dessert"):
        for k in range(20):
            level = levels[rng.below(4)]
            marker = DIFFICULTY_WORDS[level.name]
            words = DISH_WORDS[dish] + marker
            # every fourth recipe is confusable: its vocabulary leans on
            # another dish type, so the methods genuinely disagree
            if k % 4 == 3:
                other = dishes[rng.below(3)]
                words = words + DISH_WORDS[other] + DISH_WORDS[other]
            title = f"{_pick(rng, DISH_WORDS[dish])} {_pick(rng, marker)}"
            n_sentences = 2 + level.rank
            body = " ".join(_sentence(rng, words, noise=0.3)
                            for _ in range(n_sentences))
            gold = sorted({_pick(rng, INGREDIENTS[dish])
                           for _ in range(2 + rng.below(3))})
            if rng.uniform() < 0.6:
                body += " Il faut " + ", ".join(gold) + "."
            if rng.uniform() < 0.25:
                body += " Mélanger énergiquement tous les ingrédients."
            recipes.append(Recipe(
                f"g{idx:03d}", title, body,
                difficulty=level, dish_type=DishType[dish],
                gold_ingredients=gold))
            idx += 1
    return Corpus(recipes, LabelKind.DISH_TYPE)


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    save_corpus(gen_boost40(), OUT / "boost40.xml")
    save_corpus(gen_golden60(), OUT / "golden60.xml")
    print(f"wrote {OUT / 'boost40.xml'}")
    print(f"wrote {OUT / 'golden60.xml'}")


if __name__ == "__main__":
    main()
