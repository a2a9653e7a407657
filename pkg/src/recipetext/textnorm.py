"""Text normalization, tokenization, n-grams and n-gram agglutination.

Normalization applies four steps in order:

1. punctuation is dropped, every word isolated, apostrophe clitics are
   split off ("l'oignon" -> "l'", "oignon"); output is lowercased;
2. abbreviations are replaced from a user-extendable table
   ("kg" -> "kilogramme");
3. digit sequences are rewritten as French words ("3" -> "trois",
   "3,5" -> "trois virgule cinq"); cardinals above 999 pass through;
4. frequent word n-grams are merged into composite tokens joined with
   "_" ("il y a" -> "il_y_a"), using a fitted agglutination model.

Diacritics are preserved throughout: de-accenting recipe text creates
ambiguities ("pâte"/"pâté") that cost more than it saves.
"""

from __future__ import annotations

import re
import unicodedata
from collections import Counter
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .errors import ConfigError, DataError

TokenStream = list[str]

# Tokens are decimal numbers ("3,5"), digit runs, or words; hyphens stay
# word-internal, apostrophes stay on clitic prefixes, digit/letter
# boundaries split ("40cl" -> "40", "cl").  Everything else separates.
_TOKEN_RE = re.compile(
    r"[0-9]+,[0-9]+"
    r"|[0-9]+"
    r"|[^\W\d_]+(?:[-'][^\W\d_]+)*'?",
    re.UNICODE,
)
_DIGITS_RE = re.compile(r"^[0-9]+$")
_DECIMAL_RE = re.compile(r"^([0-9]+),([0-9]+)$")


def _french_units() -> dict[int, str]:
    units = {
        0: "zéro", 1: "un", 2: "deux", 3: "trois", 4: "quatre", 5: "cinq",
        6: "six", 7: "sept", 8: "huit", 9: "neuf", 10: "dix", 11: "onze",
        12: "douze", 13: "treize", 14: "quatorze", 15: "quinze", 16: "seize",
    }
    return units


def default_french_numbers(limit: int = 1000) -> dict[int, str]:
    """French cardinal words for 0..limit-1, fully hyphenated.

    Uses the 1990 rectified orthography (hyphens everywhere) so every
    number renders as a single whitespace-free token.
    """
    units = _french_units()
    tens = {20: "vingt", 30: "trente", 40: "quarante", 50: "cinquante", 60: "soixante"}

    def below_hundred(n: int) -> str:
        if n <= 16:
            return units[n]
        if n < 20:
            return "dix-" + units[n - 10]
        if n < 70:
            t, u = divmod(n, 10)
            base = tens[t * 10]
            if u == 0:
                return base
            if u == 1:
                return base + "-et-un"
            return base + "-" + units[u]
        if n < 80:
            if n == 71:
                return "soixante-et-onze"
            return "soixante-" + below_hundred(n - 60)
        if n == 80:
            return "quatre-vingts"
        if n < 100:
            return "quatre-vingt-" + below_hundred(n - 80)
        raise ValueError(n)

    words = {}
    for n in range(min(limit, 1000)):
        if n < 100:
            words[n] = below_hundred(n)
            continue
        h, rest = divmod(n, 100)
        head = "cent" if h == 1 else units[h] + "-cent"
        if rest == 0:
            words[n] = head + ("s" if h > 1 else "")
        else:
            words[n] = head + "-" + below_hundred(rest)
    return words


def builtin_abbreviations() -> dict[str, str]:
    """The abbreviation table shipped with the package."""
    text = resources.files("recipetext").joinpath("data/abbreviations.tsv").read_text("utf-8")
    return _parse_abbrev_tsv(text.splitlines())


def load_abbrev_table(path: str | Path) -> dict[str, str]:
    """Load a ``short<TAB>long`` abbreviation table from a TSV file."""
    with open(path, encoding="utf-8") as handle:
        return _parse_abbrev_tsv(handle)


def _parse_abbrev_tsv(lines) -> dict[str, str]:
    table = {}
    for lineno, line in enumerate(lines, start=1):
        line = line.rstrip("\n")
        if not line or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 2 or not parts[0] or not parts[1]:
            raise DataError(f"abbreviation table line {lineno}: expected 'short<TAB>long'")
        short = parts[0]
        if short != short.lower() or any(ch.isspace() for ch in short):
            raise DataError(f"abbreviation key {short!r} must be lowercase and whitespace-free")
        table[short] = parts[1]
    return table


@dataclass(frozen=True)
class NormConfig:
    abbrev_table: dict[str, str] = field(default_factory=builtin_abbreviations)
    number_conversion: bool = True
    agglutinate: bool = False
    agglutination_min_count: int = 3
    agglutination_max_n: int = 3
    language_digits: dict[int, str] = field(default_factory=default_french_numbers)

    def __post_init__(self):
        if self.agglutination_min_count < 2:
            raise ConfigError("agglutination_min_count must be >= 2")
        if not 2 <= self.agglutination_max_n <= 4:
            raise ConfigError("agglutination_max_n must lie in [2, 4]")
        for key in self.abbrev_table:
            if key != key.lower() or any(ch.isspace() for ch in key):
                raise ConfigError(f"abbreviation key {key!r} must be lowercase, no whitespace")


AgglutinationModel = frozenset  # of token tuples, 2 <= len <= max_n


def _base_tokens(text: str) -> TokenStream:
    """Step 1: strip punctuation, isolate words, split clitics, lowercase."""
    text = unicodedata.normalize("NFC", text).replace("’", "'").lower()
    tokens: TokenStream = []
    for match in _TOKEN_RE.finditer(text):
        piece = match.group(0)
        while "'" in piece[:-1]:
            cut = piece.index("'") + 1
            tokens.append(piece[:cut])
            piece = piece[cut:]
        if piece:
            tokens.append(piece)
    return tokens


def _apply_abbrev(tokens: TokenStream, table: dict[str, str]) -> TokenStream:
    out: TokenStream = []
    for tok in tokens:
        repl = table.get(tok)
        if repl is None:
            out.append(tok)
        else:
            out.extend(repl.lower().split())
    return out


def _apply_numbers(tokens: TokenStream, words: dict[int, str]) -> TokenStream:
    out: TokenStream = []
    for tok in tokens:
        decimal = _DECIMAL_RE.match(tok)
        if decimal:
            whole, frac = int(decimal.group(1)), int(decimal.group(2))
            if whole in words and frac in words:
                out.extend([words[whole], "virgule", words[frac]])
                continue
        if _DIGITS_RE.match(tok):
            value = int(tok)
            if value in words:
                out.append(words[value])
                continue
        out.append(tok)
    return out


def _merge_ngrams(tokens: TokenStream, model: AgglutinationModel, max_n: int) -> TokenStream:
    out: TokenStream = []
    i = 0
    while i < len(tokens):
        merged = False
        for n in range(max_n, 1, -1):
            if i + n <= len(tokens) and tuple(tokens[i:i + n]) in model:
                out.append("_".join(tokens[i:i + n]))
                i += n
                merged = True
                break
        if not merged:
            out.append(tokens[i])
            i += 1
    return out


def normalize(text: str, config: NormConfig,
              agglutination_model: AgglutinationModel | None = None) -> TokenStream:
    """Apply the four normalization steps to a text; total on strings.

    With ``config.agglutinate`` a fitted model (see fit_agglutinator)
    must be supplied.
    """
    tokens = _base_tokens(text)
    tokens = _apply_abbrev(tokens, config.abbrev_table)
    if config.number_conversion:
        tokens = _apply_numbers(tokens, config.language_digits)
    if config.agglutinate:
        if agglutination_model is None:
            raise ConfigError("agglutinate=True requires a fitted agglutination model")
        tokens = _merge_ngrams(tokens, agglutination_model, config.agglutination_max_n)
    return tokens


def without_agglutination(config: NormConfig) -> NormConfig:
    """The same normalization with step 4 turned off."""
    if not config.agglutinate:
        return config
    return NormConfig(
        abbrev_table=config.abbrev_table,
        number_conversion=config.number_conversion,
        agglutinate=False,
        agglutination_min_count=config.agglutination_min_count,
        agglutination_max_n=config.agglutination_max_n,
        language_digits=config.language_digits,
    )


def fit_agglutinator(corpus, config: NormConfig) -> AgglutinationModel:
    """Collect the n-grams worth merging into composite tokens.

    Candidates are token n-grams (2 <= n <= agglutination_max_n) whose
    corpus frequency reaches agglutination_min_count, counted on texts
    normalized through steps 1-3. A shorter candidate contained in a
    longer one survives only if it also occurs outside it, i.e. its
    frequency strictly exceeds the longer candidate's; otherwise the
    longer n-gram subsumes it. Merging at normalize() time is then
    longest-match-first, left to right.
    """
    plain = without_agglutination(config)
    counts: Counter = Counter()
    n_texts = 0
    for recipe in corpus:
        for text in (recipe.title, recipe.body):
            n_texts += 1
            tokens = normalize(text, plain)
            for n in range(2, config.agglutination_max_n + 1):
                for i in range(len(tokens) - n + 1):
                    counts[tuple(tokens[i:i + n])] += 1
    if n_texts == 0:
        raise DataError("fit_agglutinator needs a non-empty corpus")

    candidates = {g for g, c in counts.items() if c >= config.agglutination_min_count}
    kept = set()
    for gram in candidates:
        subsumed = False
        for other in candidates:
            if len(other) <= len(gram):
                continue
            if _contains(other, gram) and counts[gram] <= counts[other]:
                subsumed = True
                break
        if not subsumed:
            kept.add(gram)
    return frozenset(kept)


def _contains(longer: tuple, shorter: tuple) -> bool:
    span = len(shorter)
    return any(longer[i:i + span] == shorter for i in range(len(longer) - span + 1))


def ngrams(stream: TokenStream, max_n: int) -> Counter:
    """All contiguous n-grams for 1 <= n <= max_n, space-joined, with counts."""
    if max_n < 1:
        raise ConfigError("max_n must be >= 1")
    grams: Counter = Counter()
    for n in range(1, max_n + 1):
        for i in range(len(stream) - n + 1):
            grams[" ".join(stream[i:i + n])] += 1
    return grams


def save_agglutination_model(model: AgglutinationModel, path: str | Path) -> None:
    lines = sorted(" ".join(gram) for gram in model)
    Path(path).write_text("".join(line + "\n" for line in lines), encoding="utf-8")


def load_agglutination_model(path: str | Path) -> AgglutinationModel:
    grams = set()
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        if line.strip():
            grams.add(tuple(line.split()))
    return frozenset(grams)


__all__ = [
    "AgglutinationModel",
    "NormConfig",
    "TokenStream",
    "builtin_abbreviations",
    "default_french_numbers",
    "fit_agglutinator",
    "load_abbrev_table",
    "load_agglutination_model",
    "ngrams",
    "normalize",
    "save_agglutination_model",
    "without_agglutination",
]
