"""Per-class score vectors emitted by every classification method."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DataError


@dataclass
class ScoreVector:
    recipe_id: str
    method_id: str
    scores: dict[str, float]

    def __post_init__(self):
        for cls, value in self.scores.items():
            if not math.isfinite(value):
                raise DataError(
                    f"non-finite score {value!r} for class {cls!r} "
                    f"(recipe {self.recipe_id!r}, method {self.method_id!r})")

    def classes(self) -> list[str]:
        return sorted(self.scores)

    def top_class(self) -> str:
        """Argmax class; ties break toward the lexicographically smallest."""
        return min(self.scores, key=lambda cls: (-self.scores[cls], cls))


__all__ = ["ScoreVector"]
