"""Rule tables mapping a distribution profile to a storage format.

Rules only fire for a category at ``VeryHigh``; simultaneous hits resolve in
``Category`` declaration order (diagonal, dense rows, dense columns,
randomness).  Anything below that goes through :func:`fallback`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .analyzer import Category, DistributionProfile, Level, Shape
from .size_model import modelled_sizes

OBJECTIVES = ("speed", "size")
FALLBACK = "fallback"

_ANY = frozenset(Shape)
_SQ_VERT = frozenset({Shape.SQUARE, Shape.VERTICAL})
_SQ_HORIZ = frozenset({Shape.SQUARE, Shape.HORIZONTAL})
_VERT = frozenset({Shape.VERTICAL})
_HORIZ = frozenset({Shape.HORIZONTAL})


class Rule(NamedTuple):
    rule_id: str
    category: Category
    shapes: frozenset
    format_id: str


# rows kept in their tabulated order; ids number them 1..6 per objective
RULES: dict[str, tuple[Rule, ...]] = {
    "speed": (
        Rule("speed-1", Category.DIAGONAL, _ANY, "dia"),
        Rule("speed-2", Category.DENSE_ROWS, _SQ_VERT, "csr"),
        Rule("speed-3", Category.DENSE_COLS, _SQ_VERT, "jds"),
        Rule("speed-4", Category.RANDOMNESS, _ANY, "tjds"),
        Rule("speed-5", Category.DENSE_ROWS, _HORIZ, "tjds"),
        Rule("speed-6", Category.DENSE_COLS, _HORIZ, "csc"),
    ),
    "size": (
        Rule("size-1", Category.DIAGONAL, _ANY, "dia"),
        Rule("size-2", Category.RANDOMNESS, _ANY, "tjds"),
        Rule("size-3", Category.DENSE_ROWS, _SQ_HORIZ, "csr"),
        Rule("size-4", Category.DENSE_ROWS, _VERT, "csc"),
        Rule("size-5", Category.DENSE_COLS, _SQ_VERT, "csc"),
        Rule("size-6", Category.DENSE_COLS, _HORIZ, "jds"),
    ),
}

SPEED_DEFAULT = "csr"


def lookup_rule(objective: str, category: Category, shape: Shape) -> Rule:
    for rule in RULES[objective]:
        if rule.category == category and shape in rule.shapes:
            return rule
    raise LookupError(f"no {objective} rule for {category} on a {shape} matrix")


@dataclass(frozen=True)
class SizeCrossCheck:
    minimum_formats: tuple[str, ...]  # exact element-count minimum over the six sparse formats
    minimum_elements: int
    agrees: bool


@dataclass(frozen=True)
class Recommendation:
    objective: str
    format_id: str
    fired_rule: str  # a rule id or FALLBACK
    rationale: tuple[Category, Level, Shape] | None
    trace: tuple[str, ...] = ()
    size_cross_check: SizeCrossCheck | None = None
    degenerate: bool = False

    @property
    def is_fallback(self) -> bool:
        return self.fired_rule == FALLBACK


def _sparse_sizes(profile: DistributionProfile) -> dict[str, int]:
    sizes = modelled_sizes(
        profile.rows, profile.cols, profile.nnz, profile.nzd, profile.max_row_nnz, profile.max_col_nnz
    )
    del sizes["dense"]
    return sizes


def _size_minimum(profile: DistributionProfile) -> tuple[tuple[str, ...], int]:
    sizes = _sparse_sizes(profile)
    best = min(sizes.values())
    return tuple(f for f, n in sizes.items() if n == best), best


def _cross_check(profile: DistributionProfile, format_id: str) -> SizeCrossCheck:
    winners, best = _size_minimum(profile)
    return SizeCrossCheck(winners, best, format_id in winners)


def _check_objective(objective: str) -> None:
    if objective not in OBJECTIVES:
        raise ValueError(f"objective must be one of {OBJECTIVES}, got {objective!r}")


def recommend(profile: DistributionProfile, objective: str) -> Recommendation:
    _check_objective(objective)
    levels = profile.levels()
    hits = [c for c in Category if levels[c] is Level.VERY_HIGH]
    if profile.is_empty or not hits:
        return fallback(profile, objective)
    category = hits[0]
    rule = lookup_rule(objective, category, profile.shape)
    trace = [f"VeryHigh categories: {', '.join(map(str, hits))}"]
    if len(hits) > 1:
        trace.append(f"{category} takes precedence")
    trace.append(f"rule {rule.rule_id}: ({category}, {profile.shape}) -> {rule.format_id}")
    return Recommendation(
        objective=objective,
        format_id=rule.format_id,
        fired_rule=rule.rule_id,
        rationale=(category, Level.VERY_HIGH, profile.shape),
        trace=tuple(trace),
        size_cross_check=_cross_check(profile, rule.format_id) if objective == "size" else None,
        degenerate=bool(profile.degenerate),
    )


def fallback(profile: DistributionProfile, objective: str) -> Recommendation:
    """Answer when no category reaches VeryHigh.

    The highest-level category (precedence breaks ties) is treated as if it
    were VeryHigh.  With every category VeryLow, or an empty matrix, speed
    defaults to CSR and size to the exact element-count minimum.
    """
    _check_objective(objective)
    levels = profile.levels()
    top = max(levels.values())
    trace = ["levels: " + ", ".join(f"{c}={levels[c]}" for c in Category)]
    cross = None

    if profile.is_empty or top is Level.VERY_LOW:
        trace.append("empty matrix" if profile.is_empty else "every category is VeryLow")
        rationale = None
        if objective == "speed":
            format_id = SPEED_DEFAULT
            trace.append(f"default speed format -> {format_id}")
        else:
            winners, _ = _size_minimum(profile)
            format_id = winners[0]
            cross = _cross_check(profile, format_id)
            trace.append(f"exact size minimum {cross.minimum_elements} elements -> {format_id}")
    else:
        category = next(c for c in Category if levels[c] == top)
        rule = lookup_rule(objective, category, profile.shape)
        format_id = rule.format_id
        rationale = (category, top, profile.shape)
        trace.append(f"highest level {top} in {category}; applying rule {rule.rule_id} as if VeryHigh")
        trace.append(f"({category}, {profile.shape}) -> {format_id}")
        if objective == "size":
            cross = _cross_check(profile, format_id)

    return Recommendation(
        objective=objective,
        format_id=format_id,
        fired_rule=FALLBACK,
        rationale=rationale,
        trace=tuple(trace),
        size_cross_check=cross,
        degenerate=bool(profile.degenerate),
    )


def recommend_both(profile: DistributionProfile) -> dict[str, Recommendation]:
    return {obj: recommend(profile, obj) for obj in OBJECTIVES}
