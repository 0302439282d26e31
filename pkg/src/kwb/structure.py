"""Stroke correspondence and the structure metrics (match / valid / exist).

Input strokes are assigned one-to-one to model strokes by minimizing total
pairwise symmetric Hausdorff distance over the bipartite stroke sets; pairs
whose distance exceeds the match threshold are then demoted to unmatched.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import linear_sum_assignment
from scipy.spatial.distance import cdist

from .errors import EmptySketchError
from .ink import Stroke
from .normalize import NormalizedSketch


@dataclass(frozen=True)
class MatchPair:
    input_index: int
    model_index: int
    distance: float


@dataclass(frozen=True)
class MatchMap:
    """One-to-one correspondence between input strokes and model strokes."""

    pairs: tuple[MatchPair, ...]
    unmatched_input: tuple[int, ...] = field(default_factory=tuple)
    unmatched_model: tuple[int, ...] = field(default_factory=tuple)

    @property
    def input_count(self) -> int:
        return len(self.pairs) + len(self.unmatched_input)

    @property
    def model_count(self) -> int:
        return len(self.pairs) + len(self.unmatched_model)

    def model_index_of(self, input_index: int):
        for p in self.pairs:
            if p.input_index == input_index:
                return p.model_index
        return None


@dataclass(frozen=True)
class StructureResult:
    match_ratio: float
    valid_ratio: float
    exist_ratio: float
    match_map: MatchMap


def _points_array(st: Stroke) -> np.ndarray:
    return np.array([(p.x, p.y) for p in st.points], dtype=float)


def hausdorff(a: Stroke, b: Stroke) -> float:
    """Symmetric Hausdorff distance between two strokes' point sets."""
    d = cdist(_points_array(a), _points_array(b))
    return float(max(d.min(axis=1).max(), d.min(axis=0).max()))


def _canonicalize_ties(assignment: list[tuple[int, int]], cost: np.ndarray) -> list[tuple[int, int]]:
    """Among equal-cost assignments prefer lower (input, model) lexicographic order.

    Swapping two pairs is cost-neutral iff the 2x2 sub-costs tie exactly;
    repeated passes settle ties from geometrically identical strokes.
    """
    pairs = sorted(assignment)
    changed = True
    while changed:
        changed = False
        for p in range(len(pairs)):
            for q in range(p + 1, len(pairs)):
                (i1, j1), (i2, j2) = pairs[p], pairs[q]
                if j2 < j1 and cost[i1, j1] + cost[i2, j2] == cost[i1, j2] + cost[i2, j1]:
                    pairs[p], pairs[q] = (i1, j2), (i2, j1)
                    changed = True
    return pairs


def match_strokes(inp: NormalizedSketch, model: NormalizedSketch, match_threshold: float) -> MatchMap:
    """Optimal one-to-one stroke assignment, thresholded.

    Minimizes total Hausdorff cost over all injections of the smaller
    stroke set into the larger, then drops pairs farther apart than
    ``match_threshold``. Deterministic, including on exact cost ties.
    """
    if not inp.strokes:
        raise EmptySketchError("no input strokes to match")
    n_in, n_model = len(inp.strokes), len(model.strokes)
    cost = np.zeros((n_in, n_model))
    for i, si in enumerate(inp.strokes):
        for j, sj in enumerate(model.strokes):
            cost[i, j] = hausdorff(si, sj)

    rows, cols = linear_sum_assignment(cost)
    assignment = _canonicalize_ties(list(zip(rows.tolist(), cols.tolist())), cost)

    pairs = []
    matched_in, matched_model = set(), set()
    for i, j in assignment:
        if cost[i, j] <= match_threshold:
            pairs.append(MatchPair(i, j, float(cost[i, j])))
            matched_in.add(i)
            matched_model.add(j)
    return MatchMap(
        tuple(pairs),
        tuple(i for i in range(n_in) if i not in matched_in),
        tuple(j for j in range(n_model) if j not in matched_model),
    )


def structure_metrics(m: MatchMap) -> StructureResult:
    """match = |pairs|/max(|input|,|model|); valid = |pairs|/|model|;
    exist = |pairs|/|input|."""
    n_pairs = len(m.pairs)
    n_in, n_model = m.input_count, m.model_count
    return StructureResult(
        match_ratio=n_pairs / max(n_in, n_model) if max(n_in, n_model) else 0.0,
        valid_ratio=n_pairs / n_model if n_model else 0.0,
        exist_ratio=n_pairs / n_in if n_in else 0.0,
        match_map=m,
    )
