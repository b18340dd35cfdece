"""Naive set-cover oracle: enumerate all subsets by increasing size.

Deliberately independent of the branch-and-bound search it checks; the
only shared contract is the edge-case convention (no columns -> one
empty cover; columns but nothing coverable -> no covers).
"""

from __future__ import annotations

import random
from itertools import combinations

from xca.matching import CoverageMatrix
from xca.model import GoalId

GOAL_VALUES = [g.value for g in GoalId]


def naive_minimal_covers(
    matrix: CoverageMatrix,
) -> tuple[set[frozenset[str]], frozenset[GoalId]]:
    """All minimum-size covers of the coverable goals, as a set of id-sets."""
    n_rows = len(matrix.rows)
    uncovered = frozenset(
        goal
        for j, goal in enumerate(matrix.columns)
        if not any(matrix.cells[i][j] for i in range(n_rows))
    )
    coverable = [j for j, goal in enumerate(matrix.columns) if goal not in uncovered]
    if not coverable:
        covers = {frozenset()} if not uncovered else set()
        return covers, uncovered
    for size in range(1, n_rows + 1):
        found = set()
        for combo in combinations(range(n_rows), size):
            covered = set()
            for i in combo:
                covered.update(j for j in coverable if matrix.cells[i][j])
            if len(covered) == len(coverable):
                found.add(frozenset(matrix.rows[i] for i in combo))
        if found:
            return found, uncovered
    return set(), uncovered


def random_matrix(rng: random.Random, max_rows: int = 15, max_cols: int = 9) -> CoverageMatrix:
    n_rows = rng.randint(0, max_rows)
    n_cols = rng.randint(0, max_cols)
    columns = tuple(GoalId(v) for v in sorted(rng.sample(GOAL_VALUES, n_cols)))
    density = rng.choice([0.15, 0.3, 0.5, 0.7])
    rows = tuple(f"R{i:02d}" for i in range(n_rows))
    cells = tuple(
        tuple(rng.random() < density for _ in range(n_cols)) for _ in range(n_rows)
    )
    return CoverageMatrix(rows=rows, columns=columns, cells=cells)
