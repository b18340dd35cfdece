"""Exact minimum set cover over the coverage matrix.

Instances are tiny (the shipped catalog has 23 rows, at most 9
addressable goals), so complete search is free and an approximate
recommendation would be an unjustifiable correctness risk.  Two passes:
a branch-and-bound depth-first search finds the true minimum cover size,
then an include/exclude enumeration collects every cover of exactly that
size (each subset visited at most once, so results need no dedup).

Goals with an all-false matrix column are reported as uncoverable; the
remaining goals are what covers must hit exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

from .model import GoalId, KnowledgeBase, MethodEntry
from .matching import CoverageMatrix


@dataclass(frozen=True)
class Recommendation:
    """Minimum-cardinality covers plus the goals no eligible entry reaches.

    ``covers`` is sorted by the lexicographic order of each cover's
    sorted entry-id sequence (all covers share the minimum size).
    ``exhaustive`` is False when more minimum covers exist than ``cap``
    allowed to list.
    """

    covers: tuple[tuple[str, ...], ...]
    uncovered_goals: frozenset[GoalId]
    exhaustive: bool

    @property
    def minimum_size(self) -> int | None:
        return len(self.covers[0]) if self.covers else None


def _bits(x: int) -> int:
    return x.bit_count()


def _greedy_size(masks: list[int], universe: int) -> int:
    """Upper bound on the minimum cover size (classic greedy)."""
    covered = 0
    size = 0
    while covered != universe:
        gain, best = max(((_bits(m & ~covered), m) for m in masks), key=lambda t: t[0])
        if gain == 0:
            raise AssertionError("universe not coverable; caller must pre-filter")
        covered |= best
        size += 1
    return size


def _min_cover_size(masks: list[int], universe: int) -> int:
    """Exact minimum cover size via branch and bound on uncovered elements."""
    if universe == 0:
        return 0
    best = _greedy_size(masks, universe)
    n_elems = universe.bit_length()
    covering: list[list[int]] = [[] for _ in range(n_elems)]
    for mi, m in enumerate(masks):
        r = m & universe
        while r:
            lsb = r & -r
            covering[lsb.bit_length() - 1].append(mi)
            r &= r - 1

    def dfs(covered: int, size: int) -> None:
        nonlocal best
        if covered == universe:
            best = min(best, size)
            return
        remaining = universe & ~covered
        max_gain = max(_bits(m & remaining) for m in masks)
        lower = -(-_bits(remaining) // max_gain)
        if size + lower >= best:
            return
        # branch on the uncovered element with the fewest candidate rows
        elem = None
        elem_rows: list[int] = []
        r = remaining
        while r:
            lsb = r & -r
            idx = lsb.bit_length() - 1
            rows = covering[idx]
            if elem is None or len(rows) < len(elem_rows):
                elem, elem_rows = idx, rows
            r &= r - 1
        for mi in sorted(elem_rows, key=lambda i: -_bits(masks[i] & remaining)):
            dfs(covered | masks[mi], size + 1)

    dfs(0, 0)
    return best


def _covers_of_size(masks: list[int], universe: int, k: int) -> list[tuple[int, ...]]:
    """Every index subset of size exactly k covering the universe.

    Include/exclude recursion over row positions; a row is only included
    while it still contributes fresh coverage, which cannot exclude any
    minimum-size cover (a non-contributing row would make the cover
    redundant, hence not minimum).
    """
    n = len(masks)
    suffix_or = [0] * (n + 1)
    for i in range(n - 1, -1, -1):
        suffix_or[i] = suffix_or[i + 1] | masks[i]
    out: list[tuple[int, ...]] = []

    def dfs(i: int, covered: int, chosen: list[int]) -> None:
        if covered == universe:
            if len(chosen) == k:
                out.append(tuple(chosen))
            return
        if len(chosen) == k or i == n:
            return
        if covered | suffix_or[i] != universe:
            return
        remaining = universe & ~covered
        max_gain = max(_bits(masks[j] & remaining) for j in range(i, n))
        if len(chosen) + -(-_bits(remaining) // max_gain) > k:
            return
        if masks[i] & remaining:
            chosen.append(i)
            dfs(i + 1, covered | masks[i], chosen)
            chosen.pop()
        dfs(i + 1, covered, chosen)

    dfs(0, 0, [])
    return out


def minimal_covers(matrix: CoverageMatrix, cap: int = 10) -> Recommendation:
    """All minimum-cardinality covers of the coverable goals, up to ``cap``."""
    if cap < 1:
        raise ValueError("cap must be >= 1")
    n_rows = len(matrix.rows)
    column_covered = [
        any(matrix.cells[r][c] for r in range(n_rows)) for c in range(len(matrix.columns))
    ]
    uncovered = frozenset(
        goal for goal, covered in zip(matrix.columns, column_covered) if not covered
    )
    coverable = [c for c, covered in enumerate(column_covered) if covered]
    if not coverable:
        # nothing reachable: an empty cover iff there was nothing to cover
        covers: tuple[tuple[str, ...], ...] = ((),) if not uncovered else ()
        return Recommendation(covers=covers, uncovered_goals=uncovered, exhaustive=True)

    bit_of = {c: i for i, c in enumerate(coverable)}
    universe = (1 << len(coverable)) - 1
    masks = [
        sum(1 << bit_of[c] for c in coverable if matrix.cells[r][c]) for r in range(n_rows)
    ]
    k = _min_cover_size(masks, universe)
    index_covers = _covers_of_size(masks, universe, k)
    id_covers = sorted(tuple(sorted(matrix.rows[i] for i in c)) for c in index_covers)
    exhaustive = len(id_covers) <= cap
    return Recommendation(
        covers=tuple(id_covers[:cap]), uncovered_goals=uncovered, exhaustive=exhaustive
    )


def irredundant_covers(matrix: CoverageMatrix, max_size: int = 3) -> tuple[tuple[str, ...], ...]:
    """All irredundant covers of the coverable goals up to ``max_size``.

    A cover is irredundant when removing any entry uncovers some goal.
    Superset of the minimum covers; exposed for users who want larger
    mixes than the strict minimum.
    """
    n_rows = len(matrix.rows)
    column_covered = [
        any(matrix.cells[r][c] for r in range(n_rows)) for c in range(len(matrix.columns))
    ]
    coverable = [c for c, covered in enumerate(column_covered) if covered]
    if not coverable:
        return ((),) if not matrix.columns else ()
    bit_of = {c: i for i, c in enumerate(coverable)}
    universe = (1 << len(coverable)) - 1
    masks = [
        sum(1 << bit_of[c] for c in coverable if matrix.cells[r][c]) for r in range(n_rows)
    ]
    from itertools import combinations

    found: list[tuple[str, ...]] = []
    for size in range(1, min(max_size, n_rows) + 1):
        for combo in combinations(range(n_rows), size):
            covered = 0
            for i in combo:
                covered |= masks[i]
            if covered != universe:
                continue
            irredundant = all(
                _or_without(masks, combo, skip) != universe for skip in combo
            ) if size > 1 else True
            if irredundant:
                found.append(tuple(sorted(matrix.rows[i] for i in combo)))
    return tuple(sorted(found, key=lambda c: (len(c), c)))


def _or_without(masks: list[int], combo: tuple[int, ...], skip: int) -> int:
    covered = 0
    for i in combo:
        if i != skip:
            covered |= masks[i]
    return covered


def explain_cover(
    cover: tuple[str, ...] | list[str],
    matrix: CoverageMatrix,
    kb: KnowledgeBase,
) -> dict[GoalId, tuple[MethodEntry, ...]]:
    """Per-goal assignment: every entry of the cover mapping to each covered goal.

    Goals reached by several cover entries list all of them; there is no
    arbitrary primary.  Raises KeyError for entries outside the matrix.
    """
    for entry_id in cover:
        if entry_id not in matrix.rows:
            raise KeyError(f"cover references unknown matrix row {entry_id!r}")
    assignment: dict[GoalId, tuple[MethodEntry, ...]] = {}
    for goal in matrix.columns:
        entries = tuple(
            kb.entry(entry_id)
            for entry_id in sorted(cover)
            if matrix.cell(entry_id, goal)
        )
        if entries:
            assignment[goal] = entries
    return assignment
