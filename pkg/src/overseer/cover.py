"""Cover table over border states and selection of the final over-states.

Rows are candidate over-states, columns border states; a cell is set
when the row covers the column (row <= column as partial markings).
Selection works like a prime-implicant chart: essential rows first
(sole cover of some column), then greedily the row covering the most
still-uncovered columns, ties broken by smaller support then by
support order.  An exhaustive minimum selection is available for small
tables, both as a CLI option and as the oracle the greedy result is
tested against.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .errors import UncoverableState
from .net import Marking

EXACT_COVER_LIMIT = 20


@dataclass
class CoverTable:
    rows: list[Marking]
    cols: list[Marking]
    cells: list[list[bool]]
    selected: list[bool] = field(default_factory=list)
    pick_order: list[int] = field(default_factory=list)

    def __post_init__(self):
        if not self.selected:
            self.selected = [False] * len(self.rows)

    def cover_counts(self) -> list[int]:
        """Per column: how many rows cover it."""
        return [
            sum(1 for i in range(len(self.rows)) if self.cells[i][j])
            for j in range(len(self.cols))
        ]

    def final_counts(self) -> list[int]:
        """Per column: how many selected rows cover it."""
        return [
            sum(
                1
                for i in range(len(self.rows))
                if self.selected[i] and self.cells[i][j]
            )
            for j in range(len(self.cols))
        ]

    def selected_rows(self) -> list[Marking]:
        """Selected over-states in the order they were picked (essential
        rows first); constraint rows inherit this order."""
        if self.pick_order:
            return [self.rows[i] for i in self.pick_order]
        return [b for b, keep in zip(self.rows, self.selected) if keep]


def build_cover_table(candidates, border) -> CoverTable:
    rows = list(candidates)
    cols = list(border)
    cells = [[b.issubset(m) for m in cols] for b in rows]
    return CoverTable(rows=rows, cols=cols, cells=cells)


def check_coverage(table: CoverTable) -> tuple[bool, list[Marking]]:
    """Is every border state covered by at least one candidate?  Returns
    the flag and the uncovered border states (maximal permissiveness is
    unreachable unless the list is empty)."""
    counts = table.cover_counts()
    uncovered = [m for m, c in zip(table.cols, counts) if c == 0]
    return not uncovered, uncovered


def _tie_key(b: Marking):
    return (b.card, b.support())


def select_final_cover(table: CoverTable, exact: bool = False) -> CoverTable:
    """Fill table.selected with a cover of all columns.

    Greedy mode: essential rows (sole cover of a column) first, then the
    row covering the most uncovered columns; ties go to the smallest,
    then first-in-support-order over-state.  Exact mode swaps in the
    provably minimum selection (exhaustive, so only for small tables).
    """
    complete, uncovered = check_coverage(table)
    if not complete:
        raise UncoverableState(
            "%d border state(s) covered by no over-state" % len(uncovered),
            uncovered=uncovered,
        )
    if exact:
        table.selected = _minimum_selection(table)
        table.pick_order = sorted(
            (i for i in range(len(table.rows)) if table.selected[i]),
            key=lambda i: _tie_key(table.rows[i]),
        )
        return table

    n_rows, n_cols = len(table.rows), len(table.cols)
    selected = [False] * n_rows
    covered = [False] * n_cols
    picks: list[int] = []

    counts = table.cover_counts()
    for j in range(n_cols):
        if counts[j] == 1:
            i = next(i for i in range(n_rows) if table.cells[i][j])
            if not selected[i]:
                selected[i] = True
                picks.append(i)
    for i in picks:
        for j in range(n_cols):
            if table.cells[i][j]:
                covered[j] = True

    while not all(covered):
        best = None
        best_key = None
        for i in range(n_rows):
            if selected[i]:
                continue
            gain = sum(
                1 for j in range(n_cols) if table.cells[i][j] and not covered[j]
            )
            if gain == 0:
                continue
            key = (-gain,) + _tie_key(table.rows[i])
            if best_key is None or key < best_key:
                best, best_key = i, key
        selected[best] = True
        picks.append(best)
        for j in range(n_cols):
            if table.cells[best][j]:
                covered[j] = True

    table.selected = selected
    table.pick_order = picks
    return table


def _minimum_selection(table: CoverTable) -> list[bool]:
    n_rows = len(table.rows)
    if n_rows > EXACT_COVER_LIMIT:
        raise ValueError(
            "exact cover is exhaustive; refusing %d rows (limit %d)"
            % (n_rows, EXACT_COVER_LIMIT)
        )
    n_cols = len(table.cols)
    order = sorted(range(n_rows), key=lambda i: _tie_key(table.rows[i]))
    if n_cols == 0:
        return [False] * n_rows
    for size in range(1, n_rows + 1):
        for combo in combinations(order, size):
            if all(any(table.cells[i][j] for i in combo) for j in range(n_cols)):
                selected = [False] * n_rows
                for i in combo:
                    selected[i] = True
                return selected
    raise UncoverableState("no selection covers every border state")


def minimum_cover_size(table: CoverTable) -> int:
    """Size of a minimum cover (exhaustive oracle for small tables)."""
    return sum(_minimum_selection(table))


def check_final_coverage(table: CoverTable) -> bool:
    """Every border state covered by at least one *selected* over-state.
    With this, the selected constraints define exactly the authorized
    behavior; a count above one is merely redundant coverage."""
    return all(c >= 1 for c in table.final_counts())
