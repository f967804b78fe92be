"""Dancing-links exact cover (Knuth's Algorithm X).

Column choice is deterministic: fewest remaining rows, ties to the lowest
column index. Within a column, rows are tried in the order they were added.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence


class BudgetExceeded(Exception):
    pass


@dataclass
class SearchStats:
    nodes: int = 0
    exhausted: bool = False


class ExactCover:
    def __init__(self, n_columns: int, rows: Sequence[Sequence[int]]):
        self.n_columns = n_columns
        self.n_rows = len(rows)
        # node 0 is the root, nodes 1..n_columns are column headers
        size = 1 + n_columns + sum(len(r) for r in rows)
        L = list(range(size))
        R = list(range(size))
        U = list(range(size))
        D = list(range(size))
        col = [0] * size
        row_of = [-1] * size
        for c in range(1, n_columns + 1):
            L[c] = c - 1
            R[c - 1] = c
            col[c] = c
        L[0] = n_columns
        R[n_columns] = 0
        count = [0] * (n_columns + 1)
        node = n_columns + 1
        for r, cols in enumerate(rows):
            first = node
            for c in sorted(set(cols)):
                h = c + 1
                if not 1 <= h <= n_columns:
                    raise ValueError(f"row {r} names column {c} outside 0..{n_columns - 1}")
                col[node] = h
                row_of[node] = r
                U[node] = U[h]
                D[node] = h
                D[U[h]] = node
                U[h] = node
                count[h] += 1
                L[node] = node - 1
                R[node] = node + 1
                node += 1
            if node > first:
                L[first] = node - 1
                R[node - 1] = first
        self._L, self._R, self._U, self._D = L, R, U, D
        self._col, self._row_of, self._count = col, row_of, count
        self._first_node = {}
        for nd in range(n_columns + 1, node):
            self._first_node.setdefault(row_of[nd], nd)

    def _cover(self, c: int) -> None:
        L, R, U, D, col, count = self._L, self._R, self._U, self._D, self._col, self._count
        L[R[c]] = L[c]
        R[L[c]] = R[c]
        i = D[c]
        while i != c:
            j = R[i]
            while j != i:
                D[U[j]] = D[j]
                U[D[j]] = U[j]
                count[col[j]] -= 1
                j = R[j]
            i = D[i]

    def _uncover(self, c: int) -> None:
        L, R, U, D, col, count = self._L, self._R, self._U, self._D, self._col, self._count
        i = U[c]
        while i != c:
            j = L[i]
            while j != i:
                count[col[j]] += 1
                D[U[j]] = j
                U[D[j]] = j
                j = L[j]
            i = U[i]
        L[R[c]] = c
        R[L[c]] = c

    def select(self, row: int) -> None:
        """Force ``row`` into every solution (cover all of its columns)."""
        start = self._first_node[row]
        j = start
        while True:
            self._cover(self._col[j])
            j = self._R[j]
            if j == start:
                break

    def solutions(self, budget: int | None = None,
                  stats: SearchStats | None = None) -> Iterator[list[int]]:
        """Yield every exact cover as a sorted list of row indices.

        Abandoning the iterator (or hitting the budget) restores the links, so
        the instance can be searched again.

        Raises BudgetExceeded once more than ``budget`` search nodes were visited.
        ``stats.exhausted`` is set when the whole tree has been explored.
        """
        stats = stats if stats is not None else SearchStats()
        R, D, col, count, row_of = self._R, self._D, self._col, self._count, self._row_of
        partial: list[int] = []

        def recurse():
            stats.nodes += 1
            if budget is not None and stats.nodes > budget:
                raise BudgetExceeded(stats.nodes)
            if R[0] == 0:
                yield sorted(row_of[n] for n in partial)
                return
            best, best_count = 0, None
            c = R[0]
            while c != 0:
                if best_count is None or count[c] < best_count:
                    best, best_count = c, count[c]
                    if best_count == 0:
                        break
                c = R[c]
            if best_count == 0:
                return
            self._cover(best)
            try:
                r = D[best]
                while r != best:
                    partial.append(r)
                    j = R[r]
                    while j != r:
                        self._cover(col[j])
                        j = R[j]
                    try:
                        yield from recurse()
                    finally:
                        j = self._L[r]
                        while j != r:
                            self._uncover(col[j])
                            j = self._L[j]
                        partial.pop()
                    r = D[r]
            finally:
                self._uncover(best)

        yield from recurse()
        stats.exhausted = True

    def first_solution(self, budget: int | None = None,
                       stats: SearchStats | None = None) -> list[int] | None:
        it = self.solutions(budget, stats)
        try:
            return next(it, None)
        finally:
            it.close()
