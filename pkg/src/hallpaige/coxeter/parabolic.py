"""Cosets and double cosets of maximal parabolic subgroups.

For a dropped generator ``r`` let W' be generated by the other simple
reflections. Crystallographic types walk the orbit of the r-th fundamental
weight; the dihedral type walks minimal coset representatives directly.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from .system import CoxeterSystem, Word


@dataclass(frozen=True)
class ParabolicDoubleCosets:
    """Minimal left-coset representatives of W' and their W'-orbits.

    ``coset_words[i]`` is the minimal representative of coset ``i`` (cosets in
    breadth-first order, so lengths are non-decreasing). ``graph[i][s]`` is
    the coset of ``s * rep_i``. ``orbit`` holds the weight vectors in
    fundamental-weight coordinates (None for dihedral types). ``classes``
    lists the coset indices of each double coset; ``class_reps`` their
    minimal representatives, ordered by length then word.
    """

    drop: int
    coset_words: tuple[Word, ...]
    graph: tuple[dict, ...]
    orbit: tuple[tuple[int, ...], ...] | None
    classes: tuple[tuple[int, ...], ...]
    class_reps: tuple[Word, ...]

    @property
    def n_cosets(self) -> int:
        return len(self.coset_words)


def _check_drop(system: CoxeterSystem, r: int) -> None:
    if not 1 <= r <= system.rank:
        raise ValueError(f"dropped generator {r} outside 1..{system.rank}")


def strip_right(system: CoxeterSystem, x, keep: set[int]):
    """Minimal element of ``x W_keep``: peel right descents lying in ``keep``."""
    while True:
        for s in keep:
            if system.is_right_descent(x, s):
                x = system.rmul(x, s)
                break
        else:
            return x


def _weight_orbit(system: CoxeterSystem, r: int):
    A = system.cartan
    start = tuple(int(v) for v in np.eye(system.rank, dtype=np.int64)[r - 1])
    index = {start: 0}
    vectors = [start]
    words: list[Word] = [()]
    graph: list[dict] = [{}]
    queue = deque([0])
    while queue:
        i = queue.popleft()
        c = np.array(vectors[i], dtype=np.int64)
        for s in system.labels:
            img = tuple(int(v) for v in c - c[s - 1] * A[:, s - 1])
            if img not in index:
                index[img] = len(vectors)
                vectors.append(img)
                words.append((s,) + words[i])
                graph.append({})
                queue.append(index[img])
            graph[i][s] = index[img]
    return vectors, words, graph


def _dihedral_cosets(system: CoxeterSystem, r: int):
    keep = {s for s in system.labels if s != r}
    one = system.one()
    index = {one: 0}
    elems = [one]
    graph: list[dict] = [{}]
    queue = deque([0])
    while queue:
        i = queue.popleft()
        for s in system.labels:
            y = strip_right(system, system.lmul(s, elems[i]), keep)
            if y not in index:
                index[y] = len(elems)
                elems.append(y)
                graph.append({})
                queue.append(index[y])
            graph[i][s] = index[y]
    return elems, graph


def min_coset_reps(system: CoxeterSystem, r: int) -> ParabolicDoubleCosets:
    """Coset layer only (``classes`` is left empty)."""
    return _build(system, r, with_classes=False)


def double_coset_reps(system: CoxeterSystem, r: int) -> ParabolicDoubleCosets:
    return _build(system, r, with_classes=True)


def _build(system: CoxeterSystem, r: int, with_classes: bool) -> ParabolicDoubleCosets:
    _check_drop(system, r)
    if system.dihedral_m is None:
        vectors, bfs_words, graph = _weight_orbit(system, r)
        orbit = tuple(vectors)
        elems = [system.element(w) for w in bfs_words]
    else:
        elems, graph = _dihedral_cosets(system, r)
        orbit = None
    words = tuple(system.reduced_word(x) for x in elems)
    keep = [s for s in system.labels if s != r]
    for x, w in zip(elems, words):
        assert not any(system.is_right_descent(x, s) for s in keep), "coset rep is not minimal"
    classes: list[tuple[int, ...]] = []
    reps: list[Word] = []
    if with_classes:
        seen = [False] * len(elems)
        for start in range(len(elems)):
            if seen[start]:
                continue
            seen[start] = True
            members = [start]
            queue = deque([start])
            while queue:
                i = queue.popleft()
                for s in keep:
                    j = graph[i][s]
                    if not seen[j]:
                        seen[j] = True
                        members.append(j)
                        queue.append(j)
            members.sort()
            classes.append(tuple(members))
            rep = min((words[i] for i in members), key=lambda w: (len(w), w))
            # the minimal double-coset rep has no left descents in W' either
            x = system.element(rep)
            assert not any(system.is_left_descent(x, s) for s in keep)
            reps.append(rep)
        order = sorted(range(len(classes)), key=lambda k: (len(reps[k]), reps[k]))
        classes = [classes[k] for k in order]
        reps = [reps[k] for k in order]
        assert sum(len(c) for c in classes) == len(elems)
    return ParabolicDoubleCosets(r, words, tuple(graph), orbit, tuple(classes), tuple(reps))
