"""Finite Coxeter systems, their elements, lengths and canonical reduced words.

Crystallographic types act on simple-root coordinates: an element is stored
as the integer matrix of its action together with the matrix of its inverse,
so both left and right descents are read off a single column. The dihedral
type I2(m) uses rotation/reflection arithmetic directly.

Generators are labelled 1..rank. Words are tuples of labels.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from ..errors import Unsupported

Word = tuple[int, ...]

SUPPORTED = "I2(m), A_l, B_l, C_l, D_l, E6, E7, E8, F4"

POSITIVE_ROOT_COUNT = {
    "A": lambda l: l * (l + 1) // 2,
    "B": lambda l: l * l,
    "C": lambda l: l * l,
    "D": lambda l: l * (l - 1),
    "E": lambda l: {6: 36, 7: 63, 8: 120}[l],
    "F": lambda l: 24,
}

# E-type labelings. "chain" numbers the long path 1-2-3-5-6-...-l and hangs
# node 4 off node 3; it is the numbering under which the published E-type
# double-coset words are minimal. "bourbaki" is the usual 1-3-4-...-l chain
# with node 2 attached to node 4.
E_LABELINGS = ("chain", "bourbaki")


class RootElement:
    """Element of a crystallographic Coxeter group (matrices of x and x^-1)."""

    __slots__ = ("M", "N", "key")

    def __init__(self, M: np.ndarray, N: np.ndarray):
        self.M = M
        self.N = N
        self.key = M.tobytes()

    def __eq__(self, other) -> bool:
        return isinstance(other, RootElement) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        return f"RootElement({self.M.tolist()})"


@dataclass(frozen=True)
class DihedralElement:
    """``r^k s1^f`` in I2(m), where r = s1 s2 is a rotation of order m."""

    k: int
    f: int


def _edges_to_cartan(rank: int, edges: Iterable[tuple[int, int, int]]) -> np.ndarray:
    """Edges (i, j, a) set A[i][j] = -a and A[j][i] = -1 (labels 1-based)."""
    A = 2 * np.eye(rank, dtype=np.int64)
    for i, j, a in edges:
        A[i - 1, j - 1] = -a
        A[j - 1, i - 1] = -1
    return A


def cartan_matrix(kind: str, rank: int, labeling: str = "chain") -> np.ndarray:
    """Cartan matrix ``A[i][j] = <alpha_i^vee, alpha_j>``.

    A, B, C, D and F4 use Bourbaki numbering. In B_l the last node is the
    short root; in C_l it is the long one.
    """
    l = rank
    if kind == "A" and l >= 1:
        return _edges_to_cartan(l, [(i, i + 1, 1) for i in range(1, l)])
    if kind == "B" and l >= 2:
        return _edges_to_cartan(l, [(i, i + 1, 1) for i in range(1, l - 1)] + [(l, l - 1, 2)])
    if kind == "C" and l >= 2:
        return _edges_to_cartan(l, [(i, i + 1, 1) for i in range(1, l - 1)] + [(l - 1, l, 2)])
    if kind == "D" and l >= 4:
        return _edges_to_cartan(l, [(i, i + 1, 1) for i in range(1, l - 1)] + [(l - 2, l, 1)])
    if kind == "E" and l in (6, 7, 8):
        if labeling == "bourbaki":
            edges = [(1, 3), (3, 4), (2, 4)] + [(i, i + 1) for i in range(4, l)]
        elif labeling == "chain":
            edges = [(1, 2), (2, 3), (3, 4), (3, 5)] + [(i, i + 1) for i in range(5, l)]
        else:
            raise Unsupported(f"unknown E labeling {labeling!r}; choose from {E_LABELINGS}")
        return _edges_to_cartan(l, [(i, j, 1) for i, j in edges])
    if kind == "F" and l == 4:
        return _edges_to_cartan(4, [(1, 2, 1), (3, 2, 2), (3, 4, 1)])
    raise Unsupported(f"unsupported Coxeter type {kind}{rank}; supported: {SUPPORTED}")


def _coxeter_entry(product: int) -> int:
    return {0: 2, 1: 3, 2: 4, 3: 6}[product]


@dataclass(frozen=True, eq=False)
class CoxeterSystem:
    """A finite Coxeter system with generators labelled 1..rank.

    ``cartan`` and ``positive_roots`` are None for non-crystallographic
    dihedral groups; ``dihedral_m`` is set exactly for type I2(m).
    """

    kind: str
    rank: int
    coxeter_matrix: np.ndarray
    cartan: np.ndarray | None = None
    positive_roots: np.ndarray | None = None
    dihedral_m: int | None = None
    labeling: str | None = None
    _reflections: tuple = field(default=(), repr=False)

    @property
    def name(self) -> str:
        if self.dihedral_m is not None:
            return f"I2({self.dihedral_m})"
        return f"{self.kind}{self.rank}"

    @property
    def labels(self) -> tuple[int, ...]:
        return tuple(range(1, self.rank + 1))

    @property
    def n_positive_roots(self) -> int:
        if self.dihedral_m is not None:
            return self.dihedral_m
        return len(self.positive_roots)

    def commute(self, s: int, t: int) -> bool:
        return s == t or self.coxeter_matrix[s - 1, t - 1] == 2

    # -- element arithmetic -------------------------------------------------

    def _check_label(self, s: int) -> None:
        if not 1 <= s <= self.rank:
            raise ValueError(f"generator {s} outside 1..{self.rank}")

    def one(self):
        if self.dihedral_m is not None:
            return DihedralElement(0, 0)
        I = np.eye(self.rank, dtype=np.int64)
        return RootElement(I, I)

    def lmul(self, s: int, x):
        """``s * x``."""
        if self.dihedral_m is not None:
            m = self.dihedral_m
            return DihedralElement((-x.k - (s == 2)) % m, 1 - x.f)
        S = self._reflections[s - 1]
        return RootElement(S @ x.M, x.N @ S)

    def rmul(self, x, s: int):
        """``x * s``."""
        if self.dihedral_m is not None:
            m = self.dihedral_m
            if s == 1:
                return DihedralElement(x.k, 1 - x.f)
            return DihedralElement((x.k - 1) % m, 1) if x.f == 0 else DihedralElement((x.k + 1) % m, 0)
        S = self._reflections[s - 1]
        return RootElement(x.M @ S, S @ x.N)

    def inverse(self, x):
        if self.dihedral_m is not None:
            return x if x.f else DihedralElement((-x.k) % self.dihedral_m, 0)
        return RootElement(x.N, x.M)

    def mul(self, x, y):
        if self.dihedral_m is not None:
            for s in self.reduced_word(y):
                x = self.rmul(x, s)
            return x
        return RootElement(x.M @ y.M, y.N @ x.N)

    def element(self, word: Sequence[int]):
        x = self.one()
        for s in reversed(tuple(word)):
            self._check_label(s)
            x = self.lmul(s, x)
        return x

    # -- length and descents -----------------------------------------------

    def length_of(self, x) -> int:
        """Number of positive roots sent negative."""
        if self.dihedral_m is not None:
            m, k = self.dihedral_m, x.k
            return 2 * min(k, m - k) if x.f == 0 else min(2 * k + 1, 2 * (m - k) - 1)
        images = x.M @ self.positive_roots.T
        return int((images < 0).any(axis=0).sum())

    def is_left_descent(self, x, s: int) -> bool:
        """``l(s x) < l(x)``."""
        if self.dihedral_m is not None:
            return self.length_of(self.lmul(s, x)) < self.length_of(x)
        col = x.N[:, s - 1]
        return bool((col < 0).any())

    def is_right_descent(self, x, s: int) -> bool:
        """``l(x s) < l(x)``."""
        if self.dihedral_m is not None:
            return self.length_of(self.rmul(x, s)) < self.length_of(x)
        col = x.M[:, s - 1]
        return bool((col < 0).any())

    def left_descents(self, x) -> list[int]:
        return [s for s in self.labels if self.is_left_descent(x, s)]

    def right_descents(self, x) -> list[int]:
        return [s for s in self.labels if self.is_right_descent(x, s)]

    def reduced_word(self, x) -> Word:
        """ShortLex normal form: repeatedly strip the smallest left descent."""
        word = []
        one = self.one()
        while x != one:
            s = next(s for s in self.labels if self.is_left_descent(x, s))
            word.append(s)
            x = self.lmul(s, x)
        return tuple(word)

    def elements(self, cap: int = 10**6) -> list:
        """All group elements by breadth-first search (small groups only)."""
        one = self.one()
        seen = {one}
        queue = deque([one])
        out = [one]
        while queue:
            x = queue.popleft()
            for s in self.labels:
                y = self.lmul(s, x)
                if y not in seen:
                    if len(seen) >= cap:
                        raise ValueError(f"{self.name} has more than {cap} elements")
                    seen.add(y)
                    queue.append(y)
                    out.append(y)
        return out


def _positive_roots(cartan: np.ndarray, reflections: Sequence[np.ndarray]) -> np.ndarray:
    l = len(cartan)
    simple = [tuple(int(v) for v in np.eye(l, dtype=np.int64)[i]) for i in range(l)]
    seen = set(simple)
    queue = deque(simple)
    while queue:
        beta = np.array(queue.popleft(), dtype=np.int64)
        for S in reflections:
            gamma = tuple(int(v) for v in S @ beta)
            if gamma not in seen:
                seen.add(gamma)
                queue.append(gamma)
    roots = sorted(r for r in seen if all(v >= 0 for v in r))
    assert all(all(v >= 0 for v in r) or all(v <= 0 for v in r) for r in seen)
    return np.array(roots, dtype=np.int64)


def parse_type(text: str, rank: int | None = None) -> tuple[str, int, int | None]:
    """Parse ``F4``, ``E6``, ``A 3``, ``I2(5)`` or ``I2:5`` into (kind, rank, m)."""
    t = text.strip().replace(" ", "")
    m = re.fullmatch(r"[Ii]2?[(:](\d+)\)?", t)
    if m:
        return "I", 2, int(m.group(1))
    m = re.fullmatch(r"([A-Za-z])_?(\d*)", t)
    if not m:
        raise Unsupported(f"cannot parse Coxeter type {text!r}")
    kind = m.group(1).upper()
    r = int(m.group(2)) if m.group(2) else rank
    if r is None:
        raise Unsupported(f"no rank given for type {text!r}")
    if rank is not None and r != rank:
        raise Unsupported(f"type {text!r} disagrees with rank {rank}")
    return kind, r, None


def coxeter_system(kind: str, rank: int | None = None, *, m: int | None = None,
                   labeling: str = "chain") -> CoxeterSystem:
    """Build and validate a Coxeter system.

    ``kind`` is a type letter (with ``rank``) or a full name like ``"F4"`` or
    ``"I2(7)"``. ``labeling`` only affects the E types.
    """
    if m is None:
        kind, rank, m = parse_type(kind, rank)
    else:
        kind = kind.strip().upper()[:1]
    if kind == "I":
        if rank not in (None, 2) or m is None or m < 2:
            raise Unsupported("dihedral type needs rank 2 and m >= 2")
        M = np.array([[1, m], [m, 1]], dtype=np.int64)
        system = CoxeterSystem("I", 2, M, dihedral_m=m)
        assert len(system.elements()) == 2 * m
        return system
    if kind in ("G", "H"):
        raise Unsupported(f"unsupported Coxeter type {kind}{rank}; supported: {SUPPORTED}")
    A = cartan_matrix(kind, rank, labeling)
    l = rank
    reflections = []
    for i in range(l):
        S = np.eye(l, dtype=np.int64)
        S[i, :] -= A[i, :]
        reflections.append(S)
    roots = _positive_roots(A, reflections)
    expected = POSITIVE_ROOT_COUNT[kind](l)
    if len(roots) != expected:
        raise AssertionError(f"{kind}{l}: {len(roots)} positive roots, expected {expected}")
    C = np.ones((l, l), dtype=np.int64)
    for i in range(l):
        for j in range(l):
            if i != j:
                C[i, j] = _coxeter_entry(int(A[i, j] * A[j, i]))
    system = CoxeterSystem(kind, l, C, A, roots, None,
                           labeling if kind == "E" else "bourbaki", tuple(reflections))
    # the Coxeter relations hold: (s_i s_j)^m_ij acts trivially on the roots
    for i in range(l):
        for j in range(l):
            P = reflections[i] @ reflections[j]
            assert (np.linalg.matrix_power(P, int(C[i, j])) == np.eye(l, dtype=np.int64)).all()
    return system


# -- words --------------------------------------------------------------------

def parse_word(text: str) -> Word:
    """``"43234"``, ``"4 3 2 3 4"``, ``"4,3,2"`` or ``"ε"``/``"e"``/``""``."""
    t = text.strip()
    if t in ("", "ε", "e", "1_W", "id"):
        return ()
    if re.search(r"[\s,]", t):
        return tuple(int(p) for p in re.split(r"[\s,]+", t) if p)
    if not t.isdigit():
        raise ValueError(f"cannot parse word {text!r}")
    return tuple(int(c) for c in t)


def format_word(word: Sequence[int], sep: str | None = None) -> str:
    """Letters run together when every label is a single digit; ε for the identity."""
    if not word:
        return "ε"
    if sep is None:
        sep = "" if all(0 < s < 10 for s in word) else " "
    return sep.join(str(s) for s in word)


def length(system: CoxeterSystem, word: Sequence[int]) -> int:
    return system.length_of(system.element(word))


def is_reduced(system: CoxeterSystem, word: Sequence[int]) -> bool:
    return length(system, word) == len(word)


def canonical_word(system: CoxeterSystem, word: Sequence[int]) -> Word:
    return system.reduced_word(system.element(word))
