"""Complete mappings: data model, verification, search and direct constructions."""

from __future__ import annotations

import csv
import io
import random
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import EvenOrder, OddOrder, SizeMismatch, TripleInvalid
from .exact_cover import BudgetExceeded, ExactCover, SearchStats
from .groups import Group, commutator_subgroup, quotient

DEFAULT_BUDGET = 10**8


@dataclass(frozen=True, eq=False)
class CompleteMapping:
    """Permutations ``phi``, ``psi`` of the group with ``g * phi(g) == psi(g)``."""

    group: Group
    phi: tuple[int, ...]
    psi: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "phi", tuple(int(x) for x in self.phi))
        object.__setattr__(self, "psi", tuple(int(x) for x in self.psi))

    def cells(self) -> set[tuple[int, int]]:
        """The transversal of the Cayley table, as (row, column) pairs."""
        return {(g, h) for g, h in enumerate(self.phi)}

    def __eq__(self, other) -> bool:
        if not isinstance(other, CompleteMapping):
            return NotImplemented
        return self.group is other.group and self.phi == other.phi and self.psi == other.psi

    def __hash__(self) -> int:
        return hash((id(self.group), self.phi, self.psi))


def first_violation(cm: CompleteMapping) -> str | None:
    """Describe the first broken constraint, or None if ``cm`` is valid."""
    n = cm.group.order
    if len(cm.phi) != n or len(cm.psi) != n:
        raise SizeMismatch(f"tables have lengths {len(cm.phi)}, {len(cm.psi)}; group order is {n}")
    for name, table in (("phi", cm.phi), ("psi", cm.psi)):
        seen = [False] * n
        for g, x in enumerate(table):
            if not 0 <= x < n:
                return f"{name}({g}) = {x} is not an element id"
            if seen[x]:
                return f"{name} is not injective: value {x} repeats at {g}"
            seen[x] = True
    t = cm.group.table
    for g in range(n):
        if t[g][cm.phi[g]] != cm.psi[g]:
            return f"g*phi(g) != psi(g) at g = {g}: {g}*{cm.phi[g]} = {t[g][cm.phi[g]]}, psi = {cm.psi[g]}"
    return None


def verify(cm: CompleteMapping) -> bool:
    return first_violation(cm) is None


def cm_from_triple(G: Group, a: Sequence[int], b: Sequence[int], c: Sequence[int]) -> CompleteMapping:
    """Normalise bijections ``a, b, c : I -> G`` with ``a(i) b(i) = c(i)``
    to ``phi = b a^-1`` and ``psi = c a^-1``."""
    n = G.order
    if not len(a) == len(b) == len(c) == n:
        raise TripleInvalid(f"index set must have {n} elements")
    for name, f in (("a", a), ("b", b), ("c", c)):
        if sorted(int(x) for x in f) != list(range(n)):
            raise TripleInvalid(f"{name} is not a bijection onto the group")
    t = G.table
    phi = [0] * n
    psi = [0] * n
    for i in range(n):
        if t[a[i]][b[i]] != c[i]:
            raise TripleInvalid(f"a(i)*b(i) != c(i) at index {i}")
        phi[a[i]] = int(b[i])
        psi[a[i]] = int(c[i])
    return CompleteMapping(G, tuple(phi), tuple(psi))


# ------------------------------------------------------------------ search

@dataclass(frozen=True)
class NotFound:
    """No complete mapping exists; ``proof`` names how that was established."""

    nodes: int
    proof: str


@dataclass(frozen=True)
class BudgetExhausted:
    nodes: int


@dataclass(frozen=True)
class ProductObstruction:
    """Column weights proving the transversal exact cover infeasible.

    ``weight`` maps each element to its image in the abelianisation. Weighting
    row-column g by ``-w(g)``, column-column h by ``-w(h)`` and symbol-column k
    by ``+w(k)`` gives every candidate cell (g, h) total weight 0, while any
    exact cover would have total ``-total``. A nonzero ``total`` therefore
    rules out every cover.
    """

    quotient: Group
    weight: np.ndarray
    total: int


def product_obstruction(G: Group) -> ProductObstruction | None:
    Gp = commutator_subgroup(G)
    A, proj = quotient(G, Gp)
    assert A.is_abelian
    total = 0
    for g in range(G.order):
        total = A.table[total][int(proj[g])]
    if total == 0:
        return None
    # every cell (g, h) must carry zero weight: w(gh) - w(g) - w(h) == 0
    cell = proj[G.mul]
    expected = A.mul[proj[:, None], proj[None, :]]
    assert (cell == expected).all(), "abelianisation map is not a homomorphism"
    return ProductObstruction(A, proj, int(total))


def transversal_rows(G: Group) -> list[tuple[int, int, int]]:
    """Exact-cover rows for cell (g, h): columns row-g, col-h, symbol-gh."""
    n = G.order
    t = G.table
    return [(g, n + h, 2 * n + t[g][h]) for g in range(n) for h in range(n)]


def search(G: Group, budget: int = DEFAULT_BUDGET, *, use_obstruction: bool = True,
           first_limit: int = 2000, stats: SearchStats | None = None,
           ) -> CompleteMapping | NotFound | BudgetExhausted:
    """Find a transversal of the Cayley table by dancing links.

    With ``use_obstruction`` the abelianisation product certificate is tried
    first; when it applies it proves that no cover exists without enumeration.

    The search runs as a sequence of restarts. Run ``k`` may visit at most
    ``first_limit * 2**k`` nodes; run 0 tries the rows of each column in
    natural order, later runs in an order shuffled with seed ``k``. A run that
    finishes under its limit has explored the whole tree, so ``NotFound`` is
    only reported after an exhaustive search. Node counts of all runs are
    charged against ``budget``.
    """
    stats = stats if stats is not None else SearchStats()
    n = G.order
    if use_obstruction:
        obs = product_obstruction(G)
        if obs is not None:
            return NotFound(0, f"product of all elements is nontrivial in the abelianisation "
                               f"(order {obs.quotient.order})")
    rows = transversal_rows(G)
    k = 0
    while True:
        remaining = budget - stats.nodes
        if remaining <= 0:
            return BudgetExhausted(stats.nodes)
        limit = min(first_limit << k, remaining)
        order = list(range(len(rows)))
        if k:
            random.Random(k).shuffle(order)
        problem = ExactCover(3 * n, [rows[i] for i in order])
        run = SearchStats()
        try:
            sol = problem.first_solution(budget=limit, stats=run)
        except BudgetExceeded:
            stats.nodes += limit
            k += 1
            continue
        stats.nodes += run.nodes
        break
    if sol is None:
        stats.exhausted = True
        return NotFound(stats.nodes, "exhaustive search")
    phi = [0] * n
    for r in sol:
        g, h = divmod(order[r], n)
        phi[g] = h
    t = G.table
    cm = CompleteMapping(G, tuple(phi), tuple(t[g][phi[g]] for g in range(n)))
    assert verify(cm)
    return cm


def all_complete_mappings(G: Group):
    """Yield every complete mapping of G (exhaustive; small groups only)."""
    n = G.order
    t = G.table
    problem = ExactCover(3 * n, transversal_rows(G))
    for sol in problem.solutions():
        phi = [0] * n
        for r in sol:
            g, h = divmod(r, n)
            phi[g] = h
        yield CompleteMapping(G, tuple(phi), tuple(t[g][phi[g]] for g in range(n)))


def is_findable_by_search(cm: CompleteMapping) -> bool:
    """Re-derive ``cm`` as an exact cover of the transversal problem.

    The DLX instance is restricted to the cells of ``cm``; it has a solution
    exactly when those cells form a transversal of the Cayley table.
    """
    G = cm.group
    n = G.order
    t = G.table
    rows = [(g, n + h, 2 * n + t[g][h]) for g, h in enumerate(cm.phi)
            if 0 <= h < n]
    if len(rows) != n:
        return False
    sol = ExactCover(3 * n, rows).first_solution()
    return sol is not None and [t[g][cm.phi[g]] for g in range(n)] == list(cm.psi)


# ------------------------------------------------------- direct constructions

def cm_odd(G: Group) -> CompleteMapping:
    """``phi`` the identity map, ``psi`` squaring (a bijection in odd order)."""
    if G.order % 2 == 0:
        raise EvenOrder(f"{G!r} has even order")
    t = G.table
    cm = CompleteMapping(G, tuple(range(G.order)), tuple(t[g][g] for g in range(G.order)))
    assert verify(cm)
    return cm


@dataclass(frozen=True)
class NearMappingCyclic:
    """Permutations of Z_2k with ``c + alpha(c) = beta(c)`` for ``c != 0``,
    ``beta(0) = 0`` and ``alpha(0) = k``."""

    order: int
    alpha: tuple[int, ...]
    beta: tuple[int, ...]

    def check(self) -> None:
        n, k = self.order, self.order // 2
        assert sorted(self.alpha) == list(range(n)) and sorted(self.beta) == list(range(n))
        assert self.beta[0] == 0 and self.alpha[0] == k != 0
        for c in range(1, n):
            assert (c + self.alpha[c]) % n == self.beta[c], c


def near_cm_cyclic(order: int) -> NearMappingCyclic:
    if order < 2 or order % 2:
        raise OddOrder(f"need an even order >= 2, got {order}")
    k = order // 2
    alpha = [k] + [i for i in range(1, k)] + [(i + 1) % order for i in range(k, order)]
    beta = [2 * i for i in range(k)] + [(2 * i + 1) % order for i in range(k, order)]
    near = NearMappingCyclic(order, tuple(alpha), tuple(beta))
    near.check()
    return near


# -------------------------------------------------------------------- CSV

def to_csv(cm: CompleteMapping) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["g", "phi", "psi"])
    for g in range(cm.group.order):
        w.writerow([g, cm.phi[g], cm.psi[g]])
    return buf.getvalue()


def from_csv(text: str, G: Group) -> CompleteMapping:
    rows = list(csv.DictReader(io.StringIO(text)))
    if not rows or set(rows[0]) != {"g", "phi", "psi"}:
        raise ValueError("complete mapping CSV needs the header g,phi,psi")
    n = G.order
    if len(rows) != n:
        raise SizeMismatch(f"CSV has {len(rows)} rows; group order is {n}")
    phi = [-1] * n
    psi = [-1] * n
    for row in rows:
        g = int(row["g"])
        if not 0 <= g < n or phi[g] != -1:
            raise ValueError(f"bad or repeated element id {g} in CSV")
        phi[g] = int(row["phi"])
        psi[g] = int(row["psi"])
    return CompleteMapping(G, tuple(phi), tuple(psi))
