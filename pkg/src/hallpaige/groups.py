"""Finite groups as multiplication tables over element ids ``0..n-1``.

Element 0 is always the identity. Everything here is immutable once built;
derived data (element orders, list copies of the table) is cached lazily.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    ClosureTooLarge,
    NoIdentity,
    NoInverse,
    NotAssociative,
    NotLatin,
    NotNormal,
)

EXHAUSTIVE_ASSOCIATIVITY_LIMIT = 512
SAMPLED_TRIPLES = 100_000
DEFAULT_CLOSURE_CAP = 10**6


def _index_dtype(n: int):
    return np.int16 if n < 2**15 else np.int32


@dataclass(frozen=True, eq=False)
class Group:
    """A finite group given by its Cayley table.

    ``mul[a, b]`` is the id of ``a*b`` and ``inv[a]`` the id of ``a**-1``.
    ``elements`` optionally carries a concrete representative for each id
    (a permutation tuple, a residue, ...), used only for display and lookup.
    """

    mul: np.ndarray
    inv: np.ndarray
    label: str = ""
    elements: tuple | None = field(default=None, repr=False)

    identity = 0

    @property
    def order(self) -> int:
        return int(self.mul.shape[0])

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        name = self.label or "Group"
        return f"<{name} of order {self.order}>"

    def m(self, a: int, b: int) -> int:
        return int(self.mul[a, b])

    @cached_property
    def table(self) -> list[list[int]]:
        """The Cayley table as nested Python lists (fast scalar access)."""
        return self.mul.tolist()

    @cached_property
    def inv_list(self) -> list[int]:
        return self.inv.tolist()

    @cached_property
    def orders(self) -> np.ndarray:
        n = self.order
        result = np.zeros(n, dtype=np.int64)
        result[0] = 1
        ar = np.arange(n)
        power = ar.copy()
        k = 1
        while (result == 0).any():
            power = self.mul[power, ar]
            k += 1
            hit = (power == 0) & (result == 0)
            result[hit] = k
        return result

    def element_order(self, g: int) -> int:
        return int(self.orders[g])

    @cached_property
    def is_abelian(self) -> bool:
        return bool((self.mul == self.mul.T).all())

    def power(self, g: int, k: int) -> int:
        k %= self.element_order(g)
        x = 0
        for _ in range(k):
            x = self.table[x][g]
        return x

    def conjugate(self, g: int, x: int) -> int:
        """Return ``g x g^-1``."""
        t = self.table
        return t[t[g][x]][self.inv_list[g]]

    def index_of(self, element) -> int:
        """Look up the id of a concrete representative from ``elements``."""
        return self._element_index[element]

    @cached_property
    def _element_index(self) -> dict:
        if self.elements is None:
            raise LookupError("group carries no concrete element representatives")
        return {e: i for i, e in enumerate(self.elements)}

    def whole(self) -> "Subgroup":
        return Subgroup.from_ids(self, range(self.order), check=False)

    def trivial(self) -> "Subgroup":
        return Subgroup.from_ids(self, [0], check=False)


def _check_latin(mul: np.ndarray) -> None:
    n = mul.shape[0]
    target = np.arange(n)
    for g in range(n):
        if not np.array_equal(np.sort(mul[g]), target):
            vals, counts = np.unique(mul[g], return_counts=True)
            dup = int(vals[counts > 1][0]) if (counts > 1).any() else -1
            col = int(np.nonzero(mul[g] == dup)[0][1]) if dup >= 0 else 0
            raise NotLatin(f"row {g} repeats symbol {dup} (cell ({g}, {col}))")
        if not np.array_equal(np.sort(mul[:, g]), target):
            vals, counts = np.unique(mul[:, g], return_counts=True)
            dup = int(vals[counts > 1][0])
            row = int(np.nonzero(mul[:, g] == dup)[0][1])
            raise NotLatin(f"column {g} repeats symbol {dup} (cell ({row}, {g}))")


def _find_identity(mul: np.ndarray) -> int:
    n = mul.shape[0]
    ar = np.arange(n)
    for e in range(n):
        if np.array_equal(mul[e], ar) and np.array_equal(mul[:, e], ar):
            return e
    raise NoIdentity("no element acts as a two-sided identity")


def check_associative(mul: np.ndarray, *, seed: int = 0) -> None:
    """Raise NotAssociative naming a violating triple.

    Exhaustive for orders up to 512, otherwise 10**5 random triples.
    """
    n = mul.shape[0]
    if n <= EXHAUSTIVE_ASSOCIATIVITY_LIMIT:
        for a in range(n):
            left = mul[mul[a]]          # (ab)c indexed [b, c]
            right = mul[a][mul]         # a(bc) indexed [b, c]
            bad = np.argwhere(left != right)
            if len(bad):
                b, c = (int(v) for v in bad[0])
                raise NotAssociative(f"(a*b)*c != a*(b*c) for (a, b, c) = ({a}, {b}, {c})")
        return
    rng = np.random.default_rng(seed)
    a, b, c = rng.integers(0, n, size=(3, SAMPLED_TRIPLES))
    left = mul[mul[a, b], c]
    right = mul[a, mul[b, c]]
    bad = np.nonzero(left != right)[0]
    if len(bad):
        i = int(bad[0])
        raise NotAssociative(
            f"(a*b)*c != a*(b*c) for (a, b, c) = ({int(a[i])}, {int(b[i])}, {int(c[i])})"
        )


def from_cayley_table(table, label: str = "", elements: Sequence | None = None,
                      check: bool = True) -> Group:
    """Build a validated group from a square table of ids.

    The identity is relabelled to 0 by swapping it with whatever element
    held id 0. ``elements`` (if given) is permuted along with the ids.
    """
    mul = np.asarray(table)
    if mul.ndim != 2 or mul.shape[0] != mul.shape[1] or mul.shape[0] == 0:
        raise NotLatin("table must be a non-empty square matrix")
    n = mul.shape[0]
    if not np.issubdtype(mul.dtype, np.integer):
        raise NotLatin("table entries must be integers")
    if mul.min() < 0 or mul.max() >= n:
        raise NotLatin(f"table entries must lie in 0..{n - 1}")
    if check:
        _check_latin(mul)
    e = _find_identity(mul)
    if e != 0:
        perm = np.arange(n)
        perm[0], perm[e] = e, 0          # new id -> old id, and it is an involution
        mul = perm[mul[np.ix_(perm, perm)]]
        if elements is not None:
            elements = [elements[int(perm[i])] for i in range(n)]
    mul = mul.astype(_index_dtype(n))
    inv = np.argmax(mul == 0, axis=1)
    if not (mul[inv, np.arange(n)] == 0).all():
        g = int(np.nonzero(mul[inv, np.arange(n)] != 0)[0][0])
        raise NoInverse(f"element {g} has a right inverse that is not a left inverse")
    if check:
        check_associative(mul)
    inv = inv.astype(_index_dtype(n))
    mul.setflags(write=False)
    inv.setflags(write=False)
    return Group(mul, inv, label, tuple(elements) if elements is not None else None)


def _perm_keys(perms: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Pick base points whose images separate all rows; return (base, keys)."""
    n, d = perms.shape
    base: list[int] = []
    for p in range(d):
        base.append(p)
        if len(np.unique(perms[:, base], axis=0)) == n:
            break
    radix = np.array([d ** j for j in range(len(base))], dtype=np.int64)
    keys = perms[:, base].astype(np.int64) @ radix
    return np.array(base), keys


def from_permutations(generators: Iterable[Sequence[int]], degree: int | None = None,
                      label: str = "", cap: int = DEFAULT_CLOSURE_CAP,
                      check: bool = True) -> Group:
    """Close a set of permutations under composition.

    Permutations are image lists, ``p[i]`` being the image of point ``i``.
    The product ``g*h`` is the composite map ``i -> g[h[i]]`` (apply ``h``
    first). Element ids follow breadth-first discovery order from the
    identity, multiplying by generators in the given order.
    """
    gens = [tuple(int(x) for x in g) for g in generators]
    if degree is None:
        degree = len(gens[0]) if gens else 1
    for g in gens:
        if len(g) != degree or sorted(g) != list(range(degree)):
            raise ValueError(f"not a permutation of 0..{degree - 1}: {g}")
    ident = tuple(range(degree))
    index = {ident: 0}
    elems = [ident]
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        for s in gens:
            y = tuple(x[i] for i in s)     # x*s
            if y not in index:
                if len(elems) >= cap:
                    raise ClosureTooLarge(f"closure exceeds {cap} elements")
                index[y] = len(elems)
                elems.append(y)
                queue.append(y)
    return group_from_permutation_list(elems, label=label, check=check)


def group_from_permutation_list(elems: Sequence[Sequence[int]], label: str = "",
                                check: bool = True) -> Group:
    """Cayley table of an explicit list of permutations closed under composition.

    ``elems[0]`` should be the identity; ids follow list order.
    """
    degree = len(elems[0])
    perms = np.array(elems, dtype=np.int64).reshape(len(elems), degree)
    n = len(elems)
    base, keys = _perm_keys(perms)
    order = np.argsort(keys)
    sorted_keys = keys[order]
    radix = np.array([degree ** j for j in range(len(base))], dtype=np.int64)
    hb = perms[:, base]                   # base images of every h
    mul = np.empty((n, n), dtype=_index_dtype(n))
    for g in range(n):
        prod_keys = perms[g][hb] @ radix  # base images of g*h
        pos = np.searchsorted(sorted_keys, prod_keys)
        if check and not np.array_equal(sorted_keys[np.minimum(pos, n - 1)], prod_keys):
            raise NotLatin("permutation list is not closed under composition")
        mul[g] = order[pos]
    return from_cayley_table(mul, label=label, elements=[tuple(e) for e in elems], check=check)


def direct_product(G: Group, H: Group, label: str = "") -> Group:
    """``G x H`` with ``(g, h)`` numbered ``g*|H| + h``."""
    m = H.order
    mul = (G.mul.astype(np.int64)[:, None, :, None] * m
           + H.mul.astype(np.int64)[None, :, None, :])
    n = G.order * m
    mul = mul.reshape(n, n)
    elements = None
    if G.elements is not None and H.elements is not None:
        elements = [(a, b) for a in G.elements for b in H.elements]
    return from_cayley_table(mul, label=label or f"{G.label}x{H.label}",
                             elements=elements, check=False)


# ---------------------------------------------------------------- subgroups

@dataclass(frozen=True, eq=False)
class Subgroup:
    parent: Group
    elements: tuple[int, ...]
    mask: np.ndarray = field(repr=False)

    @classmethod
    def from_ids(cls, parent: Group, ids: Iterable[int], check: bool = True) -> "Subgroup":
        els = tuple(sorted({int(i) for i in ids}))
        mask = np.zeros(parent.order, dtype=bool)
        mask[list(els)] = True
        mask.setflags(write=False)
        sub = cls(parent, els, mask)
        if check:
            sub._validate()
        return sub

    def _validate(self) -> None:
        if not self.mask[0]:
            raise ValueError("subgroup must contain the identity")
        arr = self.array
        if not self.mask[self.parent.mul[np.ix_(arr, arr)]].all():
            raise ValueError("subset is not closed under multiplication")
        if not self.mask[self.parent.inv[arr]].all():
            raise ValueError("subset is not closed under inversion")
        assert self.parent.order % len(self.elements) == 0, "Lagrange violated"

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, g) -> bool:
        return bool(self.mask[g])

    def __iter__(self):
        return iter(self.elements)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.parent is other.parent and self.elements == other.elements

    def __hash__(self) -> int:
        return hash((id(self.parent), self.elements))

    def __repr__(self) -> str:
        return f"<Subgroup of order {self.order} in {self.parent!r}>"

    @cached_property
    def array(self) -> np.ndarray:
        return np.array(self.elements, dtype=np.int64)

    @property
    def index(self) -> int:
        return self.parent.order // self.order

    @cached_property
    def local(self) -> tuple[Group, np.ndarray]:
        """This subgroup as a standalone Group plus the embedding into the parent.

        Local id ``i`` corresponds to parent id ``embed[i]``; the elements keep
        their relative order, so the identity stays at 0.
        """
        embed = self.array
        pos = np.full(self.parent.order, -1, dtype=np.int64)
        pos[embed] = np.arange(len(embed))
        mul = pos[self.parent.mul[np.ix_(embed, embed)]]
        G = from_cayley_table(mul, label=f"sub{self.order}", check=False)
        return G, embed

    def as_group(self) -> tuple[Group, np.ndarray]:
        return self.local

    @cached_property
    def is_normal(self) -> bool:
        G = self.parent
        conj = G.mul[G.mul[:, self.array], G.inv[:, None]]
        return bool(self.mask[conj].all())

    def conjugate_by(self, g: int) -> "Subgroup":
        G = self.parent
        ids = G.mul[G.mul[g, self.array], G.inv[g]]
        return Subgroup.from_ids(G, ids.tolist(), check=False)

    def intersection(self, other: "Subgroup") -> "Subgroup":
        return Subgroup.from_ids(self.parent, np.nonzero(self.mask & other.mask)[0].tolist(),
                                 check=False)

    def is_subgroup_of(self, other: "Subgroup") -> bool:
        return bool((other.mask[self.array]).all())


def subgroup_generated(G: Group, seed: Iterable[int]) -> Subgroup:
    """Smallest subgroup of ``G`` containing ``seed``."""
    gens = sorted({int(s) for s in seed} - {0})
    t = G.table
    seen = {0}
    queue = deque([0])
    while queue:
        x = queue.popleft()
        for s in gens:
            y = t[x][s]
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return Subgroup.from_ids(G, seen, check=False)


def normalizer(G: Group, H: Subgroup) -> Subgroup:
    conj = G.mul[G.mul[:, H.array], G.inv[:, None]]
    inside = H.mask[conj].all(axis=1)
    return Subgroup.from_ids(G, np.nonzero(inside)[0].tolist(), check=False)


def centre(G: Group) -> Subgroup:
    commutes = (G.mul == G.mul.T).all(axis=1)
    return Subgroup.from_ids(G, np.nonzero(commutes)[0].tolist(), check=False)


def commutator_subgroup(G: Group) -> Subgroup:
    a = np.arange(G.order)
    ab = G.mul[a[:, None], a[None, :]]
    ainv_binv = G.mul[G.inv[:, None], G.inv[None, :]]
    comm = np.unique(G.mul[ab, ainv_binv])
    return subgroup_generated(G, comm.tolist())


# ------------------------------------------------------------------ cosets

@dataclass(frozen=True, eq=False)
class CosetSpace:
    """Left (``gH``) or right (``Hg``) cosets of a subgroup.

    Cosets are numbered in order of their smallest element, which is also
    the stored representative.
    """

    parent: Group
    subgroup: Subgroup
    side: str
    reps: tuple[int, ...]
    coset_of: np.ndarray = field(repr=False)

    def __len__(self) -> int:
        return len(self.reps)

    def members(self, k: int) -> np.ndarray:
        G, r = self.parent, self.reps[k]
        H = self.subgroup.array
        return np.sort(G.mul[r, H] if self.side == "left" else G.mul[H, r])


def coset_space(G: Group, H: Subgroup, side: str = "left") -> CosetSpace:
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    n = G.order
    coset_of = np.full(n, -1, dtype=np.int64)
    reps = []
    Ha = H.array
    for g in range(n):
        if coset_of[g] >= 0:
            continue
        members = G.mul[g, Ha] if side == "left" else G.mul[Ha, g]
        coset_of[members] = len(reps)
        reps.append(g)
    assert len(reps) * H.order == n
    coset_of.setflags(write=False)
    return CosetSpace(G, H, side, tuple(reps), coset_of)


def quotient(G: Group, N: Subgroup) -> tuple[Group, np.ndarray]:
    """``G/N`` on coset ids (cosets numbered as in ``coset_space``) and the projection."""
    if not N.is_normal:
        raise NotNormal(f"subgroup of order {N.order} is not normal in {G!r}")
    cs = coset_space(G, N, "left")
    reps = np.array(cs.reps)
    qmul = cs.coset_of[G.mul[np.ix_(reps, reps)]]
    Q = from_cayley_table(qmul, label=f"{G.label}/N{N.order}", check=False)
    return Q, cs.coset_of


@dataclass(frozen=True, eq=False)
class DoubleCosetMap:
    parent: Group
    subgroup: Subgroup
    classes: tuple[tuple[int, frozenset], ...]
    class_of: np.ndarray = field(repr=False)

    def __len__(self) -> int:
        return len(self.classes)

    def rep(self, k: int) -> int:
        return self.classes[k][0]

    def members(self, k: int) -> frozenset:
        return self.classes[k][1]

    def sizes(self) -> list[int]:
        return [len(m) for _, m in self.classes]


def double_cosets(G: Group, H: Subgroup) -> DoubleCosetMap:
    n = G.order
    class_of = np.full(n, -1, dtype=np.int64)
    classes = []
    Ha = H.array
    for g in range(n):
        if class_of[g] >= 0:
            continue
        members = np.unique(G.mul[np.ix_(G.mul[Ha, g], Ha)])
        stab = np.count_nonzero(H.mask[G.mul[G.mul[g, Ha], G.inv[g]]])
        assert len(members) * stab == H.order ** 2, "double coset size formula violated"
        class_of[members] = len(classes)
        classes.append((g, frozenset(members.tolist())))
    class_of.setflags(write=False)
    return DoubleCosetMap(G, H, tuple(classes), class_of)


def set_product(G: Group, A: Iterable[int], B: Iterable[int], chunk: int = 1 << 22) -> np.ndarray:
    """Boolean mask of ``{a*b : a in A, b in B}``."""
    A = np.fromiter(A, dtype=np.int64) if not isinstance(A, np.ndarray) else A
    B = np.fromiter(B, dtype=np.int64) if not isinstance(B, np.ndarray) else B
    out = np.zeros(G.order, dtype=bool)
    step = max(1, chunk // max(1, len(B)))
    for i in range(0, len(A), step):
        out[G.mul[np.ix_(A[i:i + step], B)].ravel()] = True
    return out


# ---------------------------------------------------------------- file I/O

def parse_cayley_text(text: str) -> Group:
    tokens = text.split()
    if not tokens:
        raise NotLatin("empty Cayley table file")
    try:
        values = [int(t) for t in tokens]
    except ValueError as exc:
        raise NotLatin(f"non-integer entry: {exc}") from None
    n = values[0]
    if n <= 0 or len(values) != 1 + n * n:
        raise NotLatin(f"expected {n * n} entries after the order line, got {len(values) - 1}")
    return from_cayley_table(np.array(values[1:], dtype=np.int64).reshape(n, n))


def format_cayley_text(G: Group) -> str:
    lines = [str(G.order)]
    lines += [" ".join(str(x) for x in row) for row in G.table]
    return "\n".join(lines) + "\n"


def parse_cycles(text: str, degree: int) -> tuple[int, ...]:
    """Parse disjoint-cycle notation like ``(0 1 2)(3 4)`` into an image list."""
    perm = list(range(degree))
    text = text.strip()
    seen: set[int] = set()
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        if text[pos] != "(":
            raise ValueError(f"unexpected character {text[pos]!r} in {text!r}")
        end = text.index(")", pos)
        cycle = [int(t) for t in text[pos + 1:end].replace(",", " ").split()]
        for a in cycle:
            if not 0 <= a < degree or a in seen:
                raise ValueError(f"bad point {a} in {text!r}")
            seen.add(a)
        for a, b in zip(cycle, cycle[1:] + cycle[:1]):
            perm[a] = b
        pos = end + 1
    return tuple(perm)


def parse_permutation_text(text: str, label: str = "") -> Group:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty permutation file")
    degree = int(lines[0])
    gens = [parse_cycles(ln, degree) for ln in lines[1:]]
    return from_permutations(gens, degree=degree, label=label)
