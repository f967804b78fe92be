"""Independent brute-force computations used as test oracles.

Nothing here calls into the package's algorithms beyond reading a group's
multiplication table.
"""

from __future__ import annotations

import itertools


def element_orders(table) -> list[int]:
    n = len(table)
    out = []
    for g in range(n):
        x, k = g, 1
        while x != 0:
            x = table[x][g]
            k += 1
        out.append(k)
    return out


def is_bad_by_orders(table) -> bool:
    """Bad iff the 2-part of |G| is > 1 and some element has that order.

    A group with a cyclic Sylow 2-subgroup of order 2^a contains an element
    of order 2^a, and conversely such an element generates a Sylow 2-subgroup.
    """
    n = len(table)
    two = n & -n
    return two > 1 and two in element_orders(table)


def all_complete_mappings_brute(table) -> set[tuple[int, ...]]:
    """Every phi with g -> g*phi(g) bijective, by trying all permutations."""
    n = len(table)
    found = set()
    for phi in itertools.permutations(range(n)):
        if len({table[g][phi[g]] for g in range(n)}) == n:
            found.add(phi)
    return found


def subgroup_closure(table, seed) -> frozenset[int]:
    out = {0}
    frontier = [0]
    gens = list(seed)
    while frontier:
        x = frontier.pop()
        for s in gens:
            y = table[x][s]
            if y not in out:
                out.add(y)
                frontier.append(y)
    return frozenset(out)


def double_coset_partition(table, H) -> list[frozenset[int]]:
    n = len(table)
    seen: set[int] = set()
    classes = []
    for g in range(n):
        if g in seen:
            continue
        D = frozenset(table[table[h1][g]][h2] for h1 in H for h2 in H)
        seen |= D
        classes.append(D)
    return classes


def set_square_contains(table, D) -> bool:
    prod = {table[a][b] for a in D for b in D}
    return D <= prod


def coxeter_elements_by_words(gens, mul, identity, key):
    """BFS over a group given generator objects; returns {key: shortest length}."""
    dist = {key(identity): 0}
    frontier = [identity]
    while frontier:
        nxt = []
        for x in frontier:
            for s in gens:
                y = mul(x, s)
                k = key(y)
                if k not in dist:
                    dist[k] = dist[key(x)] + 1
                    nxt.append(y)
        frontier = nxt
    return dist


def tits_representation(coxeter_matrix):
    """Generators of the geometric representation built from m_ij alone.

    Uses the bilinear form B(e_i, e_j) = -cos(pi / m_ij) and reflections
    s_i(v) = v - 2 B(e_i, v) e_i, in floating point.
    """
    import math

    import numpy as np

    M = np.asarray(coxeter_matrix)
    n = len(M)
    B = np.array([[-math.cos(math.pi / M[i][j]) for j in range(n)] for i in range(n)])
    gens = []
    for i in range(n):
        S = np.eye(n)
        S[i, :] -= 2 * B[i, :]
        gens.append(S)
    return gens


def coxeter_words_bfs(coxeter_matrix, cap=100_000):
    """Every element of the Coxeter group as ``key -> (length, word)``.

    Breadth-first search in the Cayley graph of the geometric representation,
    multiplying generators on the right; the first word found is reduced.
    """
    import numpy as np

    gens = tits_representation(coxeter_matrix)
    n = len(gens)

    def key(x):
        return tuple(np.round(x, 6).ravel().tolist())

    one = np.eye(n)
    found = {key(one): (0, ())}
    frontier = [(one, ())]
    while frontier:
        nxt = []
        for x, w in frontier:
            for i, S in enumerate(gens):
                y = x @ S
                k = key(y)
                if k not in found:
                    found[k] = (len(w) + 1, w + (i + 1,))
                    nxt.append((y, w + (i + 1,)))
                    if len(found) > cap:
                        raise ValueError("group too large for the oracle")
        frontier = nxt
    return found, gens, key
