"""Constructions that lift complete mappings from subgroups and quotients.

Every public ``lift_*`` / ``compose_*`` function verifies its output before
returning; a failed verification raises VerificationFailed, which always
indicates a bug rather than bad input.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import (
    BadSubmappings,
    ContainmentFailed,
    HasFixedPoint,
    MatchingFailed,
    NotCentralInvolution,
    NotInvolution,
    OrderMismatch,
    QuotientOdd,
    SizeCondition,
    TripleInvalid,
    TripleViolation,
    VerificationFailed,
)
from .groups import (
    CosetSpace,
    Group,
    Subgroup,
    coset_space,
    double_cosets,
    quotient,
    set_product,
)
from .mapping import CompleteMapping, cm_from_triple, first_violation
from .matching import maximum_matching


# ------------------------------------------------------- involution pairs

@dataclass(frozen=True)
class InvolutionPair:
    S: tuple[int, ...]
    T: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.S)


def partition_involutions(pair: InvolutionPair) -> tuple[list[int], list[int]]:
    """Split the domain as J + K with S(J) = T(J) = K.

    Walks each cycle of T∘S from its smallest unvisited point, putting the
    walk's points in J and their S-images in K.
    """
    S, T = pair.S, pair.T
    m = len(S)
    if len(T) != m:
        raise NotInvolution("S and T have different domain sizes")
    for name, f in (("S", S), ("T", T)):
        for i in range(m):
            if not 0 <= f[i] < m or f[f[i]] != i:
                raise NotInvolution(f"{name} is not an involution at {i}")
            if f[i] == i:
                raise HasFixedPoint(f"{name} fixes {i}")
    if m % 2:
        raise HasFixedPoint("an involution on an odd-size set has a fixed point")
    side = [None] * m
    for start in range(m):
        if side[start] is not None:
            continue
        j = start
        while True:
            side[j] = "J"
            k = S[j]
            side[k] = "K"
            j = T[k]
            if j == start:
                break
    J = [i for i in range(m) if side[i] == "J"]
    K = [i for i in range(m) if side[i] == "K"]
    Kset = set(K)
    assert {S[j] for j in J} == Kset == {T[j] for j in J}, "involution partition is broken"
    return J, K


# ------------------------------------------------------ common transversal

def common_transversal(G: Group, H: Subgroup, K: Subgroup, k_side: str = "left") -> list[int]:
    """A left transversal of H that is also a ``k_side`` transversal of K.

    Entry ``i`` of the result lies in the ``i``-th left coset of H (numbered as
    in ``coset_space``). Built from a perfect matching between the cosets.
    """
    if H.order != K.order:
        raise OrderMismatch(f"|H| = {H.order} but |K| = {K.order}")
    left = coset_space(G, H, "left")
    other = coset_space(G, K, k_side)
    adj = []
    for i in range(len(left)):
        members = left.members(i)
        adj.append(sorted(set(other.coset_of[members].tolist())))
    match = maximum_matching(adj, len(other))
    if any(v == -1 for v in match):
        raise MatchingFailed("coset intersection graph has no perfect matching")
    out = []
    for i, j in enumerate(match):
        members = left.members(i)
        out.append(int(members[other.coset_of[members] == j][0]))
    assert len(set(left.coset_of[out].tolist())) == len(left)
    assert len(set(other.coset_of[out].tolist())) == len(other)
    return out


# ------------------------------------------------------------ coset triple

@dataclass(frozen=True, eq=False)
class CosetTriple:
    """Three bijections from an index set onto the left cosets of ``subgroup``,
    given as coset numbers of ``coset_space(group, subgroup, 'left')``."""

    group: Group
    subgroup: Subgroup
    x: tuple[int, ...]
    y: tuple[int, ...]
    z: tuple[int, ...]

    @property
    def cosets(self) -> CosetSpace:
        return coset_space(self.group, self.subgroup, "left")


def _check_local_mapping(cm: CompleteMapping | None, H: Subgroup, what: str) -> None:
    if cm is None:
        raise BadSubmappings(f"no complete mapping supplied for the {what}")
    local, _ = H.local
    if cm.group.order != H.order or not np.array_equal(cm.group.mul, local.mul):
        raise BadSubmappings(f"the {what} mapping is not on the expected group table")
    problem = first_violation(cm)
    if problem:
        raise BadSubmappings(f"the {what} mapping does not verify: {problem}")


def _finish(G: Group, A: Sequence[int], B: Sequence[int], C: Sequence[int]) -> CompleteMapping:
    try:
        cm = cm_from_triple(G, A, B, C)
    except TripleInvalid as exc:
        raise VerificationFailed(f"lifted maps are not a complete mapping: {exc}") from exc
    problem = first_violation(cm)
    if problem:
        raise VerificationFailed(problem)
    return cm


def lift_lcst(triple: CosetTriple, cm_H: CompleteMapping) -> CompleteMapping:
    """Complete mapping of G from one of H and coset bijections with
    ``x(i) y(i) ⊇ z(i)`` for every index ``i``."""
    G, H = triple.group, triple.subgroup
    _check_local_mapping(cm_H, H, "subgroup")
    cs = triple.cosets
    m = len(cs)
    for name, f in (("x", triple.x), ("y", triple.y), ("z", triple.z)):
        if len(f) != m or sorted(f) != list(range(m)):
            raise TripleViolation(f"{name} is not a bijection onto the {m} left cosets")
    t, inv = G.table, G.inv_list
    coset_of = cs.coset_of.tolist()

    # a simultaneous left/right transversal, labelled so that y_i lies in y(i)
    both = common_transversal(G, H, H, "right")
    ys = [both[triple.y[i]] for i in range(m)]
    right_of = coset_space(G, H, "right").coset_of.tolist()
    index_by_right = {right_of[y]: i for i, y in enumerate(ys)}

    xs, zs = [], []
    for i in range(m):
        target = triple.z[i]
        for x in cs.members(triple.x[i]).tolist():
            if coset_of[t[x][ys[i]]] == target:
                break
        else:
            raise TripleViolation(f"x({i}) y({i}) does not contain z({i})")
        xs.append(x)
        zs.append(t[x][ys[i]])

    _, embed = H.local
    embed = embed.tolist()
    a = embed
    b = [embed[v] for v in cm_H.phi]
    c = [embed[v] for v in cm_H.psi]
    A, B, C = [], [], []
    for i in range(m):
        for j in range(H.order):
            w = t[ys[i]][a[j]]
            r = index_by_right[right_of[w]]
            d = t[w][inv[ys[r]]]            # y_i a(j) = d y_r with d in H
            assert H.mask[d]
            A.append(t[xs[i]][d])
            B.append(t[ys[r]][b[j]])
            C.append(t[zs[i]][c[j]])
    return _finish(G, A, B, C)


def compose_normal(G: Group, N: Subgroup, cm_N: CompleteMapping | None,
                   cm_Q: CompleteMapping | None) -> CompleteMapping:
    """Complete mapping of G from ones of a normal subgroup N and of G/N.

    ``cm_Q`` must live on ``quotient(G, N)[0]`` (cosets numbered by smallest
    element); ``cm_N`` on ``N.local``.
    """
    Q, _ = quotient(G, N)
    if cm_Q is None:
        raise BadSubmappings("no complete mapping supplied for the quotient")
    if cm_Q.group.order != Q.order or not np.array_equal(cm_Q.group.mul, Q.mul):
        raise BadSubmappings("the quotient mapping is not on the expected group table")
    problem = first_violation(cm_Q)
    if problem:
        raise BadSubmappings(f"the quotient mapping does not verify: {problem}")
    _check_local_mapping(cm_N, N, "normal subgroup")
    triple = CosetTriple(G, N, tuple(range(Q.order)), cm_Q.phi, cm_Q.psi)
    return lift_lcst(triple, cm_N)


# ---------------------------------------------------- central Z2 lifting

@dataclass(frozen=True)
class CentralLiftTrace:
    y: int
    J: tuple[int, ...]
    K: tuple[int, ...]


def lift_z2_center(G: Group, x: int, cm_Q: CompleteMapping | None,
                   trace: list | None = None) -> CompleteMapping:
    """Complete mapping of G from one of ``G/<x>``, x a central involution.

    ``cm_Q`` must live on ``quotient(G, <x>)[0]``.
    """
    t = G.table
    if x == 0 or t[x][x] != 0:
        raise NotCentralInvolution(f"{x} is not an involution")
    if any(t[x][g] != t[g][x] for g in range(G.order)):
        raise NotCentralInvolution(f"{x} is not central")
    N = Subgroup.from_ids(G, [0, x], check=False)
    Q, proj = quotient(G, N)
    if Q.order % 2:
        raise QuotientOdd("G/<x> has odd order, so <x> is a cyclic Sylow 2-subgroup and G is bad")
    if cm_Q is None:
        raise BadSubmappings("no complete mapping supplied for the quotient")
    if cm_Q.group.order != Q.order or not np.array_equal(cm_Q.group.mul, Q.mul):
        raise BadSubmappings("the quotient mapping is not on the expected group table")
    problem = first_violation(cm_Q)
    if problem:
        raise BadSubmappings(f"the quotient mapping does not verify: {problem}")

    qt = Q.table
    ybar = int(np.nonzero(Q.orders == 2)[0][0])
    bbar, cbar = cm_Q.phi, cm_Q.psi
    b_inv = {v: i for i, v in enumerate(bbar)}
    c_inv = {v: i for i, v in enumerate(cbar)}
    m = Q.order
    S = tuple(b_inv[qt[bbar[i]][ybar]] for i in range(m))
    T = tuple(c_inv[qt[cbar[i]][ybar]] for i in range(m))
    J, K = partition_involutions(InvolutionPair(S, T))

    reps = coset_space(G, N, "left").reps         # smaller id of each preimage pair
    y = reps[ybar]
    b = [0] * m
    c = [0] * m
    for j in J:
        b[j] = reps[bbar[j]]
        c[j] = reps[cbar[j]]
        b[S[j]] = t[b[j]][y]
        c[T[j]] = t[c[j]][y]
    inv = G.inv_list
    a = [t[c[i]][inv[b[i]]] for i in range(m)]
    assert all(proj[a[i]] == i for i in range(m))
    yinv_x = t[inv[y]][x]
    Jset = set(J)
    A, B, C = [], [], []
    for i in range(m):
        if i in Jset:
            A += [a[i], t[a[i]][x]]
            B += [b[i], t[t[b[i]][y]][x]]
            C += [c[i], t[c[i]][y]]
        else:
            A += [a[i], t[a[i]][x]]
            B += [t[b[i]][yinv_x], b[i]]
            C += [t[c[i]][yinv_x], t[c[i]][x]]
    if trace is not None:
        trace.append(CentralLiftTrace(y, tuple(J), tuple(K)))
    return _finish(G, A, B, C)


# ------------------------------------------------------- double cosets

def _local_subgroup(H: Subgroup, ids) -> Subgroup:
    local, embed = H.local
    pos = np.full(H.parent.order, -1, dtype=np.int64)
    pos[embed] = np.arange(len(embed))
    return Subgroup.from_ids(local, pos[np.asarray(list(ids), dtype=np.int64)].tolist(),
                             check=False)


def _stabiliser(G: Group, H: Subgroup, g: int) -> Subgroup:
    """``H ∩ g H g^-1``."""
    conj = G.mul[G.mul[g, H.array], G.inv[g]]
    return Subgroup.from_ids(G, np.nonzero(H.mask & np.isin(np.arange(G.order), conj))[0].tolist(),
                             check=False)


def lift_dcosets(G: Group, H: Subgroup, cm_H: CompleteMapping | None,
                 phi: Sequence[int], psi: Sequence[int]) -> CompleteMapping:
    """Lift through permutations of the double cosets of H.

    ``phi`` and ``psi`` permute the class indices of ``double_cosets(G, H)``;
    every class D needs ``|D| = |phi(D)| = |psi(D)|`` and ``D phi(D) ⊇ psi(D)``.
    """
    _check_local_mapping(cm_H, H, "subgroup")
    dc = double_cosets(G, H)
    nc = len(dc)
    if sorted(phi) != list(range(nc)) or sorted(psi) != list(range(nc)):
        raise SizeCondition(f"phi and psi must permute the {nc} double cosets")
    t, inv = G.table, G.inv_list
    members = [np.array(sorted(dc.members(k))) for k in range(nc)]
    for k in range(nc):
        sizes = (len(members[k]), len(members[phi[k]]), len(members[psi[k]]))
        if len(set(sizes)) != 1:
            raise SizeCondition(f"class {k}: sizes |D|, |phi(D)|, |psi(D)| = {sizes}")
        prod = set_product(G, members[k], members[phi[k]])
        if not prod[members[psi[k]]].all():
            raise ContainmentFailed(f"class {k}: D phi(D) does not contain psi(D)", witness=k)

    local, embed = H.local
    embed_l = embed.tolist()
    cs = coset_space(G, H, "left")
    coset_of = cs.coset_of.tolist()
    xt, yt, zt = [], [], []
    for k in range(nc):
        z = int(members[psi[k]][0])
        phi_mask = np.zeros(G.order, dtype=bool)
        phi_mask[members[phi[k]]] = True
        x = next(int(v) for v in members[k] if phi_mask[t[inv[int(v)]][z]])
        y = t[inv[x]][z]
        Hx = _local_subgroup(H, _stabiliser(G, H, x).elements)
        Hz = _local_subgroup(H, _stabiliser(G, H, z).elements)
        Hy = _local_subgroup(H, _stabiliser(G, H, y).elements)
        X = [embed_l[h] for h in common_transversal(local, Hx, Hz, "left")]
        Y = [embed_l[h] for h in coset_space(local, Hy, "left").reps]
        assert len(X) == len(Y)
        for h, mu in zip(X, Y):
            xt.append(coset_of[t[h][x]])
            yt.append(coset_of[t[mu][y]])
            zt.append(coset_of[t[h][z]])
    triple = CosetTriple(G, H, tuple(xt), tuple(yt), tuple(zt))
    return lift_lcst(triple, cm_H)


def square_contains_all(G: Group, H: Subgroup) -> tuple[bool, int | None]:
    """Check ``D^2 ⊇ D`` for every double coset; return (ok, first failing class)."""
    dc = double_cosets(G, H)
    for k in range(len(dc)):
        D = np.array(sorted(dc.members(k)))
        if not set_product(G, D, D)[D].all():
            return False, k
    return True, None


def lift_dcst(G: Group, H: Subgroup, cm_H: CompleteMapping | None) -> CompleteMapping:
    """Lift when every double coset D of H satisfies ``D^2 ⊇ D``."""
    ok, bad = square_contains_all(G, H)
    if not ok:
        rep = double_cosets(G, H).rep(bad)
        raise ContainmentFailed(f"double coset H{rep}H (class {bad}) is not contained in its square",
                                witness=bad)
    n = len(double_cosets(G, H))
    return lift_dcosets(G, H, cm_H, list(range(n)), list(range(n)))
