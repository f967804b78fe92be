"""Sylow-2 subgroups, the good/bad dichotomy and related structural checks."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BadPrecondition, NotBad
from .groups import (
    Group,
    Subgroup,
    normalizer,
    quotient,
    subgroup_generated,
)


def two_part(n: int) -> int:
    return n & -n


def is_power_of_two(n: int) -> bool:
    return n > 0 and n & (n - 1) == 0


def two_elements(G: Group) -> np.ndarray:
    """Ids of the elements whose order is a power of 2 (identity included)."""
    o = G.orders
    return np.nonzero((o & (o - 1)) == 0)[0]


def sylow2(G: Group) -> Subgroup:
    """A Sylow 2-subgroup, grown one normalising step at a time.

    Starts from the cyclic group of a 2-element of maximal order. While the
    current 2-group P is too small, some element outside P normalises it with
    square inside P (a proper subgroup of a 2-group is properly contained in
    its normaliser); adjoining the smallest such element doubles P.
    """
    target = two_part(G.order)
    if target == 1:
        return G.trivial()
    o = G.orders
    twos = two_elements(G)
    best = int(twos[np.argmax(o[twos])])     # argmax returns the smallest id on ties
    P = subgroup_generated(G, [best])
    sq = G.mul[np.arange(G.order), np.arange(G.order)]
    while P.order < target:
        N = normalizer(G, P)
        candidates = [g for g in N.elements if not P.mask[g] and P.mask[sq[g]]]
        if not candidates:
            raise AssertionError("no normalising 2-element extends P; Sylow ascent is broken")
        P = subgroup_generated(G, list(P.elements) + [candidates[0]])
    assert P.order == target
    return P


@dataclass(frozen=True)
class HpVerdict:
    good: bool
    sylow2_order: int
    sylow2_cyclic: bool
    witness: Subgroup

    def __str__(self) -> str:
        kind = "cyclic" if self.sylow2_cyclic else "non-cyclic"
        return f"Sylow-2 order {self.sylow2_order} {kind}, {'GOOD' if self.good else 'BAD'}"


def hall_paige_verdict(G: Group) -> HpVerdict:
    """Good iff the Sylow 2-subgroup is trivial or non-cyclic."""
    P = sylow2(G)
    cyclic = bool((G.orders[P.array] == P.order).any())
    good = P.order == 1 or not cyclic
    return HpVerdict(good, P.order, cyclic, P)


def _sign_kernel(G: Group, H: Subgroup) -> Subgroup:
    # Left multiplication by g on H has |H|/ord(g) cycles of length ord(g);
    # it is an odd permutation exactly when ord(g) is even and the cycle count odd.
    o = G.orders[H.array]
    odd_perm = (o % 2 == 0) & ((H.order // o) % 2 == 1)
    return Subgroup.from_ids(G, H.array[~odd_perm].tolist())


def index2_characteristic(G: Group) -> Subgroup:
    """Kernel of the sign of the regular representation; index 2 when G is bad."""
    if hall_paige_verdict(G).good:
        raise NotBad(f"{G!r} is good; its regular representation may lie in the alternating group")
    K = _sign_kernel(G, G.whole())
    assert K.order * 2 == G.order and K.is_normal
    return K


def odd_core_tower(G: Group) -> tuple[Subgroup, list[Subgroup]]:
    """Descend through index-2 sign kernels until the order is odd.

    Returns the odd-order subgroup N and the chain of subgroups below G
    (the last entry is N). G/N is asserted to be a cyclic 2-group.
    """
    if hall_paige_verdict(G).good:
        raise NotBad(f"{G!r} is good")
    tower: list[Subgroup] = []
    current = G.whole()
    while current.order % 2 == 0:
        nxt = _sign_kernel(G, current)
        assert nxt.order * 2 == current.order, "sign kernel lost index 2 inside the tower"
        tower.append(nxt)
        current = nxt
    N = current
    assert N.is_normal
    Q, _ = quotient(G, N)
    assert is_power_of_two(Q.order)
    assert (Q.orders == Q.order).any(), "G/N is not cyclic"
    return N, tower


def verify_frobenius2(G: Group) -> bool:
    """Number of 2-elements is divisible by the Sylow 2-subgroup order."""
    return len(two_elements(G)) % sylow2(G).order == 0


def two_element_classes_not_all_conjugate(G: Group, N: Subgroup) -> bool:
    """For G good and N of index 2: are the groups <x>, x a 2-element outside N,
    split over more than one conjugacy class?  Expected answer: True."""
    problems = []
    if not hall_paige_verdict(G).good:
        problems.append("G is not good")
    if N.index != 2:
        problems.append(f"N has index {N.index}, not 2")
    if not N.is_normal:
        problems.append("N is not normal")
    if problems:
        raise BadPrecondition("; ".join(problems))
    twos = [int(x) for x in two_elements(G) if not N.mask[x]]
    cyclics = {subgroup_generated(G, [x]).elements for x in twos}
    first = min(cyclics)
    first_sub = Subgroup.from_ids(G, first, check=False)
    conj_class = {first_sub.conjugate_by(g).elements for g in range(G.order)}
    return not cyclics <= conj_class
