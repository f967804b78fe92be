from __future__ import annotations

import itertools

import numpy as np
import pytest

from hallpaige.analysis import hall_paige_verdict
from hallpaige.errors import BadGroup, UnsupportedQ
from hallpaige.fields import finite_field, prime_power
from hallpaige.mapping import verify
from hallpaige.psl2 import build_cm_psl2, find_vh, mobius, psl2, verify_normal_form, verify_unhu

FIELD_QS = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16]


# ------------------------------------------------------------------ fields

@pytest.mark.parametrize("q", FIELD_QS)
def test_field_axioms(q):
    F = finite_field(q)
    assert F.q == q
    r = range(q)
    for a, b, c in itertools.product(r, repeat=3):
        assert F.mul[a, F.add[b, c]] == F.add[F.mul[a, b], F.mul[a, c]]
    assert all(F.mul[a, F.inv[a]] == 1 for a in range(1, q))
    assert all(F.add[a, F.neg[a]] == 0 for a in r)
    g = F.primitive_element()
    assert F.element_order(g) == q - 1
    # characteristic p: adding 1 to itself p times gives 0
    x = 0
    for _ in range(F.p):
        x = int(F.add[x, 1])
    assert x == 0


def test_prime_fields_are_modular():
    for p in (2, 3, 5, 7, 11, 13):
        F = finite_field(p)
        a, b = np.meshgrid(range(p), range(p), indexing="ij")
        assert (F.add == (a + b) % p).all() and (F.mul == (a * b) % p).all()


def test_squares_have_half_the_units():
    for q in (5, 7, 9, 11, 13):
        assert len(finite_field(q).squares()) == (q - 1) // 2
    assert len(finite_field(8).squares()) == 7


@pytest.mark.parametrize("q", [1, 6, 10, 12, 15, 17, 25])
def test_unsupported_q(q):
    with pytest.raises(UnsupportedQ):
        finite_field(q)


def test_prime_power():
    assert prime_power(9) == (3, 2)
    assert prime_power(16) == (2, 4)
    with pytest.raises(UnsupportedQ):
        prime_power(12)


# ------------------------------------------------------------------ groups

@pytest.mark.parametrize("q, order, H", [(5, 60, 2), (7, 168, 3), (4, 60, 3), (3, 12, 1),
                                        (8, 504, 7), (9, 360, 4), (11, 660, 5), (13, 1092, 6)])
def test_group_orders(q, order, H):
    ctx = psl2(q)
    assert ctx.group.order == order
    assert ctx.U.order == q and ctx.H.order == H
    assert ctx.B.order == q * H
    assert ctx.simple == (q >= 4)


def test_u_is_not_cyclic_for_q4():
    ctx = psl2(4)
    assert not (ctx.group.orders[ctx.U.array] == 4).any()


@pytest.mark.parametrize("q", [5, 7, 9, 11, 13])
def test_h_cyclic_for_odd_q(q):
    ctx = psl2(q)
    assert ctx.group.orders[ctx.h_gen] == ctx.H.order


def test_mobius_rejects_singular():
    F = finite_field(5)
    with pytest.raises(ValueError):
        mobius(F, 1, 1, 1, 1)


def test_psl2_is_good_for_q_at_least_three():
    for q in (3, 4, 5, 7):
        assert hall_paige_verdict(psl2(q).group).good
    assert not hall_paige_verdict(psl2(2).group).good


@pytest.mark.parametrize("q", [4, 5, 7, 8, 9])
def test_normal_form(q):
    assert verify_normal_form(psl2(q))


@pytest.mark.parametrize("q", [5, 9, 13])
def test_unhu(q):
    assert verify_unhu(psl2(q))


@pytest.mark.parametrize("q", [5, 7, 9])
def test_find_vh(q):
    ctx = psl2(q)
    G = ctx.group
    for h in ctx.H.elements:
        v = find_vh(ctx, h)
        assert ctx.U.mask[v]
        nhU = {G.m(G.m(ctx.n, h), u) for u in ctx.U.elements}
        square = {G.m(G.m(v, a), b) for a in nhU for b in nhU}
        assert nhU <= square
        # nothing smaller in U works
        for w in ctx.U.elements:
            if w >= v:
                break
            assert not nhU <= {G.m(G.m(w, a), b) for a in nhU for b in nhU}


def test_find_vh_rejects_outside_h():
    ctx = psl2(5)
    with pytest.raises(ValueError):
        find_vh(ctx, ctx.n)


# ------------------------------------------------------------ construction

@pytest.mark.parametrize("q, branch", [(3, "b"), (4, "c"), (5, "a"), (7, "b"), (9, "a")])
def test_build_branches(q, branch):
    trace: dict = {}
    cm = build_cm_psl2(q, trace)
    assert verify(cm)
    assert trace["branch"] == branch and trace["verified"]
    assert trace["order"] == cm.group.order
    if branch == "a":
        assert trace["containment_checked"] == trace["H"] * (1 + trace["U"])
        assert set(trace["v_h"]) == {str(i) for i in range(trace["H"])}


def test_build_is_deterministic():
    assert build_cm_psl2(5).phi == build_cm_psl2(5).phi


def test_build_rejects_q2():
    with pytest.raises(BadGroup):
        build_cm_psl2(2)


def test_build_q16():
    trace: dict = {}
    cm = build_cm_psl2(16, trace)
    assert cm.group.order == 4080 and verify(cm) and trace["branch"] == "c"
