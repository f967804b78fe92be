from __future__ import annotations

from math import factorial

import pytest

from hallpaige.families import (
    alternating,
    builtin,
    catalog_specs,
    cyclic,
    dihedral,
    elementary_abelian,
    quaternion8,
    symmetric,
)


def test_cyclic_numbering():
    G = cyclic(7)
    assert all(G.m(a, b) == (a + b) % 7 for a in range(7) for b in range(7))


def test_dihedral_numbering():
    n = 5
    G = dihedral(n)
    r, s = 1, n
    assert G.orders[r] == n and G.orders[s] == 2
    assert G.m(G.m(s, r), s) == n - 1                 # s r s = r^-1
    assert all(G.m(i, s) == i + n for i in range(n))  # r^i s has id i + n


def test_symmetric_and_alternating():
    for n in range(1, 6):
        assert symmetric(n).order == factorial(n)
        assert alternating(n).order == max(1, factorial(n) // 2)
    S4 = symmetric(4)
    assert S4.elements[0] == (0, 1, 2, 3)
    assert list(S4.elements) == sorted(S4.elements)


def test_elementary_abelian_digits():
    G = elementary_abelian(3, 2)
    # (1, 2) + (2, 2) = (0, 1): ids 7 + 8 -> 3
    assert G.m(1 + 3 * 2, 2 + 3 * 2) == 0 + 3 * 1
    assert (G.orders[1:] == 3).all()


def test_quaternion_names():
    Q = quaternion8()
    i, j, k = 2, 4, 6
    assert Q.elements[Q.m(i, j)] == "k"
    assert Q.elements[Q.m(j, i)] == "-k"
    assert Q.m(i, i) == Q.m(j, j) == Q.m(k, k) == 1


def test_nested_products():
    G = builtin("prod:(prod:(cyclic:2,cyclic:3),q8)")
    assert G.order == 48
    assert builtin(" psl2:5 ").order == 60


@pytest.mark.parametrize("limit, count", [(64, 316), (200, 1270)])
def test_catalog_size(limit, count):
    specs = catalog_specs(limit)
    assert len(specs) == count == len(set(specs))


def test_catalog_covers_required_families():
    specs = set(catalog_specs(64))
    for spec in ("q8", "alt:4", "sym:4", "alt:5", "cyclic:64", "dihedral:32", "ea:2^6",
                 "prod:(cyclic:2,cyclic:2)"):
        assert spec in specs
    assert all(builtin(s).order <= 64 for s in list(specs)[::17])
