from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, strategies as st

from hallpaige.errors import (
    ClosureTooLarge,
    NoIdentity,
    NotAssociative,
    NotLatin,
    NotNormal,
    UnsupportedSpec,
)
from hallpaige.families import builtin, catalog_specs, cyclic, quaternion8
from hallpaige.groups import (
    Subgroup,
    centre,
    commutator_subgroup,
    coset_space,
    direct_product,
    double_cosets,
    format_cayley_text,
    from_cayley_table,
    from_permutations,
    normalizer,
    parse_cayley_text,
    parse_cycles,
    parse_permutation_text,
    quotient,
    set_product,
    subgroup_generated,
)

from oracles import double_coset_partition, element_orders, subgroup_closure

SMALL_SPECS = [s for s in catalog_specs(24)]


def test_trivial_table():
    G = from_cayley_table([[0]])
    assert G.order == 1 and G.identity == 0


def test_z3_table():
    G = from_cayley_table([[(a + b) % 3 for b in range(3)] for a in range(3)])
    assert G.order == 3 and G.is_abelian


def test_constant_row_is_not_latin():
    with pytest.raises(NotLatin, match="row 0"):
        from_cayley_table([[0, 0], [1, 0]])


def test_out_of_range_entry():
    with pytest.raises(NotLatin):
        from_cayley_table([[0, 2], [1, 0]])


def test_no_identity():
    # latin square with no identity row: x*y = x - y mod 3 has a right identity only
    with pytest.raises(NoIdentity):
        from_cayley_table([[(a - b + 1) % 3 for b in range(3)] for a in range(3)])


def test_non_associative_names_triple():
    # a loop of order 5 that is not a group
    table = [[0, 1, 2, 3, 4],
             [1, 0, 3, 4, 2],
             [2, 4, 0, 1, 3],
             [3, 2, 4, 0, 1],
             [4, 3, 1, 2, 0]]
    with pytest.raises(NotAssociative, match=r"\(a, b, c\)"):
        from_cayley_table(table)


def test_identity_relabelled_to_zero():
    # Z3 written with the identity as symbol 2
    lookup = [1, 2, 0]         # symbol -> residue, residue 0 is symbol 2
    sym = {r: s for s, r in enumerate(lookup)}
    table = [[sym[(lookup[a] + lookup[b]) % 3] for b in range(3)] for a in range(3)]
    G = from_cayley_table(table, elements=["a", "b", "e"])
    assert G.elements[0] == "e"
    assert all(G.m(0, g) == g == G.m(g, 0) for g in range(3))


def test_permutation_closure_examples():
    assert from_permutations([(1, 2, 0)]).order == 3
    s5 = from_permutations([parse_cycles("(0 1)", 5), parse_cycles("(0 1 2 3 4)", 5)])
    assert s5.order == 120
    a4 = from_permutations([parse_cycles("(0 1 2)", 4), parse_cycles("(0 1)(2 3)", 4)])
    assert a4.order == 12


def test_closure_cap():
    with pytest.raises(ClosureTooLarge):
        from_permutations([parse_cycles("(0 1)", 6), parse_cycles("(0 1 2 3 4 5)", 6)], cap=100)


def test_permutation_product_convention():
    G = from_permutations([parse_cycles("(0 1)", 3), parse_cycles("(1 2)", 3)])
    a = G.index_of(parse_cycles("(0 1)", 3))
    b = G.index_of(parse_cycles("(1 2)", 3))
    ab = G.elements[G.m(a, b)]
    # apply b first, then a
    assert ab == tuple(G.elements[a][G.elements[b][i]] for i in range(3))


def test_builtin_examples():
    assert builtin("cyclic:6").order == 6
    d4 = builtin("dihedral:4")
    assert d4.order == 8 and not d4.is_abelian
    q8 = quaternion8()
    assert q8.order == 8 and list(q8.orders).count(2) == 1


@pytest.mark.parametrize("spec", ["bogus", "cyclic:x", "prod:(cyclic:2)", "sym:9", "ea:4^2",
                                  "cayley:/nonexistent/file"])
def test_builtin_rejects(spec):
    with pytest.raises(UnsupportedSpec):
        builtin(spec)


@pytest.mark.parametrize("spec", SMALL_SPECS)
def test_catalog_groups_are_groups(spec):
    G = builtin(spec)
    t = G.table
    n = G.order
    rng = np.random.default_rng(1)
    assert all(sorted(row) == list(range(n)) for row in t)
    for a, b, c in rng.integers(0, n, size=(200, 3)):
        assert t[t[a][b]][c] == t[a][t[b][c]]
    assert list(G.orders) == element_orders(t)
    assert all(t[g][G.inv_list[g]] == 0 for g in range(n))


def test_subgroup_generated_examples():
    Z12 = cyclic(12)
    assert subgroup_generated(Z12, []).elements == (0,)
    assert subgroup_generated(Z12, [3]).elements == (0, 3, 6, 9)
    S3 = builtin("sym:3")
    two = next(g for g in range(6) if S3.orders[g] == 2)
    three = next(g for g in range(6) if S3.orders[g] == 3)
    assert subgroup_generated(S3, [two, three]).order == 6


def test_subgroup_validation():
    Z6 = cyclic(6)
    with pytest.raises(ValueError):
        Subgroup.from_ids(Z6, [0, 1])
    with pytest.raises(ValueError):
        Subgroup.from_ids(Z6, [1, 3])


def test_quotient_examples():
    Z6 = cyclic(6)
    Q, proj = quotient(Z6, Subgroup.from_ids(Z6, [0, 3]))
    assert Q.order == 3
    A4 = builtin("alt:4")
    V4 = Subgroup.from_ids(A4, [g for g in range(12) if A4.orders[g] <= 2])
    assert quotient(A4, V4)[0].order == 3
    S3 = builtin("sym:3")
    t = next(g for g in range(6) if S3.orders[g] == 2)
    with pytest.raises(NotNormal):
        quotient(S3, Subgroup.from_ids(S3, [0, t]))


@pytest.mark.parametrize("spec", ["alt:4", "dihedral:6", "prod:(q8,cyclic:3)", "sym:4"])
def test_quotient_is_homomorphism(spec):
    G = builtin(spec)
    for N in (commutator_subgroup(G), centre(G)):
        Q, proj = quotient(G, N)
        lhs = proj[G.mul]
        rhs = Q.mul[proj[:, None], proj[None, :]]
        assert (lhs == rhs).all()


def test_double_coset_examples():
    A5 = builtin("alt:5")
    H = Subgroup.from_ids(A5, [g for g in range(60) if A5.elements[g][4] == 4])
    dc = double_cosets(A5, H)
    assert sorted(dc.sizes()) == [12, 48]
    assert len(double_cosets(A5, A5.whole())) == 1
    assert len(double_cosets(A5, A5.trivial())) == 60


@pytest.mark.parametrize("spec", ["sym:4", "dihedral:5", "prod:(sym:3,cyclic:2)"])
def test_double_cosets_against_oracle(spec):
    G = builtin(spec)
    t = G.table
    for g in range(G.order):
        H = Subgroup.from_ids(G, subgroup_closure(t, [g]))
        dc = double_cosets(G, H)
        ours = sorted(sorted(dc.members(k)) for k in range(len(dc)))
        theirs = sorted(sorted(D) for D in double_coset_partition(t, H.elements))
        assert ours == theirs
        left = coset_space(G, H, "left").coset_of
        right = coset_space(G, H, "right").coset_of
        for k in range(len(dc)):
            D = np.array(sorted(dc.members(k)))
            # unions of whole left and right cosets
            assert np.isin(np.nonzero(np.isin(left, left[D]))[0], D).all()
            assert np.isin(np.nonzero(np.isin(right, right[D]))[0], D).all()


def test_cosets_partition():
    S4 = builtin("sym:4")
    H = subgroup_generated(S4, [5])
    for side in ("left", "right"):
        cs = coset_space(S4, H, side)
        assert len(cs) * H.order == 24
        seen = np.concatenate([cs.members(k) for k in range(len(cs))])
        assert sorted(seen.tolist()) == list(range(24))
        assert all(cs.reps[k] == cs.members(k).min() for k in range(len(cs)))


def test_normalizer_and_centre():
    D4 = builtin("dihedral:4")
    assert centre(D4).elements == (0, 2)
    assert normalizer(D4, centre(D4)).order == 8
    assert commutator_subgroup(builtin("sym:4")).order == 12


def test_set_product_matches_python():
    G = builtin("sym:4")
    A, B = [1, 5, 7], [0, 3, 9, 11]
    mask = set_product(G, A, B)
    assert set(np.nonzero(mask)[0].tolist()) == {G.m(a, b) for a in A for b in B}


def test_direct_product_numbering():
    G = direct_product(cyclic(2), cyclic(3))
    assert G.m(1 * 3 + 2, 1 * 3 + 2) == 0 * 3 + 1


def test_cayley_file_round_trip(tmp_path):
    G = builtin("dihedral:5")
    text = format_cayley_text(G)
    H = parse_cayley_text(text)
    assert np.array_equal(G.mul, H.mul)
    path = tmp_path / "d5.txt"
    path.write_text(text)
    assert builtin(f"cayley:{path}").order == 10


def test_permutation_file(tmp_path):
    path = tmp_path / "a4.txt"
    path.write_text("4\n(0 1 2)\n(0 1)(2 3)\n")
    assert builtin(f"perm:{path}").order == 12
    assert parse_permutation_text("5\n(0 1)\n(0 1 2 3 4)\n").order == 120
    with pytest.raises(ValueError):
        parse_cycles("(0 1)(1 2)", 3)


@given(st.lists(st.permutations(list(range(5))), min_size=1, max_size=3))
def test_permutation_closure_property(gens):
    G = from_permutations(gens, 5)
    t = G.table
    # closure, inverses and divisibility of 120
    assert 120 % G.order == 0
    assert all(sorted(row) == list(range(G.order)) for row in t)
    for g in range(G.order):
        assert G.elements[g] in set(G.elements)
        assert t[g][G.inv_list[g]] == 0


@given(st.integers(1, 40), st.integers(1, 40))
def test_cyclic_subgroup_property(n, k):
    G = cyclic(n)
    H = subgroup_generated(G, [k % n])
    from math import gcd
    assert H.order == n // gcd(n, k % n) if k % n else H.order == 1
