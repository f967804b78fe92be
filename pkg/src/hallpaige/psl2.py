"""PSL(2, q) acting on the projective line, and complete mappings for it.

Points are the field elements 0..q-1 plus ``q`` standing for infinity. The
group is generated by the translations z -> z + t, the diagonal maps
z -> λ² z and the involution n : z -> -1/z. Inside it:

    U  translations                 B  stabiliser of infinity (= H ⋉ U)
    H  z -> λ² z                    N  H ∪ nH
    V  n U n (maps z -> z / (t z + 1))
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

import numpy as np

from .errors import BadGroup, UnsupportedQ, VhNotFound
from .fields import FiniteField, finite_field
from .groups import Group, Subgroup, coset_space, from_permutations, quotient, set_product
from .lifting import CosetTriple, compose_normal, lift_dcst, lift_lcst
from .mapping import CompleteMapping, BudgetExhausted, NotFound, cm_odd, near_cm_cyclic, search, verify


def mobius(F: FiniteField, a: int, b: int, c: int, d: int) -> tuple[int, ...]:
    """Permutation of the q+1 points induced by z -> (a z + b) / (c z + d)."""
    q = F.q
    inf = q
    out = []
    for z in range(q + 1):
        if z == inf:
            num, den = a, c
        else:
            num = F.add[F.mul[a, z], b]
            den = F.add[F.mul[c, z], d]
        if den == 0:
            if num == 0:
                raise ValueError("singular Möbius map")
            out.append(inf)
        else:
            out.append(F.div(int(num), int(den)))
    assert sorted(out) == list(range(q + 1)), "Möbius map is not a bijection"
    return tuple(out)


@dataclass(frozen=True, eq=False)
class Psl2Context:
    q: int
    field: FiniteField
    group: Group
    B: Subgroup
    U: Subgroup
    H: Subgroup
    N: Subgroup
    V: Subgroup
    n: int
    h_gen: int
    h_powers: tuple[int, ...]          # h_powers[i] = h_gen^i
    translation: dict = field(repr=False)   # t -> id of z -> z + t
    simple: bool = True
    points: tuple[str, ...] = ()


def psl2(q: int) -> Psl2Context:
    """Build PSL(2, q) for a prime power 2 <= q <= 16 and check its structure.

    q = 2 and 3 are accepted (S3 and A4) but flagged as not simple.
    """
    F = finite_field(q)
    one = 1
    minus_one = int(F.neg[1])
    g = F.primitive_element()
    lam2 = int(F.mul[g, g])
    basis = [F.p ** i for i in range(F.k)]
    gens = [mobius(F, one, t, 0, one) for t in basis]
    gens.append(mobius(F, lam2, 0, 0, one))
    n_perm = mobius(F, 0, minus_one, one, 0)
    gens.append(n_perm)
    G = from_permutations(gens, q + 1, label=f"PSL(2,{q})")
    expected = q * (q * q - 1) // gcd(2, q - 1)
    assert G.order == expected, f"|PSL(2,{q})| = {G.order}, expected {expected}"

    translation = {t: G.index_of(mobius(F, one, t, 0, one)) for t in range(q)}
    U = Subgroup.from_ids(G, translation.values())
    h_gen = G.index_of(mobius(F, lam2, 0, 0, one))
    powers = [0]
    while True:
        nxt = G.table[powers[-1]][h_gen]
        if nxt == 0:
            break
        powers.append(nxt)
    H = Subgroup.from_ids(G, powers)
    n = G.index_of(n_perm)
    inf = q
    B = Subgroup.from_ids(G, [x for x in range(G.order) if G.elements[x][inf] == inf])
    N = Subgroup.from_ids(G, list(H.elements) + [G.table[n][h] for h in H.elements])
    V = U.conjugate_by(n)

    assert U.order == q
    assert H.order == (q - 1) // gcd(2, q - 1)
    assert B.order == H.order * U.order and U.is_subgroup_of(B) and H.is_subgroup_of(B)
    assert all(U.conjugate_by(b) == U for b in B.elements), "U is not normal in B"
    assert G.table[n][n] == 0 and not H.mask[n]
    for t in range(q):
        lower = mobius(F, one, 0, t, one)
        assert V.mask[G.index_of(lower)], "nUn is not the lower unipotent group"
    p_part = F.p ** _valuation(G.order, F.p)
    assert U.order == p_part and (G.order // U.order) % F.p != 0
    points = tuple(str(i) for i in range(q)) + ("inf",)
    return Psl2Context(q, F, G, B, U, H, N, V, n, h_gen, tuple(powers), translation,
                       simple=q >= 4, points=points)


def _valuation(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def verify_normal_form(ctx: Psl2Context) -> bool:
    """Every element is exactly one of h u or u' n h u."""
    G = ctx.group
    U, H = ctx.U.array, ctx.H.array
    counts = np.zeros(G.order, dtype=np.int64)
    hu = G.mul[np.ix_(H, U)].ravel()
    np.add.at(counts, hu, 1)
    nh = G.mul[ctx.n, H]
    unh = G.mul[np.ix_(U, nh)].ravel()
    unhu = G.mul[np.ix_(unh, U)].ravel()
    np.add.at(counts, unhu, 1)
    return (G.order == H.size * U.size + U.size * H.size * U.size
            and bool((counts == 1).all()))


def _unhu(ctx: Psl2Context, h: int) -> np.ndarray:
    G = ctx.group
    U = ctx.U.array
    nh = G.table[ctx.n][h]
    return np.unique(G.mul[np.ix_(G.mul[U, nh], U)].ravel())


def verify_unhu(ctx: Psl2Context) -> bool:
    """(UnhU)(Unh'U) ⊇ Unh''U for all h, h', h'' in H, and H ⊆ UnUnUn."""
    G = ctx.group
    U = ctx.U.array
    Un = G.mul[U, ctx.n]
    UnUn = np.nonzero(set_product(G, Un, Un))[0]
    UnUnUn = set_product(G, UnUn, Un)
    if not UnUnUn[ctx.H.array].all():
        return False
    doubles = {h: _unhu(ctx, h) for h in ctx.H.elements}
    for h in ctx.H.elements:
        for h2 in ctx.H.elements:
            prod = set_product(G, doubles[h], doubles[h2])
            for h3 in ctx.H.elements:
                if not prod[doubles[h3]].all():
                    return False
    return True


def find_vh(ctx: Psl2Context, h: int) -> int:
    """Smallest v in U with nhU ⊆ v · nhU · nhU."""
    G = ctx.group
    if not ctx.H.mask[h]:
        raise ValueError(f"{h} is not in H")
    U = ctx.U.array
    nhU = G.mul[G.table[ctx.n][h], U]
    target = set_product(G, nhU, nhU)
    for v in U:
        if target[G.mul[G.inv[v], nhU]].all():
            return int(v)
    raise VhNotFound(f"no v in U for h = {h}; the double-coset lemma fails (bug)")


# -------------------------------------------------------------- construction

def _branch_a(ctx: Psl2Context, trace: dict) -> CompleteMapping:
    """q = 1 mod 4: coset triple over G/U built from a near mapping of H."""
    G, U, n = ctx.group, ctx.U, ctx.n
    t = G.table
    cs = coset_space(G, U, "left")
    coset = cs.coset_of.tolist()
    m = ctx.H.order
    hp = ctx.h_powers
    near = near_cm_cyclic(m)
    vh = [find_vh(ctx, hp[i]) for i in range(m)]
    trace["v_h"] = {str(i): vh[i] for i in range(m)}
    trace["h_generator"] = ctx.h_gen

    # index set: H (residues) then U x H
    index = [("h", i) for i in range(m)] + [("uh", u, i) for u in U.elements for i in range(m)]
    pos = {key: k for k, key in enumerate(index)}
    x, y, z = [], [], []
    for key in index:
        if key[0] == "h":
            i = key[1]
            x.append(coset[hp[i]])
            y.append(coset[hp[near.alpha[i]]])
            z.append(coset[hp[near.beta[i]]])
        else:
            _, u, i = key
            unh = t[t[u][n]][hp[i]]
            x.append(coset[t[t[u][vh[i]]][t[n][hp[i]]]])
            y.append(coset[unh])
            z.append(coset[unh])
    # ζ = α(1)^-1, as a residue
    zeta = (-near.alpha[0]) % m
    v_zeta = vh[zeta]
    n_zeta = t[n][hp[zeta]]
    i1, i2, i3 = pos[("h", 0)], pos[("uh", v_zeta, 0)], pos[("uh", 0, zeta)]
    x[i1], y[i1], z[i1] = coset[t[t[v_zeta][vh[0]]][n]], coset[t[v_zeta][n]], coset[0]
    x[i2], y[i2], z[i2] = coset[t[v_zeta][n_zeta]], coset[hp[near.alpha[0]]], coset[t[v_zeta][n]]
    x[i3], y[i3], z[i3] = coset[0], coset[n_zeta], coset[n_zeta]
    trace["zeta"] = hp[zeta]
    trace["v_zeta"] = v_zeta

    for k in range(len(index)):
        prod = set_product(G, cs.members(x[k]), cs.members(y[k]))
        if not prod[cs.members(z[k])].all():
            raise AssertionError(f"tweaked triple fails containment at index {index[k]}")
    trace["containment_checked"] = len(index)
    triple = CosetTriple(G, U, tuple(x), tuple(y), tuple(z))
    return lift_lcst(triple, cm_odd(U.local[0]))


def _branch_b(ctx: Psl2Context, trace: dict) -> CompleteMapping:
    """q = 3 mod 4: B has odd order."""
    B = ctx.B
    trace["double_cosets"] = 2
    return lift_dcst(ctx.group, B, cm_odd(B.local[0]))


def _branch_c(ctx: Psl2Context, trace: dict) -> CompleteMapping:
    """q even: B = H ⋉ U with U elementary abelian and H of odd order."""
    Bl, embed = ctx.B.local
    pos = {int(g): i for i, g in enumerate(embed)}
    U_in_B = Subgroup.from_ids(Bl, [pos[u] for u in ctx.U.elements])
    found = search(U_in_B.local[0])
    if isinstance(found, (NotFound, BudgetExhausted)):
        raise AssertionError(f"no complete mapping of U found: {found}")
    Q, _ = quotient(Bl, U_in_B)
    cm_B = compose_normal(Bl, U_in_B, found, cm_odd(Q))
    trace["u_search"] = "found"
    return lift_dcst(ctx.group, ctx.B, cm_B)


def build_cm_psl2(q: int, trace: dict | None = None) -> CompleteMapping:
    """A verified complete mapping of PSL(2, q).

    Branch a (q = 1 mod 4) tweaks a coset triple over U; branch b
    (q = 3 mod 4) lifts cm_odd(B) over the B double cosets; branch c (q even)
    composes a mapping of B from U and B/U, then lifts it the same way.
    """
    trace = trace if trace is not None else {}
    ctx = psl2(q)
    trace.update({"q": q, "order": ctx.group.order, "U": ctx.U.order, "H": ctx.H.order,
                  "n": ctx.n})
    if q % 2 == 0:
        if q == 2:
            raise BadGroup("PSL(2,2) ≅ S3 has a cyclic Sylow 2-subgroup")
        branch, build = "c", _branch_c
    elif q % 4 == 1:
        branch, build = "a", _branch_a
    else:
        branch, build = "b", _branch_b
    trace["branch"] = branch
    cm = build(ctx, trace)
    if not verify(cm):
        raise AssertionError("PSL(2,q) construction produced an invalid mapping")
    trace["verified"] = True
    return cm
