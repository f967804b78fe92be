"""Named group families, the textual group descriptor grammar, and the test catalog.

Element numbering per family:

* ``cyclic:n``       residue ``i`` has id ``i``.
* ``dihedral:n``     order ``2n``; ``r^i s^j`` (``j`` in {0, 1}) has id ``i + n*j``,
                     with ``s r s = r^-1``.
* ``sym:n``          permutations of ``0..n-1`` in lexicographic order
                     (identity first); product is composition, right map first.
* ``alt:n``          the even permutations, in the same order.
* ``ea:p^k``         vector with base-``p`` digits ``(d_0, ..., d_{k-1})`` has
                     id ``sum d_j p^j``; addition digit-wise mod ``p``.
* ``q8``             ids 0..7 are ``1, -1, i, -i, j, -j, k, -k``.
* ``prod:(A,B)``     ``(a, b)`` has id ``a*|B| + b``.
* ``psl2:q``         Mobius maps on the projective line, see :mod:`hallpaige.psl2`.

Descriptor grammar::

    spec   := "cyclic:" n | "dihedral:" n | "sym:" n | "alt:" n | "q8"
            | "ea:" p "^" k | "prod:(" spec "," spec ")"
            | "cayley:" path | "perm:" path | "psl2:" q
"""

from __future__ import annotations

import itertools
from pathlib import Path

import numpy as np

from .errors import UnsupportedSpec
from .groups import (
    Group,
    direct_product,
    from_cayley_table,
    group_from_permutation_list,
    parse_cayley_text,
    parse_permutation_text,
)


def cyclic(n: int) -> Group:
    if n < 1:
        raise UnsupportedSpec(f"cyclic group needs n >= 1, got {n}")
    a = np.arange(n)
    return from_cayley_table((a[:, None] + a[None, :]) % n, label=f"C{n}",
                             elements=list(range(n)), check=False)


def dihedral(n: int) -> Group:
    if n < 1:
        raise UnsupportedSpec(f"dihedral group needs n >= 1, got {n}")
    elems = [(i, j) for j in (0, 1) for i in range(n)]
    table = np.empty((2 * n, 2 * n), dtype=np.int64)
    for x, (a, b) in enumerate(elems):
        for y, (c, d) in enumerate(elems):
            i = (a + (c if b == 0 else -c)) % n
            table[x, y] = i + n * ((b + d) % 2)
    return from_cayley_table(table, label=f"D{n}", elements=elems, check=False)


def _parity(p) -> int:
    p = list(p)
    sign = 0
    seen = [False] * len(p)
    for i in range(len(p)):
        if not seen[i]:
            j, length = i, 0
            while not seen[j]:
                seen[j] = True
                j = p[j]
                length += 1
            sign += length - 1
    return sign % 2


def symmetric(n: int) -> Group:
    if not 1 <= n <= 7:
        raise UnsupportedSpec(f"symmetric groups are supported for 1 <= n <= 7, got {n}")
    perms = list(itertools.permutations(range(n)))
    return group_from_permutation_list(perms, label=f"S{n}", check=False)


def alternating(n: int) -> Group:
    if not 1 <= n <= 7:
        raise UnsupportedSpec(f"alternating groups are supported for 1 <= n <= 7, got {n}")
    perms = [p for p in itertools.permutations(range(n)) if _parity(p) == 0]
    return group_from_permutation_list(perms, label=f"A{n}", check=False)


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, int(p ** 0.5) + 1))


def elementary_abelian(p: int, k: int) -> Group:
    if not _is_prime(p) or k < 1:
        raise UnsupportedSpec(f"elementary abelian group needs prime p and k >= 1, got {p}^{k}")
    n = p ** k
    digits = np.array([[(i // p ** j) % p for j in range(k)] for i in range(n)])
    radix = p ** np.arange(k)
    table = ((digits[:, None, :] + digits[None, :, :]) % p) @ radix
    return from_cayley_table(table, label=f"E{p}^{k}", elements=[tuple(d) for d in digits.tolist()],
                             check=False)


_QUAT_NAMES = ("1", "-1", "i", "-i", "j", "-j", "k", "-k")


def quaternion8() -> Group:
    # unit basis products: (basis, sign)
    basis_mul = {
        ("1", "1"): ("1", 1), ("1", "i"): ("i", 1), ("1", "j"): ("j", 1), ("1", "k"): ("k", 1),
        ("i", "1"): ("i", 1), ("i", "i"): ("1", -1), ("i", "j"): ("k", 1), ("i", "k"): ("j", -1),
        ("j", "1"): ("j", 1), ("j", "i"): ("k", -1), ("j", "j"): ("1", -1), ("j", "k"): ("i", 1),
        ("k", "1"): ("k", 1), ("k", "i"): ("j", 1), ("k", "j"): ("i", -1), ("k", "k"): ("1", -1),
    }

    def split(name):
        return (name[1:], -1) if name.startswith("-") else (name, 1)

    table = np.empty((8, 8), dtype=np.int64)
    for x, a in enumerate(_QUAT_NAMES):
        for y, b in enumerate(_QUAT_NAMES):
            (ba, sa), (bb, sb) = split(a), split(b)
            base, s = basis_mul[(ba, bb)]
            sign = sa * sb * s
            table[x, y] = _QUAT_NAMES.index(base if sign == 1 else "-" + base)
    return from_cayley_table(table, label="Q8", elements=list(_QUAT_NAMES))


# ------------------------------------------------------------ descriptors

def _split_pair(body: str) -> tuple[str, str]:
    depth = 0
    for i, ch in enumerate(body):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            return body[:i].strip(), body[i + 1:].strip()
    raise UnsupportedSpec(f"expected 'A,B' inside prod:(...), got {body!r}")


def _int(text: str, what: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise UnsupportedSpec(f"{what} must be an integer, got {text!r}") from None


def builtin(spec: str) -> Group:
    """Build a group from a textual descriptor (see module docstring)."""
    spec = spec.strip()
    if spec == "q8":
        return quaternion8()
    family, sep, arg = spec.partition(":")
    if not sep:
        raise UnsupportedSpec(f"unrecognised group descriptor {spec!r}")
    if family == "cyclic":
        return cyclic(_int(arg, "n"))
    if family == "dihedral":
        return dihedral(_int(arg, "n"))
    if family == "sym":
        return symmetric(_int(arg, "n"))
    if family == "alt":
        return alternating(_int(arg, "n"))
    if family == "ea":
        p, hat, k = arg.partition("^")
        return elementary_abelian(_int(p, "p"), _int(k, "k") if hat else 1)
    if family == "prod":
        if not (arg.startswith("(") and arg.endswith(")")):
            raise UnsupportedSpec(f"prod needs parentheses: {spec!r}")
        left, right = _split_pair(arg[1:-1])
        G, H = builtin(left), builtin(right)
        return direct_product(G, H, label=f"({G.label}x{H.label})")
    if family == "cayley":
        try:
            text = Path(arg).read_text()
        except OSError as exc:
            raise UnsupportedSpec(f"cannot read Cayley table {arg!r}: {exc}") from None
        G = parse_cayley_text(text)
        return G
    if family == "perm":
        try:
            text = Path(arg).read_text()
        except OSError as exc:
            raise UnsupportedSpec(f"cannot read permutation file {arg!r}: {exc}") from None
        try:
            return parse_permutation_text(text, label=Path(arg).stem)
        except ValueError as exc:
            raise UnsupportedSpec(str(exc)) from None
    if family == "psl2":
        from .psl2 import psl2
        return psl2(_int(arg, "q")).group
    raise UnsupportedSpec(f"unrecognised group family {family!r}")


# ---------------------------------------------------------------- catalog

def _base_specs(max_order: int) -> list[tuple[str, int]]:
    out: list[tuple[str, int]] = []
    for n in range(2, max_order + 1):
        out.append((f"cyclic:{n}", n))
    for n in range(3, max_order // 2 + 1):
        out.append((f"dihedral:{n}", 2 * n))
    for p in (2, 3, 5, 7):
        k = 2
        while p ** k <= max_order:
            out.append((f"ea:{p}^{k}", p ** k))
            k += 1
    for name, order in (("q8", 8), ("sym:3", 6), ("alt:4", 12), ("sym:4", 24),
                        ("alt:5", 60), ("sym:5", 120)):
        if order <= max_order:
            out.append((name, order))
    return out


def catalog_specs(max_order: int = 64, products: bool = True) -> list[str]:
    """Deterministic list of descriptors for the test catalog.

    Contains the trivial group, every base family member up to ``max_order``
    and, if ``products``, every unordered pair of nontrivial base groups whose
    product has order at most ``max_order``.
    """
    base = _base_specs(max_order)
    specs = ["cyclic:1"] + [s for s, _ in base]
    if products:
        for (a, na), (b, nb) in itertools.combinations_with_replacement(base, 2):
            if na * nb <= max_order:
                specs.append(f"prod:({a},{b})")
    return specs
