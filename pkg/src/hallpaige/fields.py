"""Small finite fields GF(p^k), q <= 16, as exhaustive tables.

An element is an int whose base-p digits are the coefficients of a
polynomial in x (least significant digit = constant term). Extension fields
reduce modulo a fixed irreducible polynomial:

    GF(4)  x^2 + x + 1
    GF(8)  x^3 + x + 1
    GF(9)  x^2 + 1
    GF(16) x^4 + x + 1
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import UnsupportedQ

MAX_Q = 16

# coefficients from the constant term up, leading 1 omitted
IRREDUCIBLE = {
    (2, 2): (1, 1),
    (2, 3): (1, 1, 0),
    (3, 2): (1, 0),
    (2, 4): (1, 1, 0, 0),
}


def prime_power(q: int) -> tuple[int, int]:
    """``(p, k)`` with ``q = p^k``, or UnsupportedQ."""
    if q < 2:
        raise UnsupportedQ(f"{q} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    k, r = 0, q
    while r % p == 0:
        r //= p
        k += 1
    if r != 1:
        raise UnsupportedQ(f"{q} is not a prime power")
    return p, k


def _digits(a: int, p: int, k: int) -> list[int]:
    out = []
    for _ in range(k):
        a, d = divmod(a, p)
        out.append(d)
    return out


def _undigits(ds, p: int) -> int:
    return sum(int(d) * p ** i for i, d in enumerate(ds))


@dataclass(frozen=True, eq=False)
class FiniteField:
    p: int
    k: int
    add: np.ndarray = field(repr=False)
    mul: np.ndarray = field(repr=False)
    neg: np.ndarray = field(repr=False)
    inv: np.ndarray = field(repr=False)     # inv[0] is -1

    @property
    def q(self) -> int:
        return self.p ** self.k

    def sub(self, a: int, b: int) -> int:
        return int(self.add[a, self.neg[b]])

    def div(self, a: int, b: int) -> int:
        if b == 0:
            raise ZeroDivisionError("division by zero in GF(%d)" % self.q)
        return int(self.mul[a, self.inv[b]])

    def element_order(self, a: int) -> int:
        if a == 0:
            raise ValueError("0 has no multiplicative order")
        x, n = a, 1
        while x != 1:
            x = int(self.mul[x, a])
            n += 1
        return n

    def primitive_element(self) -> int:
        """Smallest generator of the multiplicative group."""
        return next(a for a in range(1, self.q) if self.element_order(a) == self.q - 1)

    def squares(self) -> list[int]:
        return sorted({int(self.mul[a, a]) for a in range(1, self.q)})


def finite_field(q: int) -> FiniteField:
    if q > MAX_Q:
        raise UnsupportedQ(f"q = {q} exceeds the supported maximum {MAX_Q}")
    p, k = prime_power(q)
    if k > 1 and (p, k) not in IRREDUCIBLE:
        raise UnsupportedQ(f"no irreducible polynomial stored for GF({q})")
    add = np.zeros((q, q), dtype=np.int64)
    mul = np.zeros((q, q), dtype=np.int64)
    modulus = IRREDUCIBLE.get((p, k), ())
    for a in range(q):
        da = _digits(a, p, k)
        for b in range(q):
            db = _digits(b, p, k)
            add[a, b] = _undigits([(x + y) % p for x, y in zip(da, db)], p)
            prod = [0] * (2 * k - 1)
            for i, x in enumerate(da):
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % p
            # reduce: x^k = -(modulus)
            for deg in range(2 * k - 2, k - 1, -1):
                c = prod[deg]
                if c:
                    prod[deg] = 0
                    for i, m in enumerate(modulus):
                        prod[deg - k + i] = (prod[deg - k + i] - c * m) % p
            mul[a, b] = _undigits(prod[:k], p)
    neg = np.array([int(np.nonzero(add[a] == 0)[0][0]) for a in range(q)], dtype=np.int64)
    inv = np.full(q, -1, dtype=np.int64)
    for a in range(1, q):
        hits = np.nonzero(mul[a] == 1)[0]
        if len(hits) != 1:
            raise AssertionError(f"GF({q}): {a} has {len(hits)} inverses")
        inv[a] = hits[0]
    F = FiniteField(p, k, add, mul, neg, inv)
    _check_axioms(F)
    return F


def _check_axioms(F: FiniteField) -> None:
    q = F.q
    A, M = F.add, F.mul
    r = np.arange(q)
    assert (A == A.T).all() and (M == M.T).all(), "not commutative"
    assert (A[0] == r).all() and (M[1] == r).all(), "bad identities"
    assert (A[A[:, :, None], r[None, None, :]] == A[r[:, None, None], A[None, :, :]]).all()
    assert (M[M[:, :, None], r[None, None, :]] == M[r[:, None, None], M[None, :, :]]).all()
    lhs = M[r[:, None, None], A[None, :, :]]
    rhs = A[M[:, :, None], M[:, None, :]]
    assert (lhs == rhs).all(), "not distributive"
    for a in range(1, q):
        assert sorted(M[a].tolist()) == list(range(q)), "zero divisors"
