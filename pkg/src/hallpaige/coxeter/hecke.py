"""0-Hecke double-coset products and the D^2 ⊇ D check for maximal parabolics.

The product set P(w, u) is the set of v with BvB inside (BwB)(BuB). It is
computed from P(ε, u) = {u} by prepending the letters of w right to left:
multiplying by s sends v to {sv} when sv is longer, else to {sv, v}.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from ..errors import MissingCertificate, NonCommutingCore, SetTooLarge, Unsupported
from .parabolic import double_coset_reps
from .system import CoxeterSystem, Word, format_word, parse_word

DEFAULT_CAP = 10**6


def hecke_product_elements(system: CoxeterSystem, w: Sequence[int], u: Sequence[int],
                           cap: int = DEFAULT_CAP) -> set:
    current = {system.element(u)}
    for s in reversed(tuple(w)):
        nxt = set()
        for v in current:
            nxt.add(system.lmul(s, v))
            if system.is_left_descent(v, s):
                nxt.add(v)
        if len(nxt) > cap:
            raise SetTooLarge(f"product set exceeds {cap} elements")
        current = nxt
    return current


def hecke_double_coset_product(system: CoxeterSystem, w: Sequence[int], u: Sequence[int],
                               cap: int = DEFAULT_CAP) -> set[Word]:
    """The product set as canonical (ShortLex) reduced words."""
    return {system.reduced_word(v) for v in hecke_product_elements(system, w, u, cap)}


# -- conjugated commuting products --------------------------------------------

@dataclass(frozen=True)
class YuckCertificate:
    """``w = u^-1 s_1 ... s_p u`` with the s_i pairwise commuting generators."""

    u: Word
    core: tuple[int, ...]

    def word(self) -> Word:
        return tuple(reversed(self.u)) + self.core + self.u


def verify_yuck_form(system: CoxeterSystem, w: Sequence[int], certificate) -> bool:
    """True iff reverse(u)·core·u is reduced and equals ``w`` in the group."""
    if not isinstance(certificate, YuckCertificate):
        u, core = certificate
        certificate = YuckCertificate(tuple(u), tuple(sorted(core)))
    core = certificate.core
    for i, s in enumerate(core):
        for t in core[i + 1:]:
            if s == t or not system.commute(s, t):
                raise NonCommutingCore(f"generators {s} and {t} do not commute")
    word = certificate.word()
    x = system.element(word)
    return system.length_of(x) == len(word) and x == system.element(w)


def _cert(u: str | Sequence[int], core: str | Sequence[int]) -> YuckCertificate:
    u = parse_word(u) if isinstance(u, str) else tuple(u)
    core = parse_word(core) if isinstance(core, str) else tuple(core)
    return YuckCertificate(u, core)


# Published certificates, keyed by (type, rank, dropped generator). Each
# class other than ε and r is written as u^-1 · core · u.
PUBLISHED = {
    ("E", 6, 6): [_cert("356", "24")],
    ("E", 7, 7): [_cert("3567", "24"), _cert("635234123567", "457")],
    ("E", 8, 8): [_cert("35678", "24"), _cert("6352341235678", "457"),
                  _cert("7653423567123564352341235678", "8")],
    ("F", 4, 4): [_cert("34", "2"), _cert("234", "13"), _cert("3213234", "4")],
}

DEFAULT_DROP = {"A": lambda l: l, "B": lambda l: 1, "C": lambda l: 1, "D": lambda l: 1,
                "E": lambda l: l, "F": lambda l: 4, "I": lambda l: 1}


def default_drop(system: CoxeterSystem) -> int:
    return DEFAULT_DROP[system.kind](system.rank)


def certificates(system: CoxeterSystem, r: int) -> list[YuckCertificate]:
    """Stored certificates for the maximal parabolic missing ``r``.

    Always includes ε and r itself. The classical families follow the
    published rep formulas (type B/C and D in Bourbaki numbering, with the
    dropped node at the end of the type-A chain).
    """
    l = system.rank
    out = [YuckCertificate((), ()), YuckCertificate((), (r,))]
    key = (system.kind, l, r)
    if system.kind == "E" and system.labeling != "chain":
        raise MissingCertificate(f"no stored certificates for E{l} with {system.labeling} labels")
    if key in PUBLISHED:
        return out + PUBLISHED[key]
    if system.kind == "I" and r in (1, 2):
        s = 3 - r
        m = system.dihedral_m
        # r (s r)^i  and  s with u = r (s r)^i cover every odd length < 2m
        for i in range(m):
            sr = (s, r) * i
            out.append(YuckCertificate(sr, (r,)))
            out.append(YuckCertificate((r,) + sr, (s,)))
        return out
    if system.kind == "A" and r == l:
        return out
    if system.kind in ("B", "C") and r == 1:
        return out + [YuckCertificate(tuple(range(l - 1, 0, -1)), (l,))]
    if system.kind == "D" and r == 1:
        return out + [YuckCertificate(tuple(range(l - 2, 0, -1)), (l - 1, l))]
    raise MissingCertificate(f"no stored certificates for {system.name} with generator {r} dropped")


@dataclass(frozen=True)
class ClassCheck:
    rep: Word
    length: int
    method: str
    passed: bool
    certificate: YuckCertificate | None = None

    def as_dict(self) -> dict:
        d = {"rep": format_word(self.rep), "length": self.length,
             "method": self.method, "pass": self.passed}
        if self.certificate is not None:
            d["certificate"] = {"u": format_word(self.certificate.u),
                                "core": format_word(self.certificate.core)}
        return d


@dataclass(frozen=True)
class P2Report:
    system: str
    drop: int
    method: str
    classes: tuple[ClassCheck, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.classes)

    def as_dict(self) -> dict:
        return {"system": self.system, "drop": self.drop, "method": self.method,
                "pass": self.passed, "classes": [c.as_dict() for c in self.classes]}


def verify_p2(system: CoxeterSystem, r: int | None = None, method: str | None = None,
              cap: int = DEFAULT_CAP) -> P2Report:
    """Check that each parabolic double coset lies in its square.

    ``product``: the minimal rep w must lie in P(w, w).
    ``form``: w must match a stored certificate u^-1 · core · u.
    The default method is ``form`` for E7 and E8 and ``product`` otherwise.
    """
    if r is None:
        r = default_drop(system)
    if method is None:
        method = "form" if (system.kind, system.rank) in (("E", 7), ("E", 8)) else "product"
    if method not in ("product", "form"):
        raise Unsupported(f"unknown method {method!r}")
    dc = double_coset_reps(system, r)
    checks = []
    certs = certificates(system, r) if method == "form" else []
    for w in dc.class_reps:
        x = system.element(w)
        if method == "product":
            ok = x in hecke_product_elements(system, w, w, cap)
            checks.append(ClassCheck(w, len(w), method, ok))
            continue
        found = None
        for c in certs:
            if system.element(c.word()) == x:
                found = c
                break
        if found is None:
            raise MissingCertificate(f"no stored certificate for class rep {format_word(w)}")
        checks.append(ClassCheck(w, len(w), method, verify_yuck_form(system, w, found), found))
    return P2Report(system.name, r, method, tuple(checks))
