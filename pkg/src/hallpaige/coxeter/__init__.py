"""Coxeter systems and maximal parabolic double cosets."""

from .system import (
    CoxeterSystem,
    Word,
    canonical_word,
    coxeter_system,
    format_word,
    is_reduced,
    length,
    parse_type,
    parse_word,
)
from .parabolic import ParabolicDoubleCosets, double_coset_reps, min_coset_reps
from .hecke import (
    P2Report,
    YuckCertificate,
    certificates,
    default_drop,
    hecke_double_coset_product,
    verify_p2,
    verify_yuck_form,
)
