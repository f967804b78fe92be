"""Complete mappings of finite groups: search, verification and lifting constructions."""

from .analysis import hall_paige_verdict, sylow2
from .families import builtin
from .groups import Group, Subgroup
from .mapping import CompleteMapping, search, verify

__all__ = ["Group", "Subgroup", "CompleteMapping", "builtin", "hall_paige_verdict",
           "search", "sylow2", "verify"]
