"""Matroid representability over finite fields: polynomial systems, elimination,
Nullstellensatz certificates and exact bound arithmetic."""

from .gf import FieldSpec, field_of_order, make_field
from .matroid import Matroid, catalog, fano, nonfano, parse_matroid, uniform, validate_bases, with_loops
from .poly import Polynomial, parse_polynomial, resultant
from .sysgen import PolySystem, params, reduce_system, system_from_matroid
from .tower import TowerNumber

__version__ = "0.1.0"

__all__ = [
    "FieldSpec", "Matroid", "PolySystem", "Polynomial", "TowerNumber", "catalog", "fano",
    "field_of_order", "make_field", "nonfano", "params", "parse_matroid", "parse_polynomial",
    "reduce_system", "resultant", "system_from_matroid", "uniform", "validate_bases", "with_loops",
]
