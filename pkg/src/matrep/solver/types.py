"""Result records returned by the solvers, with their JSON forms."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Optional

from ..gf import FieldElement, FieldSpec, make_field
from ..poly import Polynomial


def _field_json(F: FieldSpec) -> dict:
    return {"p": F.p, "k": F.k, "modulus": list(F.modulus), "text": F.to_text()}


def _field_from_json(data) -> FieldSpec:
    F = make_field(data["p"], data["k"])
    if list(F.modulus) != list(data["modulus"]):
        raise ValueError(f"modulus {data['modulus']} differs from the canonical one")
    return F


@dataclass(frozen=True)
class SolutionPoint:
    field: FieldSpec
    values: tuple  # FieldElements

    @classmethod
    def from_codes(cls, field, codes):
        return cls(field, tuple(field.element(c) for c in codes))

    @property
    def codes(self) -> tuple:
        return tuple(v.code for v in self.values)

    def to_json(self) -> dict:
        return {"field": _field_json(self.field), "values": [v.to_text() for v in self.values]}

    @classmethod
    def from_json(cls, data) -> "SolutionPoint":
        F = _field_from_json(data["field"])
        return cls(F, tuple(F.parse_element(s) for s in data["values"]))


@dataclass(frozen=True)
class RepMatrix:
    field: FieldSpec
    entries: tuple  # rows of FieldElements

    @classmethod
    def from_codes(cls, field, rows):
        return cls(field, tuple(tuple(field.element(c) for c in row) for row in rows))

    @property
    def codes(self) -> tuple:
        return tuple(tuple(x.code for x in row) for row in self.entries)

    @property
    def r(self) -> int:
        return len(self.entries)

    @property
    def n(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    def to_json(self) -> dict:
        return {
            "field": _field_json(self.field),
            "rows": [[x.to_text() for x in row] for row in self.entries],
        }

    @classmethod
    def from_json(cls, data) -> "RepMatrix":
        F = _field_from_json(data["field"])
        return cls(F, tuple(tuple(F.parse_element(s) for s in row) for row in data["rows"]))

    def to_text(self) -> str:
        """Rows of entries; prime-field entries print as integers."""
        def show(x: FieldElement):
            if self.field.k == 1:
                return str(x.code)
            return "[" + ",".join(map(str, x.coeffs)) + "]"

        cells = [[show(x) for x in row] for row in self.entries]
        w = max((len(c) for row in cells for c in row), default=1)
        return "\n".join(" ".join(c.rjust(w) for c in row) for row in cells)


def _frac_text(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def rational_poly_text(f: Polynomial, denom: int = 1) -> str:
    """Text of f / denom with reduced fractional coefficients."""
    if f.is_zero():
        return "0"
    parts = []
    for idx, (e, c) in enumerate(f.sorted_terms()):
        q = Fraction(c, denom)
        mono = "*".join(f"x{i + 1}" if k == 1 else f"x{i + 1}^{k}" for i, k in enumerate(e) if k)
        mag = abs(q)
        if mono:
            body = mono if mag == 1 else f"{_frac_text(mag)}*{mono}"
        else:
            body = _frac_text(mag)
        if idx == 0:
            parts.append(("-" if q < 0 else "") + body)
        else:
            parts.append((" - " if q < 0 else " + ") + body)
    return "".join(parts)


@dataclass
class CertificateReport:
    """Outcome of a Nullstellensatz certificate search.

    Over Q the cofactors are ``g_j = numerators[j] / integer_witness``, so
    ``sum numerators[j] * f_j = integer_witness`` holds in Z[x].  Over GF(p)
    the numerators are the cofactors themselves (integer representatives)
    and ``integer_witness`` is None.
    """

    domain: str  # "QQ" or "GF(p)"
    consistent_over_rationals: Optional[bool]
    cofactor_degree: Optional[int]
    numerators: Optional[list] = None
    integer_witness: Optional[int] = None
    prime_verdicts: dict = dc_field(default_factory=dict)
    matrix_shapes: list = dc_field(default_factory=list)  # (delta, rows, columns)
    degree_cap: int = 0
    support: Optional[list] = None  # indices of equations with a nonzero cofactor slot

    @property
    def found(self) -> bool:
        return self.numerators is not None

    @property
    def cofactors(self):
        if self.numerators is None:
            return None
        if self.domain == "QQ":
            return [rational_poly_text(g, self.integer_witness) for g in self.numerators]
        return [g.to_text() for g in self.numerators]

    def to_json(self) -> dict:
        return {
            "domain": self.domain,
            "consistent_over_rationals": self.consistent_over_rationals,
            "cofactor_degree": self.cofactor_degree,
            "cofactors": self.cofactors,
            "integer_witness": None if self.integer_witness is None else str(self.integer_witness),
            "prime_verdicts": {str(p): v for p, v in sorted(self.prime_verdicts.items())},
            "matrix_shapes": [
                {"delta": d, "rows": rows, "columns": cols, "equations": neq}
                for d, rows, cols, neq in self.matrix_shapes
            ],
            "degree_cap": self.degree_cap,
            "support": self.support,
        }
