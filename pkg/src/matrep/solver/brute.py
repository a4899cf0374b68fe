"""Exhaustive search; the reference oracle for everything else."""

from __future__ import annotations

from ..errors import SearchSpaceTooLarge
from ..gf import make_field
from ..search import first_point
from ..sysgen import PolySystem
from .types import SolutionPoint

POINT_GUARD = 10 ** 8


def _equations(S):
    if isinstance(S, PolySystem):
        return S.polys, S.t
    eqs = list(S)
    return eqs, eqs[0].nvars


def brute_force_solve(S, field, guard: int = POINT_GUARD):
    """Canonically least common zero over ``field``, or None.

    ``S`` is a PolySystem or a list of polynomials sharing one ambient ring.
    """
    eqs, t = _equations(S)
    if field.q ** t > guard:
        raise SearchSpaceTooLarge(f"{field.q}^{t} points exceed the guard {guard}")
    codes = first_point(eqs, t, field)
    return None if codes is None else SolutionPoint.from_codes(field, codes)


def brute_force_up_to(S, p: int, k_cap: int, guard: int = POINT_GUARD):
    """First point over GF(p^k) for k = 1, 2, ... k_cap."""
    for k in range(1, k_cap + 1):
        pt = brute_force_solve(S, make_field(p, k), guard)
        if pt is not None:
            return pt
    return None
