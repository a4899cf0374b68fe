"""Per-prime verdicts: a point, a certificate, or neither within the caps."""

from __future__ import annotations

from ..errors import CapExceeded, SearchSpaceTooLarge
from .brute import brute_force_solve, brute_force_up_to
from .certificate import default_subsystems, nullstellensatz_certificate
from .elimination import _as_list, _expanded, _verify, build_chain, elimination_solve, iter_chain_points
from .types import SolutionPoint

CONSISTENT = "consistent"
INCONSISTENT = "inconsistent"
INCONCLUSIVE = "inconclusive"


def find_point(S, p: int, k_cap: int):
    """A point over some GF(p^k), k <= k_cap, or None (elimination, then brute force)."""
    try:
        return elimination_solve(S, p, k_cap)
    except CapExceeded:
        return None
    except SearchSpaceTooLarge:
        pass
    try:
        return brute_force_up_to(S, p, k_cap)
    except SearchSpaceTooLarge:
        return None


def solve_in_field(S, field):
    """Least point over exactly this field, or None (elimination, then brute force)."""
    eqs, t = _as_list(S)
    try:
        chain = build_chain(_expanded(eqs), t, field.p)
    except SearchSpaceTooLarge:
        return brute_force_solve(S, field)
    codes = next(iter_chain_points(chain, field), None)
    if codes is None:
        return None
    _verify(eqs, t, field, codes)
    return SolutionPoint.from_codes(field, codes)


def witness_prime_scan(S, primes, k_cap: int = 4, degree_cap: int = 6, details: dict | None = None):
    """Map each prime to consistent / inconsistent / inconclusive.

    A prime is consistent when a point is found, inconsistent when a
    certificate modulo p is found, and inconclusive otherwise.  The
    certificate search only runs when no point was found, so at most one
    piece of evidence is produced per prime.  ``details`` (a dict) receives
    the point or certificate report for each prime.
    """
    verdicts = {}
    subsystems = default_subsystems(S)
    for p in primes:
        pt = find_point(S, p, k_cap)
        if pt is not None:
            verdicts[p] = CONSISTENT
            if details is not None:
                details[p] = pt
            continue
        try:
            rep = nullstellensatz_certificate(S, p, degree_cap, subsystems)
        except CapExceeded as exc:
            verdicts[p] = INCONCLUSIVE
            if details is not None:
                details[p] = exc.report
            continue
        verdicts[p] = INCONSISTENT
        if details is not None:
            details[p] = rep
    return verdicts
