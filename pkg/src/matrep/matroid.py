"""Matroids given by their bases, stored as bit sets.

Element ``i`` (1-indexed) corresponds to bit ``i - 1``.  All orderings of
sets in this module are "ascending bit-set order", i.e. numeric order of
the masks, unless stated otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from .errors import (
    BadParams,
    ElementOutOfRange,
    EmptyBases,
    ExchangeViolation,
    MatroidSyntaxError,
    UnknownName,
    WrongCardinality,
)

MAX_ELEMENTS = 16

# Fano plane nonbases under the binary labeling (element i <-> bits of i).
FANO_LINES = ((1, 2, 3), (1, 4, 5), (1, 6, 7), (2, 4, 6), (2, 5, 7), (3, 4, 7), (3, 5, 6))


def to_mask(elements: Iterable[int]) -> int:
    m = 0
    for e in elements:
        m |= 1 << (e - 1)
    return m


def from_mask(mask: int) -> tuple[int, ...]:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def rsubsets(n: int, r: int) -> list[int]:
    """All r-subsets of {1..n} as masks, ascending."""
    return sorted(to_mask(c) for c in combinations(range(1, n + 1), r))


@dataclass(frozen=True)
class Matroid:
    n: int
    r: int
    bases: frozenset  # of int masks

    def sorted_bases(self) -> list[int]:
        return sorted(self.bases)

    def is_basis(self, elements: Iterable[int]) -> bool:
        return to_mask(elements) in self.bases

    @property
    def loops(self) -> tuple[int, ...]:
        covered = 0
        for b in self.bases:
            covered |= b
        return tuple(e for e in range(1, self.n + 1) if not covered >> (e - 1) & 1)

    def __repr__(self):
        return f"Matroid(n={self.n}, r={self.r}, |bases|={len(self.bases)})"


def _check_exchange(bases: list[int]) -> None:
    basis_set = set(bases)
    for b1 in bases:
        for b2 in bases:
            if b1 == b2:
                continue
            only2 = b2 & ~b1
            for e in from_mask(b1 & ~b2):
                rest = b1 & ~(1 << (e - 1))
                if not any((rest | (1 << (f - 1))) in basis_set for f in from_mask(only2)):
                    raise ExchangeViolation(from_mask(b1), from_mask(b2), e)


def validate_bases(n: int, r: int, candidate_bases: Iterable[Iterable[int]]) -> Matroid:
    """Check the basis axioms and build a :class:`Matroid`.

    Raises ``EmptyBases``, ``WrongCardinality`` or ``ExchangeViolation``;
    the violation carries the first failing ``(B1, B2, e)`` in ascending
    order, so the verdict does not depend on how the input was listed.
    """
    if not (0 <= r <= n <= MAX_ELEMENTS):
        raise BadParams(f"need 0 <= r <= n <= {MAX_ELEMENTS}, got n={n}, r={r}")
    masks = set()
    for subset in candidate_bases:
        subset = tuple(subset)
        for e in subset:
            if not 1 <= e <= n:
                raise ElementOutOfRange(f"element {e} outside 1..{n}")
        if len(set(subset)) != r:
            raise WrongCardinality(f"set {sorted(set(subset))} does not have {r} elements")
        masks.add(to_mask(subset))
    if r == 0:
        # the empty set is the only basis of a rank-0 matroid
        return Matroid(n, 0, frozenset({0}))
    if not masks:
        raise EmptyBases(f"rank {r} matroid needs at least one basis")
    _check_exchange(sorted(masks))
    return Matroid(n, r, frozenset(masks))


def rank_of(M: Matroid, X: Iterable[int]) -> int:
    x = to_mask(X)
    return max((b & x).bit_count() for b in M.bases)


def dependent_rsets(M: Matroid) -> list[tuple[int, ...]]:
    return [from_mask(m) for m in rsubsets(M.n, M.r) if m not in M.bases]


# --- catalog -----------------------------------------------------------------

def uniform(r: int, n: int) -> Matroid:
    if not 0 <= r <= n:
        raise BadParams(f"uniform({r},{n}): need 0 <= r <= n")
    return validate_bases(n, r, combinations(range(1, n + 1), r))


def _fano_nonbases() -> list[tuple[int, ...]]:
    # element i is the GF(2)^3 vector with the bits of i; a triple is dependent
    # iff its vectors xor to zero
    return [c for c in combinations(range(1, 8), 3) if c[0] ^ c[1] ^ c[2] == 0]


def fano() -> Matroid:
    lines = set(_fano_nonbases())
    assert lines == set(FANO_LINES)
    return validate_bases(7, 3, (c for c in combinations(range(1, 8), 3) if c not in lines))


def nonfano() -> Matroid:
    F = fano()
    return validate_bases(7, 3, [from_mask(b) for b in F.bases] + [(1, 2, 3)])


def with_loops(base: Matroid, k: int) -> Matroid:
    if k < 0:
        raise BadParams("number of loops must be non-negative")
    return validate_bases(base.n + k, base.r, [from_mask(b) for b in base.bases])


def catalog(name: str, *params) -> Matroid:
    """Named matroids.

    ``catalog("uniform", 2, 4)``, ``catalog("fano")``, ``catalog("nonfano")``,
    ``catalog("with_loops", base, k)`` where ``base`` is a Matroid or a
    catalog spec string.  A single string like ``"uniform:2:4"`` or
    ``"with_loops:fano:2"`` is also accepted.
    """
    if not params and ":" in name:
        return parse_catalog_spec(name)
    try:
        if name == "uniform":
            r, n = (int(x) for x in params)
            return uniform(r, n)
        if name in ("fano", "nonfano"):
            if params:
                raise BadParams(f"{name} takes no parameters")
            return fano() if name == "fano" else nonfano()
        if name == "with_loops":
            base, k = params
            if isinstance(base, str):
                base = parse_catalog_spec(base)
            return with_loops(base, int(k))
    except (TypeError, ValueError) as exc:
        if isinstance(exc, BadParams):
            raise
        raise BadParams(f"bad parameters for {name}: {params!r}") from exc
    raise UnknownName(f"unknown catalog matroid {name!r}")


def parse_catalog_spec(spec: str) -> Matroid:
    """Parse ``uniform:r:n``, ``fano``, ``nonfano`` or ``with_loops:<spec>:k``."""
    parts = spec.split(":")
    if parts[0] == "with_loops":
        if len(parts) < 3:
            raise BadParams("with_loops needs a base and a loop count")
        return catalog("with_loops", ":".join(parts[1:-1]), parts[-1])
    return catalog(parts[0], *parts[1:])


# --- file format -------------------------------------------------------------

def serialize_matroid(M: Matroid) -> str:
    lines = [f"n {M.n}", f"r {M.r}"]
    if M.r > 0:
        lines += ["basis " + " ".join(map(str, from_mask(b))) for b in M.sorted_bases()]
    return "\n".join(lines) + "\n"


def parse_matroid(text: str) -> Matroid:
    n = r = None
    bases = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, *rest = line.split()
        try:
            values = [int(v) for v in rest]
        except ValueError:
            raise MatroidSyntaxError(lineno, f"non-integer token in {line!r}") from None
        if key in ("n", "r"):
            if len(values) != 1:
                raise MatroidSyntaxError(lineno, f"'{key}' takes exactly one integer")
            if (n if key == "n" else r) is not None:
                raise MatroidSyntaxError(lineno, f"duplicate '{key}' line")
            if key == "n":
                n = values[0]
            else:
                r = values[0]
        elif key == "basis":
            if n is None or r is None:
                raise MatroidSyntaxError(lineno, "'basis' before 'n' and 'r'")
            if values != sorted(set(values)):
                raise MatroidSyntaxError(lineno, "basis elements must be strictly ascending")
            bases.append(values)
        else:
            raise MatroidSyntaxError(lineno, f"unknown keyword {key!r}")
    if n is None or r is None:
        raise MatroidSyntaxError(0, "missing 'n' or 'r' line")
    return validate_bases(n, r, bases)
