"""Matroid representations by backtracking over columns.

The lexicographically least basis B is fixed to the identity.  Every other
column is either zero (loops) or a projective representative, i.e. its
first nonzero coordinate is 1; row operations and column scaling bring any
representation into this form.  Columns are placed in element order and
each new column is checked against every r-subset of already placed columns
that contains it.
"""

from __future__ import annotations

import threading
from concurrent.futures import ThreadPoolExecutor
from itertools import combinations, product

from ..errors import SearchSpaceTooLarge, VerificationFailed
from ..gf import field_of_order, is_prime, make_field, prime_powers
from ..matroid import Matroid, from_mask, to_mask
from .types import RepMatrix

MAX_Q = 2 ** 20


def is_independent(F, cols) -> bool:
    """Are the given column vectors (tuples of codes) linearly independent?"""
    rows = [list(c) for c in cols]  # work on the transpose; rank is the same
    m = len(rows)
    if not m:
        return True
    width = len(rows[0])
    rank = 0
    for c in range(width):
        piv = next((i for i in range(rank, m) if rows[i][c]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        pr = rows[rank]
        inv = F.inv(pr[c])
        for i in range(rank + 1, m):
            v = rows[i][c]
            if v:
                f = F.mul(v, inv)
                rows[i] = [F.sub(a, F.mul(f, b)) for a, b in zip(rows[i], pr)]
        rank += 1
        if rank == m:
            return True
    return rank == m


def projective_points(F, r: int) -> list[tuple]:
    """Nonzero vectors of F^r whose first nonzero entry is 1, canonical lex order."""
    one = F.one
    out = []
    for lead in range(r):
        for tail in product(range(F.q), repeat=r - lead - 1):
            out.append((0,) * lead + (one,) + tail)
    return sorted(out)


def det_codes(F, rows) -> int:
    """Determinant of a square matrix of codes (0x0 gives 1)."""
    m = [list(r) for r in rows]
    n = len(m)
    d = F.one
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c]), None)
        if piv is None:
            return 0
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            d = F.neg(d)
        pc = m[c][c]
        d = F.mul(d, pc)
        inv = F.inv(pc)
        for i in range(c + 1, n):
            v = m[i][c]
            if v:
                f = F.mul(v, inv)
                m[i] = [F.sub(a, F.mul(f, b)) for a, b in zip(m[i], m[c])]
    return d


def normal_vector(F, vecs, r: int) -> tuple:
    """Cofactor vector of r-1 vectors in F^r: zero iff they are dependent,
    and orthogonal (under the plain dot product) to exactly their span."""
    out = []
    for i in range(r):
        minor = [[v[k] for v in vecs] for k in range(r) if k != i]
        d = det_codes(F, minor)
        out.append(F.neg(d) if i % 2 else d)
    return tuple(out)


def _dot(F, a, b) -> int:
    acc = 0
    for x, y in zip(a, b):
        if x and y:
            acc = F.add(acc, F.mul(x, y))
    return acc


def projective_solutions(F, normals, r: int) -> list[tuple]:
    """Projective representatives v with n.v = 0 for every n in normals, sorted."""
    rows = [list(n) for n in normals]
    pivots = []
    rank = 0
    for c in range(r):
        piv = next((i for i in range(rank, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = F.inv(rows[rank][c])
        rows[rank] = [F.mul(x, inv) for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][c]:
                f = rows[i][c]
                rows[i] = [F.sub(a, F.mul(f, b)) for a, b in zip(rows[i], rows[rank])]
        pivots.append(c)
        rank += 1
    free = [c for c in range(r) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * r
        v[fc] = F.one
        for i, pc in enumerate(pivots):
            v[pc] = F.neg(rows[i][fc])
        basis.append(v)
    out = set()
    for coefs in product(range(F.q), repeat=len(basis)):
        v = [0] * r
        for a, b in zip(coefs, basis):
            if a:
                v = [F.add(x, F.mul(a, y)) for x, y in zip(v, b)]
        lead = next((x for x in v if x), 0)
        if not lead:
            continue
        inv = F.inv(lead)
        out.add(tuple(F.mul(x, inv) for x in v))
    return sorted(out)


class _Search:
    def __init__(self, M: Matroid, F):
        self.M, self.F = M, F
        n, r = M.n, M.r
        self.r = r
        self.B = min(from_mask(b) for b in M.bases)
        loops = set(M.loops)
        self.fixed = {}
        for i, b in enumerate(self.B):
            self.fixed[b] = tuple(F.one if j == i else 0 for j in range(r))
        for e in loops:
            self.fixed[e] = (0,) * r
        self.points = projective_points(F, r)
        # for element j: the (r-1)-subsets R of {1..j-1}, and whether R + j is a basis
        self.subsets = {}
        for j in range(1, n + 1):
            self.subsets[j] = [
                (R, (to_mask(R) | 1 << (j - 1)) in M.bases) for R in combinations(range(1, j), r - 1)
            ]
        self.free = [j for j in range(1, n + 1) if j not in self.fixed]

    def constraints(self, cols: dict, j: int):
        """``(dependent normals, basis normals)`` for column j, or None if hopeless."""
        F, r = self.F, self.r
        dep, ind = [], []
        for R, is_basis in self.subsets[j]:
            nv = normal_vector(F, [cols[e] for e in R], r)
            if any(nv):
                (ind if is_basis else dep).append(nv)
            elif is_basis:
                return None  # R is already dependent, R + j can never be a basis
        return dep, ind

    def ok(self, v, cons) -> bool:
        dep, ind = cons
        F = self.F
        return all(_dot(F, nv, v) == 0 for nv in dep) and all(_dot(F, nv, v) for nv in ind)

    def candidates(self, cols: dict, j: int):
        cons = self.constraints(cols, j)
        if cons is None:
            return []
        if j in self.fixed:
            v = self.fixed[j]
            return [v] if self.ok(v, cons) else []
        pool = projective_solutions(self.F, cons[0], self.r) if cons[0] else self.points
        return [v for v in pool if self.ok(v, cons)]

    def consistent(self, cols: dict, j: int) -> bool:
        cons = self.constraints(cols, j)
        return cons is not None and self.ok(cols[j], cons)

    def run(self, cols: dict, start: int, stop=None):
        """Depth-first completion of ``cols`` from element ``start``; first hit wins."""
        if start > self.M.n:
            return dict(cols)
        for v in self.candidates(cols, start):
            if stop is not None and stop():
                return None
            cols[start] = v
            found = self.run(cols, start + 1, stop)
            if found is not None:
                return found
        cols.pop(start, None)
        return None


def _to_matrix(M, F, cols) -> RepMatrix:
    rows = [[cols[e][i] for e in range(1, M.n + 1)] for i in range(M.r)]
    return RepMatrix.from_codes(F, rows)


def verify_representation(M: Matroid, rep: RepMatrix) -> bool:
    F = rep.field
    codes = rep.codes
    for X in combinations(range(1, M.n + 1), M.r):
        cols = [tuple(codes[i][e - 1] for i in range(M.r)) for e in X]
        if is_independent(F, cols) != (to_mask(X) in M.bases):
            return False
    return True


def find_representation(M: Matroid, field, threads: int = 1):
    """Canonically least representation of M over ``field`` (or None).

    Matrices are ordered column by column, each column top to bottom.
    With ``threads > 1`` the candidates for the first free column are
    explored in parallel; the result is the same as the serial one.
    """
    if M.r < 1:
        raise ValueError("representations need rank >= 1")
    F = field
    if F.q > MAX_Q:
        raise SearchSpaceTooLarge(f"field of order {F.q} is above the cap")
    S = _Search(M, F)
    if not S.free or threads <= 1:
        cols = S.run({}, 1)
    else:
        cols = _parallel(S, threads)
    if cols is None:
        return None
    rep = _to_matrix(M, F, cols)
    if not verify_representation(M, rep):
        raise VerificationFailed("representation fails the subset rank check")
    return rep


def _parallel(S: _Search, threads: int):
    first = S.free[0]
    prefix = {}
    for j in range(1, first):
        prefix[j] = S.fixed[j]
        if not S.consistent(prefix, j):
            return None
    cands = S.candidates(prefix, first)
    best = [len(cands)]
    lock = threading.Lock()

    def task(idx):
        if best[0] < idx:
            return None
        cols = dict(prefix)
        cols[first] = cands[idx]
        found = S.run(cols, first + 1, stop=lambda: best[0] < idx)
        if found is not None:
            with lock:
                best[0] = min(best[0], idx)
        return found

    with ThreadPoolExecutor(max_workers=threads) as pool:
        results = list(pool.map(task, range(len(cands))))
    # lowest candidate index wins, exactly as in the serial scan
    for found in results:
        if found is not None:
            return found
    return None


def compute_f(M: Matroid, q_max: int = 128, threads: int = 1):
    """Least field order q <= q_max admitting a representation, else None."""
    for q in prime_powers(min(q_max, MAX_Q)):
        if find_representation(M, field_of_order(q), threads) is not None:
            return q
    return None


def compute_c(M: Matroid, p_max: int = 31, k_cap: int = 4, threads: int = 1):
    """Least prime p <= p_max such that M is representable over some GF(p^k), k <= k_cap."""
    for p in range(2, p_max + 1):
        if not is_prime(p):
            continue
        for k in range(1, k_cap + 1):
            if p ** k > MAX_Q:
                break
            if find_representation(M, make_field(p, k), threads) is not None:
                return p
    return None
