"""Exact linear system solving: sparse rows over GF(p), fraction-free over Q.

Both solvers return one particular solution with free unknowns set to zero,
or None when the system is inconsistent.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from typing import Mapping, Sequence


def solve_mod_p(rows: Sequence[Mapping[int, int]], rhs: Sequence[int], ncols: int, p: int):
    """Solve ``sum_j row[j] * z_j = rhs`` for every row, modulo a prime p.

    Rows are sparse dicts column -> coefficient.  Returns a list of ncols
    residues or None.
    """
    pivots: dict[int, tuple[dict, int]] = {}  # pivot column -> (row with 1 at pivot, rhs)
    for raw, b in zip(rows, rhs):
        row = {c: v % p for c, v in raw.items() if v % p}
        b %= p
        heap = list(row)
        heapq.heapify(heap)
        while heap:
            c = heapq.heappop(heap)
            v = row.get(c)
            if not v:
                continue
            if c in pivots:
                prow, pb = pivots[c]
                for j, w in prow.items():
                    nv = (row.get(j, 0) - v * w) % p
                    if nv:
                        if j not in row:
                            heapq.heappush(heap, j)
                        row[j] = nv
                    else:
                        row.pop(j, None)
                b = (b - v * pb) % p
            else:
                inv = pow(v, p - 2, p)
                row = {j: w * inv % p for j, w in row.items() if j >= c}
                pivots[c] = (row, b * inv % p)
                break
        else:
            if b:
                return None
    z = [0] * ncols
    for c in sorted(pivots, reverse=True):
        prow, pb = pivots[c]
        acc = pb
        for j, w in prow.items():
            if j != c:
                acc -= w * z[j]
        z[c] = acc % p
    return z


def solve_rational(A: Sequence[Sequence[int]], b: Sequence[int]):
    """Solve A z = b over Q with fraction-free (Bareiss) elimination.

    Entries stay integers during elimination; back substitution uses
    Fractions.  Returns a list of Fractions or None.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    M = [list(map(int, A[i])) + [int(b[i])] for i in range(m)]
    prev = 1
    row = 0
    pivcols = []
    for col in range(n):
        piv = next((i for i in range(row, m) if M[i][col]), None)
        if piv is None:
            continue
        M[row], M[piv] = M[piv], M[row]
        pr = M[row]
        a = pr[col]
        for i in range(row + 1, m):
            ri = M[i]
            c = ri[col]
            if c == 0:
                # Bareiss step with a zero multiplier is still a division by prev
                if prev != 1:
                    M[i] = [a * x // prev for x in ri]
                else:
                    M[i] = [a * x for x in ri]
                continue
            M[i] = [(a * ri[j] - c * pr[j]) // prev for j in range(n + 1)]
        prev = a
        pivcols.append(col)
        row += 1
        if row == m:
            break
    for i in range(row, m):
        if M[i][n]:
            return None
    z = [Fraction(0)] * n
    for i in range(row - 1, -1, -1):
        c = pivcols[i]
        acc = Fraction(M[i][n])
        for j in range(c + 1, n):
            if M[i][j]:
                acc -= M[i][j] * z[j]
        z[c] = acc / M[i][c]
    return z
