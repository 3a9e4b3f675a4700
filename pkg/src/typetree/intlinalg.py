"""Fraction-free integer linear algebra.

Small dense routines over Python integers. Matrices are sequences of rows.
Every division performed here is exact.
"""

from __future__ import annotations

from math import gcd
from typing import Sequence

IntMatrix = Sequence[Sequence[int]]


def _primitive(row: list[int]) -> list[int]:
    g = 0
    for v in row:
        g = gcd(g, v)
    if g > 1:
        return [v // g for v in row]
    return row


class IncrementalEchelon:
    """Echelon basis that grows one integer vector at a time.

    ``add(v)`` reduces ``v`` against the stored rows using integer row
    operations and keeps it if it is independent of them.
    """

    def __init__(self) -> None:
        self.rows: list[list[int]] = []
        self.pivots: list[int] = []

    def __len__(self) -> int:
        return len(self.rows)

    def reduce(self, v: Sequence[int]) -> list[int]:
        w = list(v)
        for row, p in zip(self.rows, self.pivots):
            c = w[p]
            if c:
                a = row[p]
                w = [a * x - c * y for x, y in zip(w, row)]
                w = _primitive(w)
        return w

    def add(self, v: Sequence[int]) -> bool:
        w = self.reduce(v)
        for p, c in enumerate(w):
            if c:
                self.rows.append(w)
                self.pivots.append(p)
                return True
        return False


def independent_rows(rows: IntMatrix) -> list[int]:
    """Indices of the earliest rows that together span the row space."""
    ech = IncrementalEchelon()
    return [i for i, r in enumerate(rows) if ech.add(r)]


def rank(rows: IntMatrix) -> int:
    return len(independent_rows(rows))


def bareiss_det(a: IntMatrix) -> int:
    """Determinant by Bareiss elimination."""
    m = [list(r) for r in a]
    k = len(m)
    if k == 0:
        return 1
    sign = 1
    prev = 1
    for p in range(k):
        if m[p][p] == 0:
            for s in range(p + 1, k):
                if m[s][p] != 0:
                    m[p], m[s] = m[s], m[p]
                    sign = -sign
                    break
            else:
                return 0
        piv = m[p][p]
        for i in range(p + 1, k):
            mi, mp = m[i], m[p]
            f = mi[p]
            for j in range(p + 1, k):
                mi[j] = (piv * mi[j] - f * mp[j]) // prev
            mi[p] = 0
        prev = piv
    return sign * m[k - 1][k - 1]


def scaled_inverse(a: IntMatrix) -> tuple[list[list[int]], int]:
    """Return ``(N, d)`` with ``N / d`` the inverse of ``a`` and ``d = |det a| > 0``.

    Fraction-free Gauss-Jordan on ``[a | I]``: after the last step the left
    block is ``det * I`` and the right block is ``det * a^-1``.
    Raises ``ZeroDivisionError`` if ``a`` is singular.
    """
    k = len(a)
    if k == 0:
        return [], 1
    m = [list(r) + [int(i == j) for j in range(k)] for i, r in enumerate(a)]
    width = 2 * k
    prev = 1
    for p in range(k):
        if m[p][p] == 0:
            for s in range(p + 1, k):
                if m[s][p] != 0:
                    # Swapping keeps divisibility; the final block is still
                    # det * a^-1 up to the sign fixed below.
                    m[p], m[s] = m[s], m[p]
                    break
            else:
                raise ZeroDivisionError("singular matrix")
        piv = m[p][p]
        mp = m[p]
        for i in range(k):
            if i == p:
                continue
            mi = m[i]
            f = mi[p]
            for j in range(width):
                if j != p:
                    mi[j] = (piv * mi[j] - f * mp[j]) // prev
            mi[p] = 0
        prev = piv
    d = prev
    inv = [row[k:] for row in m]
    if d < 0:
        d = -d
        inv = [[-v for v in row] for row in inv]
    return inv, d


def kernel_basis(rows: IntMatrix, ncols: int) -> list[list[int]]:
    """Primitive integer basis of the right null space of ``rows``.

    One vector per free column of the reduced echelon form, in column order.
    """
    ech: list[list[int]] = []
    pivots: list[int] = []
    for r in rows:
        w = list(r)
        for row, p in zip(ech, pivots):
            c = w[p]
            if c:
                w = _primitive([row[p] * x - c * y for x, y in zip(w, row)])
        p = next((j for j, c in enumerate(w) if c), None)
        if p is None:
            continue
        # Clear the new pivot column from earlier rows (Gauss-Jordan).
        for i, row in enumerate(ech):
            c = row[p]
            if c:
                ech[i] = _primitive([w[p] * x - c * y for x, y in zip(row, w)])
        ech.append(w)
        pivots.append(p)
    pivset = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        scale = 1
        for row, p in zip(ech, pivots):
            if row[f]:
                scale = scale * abs(row[p]) // gcd(scale, abs(row[p]))
        v = [0] * ncols
        v[f] = scale
        for row, p in zip(ech, pivots):
            v[p] = -row[f] * scale // row[p]
        basis.append(_primitive(v))
    return basis
