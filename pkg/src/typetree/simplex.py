"""Incremental dual simplex feasibility test over the reduced system.

The system is ``M x = b, x >= 0`` with some columns eliminated (``x_j = 0``).
The basis inverse is stored as ``N / delta`` where ``N`` is an integer matrix
and ``delta = |det B|``, so all arithmetic is on integers. By Hadamard's
inequality both are bounded by the bounding constant of the system, and every
intermediate of a pivot by twice its square; when that fits in 63 bits the
tableau runs on ``int64`` arrays, otherwise on Python integers.

There is no objective, so every basis is dual feasible and the dual simplex
reduces to: pick an infeasible row, pick a column with a negative entry in
that row, pivot. Both choices use the lowest index (Bland's rule).
"""

from __future__ import annotations

import threading
import warnings
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .intlinalg import IncrementalEchelon, scaled_inverse
from .problem import ReducedSystem
from .typevec import symbol_constraints

ARITH_MODES = ("auto", "wide", "big")
_WIDE_LIMIT = 2**62


class TableauInvariantError(AssertionError):
    """A tableau broke its defining relation or its proven entry bounds."""


def wide_bound(system: ReducedSystem) -> int:
    """Largest magnitude any intermediate integer can reach in a tableau."""
    delta, k = system.delta, system.rank
    rows = system.matrix
    row_sum = max((sum(abs(v) for v in r) for r in rows), default=0)
    entry = max((abs(v) for r in rows for v in r), default=0)
    return max(2 * delta * delta, k * delta * row_sum, k * delta * entry)


def resolve_arith(system: ReducedSystem, arith: str = "auto") -> str:
    if arith not in ARITH_MODES:
        raise ValueError(f"unknown arithmetic mode {arith!r}")
    fits = wide_bound(system) < _WIDE_LIMIT
    if arith == "big":
        return "big"
    if arith == "wide" and not fits:
        warnings.warn("tableau bounds exceed 64-bit arithmetic; using big integers", RuntimeWarning, stacklevel=2)
    return "wide" if fits else "big"


class LPContext:
    """Shared, read-only data for all tableaux of one run (plus counters)."""

    def __init__(self, system: ReducedSystem, arith: str = "auto", debug: bool = False,
                 check_cycling: bool = False):
        self.system = system
        self.mode = resolve_arith(system, arith)
        self.dtype = np.int64 if self.mode == "wide" else object
        k, m = system.rank, system.ncols
        self.k = k
        self.ncols = m
        self.matrix = np.array(system.matrix, dtype=self.dtype).reshape(k, m)
        self.columns = [self.matrix[:, j].copy() for j in range(m)]
        self.debug = debug
        self.check_cycling = check_cycling
        self.pivots = 0
        self.checks = 0
        self.max_entry = 0
        self._lock = threading.Lock()

    def _record(self, entry: int) -> None:
        with self._lock:
            self.pivots += 1
            if entry > self.max_entry:
                self.max_entry = entry


@dataclass(frozen=True)
class FeasibilityOutcome:
    feasible: bool
    # Basic solution of M x = b scaled by delta: x_j = values[j] / delta.
    values: Optional[tuple[int, ...]] = None
    delta: int = 1


class Tableau:
    __slots__ = ("ctx", "basis", "row_of", "N", "delta", "b", "active", "positive")

    def __init__(self, ctx: LPContext, basis, N, delta: int):
        self.ctx = ctx
        self.basis = list(basis)
        self.row_of = [-1] * ctx.ncols
        for r, j in enumerate(self.basis):
            self.row_of[j] = r
        self.N = N
        self.delta = delta
        self.b = np.zeros(ctx.k, dtype=ctx.dtype)
        self.active = [True] * ctx.ncols
        self.positive: tuple[int, ...] = ()

    def copy(self) -> "Tableau":
        t = object.__new__(Tableau)
        t.ctx = self.ctx
        t.basis = self.basis[:]
        t.row_of = self.row_of[:]
        t.N = self.N.copy()
        t.delta = self.delta
        t.b = self.b.copy()
        t.active = self.active[:]
        t.positive = self.positive
        return t

    @property
    def eliminated(self) -> frozenset[int]:
        return frozenset(j for j, a in enumerate(self.active) if not a)

    def scaled_basic_values(self):
        """``N b``; divided by delta these are the basic variable values."""
        return self.N.dot(self.b)

    # -- constraint updates -------------------------------------------------

    def add_nonzero_constraint(self, j: int) -> None:
        """Impose ``x_j >= 1`` by substituting ``x_j = x'_j + 1``."""
        if not self.active[j]:
            raise ValueError(f"column {j} is eliminated")
        self.b = self.b - self.ctx.columns[j]
        self.positive = self.positive + (j,)

    def enforce_zero(self, j: int) -> bool:
        """Impose ``x_j = 0``. Returns False if that makes the system infeasible."""
        if not self.active[j]:
            return True
        r = self.row_of[j]
        if r >= 0:
            row = self.N[r].dot(self.ctx.matrix)
            entering = next(
                (c for c in range(self.ctx.ncols)
                 if row[c] != 0 and self.active[c] and self.row_of[c] < 0),
                None,
            )
            if entering is not None:
                self.pivot(r, entering)
            elif self.N[r].dot(self.b) != 0:
                # The row reads x_j = z with z != 0.
                return False
        self.active[j] = False
        return True

    # -- pivoting -----------------------------------------------------------

    def pivot(self, r: int, e: int) -> None:
        """Replace the basic variable of row ``r`` by column ``e``."""
        N = self.N
        a = N.dot(self.ctx.columns[e])
        ar = int(a[r])
        if ar == 0:
            raise ZeroDivisionError(f"zero pivot at row {r}, column {e}")
        pivot_row = N[r].copy()
        new = (ar * N - np.outer(a, pivot_row)) // self.delta
        new[r] = pivot_row
        if ar < 0:
            new = -new
        self.N = new
        self.delta = abs(ar)
        old = self.basis[r]
        self.row_of[old] = -1
        self.row_of[e] = r
        self.basis[r] = e
        self.ctx._record(max(self.delta, int(np.abs(new).max())))
        if self.ctx.debug:
            self.check_invariants()

    def check_invariants(self) -> None:
        ctx = self.ctx
        ctx.checks += 1
        k = ctx.k
        if self.delta <= 0:
            raise TableauInvariantError(f"non-positive denominator {self.delta}")
        bound = ctx.system.delta
        if self.delta > bound:
            raise TableauInvariantError(f"|Delta| = {self.delta} exceeds bound {bound}")
        if k:
            biggest = int(np.abs(self.N).max())
            if biggest > bound:
                raise TableauInvariantError(f"|N_ij| = {biggest} exceeds bound {bound}")
            prod = self.N.dot(ctx.matrix[:, self.basis])
            if not np.array_equal(prod, self.delta * np.eye(k, dtype=ctx.dtype)):
                raise TableauInvariantError("N * M_basis != Delta * I")

    # -- dual simplex -------------------------------------------------------

    def make_feasible(self) -> FeasibilityOutcome:
        ctx = self.ctx
        seen = set() if ctx.check_cycling else None
        while True:
            x = self.scaled_basic_values()
            leave = -1
            for r, j in enumerate(self.basis):
                v = x[r]
                if not self.active[j]:
                    # Basic but eliminated: its row is x_j = v / delta.
                    if v != 0:
                        return FeasibilityOutcome(False)
                elif v < 0 and (leave < 0 or j < self.basis[leave]):
                    leave = r
            if leave < 0:
                return self._outcome(x)
            if seen is not None:
                key = tuple(sorted(self.basis))
                if key in seen:
                    raise TableauInvariantError(f"basis {key} repeated: cycling")
                seen.add(key)
            row = self.N[leave].dot(ctx.matrix)
            entering = next(
                (c for c in range(ctx.ncols)
                 if row[c] < 0 and self.active[c] and self.row_of[c] < 0),
                None,
            )
            if entering is None:
                return FeasibilityOutcome(False)
            self.pivot(leave, entering)

    def _outcome(self, x) -> FeasibilityOutcome:
        values = [0] * self.ctx.ncols
        for r, j in enumerate(self.basis):
            values[j] = int(x[r])
        return FeasibilityOutcome(True, tuple(values), self.delta)


def initial_tableau(ctx: LPContext) -> Tableau:
    """Tableau on the earliest linearly independent columns, ``b = 0``."""
    rows = ctx.system.matrix
    k, m = ctx.k, ctx.ncols
    ech = IncrementalEchelon()
    basis = []
    for j in range(m):
        if len(basis) == k:
            break
        if ech.add([r[j] for r in rows]):
            basis.append(j)
    if len(basis) != k:
        raise ValueError("reduced system is not of full row rank")
    B = [[rows[i][j] for j in basis] for i in range(k)]
    inv, delta = scaled_inverse(B)
    N = np.array(inv, dtype=ctx.dtype).reshape(k, k)
    t = Tableau(ctx, basis, N, delta)
    if ctx.debug:
        t.check_invariants()
    return t


def step_down(parent: Tableau, position: int, symbol: int) -> tuple[FeasibilityOutcome, Tableau]:
    """Child tableau for deciding ``symbol`` at ``position``; parent untouched."""
    child = parent.copy()
    zeros, positive = symbol_constraints(position, symbol)
    if positive is not None:
        child.add_nonzero_constraint(positive)
    for j in zeros:
        if not child.enforce_zero(j):
            return FeasibilityOutcome(False), child
    return child.make_feasible(), child
