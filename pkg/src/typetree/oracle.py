"""Brute-force reference enumeration for small instances.

Every non-zero type vector is tried directly: a point of the projective
solution space is a vertex exactly when fixing its zero pattern leaves a
single solution. Linear algebra here is plain Gauss-Jordan over
``Fraction`` and shares no code with the tableau or the traversal.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Optional, Sequence

from .problem import ProblemInstance

DEFAULT_CAP = 7


class OracleRefused(ValueError):
    pass


class SolveStatus(enum.Enum):
    UNIQUE = "unique"
    NONE = "none"
    UNDERDETERMINED = "underdetermined"


def exact_solve(a: Sequence[Sequence], rhs: Sequence) -> tuple[SolveStatus, Optional[list[Fraction]]]:
    """Classify and, if unique, solve ``a x = rhs`` over the rationals."""
    rows = [[Fraction(v) for v in r] + [Fraction(c)] for r, c in zip(a, rhs)]
    ncols = len(a[0]) if a else 0
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        pr = rows[r]
        inv = 1 / pr[c]
        rows[r] = pr = [v * inv for v in pr]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [v - f * w for v, w in zip(rows[i], pr)]
        pivots.append(c)
        r += 1
    if any(row[-1] != 0 for row in rows[r:]):
        return SolveStatus.NONE, None
    if r < ncols:
        return SolveStatus.UNDERDETERMINED, None
    x = [Fraction(0)] * ncols
    for i, c in enumerate(pivots):
        x[c] = rows[i][-1]
    return SolveStatus.UNIQUE, x


def smallest_integer_multiple(x: Sequence[Fraction]) -> tuple[int, ...]:
    den = 1
    for v in x:
        den = den * v.denominator // gcd(den, v.denominator)
    ints = [int(v * den) for v in x]
    g = 0
    for v in ints:
        g = gcd(g, v)
    return tuple(v // g for v in ints) if g else tuple(ints)


@dataclass(frozen=True)
class OracleVertex:
    tau: tuple[int, ...]
    u: tuple[int, ...]
    x: tuple[Fraction, ...]


@dataclass
class OracleResult:
    solutions: dict[tuple[int, ...], OracleVertex] = field(default_factory=dict)
    diagnostics: dict[tuple[int, ...], str] = field(default_factory=dict)


def _type_of(x: Sequence[Fraction]) -> Optional[tuple[int, ...]]:
    out = []
    for i in range(0, len(x), 3):
        nz = [s + 1 for s in range(3) if x[i + s] != 0]
        if len(nz) > 1:
            return None
        out.append(nz[0] if nz else 0)
    return tuple(out)


def brute_force_enumerate(instance: ProblemInstance, cap: int = DEFAULT_CAP) -> OracleResult:
    n = instance.n
    if n > cap:
        raise OracleRefused(f"n = {n} exceeds the oracle cap of {cap}")
    m = instance.ncols
    result = OracleResult()
    for tau in itertools.product(range(4), repeat=n):
        if not any(tau):
            continue
        # x_j = 0 off the support is substituted directly: the unknowns are
        # the support coordinates, the equations M x = 0 and sum x = 1.
        support = [3 * i + s for i, t in enumerate(tau) for s in range(3) if s + 1 == t]
        a = [[row[c] for c in support] for row in instance.matrix]
        rhs = [0] * len(a)
        a.append([1] * len(support))
        rhs.append(1)
        status, xs = exact_solve(a, rhs)
        x = None
        if xs is not None:
            x = [Fraction(0)] * m
            for c, v in zip(support, xs):
                x[c] = v
        if status is SolveStatus.NONE:
            result.diagnostics[tau] = "no-solution"
        elif status is SolveStatus.UNDERDETERMINED:
            result.diagnostics[tau] = "underdetermined"
        elif any(v < 0 for v in x):
            result.diagnostics[tau] = "sign-violation"
        elif _type_of(x) != tau:
            result.diagnostics[tau] = "type-mismatch"
        else:
            result.diagnostics[tau] = "unique"
            result.solutions[tau] = OracleVertex(tau, smallest_integer_multiple(x), tuple(x))
    return result
