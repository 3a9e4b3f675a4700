"""Problem instances, the reduced matching system and arithmetic bounds."""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from math import gcd, isqrt
from typing import Optional, Sequence

from .intlinalg import independent_rows


class ParseError(ValueError):
    """Malformed instance text. ``line`` is 1-based, 0 when not line specific."""

    def __init__(self, message: str, line: int = 0):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


class SparsityWarning(UserWarning):
    """A column of M does not have the structure of a matching-equation column."""


@dataclass(frozen=True)
class ProblemInstance:
    """``n`` tetrahedra and an integer matching matrix with ``3n`` columns.

    ``orientable`` is ``True``, ``False`` or ``None`` (unknown).
    """

    n: int
    matrix: tuple[tuple[int, ...], ...]
    orientable: Optional[bool] = None

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("tetrahedron count must be positive")
        object.__setattr__(self, "matrix", tuple(tuple(int(v) for v in r) for r in self.matrix))
        for i, row in enumerate(self.matrix):
            if len(row) != 3 * self.n:
                raise ValueError(f"row {i} has {len(row)} entries, expected {3 * self.n}")

    @property
    def rows(self) -> int:
        return len(self.matrix)

    @property
    def ncols(self) -> int:
        return 3 * self.n

    def column(self, c: int) -> tuple[int, ...]:
        return tuple(r[c] for r in self.matrix)

    def sparsity_violations(self) -> list[str]:
        """Describe every column that breaks the matching-matrix structure."""
        problems = []
        for c in range(self.ncols):
            col = [v for v in self.column(c) if v]
            if len(col) > 4:
                problems.append(f"column {c} has {len(col)} non-zero entries")
            if sum(abs(v) for v in col) > 4:
                problems.append(f"column {c} has absolute sum {sum(abs(v) for v in col)} > 4")
            if self.orientable and any(abs(v) > 2 for v in col):
                problems.append(f"column {c} has an entry of magnitude > 2 in an orientable instance")
        return problems


def parse_problem(text: str) -> ProblemInstance:
    """Parse the line-oriented instance format.

    Sparsity problems are reported through :class:`SparsityWarning`; they do
    not prevent parsing.
    """
    header: dict[str, tuple[int, int]] = {}
    rows: list[tuple[int, ...]] = []
    in_matrix = False
    expected_rows = expected_cols = 0
    last_line = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        last_line = lineno
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if in_matrix:
            if len(rows) >= expected_rows:
                raise ParseError(f"unexpected extra matrix row (expected {expected_rows})", lineno)
            try:
                row = tuple(int(tok) for tok in line.split())
            except ValueError:
                raise ParseError(f"non-integer entry in {line!r}", lineno) from None
            if len(row) != expected_cols:
                raise ParseError(f"row has {len(row)} entries, expected {expected_cols}", lineno)
            rows.append(row)
            continue
        parts = line.split()
        key = parts[0]
        if key == "matrix":
            if len(parts) != 1:
                raise ParseError("'matrix' takes no arguments", lineno)
            for needed in ("tets", "rows"):
                if needed not in header:
                    raise ParseError(f"missing '{needed}' header before 'matrix'", lineno)
            expected_rows = header["rows"][0]
            expected_cols = 3 * header["tets"][0]
            in_matrix = True
            continue
        if key not in ("tets", "rows", "orientable"):
            raise ParseError(f"unknown header {key!r}", lineno)
        if key in header:
            raise ParseError(f"duplicate header {key!r}", lineno)
        if len(parts) != 2:
            raise ParseError(f"header {key!r} takes exactly one integer", lineno)
        try:
            value = int(parts[1])
        except ValueError:
            raise ParseError(f"header {key!r} needs an integer, got {parts[1]!r}", lineno) from None
        if key == "tets" and value < 1:
            raise ParseError("tets must be positive", lineno)
        if key == "rows" and value < 0:
            raise ParseError("rows must be non-negative", lineno)
        if key == "orientable" and value not in (0, 1):
            raise ParseError("orientable must be 0 or 1", lineno)
        header[key] = (value, lineno)
    if not in_matrix:
        raise ParseError("missing 'matrix' section", last_line)
    if len(rows) != expected_rows:
        raise ParseError(f"matrix has {len(rows)} rows, expected {expected_rows}", last_line)
    orientable = None
    if "orientable" in header:
        orientable = bool(header["orientable"][0])
    inst = ProblemInstance(header["tets"][0], tuple(rows), orientable)
    for msg in inst.sparsity_violations():
        warnings.warn(msg, SparsityWarning, stacklevel=2)
    return inst


def format_problem(inst: ProblemInstance) -> str:
    lines = [f"tets {inst.n}", f"rows {inst.rows}"]
    if inst.orientable is not None:
        lines.append(f"orientable {int(inst.orientable)}")
    lines.append("matrix")
    lines.extend(" ".join(str(v) for v in row) for row in inst.matrix)
    return "\n".join(lines) + "\n"


def reduce_columns(matrix: Sequence[Sequence[int]], ncols: Optional[int] = None):
    """Divide every non-zero column by its positive gcd.

    Returns ``(reduced_rows, divisors, lcm_of_divisors)``. Zero columns keep
    divisor 1.
    """
    rows = [list(r) for r in matrix]
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    divisors = []
    for c in range(ncols):
        g = 0
        for r in rows:
            g = gcd(g, r[c])
        g = g or 1
        divisors.append(g)
        if g > 1:
            for r in rows:
                r[c] //= g
    big_d = 1
    for g in divisors:
        big_d = big_d * g // gcd(big_d, g)
    return [tuple(r) for r in rows], tuple(divisors), big_d


def drop_redundant_rows(matrix: Sequence[Sequence[int]]) -> tuple[list[tuple[int, ...]], int]:
    """Keep the earliest linearly independent rows. Returns ``(rows, rank)``."""
    keep = independent_rows(matrix)
    return [tuple(matrix[i]) for i in keep], len(keep)


def _ceil_sqrt(v: int) -> int:
    r = isqrt(v)
    return r if r * r == v else r + 1


def bounding_constant_squared(matrix: Sequence[Sequence[int]], k: int) -> int:
    """Product of the ``k`` largest squared column lengths."""
    ncols = len(matrix[0]) if matrix else 0
    sq = sorted((sum(r[c] * r[c] for r in matrix) for c in range(ncols)), reverse=True)
    prod = 1
    for v in sq[:k]:
        prod *= v
    return prod


def bounding_constant(matrix: Sequence[Sequence[int]], k: int) -> int:
    """Integer ceiling of the product of the ``k`` largest column lengths."""
    return _ceil_sqrt(bounding_constant_squared(matrix, k))


@dataclass(frozen=True)
class CoordinateBound:
    vertex: int  # bound on |u_i| for smallest integer multiples
    tableau: int  # bound on |Delta| and every |N_ij|
    storage_bits: Optional[int]  # 32/64/128 native width holding the tableau, None if none does
    fallback_orientable: int  # ceil(sqrt(6)^k)
    fallback_general: int  # ceil(sqrt(10)^k)


def coordinate_bound(n: int, k: int, delta: int, orientable: Optional[bool]) -> CoordinateBound:
    if orientable:
        vertex = (4 * n * k + 2) * delta
    else:
        vertex = (36 * n * k + 12) * delta
    need = delta.bit_length() + 1
    storage = next((w for w in (32, 64, 128) if need <= w), None)
    return CoordinateBound(vertex, delta, storage, _ceil_sqrt(6**k), _ceil_sqrt(10**k))


@dataclass(frozen=True)
class ReducedSystem:
    """Full-rank reduced matching matrix plus the constants derived from it."""

    instance: ProblemInstance
    matrix: tuple[tuple[int, ...], ...]  # k rows, 3n columns
    divisors: tuple[int, ...]
    lcm: int
    rank: int
    delta: int
    delta_squared: int
    bound: CoordinateBound = field(repr=False)

    @property
    def ncols(self) -> int:
        return self.instance.ncols

    @classmethod
    def from_instance(cls, inst: ProblemInstance) -> "ReducedSystem":
        reduced, divisors, big_d = reduce_columns(inst.matrix, inst.ncols)
        rows, k = drop_redundant_rows(reduced)
        d2 = bounding_constant_squared(rows, k)
        delta = _ceil_sqrt(d2)
        return cls(
            instance=inst,
            matrix=tuple(rows),
            divisors=divisors,
            lcm=big_d,
            rank=k,
            delta=delta,
            delta_squared=d2,
            bound=coordinate_bound(inst.n, k, delta, inst.orientable),
        )
