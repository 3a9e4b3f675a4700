"""Type vectors, partial type vectors and their linear constraints.

A type vector is a tuple over ``{0, 1, 2, 3}``; a partial type vector may
also hold ``UNKNOWN`` (``None``). Coordinate indices are 0-based: tetrahedron
``i`` owns coordinates ``3i``, ``3i+1``, ``3i+2``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

UNKNOWN = None

Symbol = Optional[int]
TypeVector = tuple[int, ...]
PartialTypeVector = tuple[Symbol, ...]


class QuadrilateralViolation(ValueError):
    pass


def type_vector_of(x: Sequence) -> TypeVector:
    """Which slot of each coordinate triple is non-zero (0 if none)."""
    if len(x) % 3:
        raise ValueError(f"vector length {len(x)} is not a multiple of 3")
    out = []
    for i in range(0, len(x), 3):
        nz = [s for s in range(3) if x[i + s] != 0]
        if len(nz) > 1:
            raise QuadrilateralViolation(f"triple {i // 3} has {len(nz)} non-zero entries")
        out.append(nz[0] + 1 if nz else 0)
    return tuple(out)


def _check_lengths(a: Sequence, b: Sequence) -> None:
    if len(a) != len(b):
        raise ValueError(f"length mismatch: {len(a)} != {len(b)}")


def dominates(tau: Sequence[int], sigma: Sequence[int]) -> bool:
    _check_lengths(tau, sigma)
    return all(s == t or s == 0 for t, s in zip(tau, sigma))


def matches(tau: Sequence[Symbol], sigma: Sequence[Symbol]) -> bool:
    _check_lengths(tau, sigma)
    return all(t is UNKNOWN or s is UNKNOWN or t == s for t, s in zip(tau, sigma))


def is_zero(tau: Sequence[Symbol]) -> bool:
    """True if no entry is 1, 2 or 3 (unknowns count as 0)."""
    return not any(t for t in tau if t is not UNKNOWN)


def fill_unknowns(tau: Sequence[Symbol]) -> TypeVector:
    return tuple(0 if t is UNKNOWN else t for t in tau)


@dataclass(frozen=True)
class ConstraintSet:
    zero: frozenset[int]  # x_i = 0
    positive: frozenset[int]  # x_j >= 1


def symbol_constraints(position: int, symbol: int) -> tuple[tuple[int, ...], Optional[int]]:
    """Coordinates forced to zero and the coordinate forced >= 1 for one symbol."""
    base = 3 * position
    if symbol == 0:
        return (base, base + 1, base + 2), None
    if symbol not in (1, 2, 3):
        raise ValueError(f"bad type symbol {symbol!r}")
    keep = base + symbol - 1
    return tuple(c for c in (base, base + 1, base + 2) if c != keep), keep


def type_constraints(tau: Sequence[Symbol]) -> ConstraintSet:
    zero: set[int] = set()
    positive: set[int] = set()
    for i, t in enumerate(tau):
        if t is UNKNOWN:
            continue
        zs, p = symbol_constraints(i, t)
        zero.update(zs)
        if p is not None:
            positive.add(p)
    return ConstraintSet(frozenset(zero), frozenset(positive))


def format_type(tau: Sequence[Symbol]) -> str:
    return "".join("-" if t is UNKNOWN else str(t) for t in tau)


def parse_type(text: str) -> PartialTypeVector:
    out: list[Symbol] = []
    for ch in text.strip():
        if ch == "-":
            out.append(UNKNOWN)
        elif ch in "0123":
            out.append(int(ch))
        else:
            raise ValueError(f"bad type symbol {ch!r}")
    return tuple(out)
