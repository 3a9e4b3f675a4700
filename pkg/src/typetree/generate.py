"""Random instances whose columns look like matching-equation columns.

Each column draws a multiset of non-zero magnitudes with sum at most 4
(hence at most four entries), random signs and random distinct rows.
"""

from __future__ import annotations

import random
from typing import Optional

from .problem import ProblemInstance

# Magnitude multisets with sum <= 4; () is the zero column.
PROFILES: tuple[tuple[int, ...], ...] = (
    (),
    (1,), (2,), (3,), (4,),
    (1, 1), (2, 1), (3, 1), (2, 2),
    (1, 1, 1), (2, 1, 1),
    (1, 1, 1, 1),
)
ORIENTABLE_PROFILES = tuple(p for p in PROFILES if all(v <= 2 for v in p))


def random_instance(n: int, rng: random.Random, rows: Optional[int] = None,
                    orientable: Optional[bool] = None) -> ProblemInstance:
    """Instance with ``n`` tetrahedra and ``rows`` rows (default uniform in ``[1, 2n]``)."""
    e = rng.randint(1, 2 * n) if rows is None else rows
    profiles = ORIENTABLE_PROFILES if orientable else PROFILES
    matrix = [[0] * (3 * n) for _ in range(e)]
    for c in range(3 * n):
        fitting = [p for p in profiles if len(p) <= e]
        prof = rng.choice(fitting)
        for r, mag in zip(rng.sample(range(e), len(prof)), prof):
            matrix[r][c] = mag * rng.choice((-1, 1))
    return ProblemInstance(n, tuple(tuple(r) for r in matrix), orientable)


def instance_batch(n: int, count: int, seed: int) -> list[ProblemInstance]:
    rng = random.Random(f"{seed}:{n}")
    return [random_instance(n, rng) for _ in range(count)]
