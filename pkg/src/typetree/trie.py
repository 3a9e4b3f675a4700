"""4-ary trie of complete type vectors with a dominated-subvector query."""

from __future__ import annotations

import threading
from typing import Iterator, Optional, Sequence


class _Node:
    __slots__ = ("children",)

    def __init__(self):
        self.children: list[Optional[_Node]] = [None, None, None, None]


class SolutionTrie:
    """Set of type vectors of length ``n``.

    ``dominates_any(tau)`` asks whether some stored ``sigma`` is obtained from
    ``tau`` by zeroing entries. The walk only follows child ``tau_i`` and, when
    ``tau_i != 0``, child 0, so it never leaves the dominated region.

    Insertions are serialised by a lock. A new branch is fully built before it
    is hooked into the tree, so readers never see a half-inserted path.
    """

    def __init__(self, n: int):
        self.n = n
        self.root = _Node()
        self.size = 0
        self.node_count = 1
        self._lock = threading.Lock()

    def __len__(self) -> int:
        return self.size

    def insert(self, sigma: Sequence[int]) -> bool:
        """Add ``sigma``; returns False if it was already present."""
        if len(sigma) != self.n:
            raise ValueError(f"expected length {self.n}, got {len(sigma)}")
        with self._lock:
            node = self.root
            for depth, s in enumerate(sigma):
                child = node.children[s]
                if child is None:
                    # Build the remaining path off-tree, then attach it.
                    top = tail = _Node()
                    for t in sigma[depth + 1:]:
                        nxt = _Node()
                        tail.children[t] = nxt
                        tail = nxt
                    node.children[s] = top
                    self.node_count += self.n - depth
                    self.size += 1
                    return True
                node = child
            return False

    def __contains__(self, sigma: Sequence[int]) -> bool:
        node = self.root
        for s in sigma:
            node = node.children[s]
            if node is None:
                return False
        return True

    def dominates_any(self, tau: Sequence[int]) -> bool:
        """Is some stored vector dominated by ``tau``?"""
        return self.walk(tau)[0]

    def walk(self, tau: Sequence[int]) -> tuple[bool, int]:
        """Domination query that also reports how many trie nodes it touched."""
        n = self.n
        visited = 0
        stack = [(self.root, 0)]
        while stack:
            node, depth = stack.pop()
            visited += 1
            if depth == n:
                return True, visited
            t = tau[depth]
            # Pushed last, popped first: child 0 is tried before child t.
            if t:
                nxt = node.children[t]
                if nxt is not None:
                    stack.append((nxt, depth + 1))
            nxt = node.children[0]
            if nxt is not None:
                stack.append((nxt, depth + 1))
        return False, visited

    def __iter__(self) -> Iterator[tuple[int, ...]]:
        def walk(node, prefix):
            if len(prefix) == self.n:
                yield tuple(prefix)
                return
            for s, child in enumerate(node.children):
                if child is not None:
                    yield from walk(child, prefix + [s])

        yield from walk(self.root, [])
