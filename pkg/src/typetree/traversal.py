"""Depth-first traversal of the type tree.

A child is entered only if it passes the zero test, the domination test
against the vertices found so far, and the LP feasibility test. Every leaf
reached this way is an admissible vertex; it is rebuilt exactly from its type
vector and handed to the caller's sink as soon as it is found.
"""

from __future__ import annotations

import enum
import threading
import time
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .intlinalg import kernel_basis
from .problem import ProblemInstance, ReducedSystem
from .simplex import LPContext, Tableau, initial_tableau, step_down
from .trie import SolutionTrie
from .typevec import TypeVector, format_type, type_vector_of


class Signal(enum.Enum):
    CONTINUE = "continue"
    STOP = "stop"


class ReconstructionError(RuntimeError):
    """A leaf that passed every test does not pin down a unique vertex."""


@dataclass(frozen=True)
class VertexSolution:
    tau: TypeVector
    u: tuple[int, ...]  # smallest integer multiple
    x: tuple[Fraction, ...]  # the vertex itself, coordinates sum to 1

    def line(self) -> str:
        return f"{format_type(self.tau)} : {' '.join(str(v) for v in self.u)}"


@dataclass
class TraversalStats:
    nodes_visited: int = 0
    dead_ends: int = 0
    solutions: int = 0
    max_tableau_entry: int = 0
    pivots: int = 0
    elapsed: float = 0.0
    aborted: bool = False
    arith: str = ""
    delta: int = 1
    rank: int = 0
    vertex_bound: int = 0

    def as_dict(self) -> dict:
        d = asdict(self)
        d["ten_v_squared"] = 10 * self.solutions**2
        return d


Sink = Callable[[VertexSolution], Optional[Signal]]


def reconstruct_vertex(tau: Sequence[int], instance: ProblemInstance) -> VertexSolution:
    """Solve ``M x = 0``, ``sum x = 1`` with the zero pattern of ``tau``.

    Only the support columns are unknowns, so the solution is unique exactly
    when ``M`` restricted to them has a one-dimensional kernel.
    """
    support = [3 * i + t - 1 for i, t in enumerate(tau) if t]
    if not support:
        raise ReconstructionError("zero type vector has no vertex")
    sub = [[row[c] for c in support] for row in instance.matrix]
    kernel = kernel_basis(sub, len(support))
    if len(kernel) != 1:
        raise ReconstructionError(
            f"type {format_type(tau)}: solution space has dimension {len(kernel)}, expected 1"
        )
    v = kernel[0]
    if v[0] < 0:
        v = [-c for c in v]
    if any(c <= 0 for c in v):
        raise ReconstructionError(f"type {format_type(tau)}: kernel vector {v} is not positive")
    u = [0] * instance.ncols
    for c, val in zip(support, v):
        u[c] = val
    total = sum(v)
    x = tuple(Fraction(c, total) for c in u)
    sol = VertexSolution(tuple(tau), tuple(u), x)
    if type_vector_of(sol.u) != sol.tau:
        raise ReconstructionError(f"type {format_type(tau)}: reconstructed vertex has another type")
    return sol


def _cross_check(sol: VertexSolution, tab: Tableau, values: Sequence[int], delta: int,
                 system: ReducedSystem) -> None:
    # Undo the x_j >= 1 shift and the column scaling, then compare directions.
    lp = [values[j] + (delta if j in tab.positive else 0) for j in range(system.ncols)]
    lp = [v * (system.lcm // d) for v, d in zip(lp, system.divisors)]
    ref = next(j for j, v in enumerate(sol.u) if v)
    for j, (a, b) in enumerate(zip(lp, sol.u)):
        if a * sol.u[ref] != b * lp[ref] or (b == 0) != (a == 0):
            raise ReconstructionError(
                f"type {format_type(sol.tau)}: LP point {lp} is not a multiple of {list(sol.u)}"
            )


class _Walker:
    def __init__(self, instance: ProblemInstance, sink: Optional[Sink], workers: int,
                 arith: str, debug: bool, check_cycling: bool,
                 progress: Optional[Callable[[Fraction], None]], progress_interval: int,
                 trace: Optional[list], system: Optional[ReducedSystem] = None):
        if workers < 1:
            raise ValueError("workers must be at least 1")
        self.instance = instance
        self.n = instance.n
        self.system = system or ReducedSystem.from_instance(instance)
        self.ctx = LPContext(self.system, arith=arith, debug=debug, check_cycling=check_cycling)
        self.sink = sink
        self.trie = SolutionTrie(self.n)
        self.stop = threading.Event()
        self.stats = TraversalStats(
            arith=self.ctx.mode,
            delta=self.system.delta,
            rank=self.system.rank,
            vertex_bound=self.system.bound.vertex,
        )
        self.trace = trace
        self.progress_cb = progress
        self.progress_interval = max(1, progress_interval)
        self.resolved = 0  # in units of 4^-n
        self._lock = threading.Lock()
        self._emit_lock = threading.Lock()
        self._slots = workers - 1
        self._errors: list[BaseException] = []

    # -- bookkeeping --------------------------------------------------------

    def _event(self, kind: str, tau) -> None:
        if self.trace is not None:
            with self._lock:
                self.trace.append((kind, tuple(tau)))

    def progress(self) -> Fraction:
        return Fraction(self.resolved, 4**self.n)

    def _resolve(self, depth: int) -> None:
        with self._lock:
            self.resolved += 4 ** (self.n - depth)

    def _visit(self) -> None:
        with self._lock:
            self.stats.nodes_visited += 1
            if self.progress_cb and self.stats.nodes_visited % self.progress_interval == 0:
                self.progress_cb(self.progress())

    # -- traversal ----------------------------------------------------------

    def run(self) -> TraversalStats:
        start = time.perf_counter()
        if self.progress_cb:
            self.progress_cb(Fraction(0))
        root = initial_tableau(self.ctx)
        # b = 0 at the root, so the initial basis is already feasible.
        self._visit()
        self._expand((), root)
        if self._errors:
            raise self._errors[0]
        self.stats.solutions = len(self.trie)
        self.stats.max_tableau_entry = max(self.ctx.max_entry, self._initial_entry(root))
        self.stats.pivots = self.ctx.pivots
        self.stats.aborted = self.stop.is_set()
        self.stats.elapsed = time.perf_counter() - start
        if self.progress_cb:
            self.progress_cb(self.progress())
        return self.stats

    @staticmethod
    def _initial_entry(root: Tableau) -> int:
        entries = [root.delta] + [abs(int(v)) for v in root.N.flat]
        return max(entries)

    def _take_slot(self) -> bool:
        with self._lock:
            if self._slots > 0:
                self._slots -= 1
                return True
            return False

    def _release_slot(self) -> None:
        with self._lock:
            self._slots += 1

    def _expand(self, prefix: tuple, tab: Tableau) -> bool:
        found = self._child(prefix, tab, 0)
        threads = []
        results: list[bool] = []

        def worker(s):
            try:
                results.append(self._child(prefix, tab, s))
            except BaseException as exc:  # re-raised by run()
                self._errors.append(exc)
                self.stop.set()
            finally:
                self._release_slot()

        for s in (1, 2, 3):
            if self.stop.is_set():
                break
            if self._take_slot():
                th = threading.Thread(target=worker, args=(s,), daemon=True)
                th.start()
                threads.append(th)
            else:
                found |= self._child(prefix, tab, s)
        for th in threads:
            th.join()
        found |= any(results)
        if not found:
            with self._lock:
                self.stats.dead_ends += 1
        return found

    def _child(self, prefix: tuple, parent: Tableau, symbol: int) -> bool:
        if self.stop.is_set():
            return False
        tau = prefix + (symbol,)
        depth = len(tau)
        n = self.n
        self._event("test", tau)
        filled = tau + (0,) * (n - depth)
        passed = not (depth == n and not any(tau))
        if passed:
            passed = not self.trie.dominates_any(filled)
        if passed:
            outcome, tab = step_down(parent, depth - 1, symbol)
            passed = outcome.feasible
        if not passed:
            self._resolve(depth)
            self._event("done", tau)
            return False
        self._visit()
        if depth < n:
            found = self._expand(tau, tab)
            self._event("done", tau)
            return found
        self.trie.insert(tau)
        sol = reconstruct_vertex(tau, self.instance)
        _cross_check(sol, tab, outcome.values, outcome.delta, self.system)
        with self._emit_lock:
            if not self.stop.is_set():
                self._event("emit", tau)
                if self.sink is not None and self.sink(sol) is Signal.STOP:
                    self.stop.set()
        self._resolve(depth)
        self._event("done", tau)
        return True


def enumerate_vertices(instance: ProblemInstance, sink: Optional[Sink] = None, *,
                       arith: str = "auto", debug: bool = False, check_cycling: bool = False,
                       progress: Optional[Callable[[Fraction], None]] = None,
                       progress_interval: int = 1, trace: Optional[list] = None,
                       system: Optional[ReducedSystem] = None) -> TraversalStats:
    """Sequential traversal; children are visited in the order 0, 1, 2, 3.

    ``sink`` receives each vertex as it is found and may return
    ``Signal.STOP`` to end the run early.
    """
    walker = _Walker(instance, sink, 1, arith, debug, check_cycling, progress,
                     progress_interval, trace, system)
    return walker.run()


def enumerate_parallel(instance: ProblemInstance, sink: Optional[Sink] = None, workers: int = 2,
                       **kwargs) -> TraversalStats:
    """Fork-join traversal using up to ``workers`` threads.

    At every node the child-0 subtree finishes before children 1, 2 and 3
    start; those three may then run concurrently. Sink calls are serialised.
    """
    walker = _Walker(instance, sink, workers, kwargs.pop("arith", "auto"),
                     kwargs.pop("debug", False), kwargs.pop("check_cycling", False),
                     kwargs.pop("progress", None), kwargs.pop("progress_interval", 1),
                     kwargs.pop("trace", None), kwargs.pop("system", None))
    if kwargs:
        raise TypeError(f"unexpected arguments: {sorted(kwargs)}")
    return walker.run()


def collect(instance: ProblemInstance, workers: int = 1, **kwargs) -> tuple[list[VertexSolution], TraversalStats]:
    """Run to completion and return the solutions sorted by type vector."""
    found: list[VertexSolution] = []
    lock = threading.Lock()

    def sink(sol):
        with lock:
            found.append(sol)

    if workers == 1:
        stats = enumerate_vertices(instance, sink, **kwargs)
    else:
        stats = enumerate_parallel(instance, sink, workers, **kwargs)
    found.sort(key=lambda s: s.tau)
    return found, stats
