"""
Homomorphism search with arc-consistency propagation, the Hom-digraph,
and diagnostics for the identity endomorphism.
"""

import logging
from dataclasses import dataclass, field

import numpy as np

from .budget import Budget, BudgetStatus, BudgetTracker, SearchInterrupted, SearchStats
from .digraph import Digraph, iter_bits, strong_components, weak_components
from .errors import BudgetExhausted, DigraphError
from .operations import OperationTable

LOG = logging.getLogger(__name__)

__all__ = [
    "Budget", "BudgetStatus", "SearchStats", "HomSearch", "SurjectivityMonitor",
    "enumerate_homs", "exists_hom", "collect_homs", "endomorphisms", "automorphisms",
    "compose", "hom_arc", "is_retraction", "HomDigraph", "hom_digraph",
    "IdentityStatus", "identity_status", "validate_pins",
]

LEX = "lex"
FAIL_FIRST = "fail-first"


def validate_pins(pins, source, target):
    """Return pins as a dict after range checks"""
    pins = dict(pins or {})
    for x, v in pins.items():
        if not 0 <= x < source.n:
            raise DigraphError(f"pinned vertex {x} out of range for source of size {source.n}")
        if not 0 <= v < target.n:
            raise DigraphError(f"pin value {v} out of range for target of size {target.n}")
    return pins


class SurjectivityMonitor:
    """Prunes branches that can no longer hit every target value"""

    def __init__(self, n):
        self.full = (1 << n) - 1

    def feasible(self, domains):
        hit = 0
        open_union = 0
        open_count = 0
        for d in domains:
            if d & (d - 1):
                open_union |= d
                open_count += 1
            else:
                hit |= d
        missing = self.full & ~hit
        if not missing:
            return True
        if open_count < missing.bit_count():
            return False
        return not (missing & ~open_union)


class HomSearch:
    """
    Backtracking search for homomorphisms source -> target.

    Domains are bitmasks over target vertices. After each assignment the
    changed domains are propagated through the source arcs in both
    directions until arc consistency. The visitor receives each solution
    as a tuple and returns False to stop the search.
    """

    def __init__(self, source, target, pins=None, order=LEX, monitor=None,
                 budget=None, tracker=None, log_callback=None):
        self.source = source
        self.target = target
        self.pins = validate_pins(pins, source, target)
        self.order = order
        self.monitor = monitor
        self.tracker = tracker or BudgetTracker(budget, log_callback=log_callback)
        self.incumbent = None
        self._pred_cache = {}
        self._succ_cache = {}
        full = target.full_mask
        self.out_vars = [tuple(v for v in iter_bits(row) if v != x)
                         for x, row in enumerate(source.rows)]
        self.in_vars = [tuple(v for v in iter_bits(col) if v != x)
                        for x, col in enumerate(source.in_rows)]
        looped = 0
        for v in range(target.n):
            if target.has_arc(v, v):
                looped |= 1 << v
        self._initial = [looped if source.has_arc(x, x) else full for x in range(source.n)]

    @property
    def stats(self):
        return self.tracker.stats

    def _pred(self, mask):
        """Target vertices with an arc into some vertex of mask"""
        cached = self._pred_cache.get(mask)
        if cached is None:
            cached = 0
            for v in iter_bits(mask):
                cached |= self.target.in_rows[v]
            self._pred_cache[mask] = cached
        return cached

    def _succ(self, mask):
        cached = self._succ_cache.get(mask)
        if cached is None:
            cached = 0
            for v in iter_bits(mask):
                cached |= self.target.rows[v]
            self._succ_cache[mask] = cached
        return cached

    def _propagate(self, domains, changed):
        queue = list(changed)
        queued = set(queue)
        while queue:
            y = queue.pop()
            queued.discard(y)
            dy = domains[y]
            # arc x -> y needs f(x) among the predecessors of dom(y)
            pred = self._pred(dy)
            for x in self.in_vars[y]:
                new = domains[x] & pred
                if new != domains[x]:
                    if not new:
                        return False
                    domains[x] = new
                    if x not in queued:
                        queue.append(x)
                        queued.add(x)
            succ = self._succ(dy)
            for x in self.out_vars[y]:
                new = domains[x] & succ
                if new != domains[x]:
                    if not new:
                        return False
                    domains[x] = new
                    if x not in queued:
                        queue.append(x)
                        queued.add(x)
        return True

    def _select(self, domains):
        """Next branching variable, or None when every domain is a singleton"""
        if self.order == LEX:
            for x, d in enumerate(domains):
                if d & (d - 1):
                    return x
            return None
        best = None
        best_size = None
        for x, d in enumerate(domains):
            if d & (d - 1):
                size = d.bit_count()
                if best is None or size < best_size:
                    best, best_size = x, size
                    if size == 2:
                        break
        return best

    def _can_beat_incumbent(self, domains):
        """Lower bound: each cell at its smallest candidate, compared lexicographically"""
        for d, w in zip(domains, self.incumbent):
            low = (d & -d).bit_length() - 1
            if low < w:
                return True
            if low > w:
                return False
        return False

    def _admissible(self, domains):
        if self.monitor is not None and not self.monitor.feasible(domains):
            return False
        if self.incumbent is not None and not self._can_beat_incumbent(domains):
            return False
        return True

    def root(self):
        """Initial domains after pins and propagation, or None if inconsistent"""
        domains = list(self._initial)
        for x, v in self.pins.items():
            domains[x] &= 1 << v
            if not domains[x]:
                return None
        if not self._propagate(domains, range(self.source.n)):
            return None
        return domains

    def run(self, visitor, domains=None):
        """Search below `domains` (default: the root) and return the stats"""
        try:
            if domains is None:
                domains = self.root()
            if domains is not None:
                self._dfs(domains, visitor)
        except SearchInterrupted:
            self.tracker.log(f"[SEARCH] stopped: {self.stats.status.value} after {self.stats.nodes} nodes")
        return self.tracker.finish()

    def _emit(self, domains, visitor):
        self.stats.solutions += 1
        table = tuple(d.bit_length() - 1 for d in domains)
        if visitor(table) is False:
            self.stats.stopped_early = True
            return False
        return True

    def _dfs(self, domains, visitor):
        if not self._admissible(domains):
            self.stats.prunes += 1
            return
        var = self._select(domains)
        if var is None:
            self._emit(domains, visitor)
            return
        stack = [[domains, var, domains[var]]]
        while stack:
            frame = stack[-1]
            current, var, pending = frame
            if not pending:
                stack.pop()
                continue
            low = pending & -pending
            frame[2] = pending ^ low
            self.tracker.tick()
            child = list(current)
            child[var] = low
            if not self._propagate(child, (var,)) or not self._admissible(child):
                self.stats.prunes += 1
                continue
            nxt = self._select(child)
            if nxt is None:
                if not self._emit(child, visitor):
                    return
                continue
            stack.append([child, nxt, child[nxt]])


def enumerate_homs(source, target, pins=None, visitor=None, budget=None,
                   deterministic=True, log_callback=None):
    """
    Feed every homomorphism source -> target extending `pins` to `visitor`.

    Deterministic mode branches on cells in index order so solutions arrive
    in lexicographic order of their tables.
    """
    order = LEX if deterministic else FAIL_FIRST
    search = HomSearch(source, target, pins, order=order, budget=budget, log_callback=log_callback)
    return search.run(visitor or (lambda table: None))


def exists_hom(source, target, pins=None, budget=None, tracker=None):
    """True / False, or None when the budget ran out first"""
    found = []
    search = HomSearch(source, target, pins, order=FAIL_FIRST, budget=budget, tracker=tracker)
    search.run(lambda table: found.append(table) or False)
    if found:
        return True
    return False if search.stats.complete else None


def collect_homs(source, target, pins=None, budget=None, log_callback=None):
    """All homomorphisms as tuples; raises BudgetExhausted if the search was cut short"""
    tables = []
    stats = enumerate_homs(source, target, pins, tables.append, budget, log_callback=log_callback)
    if not stats.complete:
        raise BudgetExhausted(f"homomorphism enumeration incomplete ({stats.status.value})", stats)
    return tables


def endomorphisms(g, budget=None, log_callback=None):
    return [OperationTable(g.n, 1, t) for t in collect_homs(g, g, budget=budget, log_callback=log_callback)]


def automorphisms(g, budget=None):
    return [f for f in endomorphisms(g, budget) if f.is_surjective()]


def compose(h, f):
    """(h ∘ f)(x) = h(f(x)) for unary tables"""
    return OperationTable(f.n, 1, h.values[f.values])


def hom_arc(source, target, f, g):
    """(f, g) is an arc of Hom(source, target)"""
    f = np.asarray(getattr(f, "values", f))
    g = np.asarray(getattr(g, "values", g))
    src, dst = np.nonzero(source.matrix)
    return bool(np.all(target.matrix[f[src], g[dst]]))


def is_retraction(g, r):
    """r is an idempotent endomorphism"""
    return hom_arc(g, g, r, r) and np.array_equal(r.values[r.values], r.values)


@dataclass
class HomDigraph:
    homs: tuple
    digraph: Digraph

    def index_of(self, table):
        return self.homs.index(tuple(table))

    def tables_json(self):
        return [{"index": i, "table": list(t)} for i, t in enumerate(self.homs)]


def hom_digraph(source, target, budget=None, log_callback=None):
    """Vertices are the homomorphisms; f -> g iff (f(x), g(y)) is an arc for every arc (x, y)"""
    homs = collect_homs(source, target, budget=budget, log_callback=log_callback)
    table = np.array(homs, dtype=np.int64).reshape(len(homs), source.n)
    adjacency = np.ones((len(homs), len(homs)), dtype=bool)
    for x, y in source.arcs():
        adjacency &= target.matrix[np.ix_(table[:, x], table[:, y])]
    assert np.all(np.diagonal(adjacency)), "homomorphism without a Hom loop"
    return HomDigraph(tuple(homs), Digraph.from_matrix(adjacency))


@dataclass
class IdentityStatus:
    isolated_loop: bool
    alone_weak: bool
    alone_strong: bool
    neighbors: list
    weak_component: list
    strong_component: list
    arcs: list = field(default_factory=list)

    def to_dict(self):
        return {
            "isolated_loop": self.isolated_loop,
            "alone_weak": self.alone_weak,
            "alone_strong": self.alone_strong,
            "neighbors": [list(t) for t in self.neighbors],
            "weak_component": [list(t) for t in self.weak_component],
            "strong_component": [list(t) for t in self.strong_component],
            "arcs": [[list(a), list(b)] for a, b in self.arcs],
        }


def identity_status(g, budget=None, log_callback=None):
    """Where the identity sits in Hom(g, g)"""
    hd = hom_digraph(g, g, budget, log_callback)
    LOG.debug(f"Hom digraph has {len(hd.homs)} vertices")
    ident = hd.index_of(range(g.n))
    hg = hd.digraph
    neighbors = sorted((set(hg.out_neighbors(ident)) | set(hg.in_neighbors(ident))) - {ident})
    weak = weak_components(hg)
    strong = strong_components(hg)
    weak_block = weak.blocks[weak.block_of[ident]]
    strong_block = strong.blocks[strong.block_of[ident]]
    arcs = [(hd.homs[u], hd.homs[v]) for u in weak_block for v in weak_block
            if u != v and hg.has_arc(u, v)]
    return IdentityStatus(
        isolated_loop=not neighbors,
        alone_weak=len(weak_block) == 1,
        alone_strong=len(strong_block) == 1,
        neighbors=[hd.homs[v] for v in neighbors],
        weak_component=[hd.homs[v] for v in weak_block],
        strong_component=[hd.homs[v] for v in strong_block],
        arcs=arcs,
    )
