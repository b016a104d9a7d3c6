"""
Deciders for the k-Slupecki and k-idempotent-trivial properties,
and the embedding condition for surjective polymorphisms.
"""

import logging
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass, field

from .budget import Budget, SearchStats
from .digraph import Digraph, encode_tuple, find_embeddings, power
from .errors import ArityError, PreconditionError, SlupeckiError
from .hom import FAIL_FIRST, HomSearch, SurjectivityMonitor, automorphisms
from .operations import Kind, OperationTable, classify, is_polymorphism

LOG = logging.getLogger(__name__)

SLUPECKI = "slupecki"
IDEMPOTENT_TRIVIAL = "idempotent-trivial"


@dataclass
class Verdict:
    property: str
    params: dict
    holds: bool | None
    witness: OperationTable | None = None
    classification: object = None
    stats: SearchStats = field(default_factory=SearchStats)
    canonical: bool = True
    surjective_seen: int = 0
    unary_rejected: int = 0

    def to_dict(self):
        data = {
            "property": self.property,
            "params": self.params,
            "holds": self.holds,
            "canonical": self.canonical,
            "surjective_seen": self.surjective_seen,
            "unary_rejected": self.unary_rejected,
        }
        if self.witness is not None:
            data["witness"] = list(self.witness.as_tuple())
            data["classification"] = self.classification.to_dict()
        return data


def _is_witness(prop, cls):
    if prop == SLUPECKI:
        return cls.kind == Kind.ESSENTIAL
    return cls.kind != Kind.PROJECTION


def _build_search(g, k, prop, budget, log_callback=None):
    source = power(g, k)
    if prop == SLUPECKI:
        return HomSearch(source, g, order=FAIL_FIRST, monitor=SurjectivityMonitor(g.n),
                         budget=budget, log_callback=log_callback)
    diagonal = {encode_tuple([x] * k, g.n): x for x in range(g.n)}
    return HomSearch(source, g, pins=diagonal, order=FAIL_FIRST,
                     budget=budget, log_callback=log_callback)


class _Collector:
    """Visitor that sorts completed tables into witnesses and rejected ones"""

    def __init__(self, search, n, k, prop, canonical):
        self.search = search
        self.n = n
        self.k = k
        self.prop = prop
        self.canonical = canonical
        self.witness = None
        self.seen = 0
        self.rejected = 0

    def __call__(self, table):
        self.seen += 1
        f = OperationTable(self.n, self.k, table)
        if not _is_witness(self.prop, classify(f)):
            self.rejected += 1
            return True
        self.witness = table
        if not self.canonical:
            return False
        # keep searching, only for lexicographically smaller tables
        self.search.incumbent = table
        return True


def _reverify(g, prop, f):
    cls = classify(f)
    ok = is_polymorphism(g, f) and _is_witness(prop, cls)
    ok = ok and (cls.surjective if prop == SLUPECKI else cls.idempotent)
    if not ok:
        raise SlupeckiError(f"{prop} witness failed re-verification")
    return cls


def _finish(g, k, prop, witness, stats, canonical, seen, rejected):
    params = {"k": k, "n": g.n}
    if witness is not None:
        f = OperationTable(g.n, k, witness)
        cls = _reverify(g, prop, f)
        return Verdict(prop, params, False, f, cls, stats,
                       canonical and stats.complete, seen, rejected)
    holds = True if stats.complete else None
    return Verdict(prop, params, holds, None, None, stats, canonical, seen, rejected)


def _branch_worker(rows, k, prop, budget, var, value):
    g = Digraph(len(rows), rows)
    search = _build_search(g, k, prop, budget)
    collector = _Collector(search, g.n, k, prop, canonical=False)
    domains = search.root()
    if domains is not None:
        domains = list(domains)
        domains[var] &= 1 << value
        if domains[var] and search._propagate(domains, (var,)):
            search.run(collector, domains)
    stats = search.tracker.finish()
    return collector.witness, stats, collector.seen, collector.rejected


def _decide_parallel(g, k, prop, budget, threads, log_callback):
    root_search = _build_search(g, k, prop, budget)
    root = root_search.root()
    stats = SearchStats()
    if root is None:
        return _finish(g, k, prop, None, root_search.tracker.finish(), False, 0, 0)
    var = root_search._select(root)
    if var is None:
        return _decide_sequential(g, k, prop, budget, False, log_callback)
    values = [v for v in range(g.n) if root[var] >> v & 1]
    shares = (budget or Budget()).split(len(values))
    witness, seen, rejected = None, 0, 0
    with ProcessPoolExecutor(max_workers=threads) as pool:
        futures = {pool.submit(_branch_worker, g.rows, k, prop, share, var, v): v
                   for v, share in zip(values, shares)}
        for future in as_completed(futures):
            if future.cancelled():
                continue
            branch_witness, branch_stats, branch_seen, branch_rejected = future.result()
            stats.merge(branch_stats)
            seen += branch_seen
            rejected += branch_rejected
            if branch_witness is not None and witness is None:
                witness = branch_witness
                if log_callback:
                    log_callback(f"[WITNESS] found in branch cell {var} = {futures[future]}")
                for other in futures:
                    other.cancel()
    return _finish(g, k, prop, witness, stats, False, seen, rejected)


def _decide_sequential(g, k, prop, budget, canonical, log_callback):
    search = _build_search(g, k, prop, budget, log_callback)
    collector = _Collector(search, g.n, k, prop, canonical)
    stats = search.run(collector)
    return _finish(g, k, prop, collector.witness, stats, canonical,
                   collector.seen, collector.rejected)


def _decide(g, k, prop, budget, threads, canonical, log_callback):
    if k < 2:
        raise ArityError(f"arity must be at least 2, got {k}")
    if log_callback:
        log_callback(f"[SEARCH] {prop} k={k} on {g.n} vertices, {g.n ** k} cells")
    if threads > 1:
        verdict = _decide_parallel(g, k, prop, budget, threads, log_callback)
    else:
        verdict = _decide_sequential(g, k, prop, budget, canonical, log_callback)
    LOG.info(f"{prop} k={k}: holds={verdict.holds} nodes={verdict.stats.nodes} "
             f"status={verdict.stats.status.value}")
    return verdict


def k_slupecki(g, k, budget=None, threads=1, canonical=True, log_callback=None):
    """Every surjective k-ary polymorphism of g is essentially unary"""
    return _decide(g, k, SLUPECKI, budget, threads, canonical, log_callback)


def k_idempotent_trivial(g, k, budget=None, threads=1, canonical=True, log_callback=None):
    """Every idempotent k-ary polymorphism of g is a projection"""
    return _decide(g, k, IDEMPOTENT_TRIVIAL, budget, threads, canonical, log_callback)


def essentially_unary_count(g, k, budget=None):
    """Number of surjective essentially unary k-ary polymorphisms: k * |Aut(g)|"""
    return k * len(automorphisms(g, budget))


@dataclass
class EmbeddingCondition:
    embedding: tuple | None
    stats: SearchStats

    @property
    def holds(self):
        if self.embedding is not None:
            return True
        return False if self.stats.complete else None


def embedding_condition(g, f, budget=None, log_callback=None):
    """Least induced embedding e of g into g**p with f restricted to e(g) onto"""
    if f.n != g.n:
        raise ArityError(f"table base {f.n} does not match digraph size {g.n}")
    if f.k < 2:
        raise ArityError(f"embedding condition needs arity >= 2, got {f.k}")
    if not f.is_surjective() or not is_polymorphism(g, f):
        raise PreconditionError("embedding condition needs a surjective polymorphism")
    result = find_embeddings(g, power(g, f.k), limit=1, budget=budget,
                             labels=[int(v) for v in f.values], log_callback=log_callback)
    embedding = result.maps[0] if result.maps else None
    return EmbeddingCondition(embedding, result.stats)
