"""
Search budgets and statistics shared by every backtracking search
"""

import time
from dataclasses import dataclass, field, asdict
from enum import Enum

import psutil

CHECK_EVERY = 1024
PROGRESS_EVERY = 1_000_000


class BudgetStatus(str, Enum):
    COMPLETE = "complete"
    NODE_BUDGET = "node-budget"
    TIMEOUT = "timeout"


@dataclass(frozen=True)
class Budget:
    """Node and wall-clock limits; None means unlimited"""
    max_nodes: int | None = None
    timeout_s: float | None = None

    @classmethod
    def from_config(cls, config):
        nodes = config.get("budget_nodes")
        timeout = config.get("timeout_s")
        return cls(max_nodes=int(nodes) if nodes else None,
                   timeout_s=float(timeout) if timeout else None)

    @classmethod
    def unlimited(cls):
        return cls()

    def split(self, parts):
        """One budget per branch; the node shares add up to max_nodes"""
        if self.max_nodes is None:
            return [self] * parts
        base, extra = divmod(self.max_nodes, parts)
        return [Budget(base + (1 if i < extra else 0), self.timeout_s) for i in range(parts)]


@dataclass
class SearchStats:
    nodes: int = 0
    prunes: int = 0
    solutions: int = 0
    elapsed_s: float = 0.0
    peak_rss_bytes: int = 0
    status: BudgetStatus = BudgetStatus.COMPLETE
    stopped_early: bool = False

    @property
    def complete(self):
        return self.status == BudgetStatus.COMPLETE

    def merge(self, other):
        self.nodes += other.nodes
        self.prunes += other.prunes
        self.solutions += other.solutions
        self.elapsed_s = max(self.elapsed_s, other.elapsed_s)
        self.peak_rss_bytes = max(self.peak_rss_bytes, other.peak_rss_bytes)
        if other.status != BudgetStatus.COMPLETE and self.status == BudgetStatus.COMPLETE:
            self.status = other.status
        self.stopped_early = self.stopped_early or other.stopped_early
        return self

    def to_dict(self):
        data = asdict(self)
        data["status"] = self.status.value
        return data


class SearchInterrupted(Exception):
    """Raised inside a search when the budget runs out"""


class BudgetTracker:
    """Counts nodes against a Budget; one tracker may be shared by several searches"""

    def __init__(self, budget=None, stats=None, log_callback=None):
        self.budget = budget or Budget()
        self.stats = stats or SearchStats()
        self.log_callback = log_callback
        self._start = time.monotonic()
        self._deadline = (self._start + self.budget.timeout_s
                          if self.budget.timeout_s else None)

    def log(self, msg):
        if self.log_callback:
            self.log_callback(msg)

    def tick(self):
        """Count one node; raise SearchInterrupted when a limit is hit"""
        stats = self.stats
        stats.nodes += 1
        if self.budget.max_nodes is not None and stats.nodes > self.budget.max_nodes:
            stats.status = BudgetStatus.NODE_BUDGET
            raise SearchInterrupted()
        if stats.nodes % CHECK_EVERY == 0:
            if self._deadline is not None and time.monotonic() > self._deadline:
                stats.status = BudgetStatus.TIMEOUT
                raise SearchInterrupted()
            if stats.nodes % PROGRESS_EVERY == 0:
                self.log(f"[SEARCH] {stats.nodes} nodes, {stats.prunes} prunes, "
                         f"{stats.solutions} solutions")

    @property
    def exhausted(self):
        return self.stats.status != BudgetStatus.COMPLETE

    def finish(self):
        self.stats.elapsed_s = time.monotonic() - self._start
        try:
            rss = psutil.Process().memory_info().rss
        except psutil.Error:
            rss = 0
        self.stats.peak_rss_bytes = max(self.stats.peak_rss_bytes, rss)
        return self.stats
