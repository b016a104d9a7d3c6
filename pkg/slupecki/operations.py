"""
Operation tables, their classification, and relation preservation.

A k-ary operation on {0..n-1} is stored as a flat table of n**k values in
row-major tuple order (first argument most significant).
"""

import itertools
from dataclasses import dataclass
from enum import Enum
from functools import cached_property

import numpy as np

from .budget import BudgetTracker, SearchInterrupted
from .digraph import power
from .errors import ArityError

LOG_TAG = "[THETA]"


class OperationTable:
    """Immutable k-ary operation on an n-element set"""

    def __init__(self, n, k, values):
        if n < 1 or k < 1:
            raise ArityError(f"operation needs n >= 1 and k >= 1, got n={n}, k={k}")
        values = np.asarray(values, dtype=np.int64).reshape(-1)
        if values.size != n ** k:
            raise ArityError(f"table for n={n}, k={k} needs {n ** k} entries, got {values.size}")
        if values.size and (values.min() < 0 or values.max() >= n):
            raise ArityError(f"table values must lie in [0, {n})")
        values.setflags(write=False)
        self.n = n
        self.k = k
        self.values = values

    @classmethod
    def from_function(cls, n, k, fn):
        return cls(n, k, [fn(*xs) for xs in itertools.product(range(n), repeat=k)])

    @classmethod
    def projection(cls, n, k, i):
        """The i-th projection, 1-based"""
        if not 1 <= i <= k:
            raise ArityError(f"projection index {i} out of range for arity {k}")
        return cls.from_function(n, k, lambda *xs: xs[i - 1])

    @classmethod
    def constant(cls, n, k, value):
        return cls(n, k, [value] * n ** k)

    @classmethod
    def identity(cls, n):
        return cls(n, 1, range(n))

    def __call__(self, *xs):
        return int(self.grid[tuple(xs)])

    @cached_property
    def grid(self):
        return self.values.reshape((self.n,) * self.k)

    def as_tuple(self):
        return tuple(int(v) for v in self.values)

    def image(self):
        return frozenset(int(v) for v in np.unique(self.values))

    def is_surjective(self):
        return len(self.image()) == self.n

    def is_idempotent(self):
        diagonal = [self(*([x] * self.k)) for x in range(self.n)]
        return diagonal == list(range(self.n))

    def compose_unary(self, g):
        """x -> g(f(x))"""
        return OperationTable(self.n, self.k, g.values[self.values])

    def __eq__(self, other):
        return (isinstance(other, OperationTable) and self.n == other.n
                and self.k == other.k and np.array_equal(self.values, other.values))

    def __hash__(self):
        return hash((self.n, self.k, self.values.tobytes()))

    def __repr__(self):
        return f"OperationTable(n={self.n}, k={self.k})"


class Kind(str, Enum):
    PROJECTION = "projection"
    ESSENTIALLY_UNARY = "essentially_unary"
    ESSENTIAL = "essential"


@dataclass(frozen=True)
class Classification:
    surjective: bool
    idempotent: bool
    essential: frozenset
    kind: Kind
    coordinate: int | None = None
    unary: OperationTable | None = None

    @property
    def is_essentially_unary(self):
        return self.kind != Kind.ESSENTIAL

    def to_dict(self):
        data = {
            "surjective": self.surjective,
            "idempotent": self.idempotent,
            "essential_coordinates": sorted(self.essential),
            "kind": self.kind.value,
        }
        if self.coordinate is not None:
            data["coordinate"] = self.coordinate
            data["unary"] = list(self.unary.as_tuple())
        return data


def classify(f):
    grid = f.grid
    essential = frozenset(i + 1 for i in range(f.k) if np.any(np.diff(grid, axis=i)))
    surjective = f.is_surjective()
    idempotent = f.is_idempotent()
    if len(essential) >= 2:
        return Classification(surjective, idempotent, essential, Kind.ESSENTIAL)

    coordinate = min(essential) if essential else 1
    moved = np.moveaxis(grid, coordinate - 1, 0).reshape(f.n, -1)
    g = moved[:, 0]
    assert np.all(moved == g[:, None]), "unary part depends on other coordinates"
    unary = OperationTable(f.n, 1, g)
    kind = Kind.PROJECTION if np.array_equal(g, np.arange(f.n)) else Kind.ESSENTIALLY_UNARY
    return Classification(surjective, idempotent, essential, kind, coordinate, unary)


def is_polymorphism(g, f):
    """f maps every arc of g**k to an arc of g"""
    if f.n != g.n:
        raise ArityError(f"table base {f.n} does not match digraph size {g.n}")
    src, dst = np.nonzero(power(g, f.k).matrix)
    return bool(np.all(g.matrix[f.values[src], f.values[dst]]))


def is_homomorphism(h, g, table):
    """Independent arc-preservation check for a map h -> g"""
    table = np.asarray(table, dtype=np.int64)
    if table.shape != (h.n,) or np.any(table < 0) or np.any(table >= g.n):
        return False
    src, dst = np.nonzero(h.matrix)
    return bool(np.all(g.matrix[table[src], table[dst]]))


@dataclass(frozen=True)
class Relation:
    n: int
    arity: int
    tuples: frozenset

    def __post_init__(self):
        for t in self.tuples:
            if len(t) != self.arity or any(not 0 <= x < self.n for x in t):
                raise ArityError(f"tuple {t} does not fit relation of arity {self.arity} on {self.n}")

    def __len__(self):
        return len(self.tuples)

    def __contains__(self, t):
        return tuple(t) in self.tuples

    @cached_property
    def array(self):
        return np.array(sorted(self.tuples), dtype=np.int64).reshape(-1, self.arity)

    @property
    def is_theta(self):
        if self.n != self.arity or len(self.tuples) != self.n ** self.n - _factorial(self.n):
            return False
        return all(len(set(t)) < self.n for t in self.tuples)


def _factorial(n):
    return int(np.prod(np.arange(1, n + 1)))


def slupecki_relation(n):
    """All n-tuples with fewer than n distinct entries"""
    if n < 2:
        raise ArityError(f"slupecki relation needs n >= 2, got {n}")
    tuples = frozenset(t for t in itertools.product(range(n), repeat=n) if len(set(t)) < n)
    return Relation(n, n, tuples)


@dataclass
class Preservation:
    holds: bool | None
    mode: str
    counterexample: tuple | None = None
    stats: object = None


def _member_mask(relation):
    """Boolean lookup over all n**arity tuples"""
    mask = np.zeros(relation.n ** relation.arity, dtype=bool)
    if len(relation):
        weights = relation.n ** np.arange(relation.arity - 1, -1, -1)
        mask[relation.array @ weights] = True
    return mask


def _apply_to_columns(f, relation, choice):
    """Rows of the matrix with the chosen relation tuples as columns, mapped through f"""
    columns = relation.array[list(choice)]          # k x arity
    weights = f.n ** np.arange(f.k - 1, -1, -1)
    return f.values[weights @ columns]              # arity values


def _exhaustive(f, relation, member):
    r_count = len(relation)
    weights_f = f.n ** np.arange(f.k - 1, -1, -1)
    weights_r = relation.n ** np.arange(relation.arity - 1, -1, -1)
    grids = np.meshgrid(*([np.arange(r_count)] * f.k), indexing="ij")
    picks = np.stack([g.reshape(-1) for g in grids], axis=1)      # P x k
    columns = relation.array[picks]                                # P x k x arity
    images = f.values[np.einsum("pka,k->pa", columns, weights_f)]  # P x arity
    ok = member[images @ weights_r]
    if np.all(ok):
        return Preservation(True, "exhaustive")
    bad = int(np.flatnonzero(~ok)[0])
    return Preservation(False, "exhaustive", tuple(tuple(int(x) for x in c) for c in columns[bad]))


def _sampled(f, relation, member, samples, rng):
    weights_r = relation.n ** np.arange(relation.arity - 1, -1, -1)
    for _ in range(samples):
        choice = rng.integers(0, len(relation), size=f.k)
        image = _apply_to_columns(f, relation, choice)
        if not member[int(image @ weights_r)]:
            columns = tuple(tuple(int(x) for x in relation.array[c]) for c in choice)
            return Preservation(False, "sampled", columns)
    return Preservation(None, "sampled")


def theta_violation(f, budget=None, log_callback=None):
    """
    Search for a matrix with columns in theta whose f-image is a permutation.

    Row v is an argument tuple with f-value v; the search picks one preimage
    per value so that every coordinate repeats a value somewhere. Exact:
    returns the violating rows, or None once the space is exhausted.
    """
    n, k = f.n, f.k
    tracker = BudgetTracker(budget, log_callback=log_callback)
    coords = np.array(list(itertools.product(range(n), repeat=k)), dtype=np.int64)
    preimages = [coords[f.values == v] for v in range(n)]
    if any(len(p) == 0 for p in preimages):
        return Preservation(True, "violation-search", stats=tracker.finish())

    # proj[v][j]: bitmask of j-th entries among preimages of v
    proj = [[int(np.bitwise_or.reduce(1 << p[:, j])) for j in range(k)] for p in preimages]
    rows = []

    def feasible(depth, seen, repeated):
        remaining = range(depth, n)
        for j in range(k):
            if repeated >> j & 1:
                continue
            if any(proj[v][j] & seen[j] for v in remaining):
                continue
            if any(proj[v][j] & proj[w][j] for v in remaining for w in remaining if v < w):
                continue
            return False
        return True

    def extend(depth, seen, repeated):
        if depth == n:
            return repeated == (1 << k) - 1
        for row in preimages[depth]:
            tracker.tick()
            new_seen = list(seen)
            new_repeated = repeated
            for j, x in enumerate(row):
                bit = 1 << int(x)
                if seen[j] & bit:
                    new_repeated |= 1 << j
                new_seen[j] |= bit
            if not feasible(depth + 1, new_seen, new_repeated):
                tracker.stats.prunes += 1
                continue
            rows.append(tuple(int(x) for x in row))
            if extend(depth + 1, new_seen, new_repeated):
                return True
            rows.pop()
        return False

    try:
        if not feasible(0, [0] * k, 0):
            return Preservation(True, "violation-search", stats=tracker.finish())
        found = extend(0, [0] * k, 0)
    except SearchInterrupted:
        tracker.log(f"{LOG_TAG} violation search stopped: {tracker.stats.status.value}")
        return Preservation(None, "violation-search", stats=tracker.finish())
    stats = tracker.finish()
    if found:
        # columns of the violating matrix
        columns = tuple(tuple(r[j] for r in rows) for j in range(k))
        return Preservation(False, "violation-search", columns, stats)
    return Preservation(True, "violation-search", stats=stats)


def preserves_relation(f, relation, budget=None, exhaustive_limit=200_000,
                       samples=20_000, rng=None, log_callback=None):
    """
    Check that f applied row-wise to any matrix with columns in `relation` lands in it.

    Small instances are enumerated. Above `exhaustive_limit` column choices
    theta uses the exact violation search and other relations are sampled;
    a sampled run that finds nothing reports holds=None.
    """
    if f.n != relation.n:
        raise ArityError(f"table base {f.n} does not match relation base {relation.n}")
    if len(relation) == 0:
        return Preservation(True, "exhaustive")
    member = _member_mask(relation)
    if len(relation) ** f.k <= exhaustive_limit:
        return _exhaustive(f, relation, member)
    if relation.is_theta:
        return theta_violation(f, budget, log_callback)
    if rng is None:
        rng = np.random.default_rng(0)
    return _sampled(f, relation, member, samples, rng)
