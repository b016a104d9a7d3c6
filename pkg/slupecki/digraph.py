"""
Reflexive digraphs stored as bit rows, with products, powers,
components and induced embeddings.

Vertices are the integers 0..n-1. Bit v of rows[u] is set iff u -> v.
Loops are always present.
"""

from dataclasses import dataclass
from functools import cached_property, reduce

import networkx as nx
import numpy as np

from .budget import BudgetTracker, SearchInterrupted
from .errors import ArityError, DigraphError


def iter_bits(mask):
    """Yield the set bit positions of `mask` in ascending order"""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _row_from_bools(row):
    return int.from_bytes(np.packbits(row, bitorder="little").tobytes(), "little")


class Digraph:
    """Immutable reflexive digraph"""

    def __init__(self, n, rows):
        if n < 1:
            raise DigraphError(f"digraph needs at least one vertex, got n={n}")
        if len(rows) != n:
            raise DigraphError(f"expected {n} adjacency rows, got {len(rows)}")
        full = (1 << n) - 1
        self.n = n
        self.rows = tuple((int(r) & full) | (1 << u) for u, r in enumerate(rows))

    @classmethod
    def from_matrix(cls, matrix):
        matrix = np.asarray(matrix, dtype=bool)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise DigraphError(f"adjacency matrix must be square, got {matrix.shape}")
        return cls(matrix.shape[0], [_row_from_bools(row) for row in matrix])

    @cached_property
    def in_rows(self):
        cols = [0] * self.n
        for u, row in enumerate(self.rows):
            for v in iter_bits(row):
                cols[v] |= 1 << u
        return tuple(cols)

    @cached_property
    def matrix(self):
        """Read-only boolean adjacency matrix"""
        m = np.zeros((self.n, self.n), dtype=bool)
        for u, row in enumerate(self.rows):
            m[u, list(iter_bits(row))] = True
        m.setflags(write=False)
        return m

    @cached_property
    def full_mask(self):
        return (1 << self.n) - 1

    def has_arc(self, u, v):
        return bool(self.rows[u] >> v & 1)

    def out_neighbors(self, u):
        return list(iter_bits(self.rows[u]))

    def in_neighbors(self, v):
        return list(iter_bits(self.in_rows[v]))

    def arcs(self):
        """All arcs (loops included) in lexicographic order"""
        return [(u, v) for u in range(self.n) for v in iter_bits(self.rows[u])]

    @property
    def arc_count(self):
        return sum(row.bit_count() for row in self.rows)

    def is_symmetric(self):
        return self.rows == self.in_rows

    def is_connected(self):
        return nx.is_weakly_connected(self.to_networkx())

    def is_strongly_connected(self):
        return nx.is_strongly_connected(self.to_networkx())

    def to_networkx(self):
        g = nx.DiGraph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.arcs())
        return g

    def __eq__(self, other):
        return isinstance(other, Digraph) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"Digraph(n={self.n}, arcs={self.arc_count})"


def new_digraph(n, arcs):
    """Build a reflexive digraph on n vertices from a list of arcs"""
    if n < 1:
        raise DigraphError(f"digraph needs at least one vertex, got n={n}")
    rows = [0] * n
    for pair in arcs:
        try:
            u, v = pair
        except (TypeError, ValueError):
            raise DigraphError(f"malformed arc {pair!r}; expected a pair (u, v)") from None
        if not (0 <= u < n and 0 <= v < n):
            raise DigraphError(f"arc {tuple(pair)} out of range for n={n}")
        rows[u] |= 1 << v
    return Digraph(n, rows)


def product(g, h):
    """Categorical product; vertex (x, y) has index x*|h| + y"""
    return Digraph.from_matrix(np.kron(g.matrix, h.matrix))


def power(g, k):
    if k < 1:
        raise ArityError(f"power needs k >= 1, got {k}")
    if k == 1:
        return g
    return reduce(product, [g] * k)


def symmetrization(g):
    return Digraph.from_matrix(g.matrix | g.matrix.T)


def encode_tuple(coords, n):
    """Row-major index of a coordinate tuple, first coordinate most significant"""
    coords = tuple(coords)
    if not coords:
        raise ArityError("empty vertex tuple")
    if any(not 0 <= c < n for c in coords):
        raise ArityError(f"coordinates {coords} out of range for base {n}")
    return int(np.ravel_multi_index(coords, (n,) * len(coords)))


def decode_index(idx, n, k):
    if not 0 <= idx < n ** k:
        raise ArityError(f"index {idx} out of range for base {n}, arity {k}")
    return tuple(int(c) for c in np.unravel_index(idx, (n,) * k))


@dataclass(frozen=True)
class ComponentPartition:
    """Blocks numbered by their smallest vertex; `order` holds (i, j) for block i ⊑ block j"""
    block_of: tuple
    blocks: tuple
    order: frozenset | None = None

    @property
    def count(self):
        return len(self.blocks)

    def precedes(self, i, j):
        if self.order is None:
            return i == j
        return (i, j) in self.order

    def minimal_blocks(self):
        """Blocks with no other block below them"""
        return [j for j in range(self.count)
                if not any(self.precedes(i, j) for i in range(self.count) if i != j)]

    def maximal_blocks(self):
        return [i for i in range(self.count)
                if not any(self.precedes(i, j) for j in range(self.count) if j != i)]


def _partition(n, components):
    blocks = sorted((tuple(sorted(c)) for c in components), key=lambda b: b[0])
    block_of = [0] * n
    for i, block in enumerate(blocks):
        for v in block:
            block_of[v] = i
    return tuple(block_of), tuple(blocks)


def weak_components(g):
    block_of, blocks = _partition(g.n, nx.weakly_connected_components(g.to_networkx()))
    return ComponentPartition(block_of, blocks)


def strong_components(g):
    """Strong components with the reflexive, transitive block order ⊑"""
    ng = g.to_networkx()
    block_of, blocks = _partition(g.n, nx.strongly_connected_components(ng))
    condensed = nx.condensation(ng, scc=[set(b) for b in blocks])
    condensed.remove_edges_from(list(nx.selfloop_edges(condensed)))
    assert nx.is_directed_acyclic_graph(condensed), "condensation has a cycle"
    closure = nx.transitive_closure_dag(condensed)
    order = {(i, i) for i in range(len(blocks))}
    order.update(closure.edges())
    return ComponentPartition(block_of, blocks, frozenset(order))


def induced(g, vertices):
    """Induced subdigraph, relabeled 0..|S|-1 in the order given"""
    if isinstance(vertices, (set, frozenset)):
        vertices = sorted(vertices)
    vertices = list(vertices)
    if not vertices:
        raise DigraphError("induced subdigraph needs a non-empty vertex set")
    if len(set(vertices)) != len(vertices):
        raise DigraphError(f"repeated vertices in {vertices}")
    if any(not 0 <= v < g.n for v in vertices):
        raise DigraphError(f"vertex set {vertices} out of range for n={g.n}")
    return Digraph.from_matrix(g.matrix[np.ix_(vertices, vertices)])


def is_induced_embedding(h, g, e):
    """True iff e is injective and (x, y) is an arc of h exactly when (e(x), e(y)) is one of g"""
    e = list(e)
    if len(e) != h.n or len(set(e)) != h.n:
        return False
    if any(not 0 <= v < g.n for v in e):
        return False
    return bool(np.array_equal(g.matrix[np.ix_(e, e)], h.matrix))


@dataclass
class Embeddings:
    maps: list
    stats: object

    @property
    def complete(self):
        return self.stats.complete


def _symmetric_degrees(g):
    return [(row & col).bit_count() for row, col in zip(g.rows, g.in_rows)]


def find_embeddings(h, g, limit=None, budget=None, labels=None, log_callback=None):
    """
    Enumerate induced embeddings of h into g in lexicographic order.

    If `labels` is given (one label per vertex of g) the embedded vertices
    must carry pairwise distinct labels.
    """
    tracker = BudgetTracker(budget, log_callback=log_callback)
    maps = []
    if h.n > g.n or limit == 0:
        return Embeddings(maps, tracker.finish())

    out_h = [r.bit_count() for r in h.rows]
    in_h = [c.bit_count() for c in h.in_rows]
    sym_h = _symmetric_degrees(h)
    out_g = [r.bit_count() for r in g.rows]
    in_g = [c.bit_count() for c in g.in_rows]
    sym_g = _symmetric_degrees(g)
    candidates = []
    for x in range(h.n):
        mask = 0
        for v in range(g.n):
            if out_g[v] >= out_h[x] and in_g[v] >= in_h[x] and sym_g[v] >= sym_h[x]:
                mask |= 1 << v
        candidates.append(mask)

    e = []
    used_labels = set()

    def extend(x, used):
        if x == h.n:
            maps.append(tuple(e))
            tracker.stats.solutions += 1
            return limit is None or len(maps) < limit
        mask = candidates[x] & ~used
        for y, v in enumerate(e):
            if h.has_arc(x, y):
                mask &= g.in_rows[v]
            else:
                mask &= ~g.in_rows[v]
            if h.has_arc(y, x):
                mask &= g.rows[v]
            else:
                mask &= ~g.rows[v]
        for v in iter_bits(mask):
            if labels is not None and labels[v] in used_labels:
                continue
            tracker.tick()
            e.append(v)
            if labels is not None:
                used_labels.add(labels[v])
            keep_going = extend(x + 1, used | (1 << v))
            e.pop()
            if labels is not None:
                used_labels.discard(labels[v])
            if not keep_going:
                return False
        return True

    try:
        if not extend(0, 0):
            tracker.stats.stopped_early = True
    except SearchInterrupted:
        pass
    return Embeddings(maps, tracker.finish())


def isomorphic(g, h):
    if g.n != h.n or g.arc_count != h.arc_count:
        return False
    return bool(find_embeddings(g, h, limit=1).maps)
