"""
The simplicial complex of a reflexive digraph.

A set of vertices is a simplex when it can be listed s1, ..., sr with
si -> sj for all i < j.
"""

from dataclasses import dataclass

from .digraph import iter_bits, symmetrization
from .errors import GuardError

MAX_VERTICES = 16


@dataclass(frozen=True)
class SimplicialComplex:
    by_dimension: tuple  # by_dimension[d] = sorted d-simplices as vertex tuples

    @property
    def dimension(self):
        return len(self.by_dimension) - 1

    def counts(self):
        return [len(level) for level in self.by_dimension]

    @property
    def euler_characteristic(self):
        return sum((-1) ** d * c for d, c in enumerate(self.counts()))

    def __contains__(self, simplex):
        simplex = tuple(sorted(simplex))
        d = len(simplex) - 1
        return 0 <= d <= self.dimension and simplex in self.by_dimension[d]

    def to_dict(self):
        return {
            "counts": self.counts(),
            "dimension": self.dimension,
            "euler_characteristic": self.euler_characteristic,
        }


def simplices(g, max_dim=None):
    """Every simplex of dimension <= max_dim, grown from chains one vertex at a time"""
    if max_dim is None and g.n > MAX_VERTICES:
        raise GuardError(f"simplex enumeration is limited to {MAX_VERTICES} vertices "
                         f"without max_dim, got {g.n}")
    limit = g.n if max_dim is None else max_dim + 1
    found = set()
    # the vertices that may follow a chain depend only on its vertex set
    frontier = {1 << v: g.rows[v] & ~(1 << v) for v in range(g.n)}
    found.update(frontier)
    size = 1
    while frontier and size < limit:
        nxt = {}
        for mask, common in frontier.items():
            for v in iter_bits(common):
                grown = mask | (1 << v)
                if grown not in found:
                    nxt[grown] = common & g.rows[v] & ~(1 << v)
                    found.add(grown)
        frontier = nxt
        size += 1
    levels = {}
    for mask in found:
        verts = tuple(iter_bits(mask))
        levels.setdefault(len(verts) - 1, []).append(verts)
    top = max(levels)
    return SimplicialComplex(tuple(tuple(sorted(levels.get(d, []))) for d in range(top + 1)))


def euler_characteristic(g, max_dim=None):
    return simplices(g, max_dim).euler_characteristic


def max_simplex_dimension(g):
    return simplices(g).dimension


def is_intransitive(g):
    """No three distinct vertices x -> y -> z with x -> z"""
    for x in range(g.n):
        out_x = g.rows[x] & ~(1 << x)
        for y in iter_bits(out_x):
            if out_x & g.rows[y] & ~(1 << x | 1 << y):
                return False
    return True


def triangulates_1_sphere(g):
    """Underlying graph is a cycle; on three vertices g must be a directed 3-cycle"""
    if g.n < 3:
        return False
    sym = symmetrization(g)
    if any((row & ~(1 << v)).bit_count() != 2 for v, row in enumerate(sym.rows)):
        return False
    if not sym.is_connected():
        return False
    if g.n == 3:
        return is_intransitive(g)
    return True
