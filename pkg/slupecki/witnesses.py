"""
Binary witness constructions built from endomorphisms next to the identity.

Each construction is re-verified with is_polymorphism and classify before
it is returned; anything that does not check out is refused.
"""

import logging

import numpy as np

from .digraph import Digraph, strong_components, weak_components
from .errors import ArityError, ConstructionRefused
from .families import is_poset
from .hom import hom_arc
from .operations import Kind, OperationTable, classify, is_polymorphism
from .topology import is_intransitive

LOG = logging.getLogger(__name__)


def _check_unary(g, f, name):
    if f.n != g.n or f.k != 1:
        raise ArityError(f"{name} must be a unary table on {g.n} elements")
    if not hom_arc(g, g, f, f):
        raise ConstructionRefused(f"{name} is not an endomorphism")
    if np.array_equal(f.values, np.arange(g.n)):
        raise ConstructionRefused(f"{name} must differ from the identity")


def _binary(g, fn):
    return OperationTable.from_function(g.n, 2, fn)


def min_component_witness(g, r):
    """
    f(x, y) = y on an extreme strong component A, r(y) elsewhere.

    A is ⊑-minimal when id -> r and ⊑-maximal when r -> id.
    """
    if g.is_strongly_connected():
        raise ConstructionRefused("digraph is strongly connected")
    _check_unary(g, r, "r")
    ident = np.arange(g.n)
    parts = strong_components(g)
    if hom_arc(g, g, ident, r):
        block = parts.minimal_blocks()[0]
    elif hom_arc(g, g, r, ident):
        block = parts.maximal_blocks()[0]
    else:
        raise ConstructionRefused("r is not adjacent to the identity in Hom(G,G)")
    members = set(parts.blocks[block])
    f = _binary(g, lambda x, y: y if x in members else r(y))
    cls = classify(f)
    if not (is_polymorphism(g, f) and cls.surjective and cls.kind == Kind.ESSENTIAL):
        raise ConstructionRefused("constructed operation failed verification")
    LOG.debug(f"[WITNESS] component witness on block {sorted(members)}")
    return f


def _verify_idempotent(g, phi):
    cls = classify(phi)
    return is_polymorphism(g, phi) and cls.idempotent and cls.kind != Kind.PROJECTION


def _single_point_neighbor(g):
    """Endomorphisms equal to id except at one point, adjacent to id; lexicographic in (a, b)"""
    ident = np.arange(g.n)
    for a in range(g.n):
        for b in range(g.n):
            if a == b:
                continue
            values = ident.copy()
            values[a] = b
            if not hom_arc(g, g, values, values):
                continue
            if hom_arc(g, g, ident, values) or hom_arc(g, g, values, ident):
                yield a, b, OperationTable(g.n, 1, values)


def _poset_case(g, f):
    ident = np.arange(g.n)
    moved = np.flatnonzero(f.values != ident)
    if len(moved) == 1:
        candidates = [(int(moved[0]), f(int(moved[0])), f)]
    else:
        LOG.info("[WITNESS] normalizing f to a single-point neighbour of the identity")
        candidates = list(_single_point_neighbor(g))
    for a, b, h in candidates:
        if g.has_arc(a, b):
            # id <= h: phi(x, y) = y below a, h(y) elsewhere
            phi = _binary(g, lambda x, y: y if g.has_arc(x, a) else h(y))
        else:
            phi = _binary(g, lambda x, y: y if g.has_arc(a, x) else h(y))
        if _verify_idempotent(g, phi):
            return phi
    raise ConstructionRefused("poset case: no single-point neighbour of the identity found")


def _symmetric_case(g, f):
    fixed = np.flatnonzero(f.values == np.arange(g.n))
    if len(fixed) == 0:
        raise ConstructionRefused("symmetric case: f has no fixed point")
    a = int(fixed[0])
    phi = _binary(g, lambda x, y: f(y) if x == a else y)
    if not _verify_idempotent(g, phi):
        raise ConstructionRefused("symmetric case: construction failed verification")
    return phi


def _reverse(g):
    return Digraph.from_matrix(g.matrix.T)


def _intransitive_case(g, f):
    ident = np.arange(g.n)
    if hom_arc(g, g, f, ident):
        work = g
    elif hom_arc(g, g, ident, f):
        work = _reverse(g)
    else:
        raise ConstructionRefused("f is not adjacent to the identity in Hom(G,G)")
    # an arc x -> y with f(x) = f(y) = x pins down the pendant vertex y
    for x, y in work.arcs():
        if x == y or f(x) != x or f(y) != x:
            continue
        phi = _binary(g, lambda u, v: x if v == y and u != y else v)
        if _verify_idempotent(g, phi):
            return phi
    raise ConstructionRefused("intransitive case: f only flips symmetric edges")


def neighbor_idempotent_witness(g, f):
    """Idempotent non-projection binary polymorphism from an endomorphism f adjacent to id"""
    _check_unary(g, f, "f")
    ident = np.arange(g.n)
    if not (hom_arc(g, g, ident, f) or hom_arc(g, g, f, ident)):
        raise ConstructionRefused("f is not adjacent to the identity in Hom(G,G)")
    cases = []
    if is_poset(g):
        cases.append(_poset_case)
    if g.is_symmetric():
        cases.append(_symmetric_case)
    if is_intransitive(g):
        cases.append(_intransitive_case)
    if not cases:
        raise ConstructionRefused("digraph is not a poset, symmetric or intransitive")
    reasons = []
    for case in cases:
        try:
            return case(g, f)
        except ConstructionRefused as e:
            reasons.append(e.reason)
    raise ConstructionRefused("; ".join(reasons))


def disconnected_idempotent_witness(g):
    """f(x, y) = x when x lies in the weak component of vertex 0, y otherwise"""
    parts = weak_components(g)
    if parts.count < 2:
        raise ConstructionRefused("digraph is connected")
    first = set(parts.blocks[0])
    phi = _binary(g, lambda x, y: x if x in first else y)
    if not _verify_idempotent(g, phi):
        raise ConstructionRefused("construction failed verification")
    return phi
