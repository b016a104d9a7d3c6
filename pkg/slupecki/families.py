"""
Named digraph families
"""

import numpy as np

from .digraph import Digraph, new_digraph
from .errors import DigraphError

ORIENTATIONS = "+-s"


def parse_word(word):
    """Validate an orientation word over {+, -, s}"""
    word = str(word)
    if not word:
        raise DigraphError("orientation word must be non-empty")
    bad = sorted(set(word) - set(ORIENTATIONS))
    if bad:
        raise DigraphError(f"orientation word {word!r} has invalid symbols {bad}")
    return word


def _slot_arcs(i, j, symbol):
    if symbol == "+":
        return [(i, j)]
    if symbol == "-":
        return [(j, i)]
    return [(i, j), (j, i)]


def path(word):
    word = parse_word(word)
    arcs = []
    for i, symbol in enumerate(word):
        arcs += _slot_arcs(i, i + 1, symbol)
    return new_digraph(len(word) + 1, arcs)


def cycle(word):
    word = parse_word(word)
    m = len(word)
    if m < 3:
        raise DigraphError(f"cycle needs girth >= 3, got {m}")
    arcs = []
    for i, symbol in enumerate(word):
        arcs += _slot_arcs(i, (i + 1) % m, symbol)
    return new_digraph(m, arcs)


def directed_cycle(m):
    if m < 3:
        raise DigraphError(f"directed cycle needs m >= 3, got {m}")
    return cycle("+" * m)


def symmetric_cycle(m):
    if m < 3:
        raise DigraphError(f"symmetric cycle needs m >= 3, got {m}")
    return cycle("s" * m)


def crown(two_m):
    """The 2m-crown: arcs (2i, 2i+1) and (2i, 2i-1) taken mod 2m"""
    if two_m < 4 or two_m % 2:
        raise DigraphError(f"crown needs an even vertex count >= 4, got {two_m}")
    arcs = []
    for i in range(0, two_m, 2):
        arcs += [(i, (i + 1) % two_m), (i, (i - 1) % two_m)]
    return new_digraph(two_m, arcs)


def complete_minus_matching(n2):
    """G_n: symmetric complete digraph on 2n vertices without the edges {i, i+n}"""
    if n2 < 4 or n2 % 2:
        raise DigraphError(f"complete_minus_matching needs an even count >= 4, got {n2}")
    half = n2 // 2
    m = np.ones((n2, n2), dtype=bool)
    for i in range(half):
        m[i, i + half] = m[i + half, i] = False
    return Digraph.from_matrix(m)


def complete_minus_hamiltonian(n):
    """H_n: complete digraph without the directed cycle 0 -> 1 -> ... -> n-1 -> 0"""
    if n < 3:
        raise DigraphError(f"complete_minus_hamiltonian needs n >= 3, got {n}")
    m = np.ones((n, n), dtype=bool)
    for i in range(n):
        m[i, (i + 1) % n] = False
    return Digraph.from_matrix(m)


def ordinal_sum(levels):
    """Stacked antichains, numbered level by level from the bottom"""
    levels = [int(c) for c in levels]
    if not levels or any(c < 1 for c in levels):
        raise DigraphError(f"ordinal sum needs positive level sizes, got {levels}")
    level_of = np.repeat(np.arange(len(levels)), levels)
    m = level_of[:, None] < level_of[None, :]
    np.fill_diagonal(m, True)
    return Digraph.from_matrix(m)


def antichain(n):
    return ordinal_sum([n])


def chain(n):
    return ordinal_sum([1] * n)


def suspension(g):
    """Add two vertices joined symmetrically to every old vertex but not to each other"""
    n = g.n
    m = np.zeros((n + 2, n + 2), dtype=bool)
    m[:n, :n] = g.matrix
    m[:n, n:] = True
    m[n:, :n] = True
    return Digraph.from_matrix(m)


def is_poset(g):
    a = g.matrix.astype(np.int64)
    strict = g.matrix & ~np.eye(g.n, dtype=bool)
    if np.any(strict & strict.T):
        return False
    # transitive iff every two-step walk is an arc
    return bool(np.all(g.matrix | ((a @ a) == 0)))


def poset_suspension(p):
    """P ⊕ 2"""
    if not is_poset(p):
        raise DigraphError("poset suspension needs a poset")
    n = p.n
    m = np.zeros((n + 2, n + 2), dtype=bool)
    m[:n, :n] = p.matrix
    m[:n, n:] = True
    m[n, n] = m[n + 1, n + 1] = True
    return Digraph.from_matrix(m)


def lemma_example_digraph():
    """Strongly connected digraph whose identity has Hom-neighbours but no strong ones"""
    return new_digraph(4, [(0, 1), (1, 2), (2, 3), (3, 0), (3, 1)])


def adhoc_4cycle():
    return new_digraph(4, [(0, 1), (1, 2), (2, 1), (2, 3), (3, 0), (0, 3)])


def _one(fn, cast=int):
    def build(params):
        if len(params) != 1:
            raise DigraphError("expected exactly one parameter")
        return fn(cast(params[0]))
    return build


def _none(fn):
    def build(params):
        if params:
            raise DigraphError("expected no parameters")
        return fn()
    return build


FAMILIES = {
    "path": _one(path, str),
    "cycle": _one(cycle, str),
    "directed-cycle": _one(directed_cycle),
    "symmetric-cycle": _one(symmetric_cycle),
    "crown": _one(crown),
    "gn": _one(complete_minus_matching),
    "hn": _one(complete_minus_hamiltonian),
    "antichain": _one(antichain),
    "chain": _one(chain),
    "ordinal-sum": lambda params: ordinal_sum([int(p) for p in params]),
    "lemma-example": _none(lemma_example_digraph),
    "adhoc4": _none(adhoc_4cycle),
}


def build_family(name, params):
    """Build a named family member from string parameters"""
    try:
        builder = FAMILIES[name]
    except KeyError:
        raise DigraphError(f"unknown family {name!r}; choose from {', '.join(sorted(FAMILIES))}")
    try:
        return builder(list(params))
    except ValueError as e:
        raise DigraphError(f"bad parameter for {name}: {e}")
