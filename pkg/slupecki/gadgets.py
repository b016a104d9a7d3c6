"""
Gadgets: a digraph K with pinned vertices x1..xt and an output vertex u.

The set pp-defined by a pinning is the set of values u takes over all
homomorphisms K -> G that agree with the pinning. A uniform gadget whose
sets are always proper and which defines every co-singleton certifies
that G is Slupecki in every arity.
"""

import itertools
import logging
from dataclasses import dataclass, field

import numpy as np

from .budget import BudgetTracker, SearchInterrupted
from .digraph import Digraph, new_digraph
from .errors import ArityError, BudgetExhausted, DigraphError, GuardError
from .families import directed_cycle, path
from .hom import exists_hom
from .operations import slupecki_relation

LOG = logging.getLogger(__name__)

THETA_MAX_VERTICES = 4


@dataclass(frozen=True)
class GadgetSpec:
    K: Digraph
    pins: tuple
    u: int
    name: str = "custom"

    def __post_init__(self):
        pins = tuple(int(p) for p in self.pins)
        object.__setattr__(self, "pins", pins)
        if len(set(pins)) != len(pins):
            raise DigraphError(f"gadget pins must be distinct, got {pins}")
        if any(not 0 <= p < self.K.n for p in pins) or not 0 <= self.u < self.K.n:
            raise DigraphError(f"gadget pins {pins} / output {self.u} out of range for K of size {self.K.n}")

    @property
    def output_is_pin(self):
        return self.u in self.pins

    def to_dict(self):
        return {"name": self.name, "n": self.K.n, "arcs": [list(a) for a in self.K.arcs() if a[0] != a[1]],
                "pins": list(self.pins), "u": self.u}


def _pin_map(gadget, pinning):
    pinning = tuple(int(v) for v in pinning)
    if len(pinning) != len(gadget.pins):
        raise ArityError(f"pinning needs {len(gadget.pins)} values, got {len(pinning)}")
    return dict(zip(gadget.pins, pinning))


def pp_defined_set(g, gadget, pinning, budget=None, tracker=None):
    """Values of u over all homomorphisms K -> g extending the pinning"""
    pins = _pin_map(gadget, pinning)
    own = tracker is None
    tracker = tracker or BudgetTracker(budget)
    found = set()
    for w in range(g.n):
        if gadget.output_is_pin and pins[gadget.u] != w:
            continue
        attempt = dict(pins)
        attempt[gadget.u] = w
        result = exists_hom(gadget.K, g, attempt, tracker=tracker)
        if result is None:
            if own:
                raise BudgetExhausted("pp-defined set incomplete", tracker.finish())
            raise SearchInterrupted()
        if result:
            found.add(w)
    return frozenset(found)


@dataclass
class UniformGadgetCertificate:
    digraph: str
    gadget: GadgetSpec
    rows: list = field(default_factory=list)
    co_singletons_found: list = field(default_factory=list)
    proper_everywhere: bool = True
    valid: bool = False
    complete: bool = True
    remaining: list = field(default_factory=list)
    stats: object = None

    def to_dict(self):
        return {
            "digraph": self.digraph,
            "gadget": self.gadget.to_dict(),
            "rows": [{"pinning": list(p), "set": sorted(s)} for p, s in self.rows],
            "co_singletons_found": self.co_singletons_found,
            "proper_everywhere": self.proper_everywhere,
            "valid": self.valid,
            "complete": self.complete,
            "remaining": [list(p) for p in self.remaining],
        }


def verify_uniform_gadget(g, gadget, budget=None, digraph_id="G", log_callback=None):
    """Check every pinning: all sets proper, every co-singleton G minus {a} defined"""
    tracker = BudgetTracker(budget, log_callback=log_callback)
    cert = UniformGadgetCertificate(digraph_id, gadget)
    everything = frozenset(range(g.n))
    co_singletons = set()
    pinnings = list(itertools.product(range(g.n), repeat=len(gadget.pins)))
    for i, pinning in enumerate(pinnings):
        try:
            s = pp_defined_set(g, gadget, pinning, tracker=tracker)
        except SearchInterrupted:
            cert.complete = False
            cert.remaining = pinnings[i:]
            tracker.log(f"[GADGET] budget exhausted with {len(cert.remaining)} pinnings left")
            break
        cert.rows.append((pinning, s))
        if s == everything:
            cert.proper_everywhere = False
        if len(s) == g.n - 1:
            co_singletons.update(everything - s)
    cert.co_singletons_found = sorted(co_singletons)
    cert.valid = cert.complete and cert.proper_everywhere and len(co_singletons) == g.n
    cert.stats = tracker.finish()
    LOG.info(f"[GADGET] {gadget.name} on {digraph_id}: valid={cert.valid} "
             f"co-singletons={cert.co_singletons_found}")
    return cert


def _alternating(length, start):
    other = "-" if start == "+" else "+"
    return "".join(start if i % 2 == 0 else other for i in range(length))


def crown_gadget_variants(two_m):
    """
    Two alternating paths of length m sharing start x and end u.

    Yields the four choices of starting orientation, the variant with
    P starting forward and Q backward first.
    """
    if two_m < 4 or two_m % 2:
        raise DigraphError(f"crown gadget needs an even count >= 4, got {two_m}")
    m = two_m // 2
    for p_start, q_start in (("+", "-"), ("-", "+"), ("+", "+"), ("-", "-")):
        p_word, q_word = _alternating(m, p_start), _alternating(m, q_start)
        # x = 0, u = 1, P interior 2..m, Q interior m+1..2m-1
        p_verts = [0] + list(range(2, m + 1)) + [1]
        q_verts = [0] + list(range(m + 1, 2 * m)) + [1]
        arcs = []
        for word, verts in ((p_word, p_verts), (q_word, q_verts)):
            for i, symbol in enumerate(word):
                a, b = verts[i], verts[i + 1]
                arcs.append((a, b) if symbol == "+" else (b, a))
        yield GadgetSpec(new_digraph(2 * m, arcs), (0,), 1, f"crown{two_m}[P{p_word},Q{q_word}]")


def builtin_gadget(family, param=None, g=None, budget=None):
    """
    The gadget for a named family.

    For crowns, when g is given the first orientation variant whose
    certificate validates on g is returned.
    """
    if family == "directed-cycle":
        m = int(param)
        if m < 3:
            raise DigraphError(f"directed cycle gadget needs m >= 3, got {m}")
        return GadgetSpec(path("+" * (m - 2)), (0,), m - 2, f"dipath{m - 2}")
    if family == "symmetric-even-cycle":
        two_m = int(param)
        if two_m < 4 or two_m % 2:
            raise DigraphError(f"symmetric even cycle gadget needs an even count >= 4, got {two_m}")
        m = two_m // 2
        return GadgetSpec(path("s" * (m - 1)), (0,), m - 1, f"sympath{m - 1}")
    if family == "crown":
        variants = list(crown_gadget_variants(int(param)))
        if g is None:
            return variants[0]
        for variant in variants:
            if verify_uniform_gadget(g, variant, budget).valid:
                return variant
        LOG.warning(f"[GADGET] no crown variant validated; returning {variants[0].name}")
        return variants[0]
    if family == "adhoc4":
        return GadgetSpec(directed_cycle(4), (0,), 2, "dicycle4")
    if family == "gn":
        return GadgetSpec(path("s"), (0,), 1, "symedge")
    if family == "hn":
        return GadgetSpec(path("+"), (0,), 1, "diedge")
    raise DigraphError(f"unknown gadget family {family!r}")


def glued_gadget(gadget, copies):
    """
    Glue copies of K along the pins.

    Pins come first in pin order, then each copy's remaining vertices in
    ascending order. Returns (L, outputs).
    """
    if copies < 2:
        raise ArityError(f"gluing needs at least 2 copies, got {copies}")
    k = gadget.K
    free = [v for v in range(k.n) if v not in gadget.pins]
    t = len(gadget.pins)
    size = t + copies * len(free)
    m = np.zeros((size, size), dtype=bool)
    outputs = []
    for c in range(copies):
        label = {p: i for i, p in enumerate(gadget.pins)}
        label.update({v: t + c * len(free) + j for j, v in enumerate(free)})
        for x, y in k.arcs():
            m[label[x], label[y]] = True
        outputs.append(label[gadget.u])
    return Digraph.from_matrix(m), tuple(outputs)


def direct_theta_check(g, gadget, budget=None):
    """The output tuples of homomorphisms from |g| glued copies are exactly theta"""
    if g.n > THETA_MAX_VERTICES:
        raise GuardError(f"direct theta check is limited to {THETA_MAX_VERTICES} vertices, got {g.n}")
    if g.n < 2:
        raise GuardError("direct theta check needs at least 2 vertices")
    glued, outputs = glued_gadget(gadget, g.n)
    tracker = BudgetTracker(budget)
    realized = set()
    try:
        for values in itertools.product(range(g.n), repeat=g.n):
            pins = {}
            consistent = True
            for o, v in zip(outputs, values):
                if pins.setdefault(o, v) != v:
                    consistent = False
                    break
            if consistent and exists_hom(glued, g, pins, tracker=tracker) is True:
                realized.add(values)
            if tracker.exhausted:
                raise SearchInterrupted()
    except SearchInterrupted:
        raise BudgetExhausted("direct theta check incomplete", tracker.finish())
    return realized == set(slupecki_relation(g.n).tuples)
