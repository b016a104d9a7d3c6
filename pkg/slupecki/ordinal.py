"""
Three-level ordinal sums m ⊕ n ⊕ k: the bound B(m, k), the 2-Slupecki
boundary, and the counterexample polymorphisms.

Levels are numbered bottom first: A = a0..a(m-1), B = b0..b(n-1),
C = c0..c(k-1).
"""

import itertools
import logging
from dataclasses import dataclass
from enum import Enum
from functools import cached_property

import numpy as np

from .digraph import is_induced_embedding, power
from .errors import ArityError, ConstructionRefused, PreconditionError
from .families import ordinal_sum
from .operations import Kind, OperationTable, classify, is_polymorphism

LOG = logging.getLogger(__name__)


@dataclass(frozen=True)
class OrdinalSumPoset:
    m: int
    n: int
    k: int

    def __post_init__(self):
        if min(self.m, self.n, self.k) < 2:
            raise ArityError(f"level sizes must be at least 2, got {(self.m, self.n, self.k)}")

    @cached_property
    def digraph(self):
        return ordinal_sum([self.m, self.n, self.k])

    @property
    def size(self):
        return self.m + self.n + self.k

    def a(self, i):
        return i

    def b(self, i):
        return self.m + i

    def c(self, i):
        return self.m + self.n + i

    @property
    def A(self):
        return range(0, self.m)

    @property
    def B(self):
        return range(self.m, self.m + self.n)

    @property
    def C(self):
        return range(self.m + self.n, self.size)

    def level(self, v):
        if v < self.m:
            return 0
        return 1 if v < self.m + self.n else 2

    def leq(self, u, v):
        return u == v or self.level(u) < self.level(v)

    def tuple_leq(self, s, t):
        return all(self.leq(x, y) for x, y in zip(s, t))


def _feasible_pairs(m):
    pairs = [(x, y) for x in range(1, m) for y in range(1, m) if (m - x) * (m - y) >= m - 1]
    return np.array(pairs, dtype=np.int64).reshape(-1, 2)


def mu(m, k):
    """Maximum of αγ + βδ over feasible quadruples, with every maximizing quadruple"""
    if m < 2 or k < 2:
        raise ArityError(f"mu needs m, k >= 2, got ({m}, {k})")
    fa, fk = _feasible_pairs(m), _feasible_pairs(k)
    values = fa[:, 0, None] * fk[None, :, 0] + fa[:, 1, None] * fk[None, :, 1]
    best = int(values.max())
    argmax = sorted((int(fa[i, 0]), int(fa[i, 1]), int(fk[j, 0]), int(fk[j, 1]))
                    for i, j in np.argwhere(values == best))
    return best, argmax


@dataclass(frozen=True)
class BmkResult:
    m: int
    k: int
    mu: int
    value: int
    argmax: tuple | str

    @property
    def uses_projections(self):
        return self.value == self.m * self.k

    def to_dict(self):
        argmax = self.argmax if isinstance(self.argmax, str) else [list(q) for q in self.argmax]
        return {"m": self.m, "k": self.k, "mu": self.mu, "B": self.value, "argmax": argmax}


def bmk(m, k):
    """B(m, k) = max(mu(m, k), mk)"""
    value_mu, argmax = mu(m, k)
    value = max(value_mu, m * k)
    assert m * k <= value < 2 * m * k and value >= 4
    return BmkResult(m, k, value_mu, value, tuple(argmax) if value_mu >= m * k else "mk")


def bmk_table(m_max, k_max):
    """Rows [m, k, B(m, k)] for 2 <= m <= m_max, 2 <= k <= k_max"""
    return [[m, k, bmk(m, k).value] for m in range(2, m_max + 1) for k in range(2, k_max + 1)]


def two_slupecki_predicate(m, n, k):
    """m ⊕ n ⊕ k is 2-Slupecki exactly when n > B(m, k) + 1"""
    if min(m, n, k) < 2:
        raise ArityError(f"level sizes must be at least 2, got {(m, n, k)}")
    return n > bmk(m, k).value + 1


def _verified(p, f, what):
    cls = classify(f)
    if not (is_polymorphism(p.digraph, f) and cls.surjective and cls.kind == Kind.ESSENTIAL):
        raise ConstructionRefused(f"{what} failed verification")
    return f


def ternary_witness(m, n, k):
    """Surjective ternary polymorphism of m ⊕ n ⊕ k that is not essentially unary"""
    p = OrdinalSumPoset(m, n, k)
    a0, c0, b0 = p.a(0), p.c(0), p.b(0)
    anchors = [(a0, c0, p.b(i)) for i in range(n)]

    def value(cell):
        options = set()
        x, y, z = cell
        if x == y == z and p.level(x) != 1:
            options.add(x)
        for anchor in anchors:
            if cell == anchor:
                options.add(anchor[2])
            elif p.tuple_leq(cell, anchor):
                options.add(a0)
            elif p.tuple_leq(anchor, cell):
                options.add(c0)
        if len(options) > 1:
            raise ConstructionRefused(f"ternary witness ill-defined at {cell}")
        return options.pop() if options else b0

    cells = itertools.product(range(p.size), repeat=3)
    f = OperationTable(p.size, 3, [value(cell) for cell in cells])
    return _verified(p, f, "ternary witness")


def block_table(size, rows, cols):
    """
    Level-local onto table: 0 on the first `rows` rows and `cols` columns,
    the remaining block filled cyclically with 1..size-1.
    """
    t = np.zeros((size, size), dtype=np.int64)
    width = size - cols
    for i in range(rows, size):
        for j in range(cols, size):
            t[i, j] = ((i - rows) * width + (j - cols)) % (size - 1) + 1
    return t


@dataclass
class LRProfile:
    """Constant rows (l) and columns (r) of the level tables, with their values"""
    l_A: dict
    r_A: dict
    l_C: dict
    r_C: dict

    def mixed_pairs(self):
        """l(A) × r(C) followed by l(C) × r(A), each in lexicographic order"""
        first = [(x, y) for x in sorted(self.l_A) for y in sorted(self.r_C)]
        second = [(x, y) for x in sorted(self.l_C) for y in sorted(self.r_A)]
        return first + second

    def to_dict(self):
        return {name: {str(k): v for k, v in sorted(getattr(self, name).items())}
                for name in ("l_A", "r_A", "l_C", "r_C")}


def _constant_lines(table, level):
    rows = {level[i]: int(table[i, 0]) for i in range(len(level)) if np.all(table[i] == table[i, 0])}
    cols = {level[j]: int(table[0, j]) for j in range(len(level)) if np.all(table[:, j] == table[0, j])}
    return rows, cols


def lr_profile(p, f_A, f_C):
    """f_A, f_C are square arrays of vertex ids indexed by level position"""
    f_A = np.asarray(f_A, dtype=np.int64)
    f_C = np.asarray(f_C, dtype=np.int64)
    if f_A.shape != (p.m, p.m) or f_C.shape != (p.k, p.k):
        raise ArityError("level tables have the wrong shape")
    if not (np.all(np.isin(f_A, list(p.A))) and np.all(np.isin(f_C, list(p.C)))):
        raise ArityError("level tables must map A² into A and C² into C")
    l_A, r_A = _constant_lines(f_A, list(p.A))
    l_C, r_C = _constant_lines(f_C, list(p.C))
    return LRProfile(l_A, r_A, l_C, r_C)


def level_tables(p, result):
    """f_A and f_C as vertex ids: projections when B = mk, block tables otherwise"""
    if result.uses_projections:
        f_A = np.repeat(np.arange(p.m)[:, None], p.m, axis=1)
        f_C = np.repeat(np.arange(p.k)[None, :], p.k, axis=0)
    else:
        alpha, beta, gamma, delta = result.argmax[0]
        f_A = block_table(p.m, alpha, beta)
        f_C = block_table(p.k, delta, gamma)
    return f_A + p.a(0), f_C + p.c(0)


def binary_witness(m, n, k):
    """Surjective essentially binary polymorphism of m ⊕ n ⊕ k, for n <= B(m, k) + 1"""
    p = OrdinalSumPoset(m, n, k)
    result = bmk(m, k)
    if n > result.value + 1:
        raise ConstructionRefused(
            f"n={n} exceeds B({m},{k})+1={result.value + 1}; m⊕n⊕k is 2-Slupecki")
    f_A, f_C = level_tables(p, result)
    profile = lr_profile(p, f_A, f_C)
    pairs = profile.mixed_pairs()
    assert len(pairs) == result.value >= n - 1
    h = {pair: p.b(t % (n - 1) + 1) for t, pair in enumerate(pairs)}
    b0 = p.b(0)
    in_A, in_B, in_C = set(p.A), set(p.B), set(p.C)

    def value(x, y):
        if x in in_A and y in in_A:
            return int(f_A[x - p.a(0), y - p.a(0)])
        if x in in_C and y in in_C:
            return int(f_C[x - p.c(0), y - p.c(0)])
        if (x, y) in h:
            return h[(x, y)]
        if x in profile.l_A and y in in_B:
            return profile.l_A[x]
        if y in profile.r_A and x in in_B:
            return profile.r_A[y]
        if x in profile.l_C and y in in_B:
            return profile.l_C[x]
        if y in profile.r_C and x in in_B:
            return profile.r_C[y]
        return b0

    f = _verified(p, OperationTable.from_function(p.size, 2, value), "binary witness")
    middle = {f(x, y) for x in p.B for y in p.B}
    if middle != {b0}:
        raise ConstructionRefused("binary witness maps B² to more than one value")
    LOG.debug(f"[BMK] binary witness for {m}⊕{n}⊕{k} uses {len(pairs)} mixed pairs")
    return f


class ClaimStatus(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    NOT_APPLICABLE = "hypothesis-not-met"


@dataclass(frozen=True)
class ClaimResult:
    status: ClaimStatus
    detail: str = ""

    def to_dict(self):
        return {"status": self.status.value, "detail": self.detail}


def _claim(ok, detail=""):
    return ClaimResult(ClaimStatus.PASS if ok else ClaimStatus.FAIL, detail)


def _skip(detail):
    return ClaimResult(ClaimStatus.NOT_APPLICABLE, detail)


def check_witness_claims(p, f):
    """
    Evaluate the structural facts every surjective binary polymorphism
    of m ⊕ n ⊕ k satisfies, each only where its hypotheses hold.
    """
    if f.k != 2 or f.n != p.size:
        raise ArityError(f"need a binary table on {p.size} elements")
    if not (f.is_surjective() and is_polymorphism(p.digraph, f)):
        raise PreconditionError("f is not a surjective polymorphism")
    A, B, C = set(p.A), set(p.B), set(p.C)
    cls = classify(f)
    essential = cls.kind == Kind.ESSENTIAL

    def image(xs, ys):
        return {f(x, y) for x in xs for y in ys}

    report = {}
    report["level-ranges"] = _claim(
        image(A, A) >= A and image(C, C) >= C and image(B, B) <= B,
        "f(A²) ⊇ A, f(C²) ⊇ C, f(B²) ⊆ B")

    normalized = image(A, A) == A and image(C, C) == C
    report["level-normalized"] = (_claim(True, "f(A²) = A and f(C²) = C") if normalized
                                  else _skip("f needs composing with a level automorphism"))

    middle = image(B, B)
    edge = image(A, B) | image(B, A) | image(C, B) | image(B, C)
    report["middle-values"] = _claim((edge & B) <= middle,
                                     "middle values next to B also occur on B²")

    mixed = [(a, c) for a in A for c in C] + [(c, a) for a in A for c in C]
    if essential:
        report["mixed-middle-value"] = _claim(any(f(x, y) in B for x, y in mixed),
                                              "some pair in A×C ∪ C×A maps into B")
    else:
        report["mixed-middle-value"] = _skip("f is essentially unary")

    profile = None
    if normalized:
        f_A = np.array([[f(x, y) for y in p.A] for x in p.A])
        f_C = np.array([[f(x, y) for y in p.C] for x in p.C])
        profile = lr_profile(p, f_A, f_C)

    if profile is not None and essential:
        ok = True
        for b in middle:
            for a in A:
                for c in C:
                    if f(a, c) in B - {b} and not (a in profile.l_A and c in profile.r_C):
                        ok = False
                    if f(c, a) in B - {b} and not (c in profile.l_C and a in profile.r_A):
                        ok = False
        report["mixed-pairs-constant"] = _claim(ok, "other middle values need constant lines")
    else:
        report["mixed-pairs-constant"] = _skip("needs a normalized essential f")

    if essential and p.n >= 3:
        report["single-middle-value"] = _claim(len(middle) == 1, f"|f(B²)| = {len(middle)}")
    else:
        report["single-middle-value"] = _skip("needs an essential f and n >= 3")

    if profile is not None:
        count = len(set(profile.mixed_pairs()))
        bound = bmk(p.m, p.k).value
        report["pair-count-bound"] = _claim(count <= bound, f"{count} mixed pairs, B = {bound}")
    else:
        report["pair-count-bound"] = _skip("needs a normalized f")

    if profile is not None and essential and len(middle) == 1:
        covered = {f(x, y) for x, y in profile.mixed_pairs()}
        report["middle-coverage"] = _claim(B - middle <= covered,
                                           "B minus f(B²) is hit by the mixed pairs")
    else:
        report["middle-coverage"] = _skip("needs a normalized essential f with |f(B²)| = 1")
    return report


def claims_pass(report):
    return all(r.status != ClaimStatus.FAIL for r in report.values())


def two_level_embedding(m, n, f):
    """
    Induced copy of m ⊕ n inside (m ⊕ n)^s on which f is onto.

    Each vertex is sent to its lexicographically least preimage inside
    A^s or B^s.
    """
    if f.n != m + n:
        raise ArityError(f"table base {f.n} does not match {m}⊕{n}")
    p = ordinal_sum([m, n])
    if not (f.is_surjective() and is_polymorphism(p, f)):
        raise PreconditionError("f is not a surjective polymorphism")
    embedding = []
    for level in (range(0, m), range(m, m + n)):
        for v in level:
            for coords in itertools.product(level, repeat=f.k):
                if f(*coords) == v:
                    embedding.append(int(np.ravel_multi_index(coords, (f.n,) * f.k)))
                    break
            else:
                raise PreconditionError(f"no preimage of {v} inside its own level")
    embedding = tuple(embedding)
    if not is_induced_embedding(p, power(p, f.k), embedding):
        raise ConstructionRefused("level preimages do not form an induced copy")
    return embedding
