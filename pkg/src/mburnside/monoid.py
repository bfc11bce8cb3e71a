"""Finite monoids as Cayley tables, closure generation, Green's relations
and maximal subgroups.

Elements are dense indices ``0..size-1``; labels are for display only.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import combinations
from typing import Sequence

import numpy as np

from .errors import (
    MalformedTable,
    NoIdentity,
    NonAssociative,
    NotASubgroup,
    NotIdempotent,
    OutOfRange,
    SizeLimitExceeded,
)
from .gf import field as make_field

DEFAULT_ELEMENT_CAP = 100_000


@dataclass(eq=False)
class FiniteMonoid:
    """A monoid given by its multiplication table.

    ``cayley[a][b]`` is the index of the product ``ab``. Instances are treated
    as immutable; derived data (Green's relations) is cached on first use.
    """

    cayley: tuple[tuple[int, ...], ...]
    identity: int
    labels: tuple[str, ...] | None = None
    generators: tuple[int, ...] | None = None
    elements: tuple | None = field(default=None, repr=False)

    @property
    def size(self) -> int:
        return len(self.cayley)

    def __len__(self):
        return len(self.cayley)

    def mul(self, a: int, b: int) -> int:
        return self.cayley[a][b]

    def product(self, *xs: int) -> int:
        out = self.identity
        for x in xs:
            out = self.cayley[out][x]
        return out

    def label(self, a: int) -> str:
        return self.labels[a] if self.labels else str(a)

    @cached_property
    def array(self) -> np.ndarray:
        return np.asarray(self.cayley, dtype=np.int64).reshape(self.size, self.size)

    @cached_property
    def green(self) -> GreenData:
        return compute_green(self)

    @cached_property
    def idempotents(self) -> tuple[int, ...]:
        return tuple(e for e in range(self.size) if self.cayley[e][e] == e)

    def is_idempotent(self, e: int) -> bool:
        return self.cayley[e][e] == e

    def __repr__(self):
        return f"FiniteMonoid(size={self.size}, identity={self.identity})"


@dataclass(frozen=True, eq=False)
class GreenData:
    geq_r: np.ndarray
    geq_l: np.ndarray
    geq_j: np.ndarray
    r_classes: tuple[tuple[int, ...], ...]
    l_classes: tuple[tuple[int, ...], ...]
    j_classes: tuple[tuple[int, ...], ...]
    h_classes: tuple[tuple[int, ...], ...]
    r_of: tuple[int, ...]
    l_of: tuple[int, ...]
    j_of: tuple[int, ...]
    h_of: tuple[int, ...]
    idempotents: tuple[int, ...]
    regular_j: tuple[bool, ...]

    def r_class(self, x):
        return self.r_classes[self.r_of[x]]

    def l_class(self, x):
        return self.l_classes[self.l_of[x]]

    def j_class(self, x):
        return self.j_classes[self.j_of[x]]

    def h_class(self, x):
        return self.h_classes[self.h_of[x]]


def _validate_square(table) -> tuple[tuple[int, ...], ...]:
    try:
        rows = tuple(tuple(int(v) for v in row) for row in table)
    except (TypeError, ValueError) as exc:
        raise MalformedTable(f"table entries must be integers: {exc}") from None
    n = len(rows)
    if n == 0:
        raise MalformedTable("empty table")
    for i, row in enumerate(rows):
        if len(row) != n:
            raise MalformedTable(f"row {i} has length {len(row)}, expected {n}")
        for v in row:
            if not 0 <= v < n:
                raise MalformedTable(f"entry {v} in row {i} out of range 0..{n - 1}")
    return rows


def find_identity(cayley) -> int | None:
    n = len(cayley)
    for e in range(n):
        if all(cayley[e][a] == a and cayley[a][e] == a for a in range(n)):
            return e
    return None


def associativity_witness(cayley) -> tuple[int, int, int] | None:
    C = np.asarray(cayley, dtype=np.int64)
    left = C[C, :]  # left[a, b, c] = (ab)c
    right = C[:, C]  # right[a, b, c] = a(bc)
    bad = np.argwhere(left != right)
    if len(bad):
        return tuple(int(v) for v in bad[0])
    return None


def build_from_cayley(table, labels: Sequence[str] | None = None, generators=None) -> FiniteMonoid:
    """Validate a multiplication table and locate its identity."""
    rows = _validate_square(table)
    if labels is not None and len(labels) != len(rows):
        raise MalformedTable(f"{len(labels)} labels for {len(rows)} elements")
    witness = associativity_witness(rows)
    if witness is not None:
        raise NonAssociative(*witness)
    e = find_identity(rows)
    if e is None:
        raise NoIdentity("no two-sided identity element")
    return FiniteMonoid(
        rows,
        e,
        tuple(str(x) for x in labels) if labels is not None else None,
        tuple(generators) if generators is not None else None,
    )


def _close(identity, gens, compose, cap):
    """Breadth-first closure of ``gens`` under right multiplication."""
    elements = [identity]
    index = {identity: 0}
    for g in gens:
        if g not in index:
            index[g] = len(elements)
            elements.append(g)
    queue = deque(range(len(elements)))
    while queue:
        x = elements[queue.popleft()]
        for g in gens:
            y = compose(x, g)
            if y not in index:
                if len(elements) >= cap:
                    raise SizeLimitExceeded(f"closure exceeds {cap} elements")
                index[y] = len(elements)
                elements.append(y)
                queue.append(index[y])
    n = len(elements)
    cayley = tuple(tuple(index[compose(elements[a], elements[b])] for b in range(n)) for a in range(n))
    gen_idx = tuple(sorted({index[g] for g in gens}))
    return elements, cayley, gen_idx


def generate_from_transformations(n: int, gens, cap: int = DEFAULT_ELEMENT_CAP) -> FiniteMonoid:
    """Submonoid of T_n generated by ``gens`` (1-based image lists).

    Points are acted on the right: in the product fg, f is applied first.
    """
    if n < 1:
        raise OutOfRange(f"degree must be positive, got {n}")
    maps = []
    for g in gens:
        g = tuple(int(v) for v in g)
        if len(g) != n or any(not 1 <= v <= n for v in g):
            raise OutOfRange(f"generator {g} is not a self-map of {{1..{n}}}")
        maps.append(g)
    identity = tuple(range(1, n + 1))

    def compose(f, g):
        return tuple(g[v - 1] for v in f)

    elements, cayley, gen_idx = _close(identity, maps, compose, cap)
    labels = tuple("".join(map(str, f)) if n < 10 else ",".join(map(str, f)) for f in elements)
    return FiniteMonoid(cayley, 0, labels, gen_idx, tuple(elements))


def _matrix_label(A):
    return "[" + ";".join(",".join(str(v) for v in row) for row in A) + "]"


def generate_from_matrices(q, dim: int, gens, cap: int = DEFAULT_ELEMENT_CAP) -> FiniteMonoid:
    """Closure of ``gens`` under matrix multiplication over GF(q), or over the
    integers when ``q == "Z"``."""
    F = make_field(q)
    if dim < 1:
        raise OutOfRange(f"dimension must be positive, got {dim}")
    mats = []
    for g in gens:
        try:
            A = tuple(tuple(F.reduce(int(v)) for v in row) for row in g)
        except (TypeError, ValueError):
            raise MalformedTable(f"bad matrix {g!r}") from None
        if len(A) != dim or any(len(row) != dim for row in A):
            raise MalformedTable(f"generator is not {dim}x{dim}: {g!r}")
        mats.append(A)
    identity = tuple(tuple(int(i == j) for j in range(dim)) for i in range(dim))
    elements, cayley, gen_idx = _close(identity, mats, F.matmul, cap)
    return FiniteMonoid(cayley, 0, tuple(_matrix_label(A) for A in elements), gen_idx, tuple(elements))


def _blocks(mutual: np.ndarray) -> tuple[tuple[tuple[int, ...], ...], tuple[int, ...]]:
    n = mutual.shape[0]
    of = [-1] * n
    classes = []
    for x in range(n):
        if of[x] < 0:
            members = tuple(int(y) for y in np.flatnonzero(mutual[x]))
            for y in members:
                of[y] = len(classes)
            classes.append(members)
    return tuple(classes), tuple(of)


def compute_green(M: FiniteMonoid) -> GreenData:
    n = M.size
    C = M.array
    rows = np.arange(n)[:, None]
    geq_r = np.zeros((n, n), dtype=bool)
    geq_r[rows, C] = True  # y in xM
    geq_l = np.zeros((n, n), dtype=bool)
    geq_l[rows, C.T] = True  # y in Mx
    geq_j = (geq_r.astype(np.int64) @ geq_l.astype(np.int64)) > 0
    r_classes, r_of = _blocks(geq_r & geq_r.T)
    l_classes, l_of = _blocks(geq_l & geq_l.T)
    j_classes, j_of = _blocks(geq_j & geq_j.T)
    h = (geq_r & geq_r.T) & (geq_l & geq_l.T)
    h_classes, h_of = _blocks(h)
    idem = tuple(e for e in range(n) if M.cayley[e][e] == e)
    regular = [False] * len(j_classes)
    for e in idem:
        regular[j_of[e]] = True
    return GreenData(
        geq_r, geq_l, geq_j,
        r_classes, l_classes, j_classes, h_classes,
        r_of, l_of, j_of, h_of,
        idem, tuple(regular),
    )


def check_stability(M: FiniteMonoid) -> bool:
    """x J xm implies x R xm, and x J mx implies x L mx, for all x, m."""
    g = M.green
    for x in range(M.size):
        for m in range(M.size):
            xm, mx = M.cayley[x][m], M.cayley[m][x]
            if g.j_of[x] == g.j_of[xm] and g.r_of[x] != g.r_of[xm]:
                return False
            if g.j_of[x] == g.j_of[mx] and g.l_of[x] != g.l_of[mx]:
                return False
    return True


def designated_idempotents(M: FiniteMonoid) -> dict[int, int]:
    """Least-index idempotent of each regular J-class, keyed by J-class id."""
    g = M.green
    out: dict[int, int] = {}
    for e in g.idempotents:
        out.setdefault(g.j_of[e], e)
    return dict(sorted(out.items()))


def j_linear_order(M: FiniteMonoid, idempotents=None) -> list[int]:
    """Designated idempotents sorted so that e precedes f whenever e >_J f
    strictly; ties broken by least index."""
    g = M.green
    if idempotents is None:
        idempotents = list(designated_idempotents(M).values())
    remaining = sorted(idempotents)
    order = []
    while remaining:
        for e in remaining:
            # e is available once nothing strictly J-above it remains
            if not any(f != e and g.geq_j[f, e] and not g.geq_j[e, f] for f in remaining):
                order.append(e)
                remaining.remove(e)
                break
    return order


@dataclass(eq=False)
class MaximalSubgroup:
    """The H-class of an idempotent, with its group structure."""

    monoid: FiniteMonoid
    e: int
    elements: tuple[int, ...]
    table: tuple[tuple[int, ...], ...] = field(repr=False)

    @property
    def order(self) -> int:
        return len(self.elements)

    @cached_property
    def local(self) -> dict[int, int]:
        return {x: i for i, x in enumerate(self.elements)}

    def mul(self, a: int, b: int) -> int:
        return self.monoid.cayley[a][b]

    def inverse(self, a: int) -> int:
        for b in self.elements:
            if self.monoid.cayley[a][b] == self.e:
                return b
        raise NotASubgroup(f"{a} has no inverse in H_{self.e}")

    def closure(self, gens) -> frozenset[int]:
        out = {self.e} | set(gens)
        frontier = list(out)
        while frontier:
            new = []
            for a in frontier:
                for b in list(out):
                    for c in (self.mul(a, b), self.mul(b, a)):
                        if c not in out:
                            out.add(c)
                            new.append(c)
            frontier = new
        return frozenset(out)

    def is_subgroup(self, S) -> bool:
        S = set(S)
        if self.e not in S or not S <= set(self.elements):
            return False
        return all(self.mul(a, b) in S for a in S for b in S)

    def conjugate(self, S, h) -> frozenset[int]:
        """h^-1 S h."""
        hi = self.inverse(h)
        return frozenset(self.mul(self.mul(hi, s), h) for s in S)

    def normalizer(self, S) -> frozenset[int]:
        S = frozenset(S)
        return frozenset(h for h in self.elements if self.conjugate(S, h) == S)

    @cached_property
    def as_monoid(self) -> FiniteMonoid:
        """The group as a standalone monoid on local indices."""
        labels = tuple(self.monoid.label(x) for x in self.elements)
        return FiniteMonoid(self.table, self.local[self.e], labels)


@lru_cache(maxsize=512)
def maximal_subgroup(M: FiniteMonoid, e: int) -> MaximalSubgroup:
    if not M.is_idempotent(e):
        raise NotIdempotent(f"element {e} is not idempotent")
    elements = M.green.h_class(e)
    pos = {x: i for i, x in enumerate(elements)}
    table = tuple(tuple(pos[M.cayley[a][b]] for b in elements) for a in elements)
    return MaximalSubgroup(M, e, elements, table)


def all_subgroups(H: MaximalSubgroup) -> list[frozenset[int]]:
    """Every subgroup of H, found by cyclic extension from the trivial group."""
    trivial = frozenset([H.e])
    seen = {trivial}
    queue = deque([trivial])
    while queue:
        S = queue.popleft()
        for g in H.elements:
            if g not in S:
                T = H.closure(S | {g})
                if T not in seen:
                    seen.add(T)
                    queue.append(T)
    return sorted(seen, key=lambda S: (len(S), sorted(S)))


def all_subgroups_bruteforce(H: MaximalSubgroup) -> list[frozenset[int]]:
    """Oracle: test every subset containing the identity."""
    others = [x for x in H.elements if x != H.e]
    found = []
    for k in range(len(others) + 1):
        for combo in combinations(others, k):
            S = frozenset((H.e,) + combo)
            if H.is_subgroup(S):
                found.append(S)
    return sorted(found, key=lambda S: (len(S), sorted(S)))


def conjugacy_classes_of_subgroups(H: MaximalSubgroup, subgroups=None) -> list[list[frozenset[int]]]:
    if subgroups is None:
        subgroups = all_subgroups(H)
    remaining = set(subgroups)
    classes = []
    for S in subgroups:
        if S not in remaining:
            continue
        cls = {H.conjugate(S, h) for h in H.elements}
        remaining -= cls
        classes.append(sorted(cls, key=sorted))
    classes.sort(key=lambda c: (len(c[0]), sorted(c[0])))
    return classes


def subgroups_up_to_conjugacy(H: MaximalSubgroup) -> list[tuple[int, ...]]:
    """One representative per conjugacy class: the lexicographically least
    sorted element-set, listed by increasing order."""
    return [tuple(sorted(cls[0])) for cls in conjugacy_classes_of_subgroups(H)]
