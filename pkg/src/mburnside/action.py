"""Partial right actions of a finite monoid ("M-sets").

An undefined action ``x * m`` is stored as ``None``. Every operation returns
a new value; nothing is mutated after construction.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import MalformedTable, MonoidMismatch, NotCongruence, NotSubquotient
from .monoid import FiniteMonoid


@dataclass(eq=False)
class PartialMSet:
    monoid: FiniteMonoid
    table: tuple[tuple[int | None, ...], ...]
    points: tuple = ()

    def __post_init__(self):
        if not self.points:
            self.points = tuple(range(len(self.table)))

    @property
    def size(self) -> int:
        return len(self.table)

    def __len__(self):
        return len(self.table)

    def act(self, x: int, m: int) -> int | None:
        return self.table[x][m]

    def act_word(self, x: int | None, word) -> int | None:
        for m in word:
            if x is None:
                return None
            x = self.table[x][m]
        return x

    def is_total(self) -> bool:
        return all(v is not None for row in self.table for v in row)

    def __repr__(self):
        return f"PartialMSet(points={self.size}, monoid_size={self.monoid.size})"


@dataclass(eq=False)
class PointMap:
    source: PartialMSet
    target: PartialMSet
    images: tuple[int, ...]

    def __call__(self, x: int) -> int:
        return self.images[x]


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    axiom: str | None = None
    witness: tuple | None = None

    def __bool__(self):
        return self.ok


def make_mset(M: FiniteMonoid, table, points: Sequence | None = None) -> PartialMSet:
    rows = []
    for i, row in enumerate(table):
        if len(row) != M.size:
            raise MalformedTable(f"row {i} has {len(row)} entries, monoid has {M.size} elements")
        rows.append(tuple(None if v is None else int(v) for v in row))
    return PartialMSet(M, tuple(rows), tuple(points) if points is not None else ())


def validate(X: PartialMSet) -> ValidationReport:
    """Check closure, identity and associativity; report the first violation."""
    M = X.monoid
    k = X.size
    for x in range(k):
        if len(X.table[x]) != M.size:
            return ValidationReport(False, "shape", (x,))
        for m in range(M.size):
            v = X.table[x][m]
            if v is not None and not 0 <= v < k:
                return ValidationReport(False, "closure", (x, m))
    for x in range(k):
        if X.table[x][M.identity] != x:
            return ValidationReport(False, "identity", (x, M.identity))
    for x in range(k):
        row = X.table[x]
        for m in range(M.size):
            xm = row[m]
            for n in range(M.size):
                lhs = None if xm is None else X.table[xm][n]
                rhs = row[M.cayley[m][n]]
                if lhs != rhs:
                    return ValidationReport(False, "associativity", (x, m, n))
    return ValidationReport(True)


def right_regular(M: FiniteMonoid) -> PartialMSet:
    return PartialMSet(M, M.cayley, tuple(M.label(a) for a in range(M.size)))


def singleton(M: FiniteMonoid) -> PartialMSet:
    """The one-point total M-set, the multiplicative identity."""
    return PartialMSet(M, (tuple([0] * M.size),), ("*",))


def empty(M: FiniteMonoid) -> PartialMSet:
    return PartialMSet(M, (), ())


def is_invariant(X: PartialMSet, A) -> bool:
    A = set(A)
    return all(v is None or v in A for a in A for v in X.table[a])


def restrict(X: PartialMSet, S) -> PartialMSet:
    """Restriction of the action to ``S``; raises unless S is a subquotient.

    Points of the result are listed in increasing order of their index in X.
    """
    S = sorted(set(S))
    inside = set(S)
    for s in S:
        for m, sm in enumerate(X.table[s]):
            if sm is None or sm in inside:
                continue
            for n, smn in enumerate(X.table[sm]):
                if smn is not None and smn in inside:
                    raise NotSubquotient(s, m, n)
    pos = {s: i for i, s in enumerate(S)}
    table = tuple(
        tuple(pos.get(v) if v is not None else None for v in X.table[s]) for s in S
    )
    return PartialMSet(X.monoid, table, tuple(X.points[s] for s in S))


def _same_monoid(X, Y):
    if X.monoid is not Y.monoid:
        raise MonoidMismatch("M-sets are over different monoids")


def msum(X: PartialMSet, Y: PartialMSet) -> PartialMSet:
    """Disjoint union; X's points come first."""
    _same_monoid(X, Y)
    off = X.size
    table = X.table + tuple(tuple(None if v is None else v + off for v in row) for row in Y.table)
    points = tuple(("L", p) for p in X.points) + tuple(("R", p) for p in Y.points)
    return PartialMSet(X.monoid, table, points)


def mproduct(X: PartialMSet, Y: PartialMSet) -> PartialMSet:
    """Cartesian product; point (x, y) has index x * |Y| + y."""
    _same_monoid(X, Y)
    k = Y.size
    rows = []
    for x in range(X.size):
        rx = X.table[x]
        for y in range(k):
            ry = Y.table[y]
            rows.append(tuple(
                None if a is None or b is None else a * k + b for a, b in zip(rx, ry)
            ))
    points = tuple((p, q) for p in X.points for q in Y.points)
    return PartialMSet(X.monoid, tuple(rows), points)


def _normalize_partition(P, n) -> list[list[int]]:
    blocks = [sorted(set(b)) for b in P if len(b)]
    seen = [x for b in blocks for x in b]
    if sorted(seen) != list(range(n)):
        raise MalformedTable("blocks do not partition the carrier")
    blocks.sort(key=lambda b: b[0])
    return blocks


def congruence_witness(X: PartialMSet, P) -> tuple[int, int, int] | None:
    blocks = _normalize_partition(P, X.size)
    cls = [0] * X.size
    for i, b in enumerate(blocks):
        for x in b:
            cls[x] = i
    for b in blocks:
        x0 = b[0]
        for x in b[1:]:
            for m in range(X.monoid.size):
                u, v = X.table[x0][m], X.table[x][m]
                if (u is None) != (v is None) or (u is not None and cls[u] != cls[v]):
                    return (x0, x, m)
    return None


def quotient(X: PartialMSet, P) -> PartialMSet:
    """X / P, classes ordered by least member."""
    blocks = _normalize_partition(P, X.size)
    w = congruence_witness(X, blocks)
    if w is not None:
        raise NotCongruence(*w)
    cls = [0] * X.size
    for i, b in enumerate(blocks):
        for x in b:
            cls[x] = i
    table = tuple(
        tuple(None if v is None else cls[v] for v in X.table[b[0]]) for b in blocks
    )
    points = tuple(tuple(X.points[x] for x in b) for b in blocks)
    return PartialMSet(X.monoid, table, points)


def is_lax_morphism(f: PointMap) -> bool:
    X, Y = f.source, f.target
    for x in range(X.size):
        fx = f.images[x]
        for m, xm in enumerate(X.table[x]):
            if xm is not None and Y.table[fx][m] != f.images[xm]:
                return False
    return True


def is_morphism(f: PointMap) -> bool:
    X, Y = f.source, f.target
    for x in range(X.size):
        fx = f.images[x]
        for m, xm in enumerate(X.table[x]):
            ym = Y.table[fx][m]
            if xm is None:
                if ym is not None:
                    return False
            elif ym != f.images[xm]:
                return False
    return True


def image(f: PointMap) -> set[int]:
    return set(f.images)


def compose(g: PointMap, f: PointMap) -> PointMap:
    """g after f."""
    return PointMap(f.source, g.target, tuple(g.images[v] for v in f.images))


def identity_map(X: PartialMSet) -> PointMap:
    return PointMap(X, X, tuple(range(X.size)))


def _refine(X: PartialMSet, Y: PartialMSet):
    """Joint colour refinement on the action graphs of X and Y."""
    colours: list[list[int]] = []
    for Z in (X, Y):
        colours.append([0] * Z.size)
    for _ in range(max(X.size, 1)):
        names: dict = {}
        new = []
        for Z, col in zip((X, Y), colours):
            out = []
            for z in range(Z.size):
                sig = (col[z],) + tuple(-1 if v is None else col[v] for v in Z.table[z])
                out.append(names.setdefault(sig, len(names)))
            new.append(out)
        stable = len(names) == len(set(colours[0]) | set(colours[1]))
        colours = new
        if stable:
            break
    return colours


def iter_isomorphisms(X: PartialMSet, Y: PartialMSet) -> Iterator[PointMap]:
    """All isomorphisms X -> Y, by backtracking with forced propagation."""
    _same_monoid(X, Y)
    if X.size != Y.size:
        return
    cx, cy = _refine(X, Y)
    if sorted(cx) != sorted(cy):
        return
    n = X.size
    msize = X.monoid.size

    def propagate(fwd, bwd, x, y):
        fwd, bwd = dict(fwd), dict(bwd)
        queue = deque([(x, y)])
        fwd[x], bwd[y] = y, x
        while queue:
            a, b = queue.popleft()
            ra, rb = X.table[a], Y.table[b]
            for m in range(msize):
                u, v = ra[m], rb[m]
                if u is None or v is None:
                    if u is not v:
                        return None
                    continue
                if u in fwd:
                    if fwd[u] != v:
                        return None
                elif v in bwd:
                    return None
                elif cx[u] != cy[v]:
                    return None
                else:
                    fwd[u], bwd[v] = v, u
                    queue.append((u, v))
        return fwd, bwd

    def search(fwd, bwd):
        if len(fwd) == n:
            yield PointMap(X, Y, tuple(fwd[x] for x in range(n)))
            return
        x = next(i for i in range(n) if i not in fwd)
        for y in range(n):
            if y in bwd or cy[y] != cx[x]:
                continue
            state = propagate(fwd, bwd, x, y)
            if state is not None:
                yield from search(*state)

    yield from search({}, {})


def isomorphic(X: PartialMSet, Y: PartialMSet) -> PointMap | None:
    """A witnessing isomorphism, or None."""
    return next(iter_isomorphisms(X, Y), None)


def inverse_map(f: PointMap) -> PointMap:
    inv = [0] * f.target.size
    for x, y in enumerate(f.images):
        inv[y] = x
    return PointMap(f.target, f.source, tuple(inv))
