"""Right congruences on the R-class of an idempotent.

Congruence classes are stored as monoid element indices; the associated
M-set ``r_class_mset(M, e)`` lists R_e in increasing index order, so local
point i is element ``R_e[i]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .action import PartialMSet, PointMap, congruence_witness, is_morphism, quotient, restrict, right_regular
from .errors import CapExceeded, InternalAssertion, NotASubgroup, NotContainedInH, NotIdempotent
from .monoid import FiniteMonoid, MaximalSubgroup, maximal_subgroup

DEFAULT_CONGRUENCE_CAP = 12
PARTITION_FILTER_LIMIT = 8


@dataclass(frozen=True)
class RightCongruence:
    monoid: FiniteMonoid
    e: int
    classes: tuple[tuple[int, ...], ...]

    @property
    def contained_in_h(self) -> bool:
        h_of = self.monoid.green.h_of
        return all(len({h_of[x] for x in c}) == 1 for c in self.classes)

    def class_of(self, x: int) -> tuple[int, ...]:
        for c in self.classes:
            if x in c:
                return c
        raise KeyError(x)

    def related(self, r: int, s: int) -> bool:
        return s in self.class_of(r)

    def refines(self, other: RightCongruence) -> bool:
        """Every class of self lies inside a class of other."""
        return all(any(set(c) <= set(d) for d in other.classes) for c in self.classes)

    def __len__(self):
        return len(self.classes)


def _canon(blocks) -> tuple[tuple[int, ...], ...]:
    return tuple(sorted({tuple(sorted(b)) for b in blocks}))


def r_class(M: FiniteMonoid, e: int) -> tuple[int, ...]:
    if not M.is_idempotent(e):
        raise NotIdempotent(f"element {e} is not idempotent")
    return M.green.r_class(e)


@lru_cache(maxsize=512)
def r_class_mset(M: FiniteMonoid, e: int) -> PartialMSet:
    """R_e with the restricted right-multiplication action."""
    return restrict(right_regular(M), r_class(M, e))


def _to_local(M, e, classes):
    pos = {x: i for i, x in enumerate(r_class(M, e))}
    return [[pos[x] for x in c] for c in classes]


def _to_global(M, e, blocks):
    R = r_class(M, e)
    return _canon([R[i] for i in b] for b in blocks)


def quotient_mset(c: RightCongruence) -> PartialMSet:
    """R_e / c, with points labelled by the element labels of each class."""
    X = r_class_mset(c.monoid, c.e)
    Q = quotient(X, _to_local(c.monoid, c.e, c.classes))
    return Q


def set_partitions(n: int):
    """All partitions of range(n) as lists of blocks (restricted growth strings)."""
    if n == 0:
        yield []
        return
    a = [0] * n

    def rec(i, mx):
        if i == n:
            blocks = [[] for _ in range(mx + 1)]
            for x, b in enumerate(a):
                blocks[b].append(x)
            yield blocks
            return
        for b in range(mx + 2):
            a[i] = b
            yield from rec(i + 1, max(mx, b))

    a[0] = 0
    yield from rec(1, 0)


class _UF:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[max(ra, rb)] = min(ra, rb)
        return True

    def blocks(self):
        out: dict[int, list[int]] = {}
        for x in range(len(self.parent)):
            out.setdefault(self.find(x), []).append(x)
        return list(out.values())


def generated_congruence(X: PartialMSet, pairs) -> tuple[tuple[int, ...], ...] | None:
    """Least congruence on X relating every given pair, or None if none exists."""
    uf = _UF(X.size)
    queue = []
    for a, b in pairs:
        if uf.union(a, b):
            queue.append((a, b))
    msize = X.monoid.size
    while queue:
        a, b = queue.pop()
        ra, rb = X.table[a], X.table[b]
        for m in range(msize):
            u, v = ra[m], rb[m]
            if u is None or v is None:
                if u is not v:
                    return None
            elif uf.union(u, v):
                queue.append((u, v))
    return _canon(uf.blocks())


def _pairs_of(blocks):
    return [(b[0], x) for b in blocks for x in b[1:]]


def congruences_by_partition_filter(X: PartialMSet) -> list[tuple[tuple[int, ...], ...]]:
    return [_canon(P) for P in set_partitions(X.size) if congruence_witness(X, P) is None]


def congruences_by_join_closure(X: PartialMSet) -> list[tuple[tuple[int, ...], ...]]:
    principal = set()
    for a in range(X.size):
        for b in range(a + 1, X.size):
            c = generated_congruence(X, [(a, b)])
            if c is not None:
                principal.add(c)
    bottom = _canon([x] for x in range(X.size))
    found = {bottom}
    frontier = [bottom]
    while frontier:
        nxt = []
        for c in frontier:
            for p in principal:
                j = generated_congruence(X, _pairs_of(c) + _pairs_of(p))
                if j is not None and j not in found:
                    found.add(j)
                    nxt.append(j)
        frontier = nxt
    return list(found)


def enumerate_right_congruences(
    M: FiniteMonoid, e: int, cap: int = DEFAULT_CONGRUENCE_CAP, method: str = "auto"
) -> list[RightCongruence]:
    """All right congruences on R_e, finest first."""
    R = r_class(M, e)
    if len(R) > cap:
        raise CapExceeded(f"|R_e| = {len(R)} exceeds congruence cap {cap}")
    X = r_class_mset(M, e)
    if method == "auto":
        method = "partitions" if len(R) <= PARTITION_FILTER_LIMIT else "joins"
    if method == "partitions":
        local = congruences_by_partition_filter(X)
    elif method == "joins":
        local = congruences_by_join_closure(X)
    else:
        raise ValueError(f"unknown method {method!r}")
    out = [RightCongruence(M, e, _to_global(M, e, P)) for P in local]
    out.sort(key=lambda c: (-len(c.classes), c.classes))
    return out


def equality_congruence(M: FiniteMonoid, e: int) -> RightCongruence:
    return RightCongruence(M, e, _canon([x] for x in r_class(M, e)))


def congruence_from_subgroup(M: FiniteMonoid, e: int, K) -> RightCongruence:
    """r ~ s iff Kr = Ks."""
    H = maximal_subgroup(M, e)
    K = frozenset(K)
    if not H.is_subgroup(K):
        raise NotASubgroup(f"{sorted(K)} is not a subgroup of H_{e}")
    return RightCongruence(M, e, _canon({M.cayley[k][r] for k in K} for r in r_class(M, e)))


def identity_class_subgroup(c: RightCongruence) -> tuple[int, ...]:
    """The class of e, for a congruence whose classes lie inside H-classes."""
    if not c.contained_in_h:
        raise NotContainedInH("congruence merges elements from distinct H-classes")
    K = c.class_of(c.e)
    H = maximal_subgroup(c.monoid, c.e)
    if not H.is_subgroup(K):
        raise InternalAssertion(f"class of e {K} is not a subgroup of H_e")
    if congruence_from_subgroup(c.monoid, c.e, K).classes != c.classes:
        raise InternalAssertion("congruence differs from the one its identity class determines")
    return K


def max_congruence(M: FiniteMonoid, e: int) -> RightCongruence:
    """r ~ s iff rm in J_e exactly when sm in J_e, for every m."""
    g = M.green
    j = g.j_of[e]
    groups: dict[tuple, list[int]] = {}
    for r in r_class(M, e):
        sig = tuple(g.j_of[M.cayley[r][m]] == j for m in range(M.size))
        groups.setdefault(sig, []).append(r)
    c = RightCongruence(M, e, _canon(groups.values()))
    X = r_class_mset(M, e)
    if congruence_witness(X, _to_local(M, e, c.classes)) is not None:
        raise InternalAssertion("maximal congruence failed to be a right congruence")
    return c


def preserving_subgroups(c: RightCongruence) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """(L, K): elements of H_e whose left multiplication preserves c, and
    those among them acting trivially on R_e / c (the class of e in H_e)."""
    M = c.monoid
    H = maximal_subgroup(M, c.e)
    L = tuple(
        h for h in H.elements
        if all(c.related(M.cayley[h][cls[0]], M.cayley[h][s]) for cls in c.classes for s in cls[1:])
    )
    e_class = set(c.class_of(c.e))
    K = tuple(h for h in H.elements if h in e_class)
    return L, K


def _contained_in_conjugate(H: MaximalSubgroup, K, L):
    L = frozenset(L)
    for h in H.elements:
        if frozenset(K) <= H.conjugate(L, h):
            return h
    return None


def coset_quotient_morphisms(M: FiniteMonoid, e: int, K, L) -> tuple[bool, PointMap | None]:
    """Whether a morphism R_e/K -> R_e/L exists; witness f(Kr) = Lhr."""
    H = maximal_subgroup(M, e)
    h = _contained_in_conjugate(H, K, L)
    if h is None:
        return False, None
    cK = congruence_from_subgroup(M, e, K)
    cL = congruence_from_subgroup(M, e, L)
    XK, XL = quotient_mset(cK), quotient_mset(cL)
    images = []
    for cls in cK.classes:
        target = cL.class_of(M.cayley[h][cls[0]])
        images.append(cL.classes.index(target))
    f = PointMap(XK, XL, tuple(images))
    if not is_morphism(f):
        raise InternalAssertion("coset map Kr -> Lhr is not a morphism")
    return True, f


def coset_quotient_isomorphic(M: FiniteMonoid, e: int, K, L) -> bool:
    H = maximal_subgroup(M, e)
    return any(H.conjugate(K, h) == frozenset(L) for h in H.elements)
