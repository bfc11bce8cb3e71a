"""Weak and strong orbits, apexes, canonical forms and automorphism groups."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from .action import PartialMSet, isomorphic, restrict
from .congruences import RightCongruence, preserving_subgroups, quotient_mset, r_class
from .errors import ApexAssertionFailure, InternalAssertion
from .monoid import FiniteMonoid, designated_idempotents


def _edge_labels(M: FiniteMonoid):
    # reachability along generators equals reachability along all elements
    return M.generators if M.generators else range(M.size)


def weak_orbits(X: PartialMSet) -> list[tuple[int, ...]]:
    parent = list(range(X.size))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for x in range(X.size):
        for y in X.table[x]:
            if y is not None:
                a, b = find(x), find(y)
                if a != b:
                    parent[max(a, b)] = min(a, b)
    groups: dict[int, list[int]] = {}
    for x in range(X.size):
        groups.setdefault(find(x), []).append(x)
    return sorted(tuple(g) for g in groups.values())


def tarjan_scc(n: int, successors) -> list[list[int]]:
    """Strongly connected components, iteratively (no recursion limit)."""
    index = [None] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    comps = []
    counter = 0
    for root in range(n):
        if index[root] is not None:
            continue
        work = [(root, iter(successors(root)))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if index[w] is None:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, iter(successors(w))))
                    advanced = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                u = work[-1][0]
                low[u] = min(low[u], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                comps.append(sorted(comp))
    return comps


@dataclass(eq=False)
class StrongOrbit:
    parent: PartialMSet
    points: tuple[int, ...]
    mset: PartialMSet = field(repr=False)

    @property
    def monoid(self) -> FiniteMonoid:
        return self.parent.monoid

    @property
    def size(self) -> int:
        return len(self.points)

    @cached_property
    def apex_j_class(self) -> int:
        return apex(self)


def strong_orbits(X: PartialMSet) -> list[StrongOrbit]:
    """SCCs of the action digraph, ordered by least point."""
    labels = list(_edge_labels(X.monoid))

    def succ(x):
        row = X.table[x]
        return [row[m] for m in labels if row[m] is not None]

    comps = sorted(tarjan_scc(X.size, succ))
    return [StrongOrbit(X, tuple(c), restrict(X, c)) for c in comps]


def as_strong_orbit(X: PartialMSet) -> StrongOrbit:
    """Wrap an M-set that is itself a single strong orbit."""
    orbs = strong_orbits(X)
    if len(orbs) != 1:
        raise ValueError(f"M-set has {len(orbs)} strong orbits, expected 1")
    return orbs[0]


def non_annihilators(omega: StrongOrbit) -> set[int]:
    X = omega.mset
    return {m for m in range(X.monoid.size) if any(X.table[a][m] is not None for a in range(X.size))}


def apex(omega: StrongOrbit) -> int:
    """J-class id of the unique J-minimal class among non-annihilators."""
    M = omega.monoid
    g = M.green
    N = non_annihilators(omega)
    minimal = {g.j_of[m] for m in N if not any(g.geq_j[m, n] and not g.geq_j[n, m] for n in N)}
    if len(minimal) != 1:
        raise ApexAssertionFailure(f"non-annihilators have {len(minimal)} minimal J-classes")
    j = minimal.pop()
    rep = g.j_classes[j][0]
    above = {m for m in range(M.size) if g.geq_j[m, rep]}
    if above != N:
        raise ApexAssertionFailure("non-annihilators differ from the elements J-above the apex")
    return j


@dataclass(frozen=True)
class CanonicalForm:
    e: int
    alpha: int
    congruence: RightCongruence


def canonical_form(omega: StrongOrbit) -> CanonicalForm:
    """Designated idempotent e of the apex and the congruence r ~ s iff
    alpha r = alpha s, where alpha is the least point fixed by e."""
    M = omega.monoid
    X = omega.mset
    e = designated_idempotents(M)[omega.apex_j_class]
    alpha = next((a for a in range(X.size) if X.table[a][e] == a), None)
    if alpha is None:
        raise InternalAssertion("no point of the orbit is fixed by the apex idempotent")
    groups: dict[int, list[int]] = {}
    for r in r_class(M, e):
        ar = X.table[alpha][r]
        if ar is None:
            raise InternalAssertion(f"alpha * r undefined for r={r} in R_e")
        groups.setdefault(ar, []).append(r)
    if len(groups) != X.size:
        raise InternalAssertion("r -> alpha r is not onto the orbit")
    cong = RightCongruence(M, e, tuple(sorted(tuple(v) for v in groups.values())))
    if isomorphic(quotient_mset(cong), X) is None:
        raise InternalAssertion("R_e / ~ is not isomorphic to the orbit")
    return CanonicalForm(e, alpha, cong)


@dataclass(frozen=True)
class AutGroup:
    orbit: StrongOrbit
    e: int
    L: tuple[int, ...]
    K: tuple[int, ...]
    automorphisms: tuple[tuple[int, ...], ...]

    @property
    def order(self) -> int:
        return len(self.L) // len(self.K)


def aut_group(omega: StrongOrbit) -> AutGroup:
    """Automorphisms realised as left multiplication by elements of H_e
    preserving the congruence, modulo those fixing the class of e."""
    cf = canonical_form(omega)
    M, e, cong = omega.monoid, cf.e, cf.congruence
    X = omega.mset
    R = r_class(M, e)
    L, K = preserving_subgroups(cong)
    # point alpha r  ->  point alpha (h r)
    rep = {}
    for r in R:
        rep.setdefault(X.table[cf.alpha][r], r)
    perms = set()
    for h in L:
        perms.add(tuple(X.table[cf.alpha][M.cayley[h][rep[p]]] for p in range(X.size)))
    perms = tuple(sorted(perms))
    if len(perms) * len(K) != len(L):
        raise InternalAssertion("L/K does not act freely on the orbit")
    return AutGroup(omega, e, L, K, perms)
