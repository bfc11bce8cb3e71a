"""Shared fixtures data, brute-force oracles and the random M-set generator."""

from __future__ import annotations

import random
from functools import lru_cache
from itertools import permutations

from mburnside import catalog
from mburnside.action import PartialMSet, mproduct, msum, quotient, restrict, right_regular, singleton
from mburnside.burnside import compute_basis
from mburnside.congruences import generated_congruence

SMALL_CORPUS = [
    "trivial",
    "mono_01",
    "mono_0pm1",
    "full_transformation:2",
    "symmetric_group:3",
    "matrix_monoid:1,3",
    "five_element_nonsubring",
    "appendix_counterexample",
]


@lru_cache(maxsize=None)
def monoid(name):
    return catalog.get(name).monoid


@lru_cache(maxsize=None)
def basis(name):
    return compute_basis(monoid(name))


# ---------------------------------------------------------------- oracles

def brute_isomorphisms(X: PartialMSet, Y: PartialMSet):
    if X.size != Y.size:
        return []
    out = []
    for p in permutations(range(Y.size)):
        if all(
            (X.table[x][m] is None and Y.table[p[x]][m] is None)
            or (X.table[x][m] is not None and Y.table[p[x]][m] == p[X.table[x][m]])
            for x in range(X.size)
            for m in range(X.monoid.size)
        ):
            out.append(p)
    return out


def reachable(X: PartialMSet, x: int) -> set[int]:
    return {v for v in X.table[x] if v is not None}


def brute_strong_orbits(X: PartialMSet) -> list[tuple[int, ...]]:
    reach = [reachable(X, x) for x in range(X.size)]
    comps = {}
    for x in range(X.size):
        comps.setdefault(frozenset(y for y in range(X.size) if y in reach[x] and x in reach[y]), None)
    return sorted(tuple(sorted(c)) for c in comps)


def closure(X: PartialMSet, S) -> set[int]:
    """Least invariant subset containing S."""
    out = set(S)
    for s in list(S):
        out |= reachable(X, s)
    return out


def relabel(X: PartialMSet, perm) -> PartialMSet:
    """Isomorphic copy with point x renamed perm[x]."""
    inv = [0] * X.size
    for x, p in enumerate(perm):
        inv[p] = x
    rows = tuple(
        tuple(None if v is None else perm[v] for v in X.table[inv[p]]) for p in range(X.size)
    )
    return PartialMSet(X.monoid, rows)


# ---------------------------------------------------------------- random M-sets

def _pieces(name):
    M = monoid(name)
    B = basis(name)
    out = [O.mset for O in B] + [singleton(M)]
    if M.size <= 6:
        out.append(right_regular(M))
    return out


def random_mset(rng: random.Random, name: str | None = None, max_points: int = 8) -> PartialMSet:
    """A random subquotient A \\ B of an invariant-set chain inside a quotient
    of a sum or product of small corpus M-sets."""
    if name is None:
        name = rng.choice(SMALL_CORPUS)
    pieces = _pieces(name)
    while True:
        X = rng.choice(pieces)
        for _ in range(rng.randint(0, 2)):
            Y = rng.choice(pieces)
            if rng.random() < 0.5 and X.size * Y.size <= 24:
                X = mproduct(X, Y)
            elif X.size + Y.size <= 24:
                X = msum(X, Y)
        if X.size >= 2 and rng.random() < 0.4:
            a, b = rng.sample(range(X.size), 2)
            P = generated_congruence(X, [(a, b)])
            if P is not None:
                X = quotient(X, P)
        if X.size == 0:
            continue
        A = closure(X, rng.sample(range(X.size), rng.randint(1, min(3, X.size))))
        B = set()
        if rng.random() < 0.6:
            inner = sorted(A)
            B = closure(X, rng.sample(inner, rng.randint(1, min(2, len(inner)))))
            if B == A:
                B = set()
        S = A - B
        if 1 <= len(S) <= max_points:
            return restrict(X, S)


def random_msets(seed: int, count: int, max_points: int = 8):
    rng = random.Random(seed)
    return [random_mset(rng, max_points=max_points) for _ in range(count)]
