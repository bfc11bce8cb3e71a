import random

import pytest
from hypothesis import given, settings, strategies as st

from helpers import basis, brute_isomorphisms, brute_strong_orbits, monoid, random_mset, relabel, SMALL_CORPUS
from mburnside.action import is_invariant, msum, right_regular, singleton, validate
from mburnside.catalog import chain_mset
from mburnside.congruences import quotient_mset
from mburnside.orbits import (
    aut_group,
    as_strong_orbit,
    apex,
    canonical_form,
    non_annihilators,
    strong_orbits,
    tarjan_scc,
    weak_orbits,
)


def _brute_weak(X):
    adj = {x: set() for x in range(X.size)}
    for x in range(X.size):
        for v in X.table[x]:
            if v is not None:
                adj[x].add(v)
                adj[v].add(x)
    seen, comps = set(), []
    for x in range(X.size):
        if x in seen:
            continue
        stack, comp = [x], set()
        while stack:
            y = stack.pop()
            if y not in comp:
                comp.add(y)
                stack.extend(adj[y])
        seen |= comp
        comps.append(tuple(sorted(comp)))
    return sorted(comps)


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10**6))
def test_orbits_match_bruteforce(seed):
    X = random_mset(random.Random(seed))
    assert weak_orbits(X) == _brute_weak(X)
    assert [o.points for o in strong_orbits(X)] == brute_strong_orbits(X)


def test_tarjan_handles_long_paths():
    n = 20000
    comps = tarjan_scc(n, lambda v: [v + 1] if v + 1 < n else [0])
    assert comps == [list(range(n))]
    comps = tarjan_scc(n, lambda v: [v + 1] if v + 1 < n else [])
    assert len(comps) == n


def test_chain_orbits():
    X = chain_mset(4)
    assert weak_orbits(X) == [(0, 1, 2, 3, 4)]
    assert [o.points for o in strong_orbits(X)] == [(0,), (1,), (2,), (3,), (4,)]


def test_apex_over_01():
    X = chain_mset(1)
    M = X.monoid
    g = M.green
    zero_orbit, omega = strong_orbits(X)
    assert g.j_classes[apex(zero_orbit)] == (M.labels.index("0"),)
    assert g.j_classes[apex(omega)] == (M.labels.index("1"),)
    assert non_annihilators(omega) == {M.labels.index("1")}


@pytest.mark.parametrize("name", SMALL_CORPUS)
def test_strong_orbits_of_regular_action(name):
    M = monoid(name)
    orbs = strong_orbits(right_regular(M))
    # strong orbits of the right regular action are the R-classes
    assert sorted(o.points for o in orbs) == sorted(M.green.r_classes)


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10**6))
def test_strong_orbit_properties(seed):
    rng = random.Random(seed)
    X = random_mset(rng)
    orbs = strong_orbits(X)
    assert any(is_invariant(X, o.points) for o in orbs)
    for o in orbs:
        assert validate(o.mset)
        # apex is an isomorphism invariant
        perm = list(range(o.size))
        rng.shuffle(perm)
        assert apex(as_strong_orbit(relabel(o.mset, perm))) == o.apex_j_class
        # the canonical quotient reproduces the orbit
        cf = canonical_form(o)
        assert brute_isomorphisms(quotient_mset(cf.congruence), o.mset)
        assert o.mset.table[cf.alpha][cf.e] == cf.alpha


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_aut_order_matches_bruteforce(seed):
    X = random_mset(random.Random(seed), max_points=7)
    for o in strong_orbits(X):
        A = aut_group(o)
        autos = brute_isomorphisms(o.mset, o.mset)
        assert A.order == len(autos)
        assert sorted(A.automorphisms) == sorted(autos)
        assert set(A.K) <= set(A.L)


@pytest.mark.parametrize("name", SMALL_CORPUS)
def test_basis_classes_have_expected_apex(name):
    B = basis(name)
    M = B.monoid
    for O in B:
        omega = as_strong_orbit(O.mset)
        assert M.green.j_of[O.e] == omega.apex_j_class
        assert aut_group(omega).order == O.aut_order == len(brute_isomorphisms(O.mset, O.mset))


def test_as_strong_orbit_rejects_disconnected():
    X = chain_mset(1)
    with pytest.raises(ValueError):
        as_strong_orbit(X)
    M = X.monoid
    assert as_strong_orbit(singleton(M)).size == 1
    assert len(strong_orbits(msum(singleton(M), singleton(M)))) == 2
