import random

import pytest
from hypothesis import given, settings, strategies as st

from helpers import brute_isomorphisms, closure, monoid, random_mset, relabel
from mburnside.action import (
    PointMap,
    compose,
    congruence_witness,
    empty,
    identity_map,
    inverse_map,
    is_invariant,
    is_lax_morphism,
    is_morphism,
    isomorphic,
    iter_isomorphisms,
    make_mset,
    mproduct,
    msum,
    quotient,
    restrict,
    right_regular,
    singleton,
    validate,
)
from mburnside.catalog import chain_mset
from mburnside.errors import MalformedTable, MonoidMismatch, NotCongruence, NotSubquotient


def test_validate_accepts_chain():
    X = chain_mset(3)
    assert validate(X)
    assert X.size == 4


def test_validate_reports_identity_violation():
    M = monoid("mono_01")
    X = make_mset(M, [[0, 1], [0, 0]])  # 1 * (identity) = 0
    r = validate(X)
    assert not r and r.axiom == "identity"


def test_validate_reports_associativity_violation():
    M = monoid("mono_0pm1")
    zero, one, neg = (M.labels.index(s) for s in ("0", "1", "-1"))
    # -1 sends both points to 1, so (0 * -1) * -1 = 1 but 0 * (-1 * -1) = 0
    table = [[None] * 3 for _ in range(2)]
    for x in range(2):
        table[x][one] = x
        table[x][zero] = None
    table[0][neg] = 1
    table[1][neg] = 1
    r = validate(make_mset(M, table))
    assert not r and r.axiom == "associativity"


def test_validate_reports_closure_violation():
    M = monoid("mono_01")
    r = validate(make_mset(M, [[5, 0]]))
    assert not r and r.axiom == "closure"


def test_make_mset_shape():
    with pytest.raises(MalformedTable):
        make_mset(monoid("mono_01"), [[0]])


def test_restrict_subquotient_and_witness():
    X = chain_mset(3)
    # {1,2,3} is a subquotient: its complement {0} is invariant
    Y = restrict(X, [1, 2, 3])
    assert validate(Y)
    assert all(row[0] is None for row in Y.table)
    M = monoid("mono_0pm1")
    R = right_regular(M)
    one, zero = M.labels.index("1"), M.labels.index("0")
    # {1, 0}: 1 * -1 = -1 leaves, -1 * 0 = 0 returns
    with pytest.raises(NotSubquotient) as info:
        restrict(R, [one, zero])
    s, m, n = info.value.witness
    assert R.table[s][m] not in (one, zero) and R.table[R.table[s][m]][n] in (one, zero)


def test_sum_and_product_sizes_and_axioms():
    X, Y = chain_mset(2), None
    M = X.monoid
    Y = chain_mset(3, M)
    S, P = msum(X, Y), mproduct(X, Y)
    assert S.size == 7 and P.size == 12
    assert validate(S) and validate(P)
    assert S.points[0] == ("L", 0) and S.points[3] == ("R", 0)
    with pytest.raises(MonoidMismatch):
        msum(X, chain_mset(1))


def test_product_definedness_is_conjunction():
    rng = random.Random(3)
    for _ in range(20):
        X = random_mset(rng, "five_element_nonsubring", 5)
        Y = random_mset(rng, "five_element_nonsubring", 5)
        P = mproduct(X, Y)
        for x in range(X.size):
            for y in range(Y.size):
                for m in range(X.monoid.size):
                    a, b = X.table[x][m], Y.table[y][m]
                    v = P.table[x * Y.size + y][m]
                    assert (v is None) == (a is None or b is None)
                    if v is not None:
                        assert v == a * Y.size + b


def test_singleton_is_product_identity():
    X = chain_mset(2)
    one = singleton(X.monoid)
    assert isomorphic(mproduct(X, one), X) is not None
    assert isomorphic(msum(X, empty(X.monoid)), X) is not None


def test_quotient_and_congruence_witness():
    X = chain_mset(3)
    # merging 1 and 2 is a congruence: both go to 0 under 0
    Q = quotient(X, [[0], [1, 2], [3]])
    assert Q.size == 3 and validate(Q)
    M = monoid("mono_0pm1")
    R = right_regular(M)
    one, neg, zero = (M.labels.index(s) for s in ("1", "-1", "0"))
    with pytest.raises(NotCongruence):
        quotient(R, [[one, zero], [neg]])
    assert congruence_witness(R, [[one, neg], [zero]]) is None


def test_is_invariant():
    X = chain_mset(3)
    assert is_invariant(X, [0])
    assert not is_invariant(X, [1])
    assert is_invariant(X, [0, 2])


def test_morphisms_and_lax_morphisms():
    M = monoid("mono_01")
    X = chain_mset(2, M)
    one = singleton(M)
    to_one = PointMap(X, one, (0, 0, 0))
    assert is_morphism(to_one) and is_lax_morphism(to_one)
    # the point {1} (0-action undefined) into the singleton: lax but not a morphism
    omega = restrict(X, [1])
    f = PointMap(omega, one, (0,))
    assert is_lax_morphism(f) and not is_morphism(f)
    g = PointMap(one, omega, (0,))
    assert not is_lax_morphism(g)
    i = identity_map(X)
    assert compose(i, i).images == i.images
    assert inverse_map(i).images == i.images


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.randoms(use_true_random=False))
def test_isomorphism_search_matches_bruteforce(seed, prng):
    rng = random.Random(seed)
    X = random_mset(rng, max_points=6)
    perm = list(range(X.size))
    prng.shuffle(perm)
    Y = relabel(X, perm)
    assert isomorphic(X, Y) is not None
    found = sorted(f.images for f in iter_isomorphisms(X, Y))
    assert found == sorted(brute_isomorphisms(X, Y))
    for f in iter_isomorphisms(X, Y):
        assert is_morphism(f)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.integers(0, 10**6))
def test_non_isomorphic_detection_matches_bruteforce(s1, s2):
    X = random_mset(random.Random(s1), "five_element_nonsubring", 5)
    Y = random_mset(random.Random(s2), "five_element_nonsubring", 5)
    assert (isomorphic(X, Y) is not None) == bool(brute_isomorphisms(X, Y))


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 10**6))
def test_random_msets_satisfy_axioms(seed):
    X = random_mset(random.Random(seed))
    assert validate(X)
    assert 1 <= X.size <= 8


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_invariant_split_gives_subquotients(seed):
    rng = random.Random(seed)
    X = random_mset(rng)
    A = closure(X, [rng.randrange(X.size)])
    assert is_invariant(X, A)
    rest = set(range(X.size)) - A
    assert validate(restrict(X, A))
    if rest:
        assert validate(restrict(X, rest))
