import pytest

from helpers import basis, monoid
from mburnside import catalog
from mburnside.action import validate
from mburnside.errors import OutOfRange
from mburnside.monoid import associativity_witness, check_stability, maximal_subgroup


@pytest.mark.parametrize("name", catalog.CORPUS)
def test_expected_facts(name):
    entry = catalog.get(name)
    M = entry.monoid
    assert associativity_witness(M.cayley) is None
    assert check_stability(M)
    if "size" in entry.notes:
        assert M.size == entry.notes["size"]
    if "rank" in entry.notes:
        assert len(basis(name)) == entry.notes["rank"]


def test_appendix_facts():
    M = monoid("appendix_counterexample")
    e = catalog.appendix_idempotent(M)
    g = M.green
    assert len(g.r_class(e)) == 6
    assert maximal_subgroup(M, e).order == 2
    assert set(g.j_class(e)) == set(range(M.size)) - {M.identity}


def test_five_element_facts():
    M = monoid("five_element_nonsubring")
    a, b, e, f = (M.labels.index(s) for s in "abef")
    assert all(M.is_idempotent(x) for x in range(5))
    assert M.cayley[a][b] == b and M.cayley[b][a] == a
    assert M.cayley[e][f] == f and M.cayley[f][e] == e
    for x in (a, b):
        for y in (e, f):
            assert M.cayley[x][y] == x == M.cayley[y][x]
    assert set(M.green.r_class(a)) == {a, b}


def test_chain_zero():
    X = catalog.chain_mset(0)
    assert validate(X) and X.table == ((0, 0),)


@pytest.mark.parametrize("text", ["full_transformation:5", "matrix_monoid:3,2", "matrix_monoid:2,5", "nope", "mono_01:1", "full_transformation:x"])
def test_bounds(text):
    with pytest.raises(OutOfRange):
        catalog.get(text)


def test_name_forms():
    assert catalog.parse_name("full_transformation 2") == ("full_transformation", (2,))
    assert catalog.parse_name("matrix_monoid:2,2") == ("matrix_monoid", (2, 2))
