"""Example monoids and M-sets used as the regression corpus."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .action import PartialMSet
from .errors import OutOfRange
from .monoid import FiniteMonoid, build_from_cayley, generate_from_matrices, generate_from_transformations


def trivial_monoid() -> FiniteMonoid:
    return build_from_cayley([[0]], labels=["1"])


def mono_01() -> FiniteMonoid:
    """{0, 1} under multiplication (index 0 is 0, index 1 is 1)."""
    return build_from_cayley([[0, 0], [0, 1]], labels=["0", "1"])


def mono_0pm1() -> FiniteMonoid:
    """{0, 1, -1} under multiplication."""
    vals = [0, 1, -1]
    return build_from_cayley(
        [[vals.index(a * b) for b in vals] for a in vals], labels=[str(v) for v in vals]
    )


def chain_mset(n: int, M: FiniteMonoid | None = None) -> PartialMSet:
    """X_n = {0, ..., n} over {0, 1} acting by multiplication."""
    if n < 0:
        raise OutOfRange(f"n must be non-negative, got {n}")
    if M is None:
        M = mono_01()
    zero, one = M.labels.index("0"), M.labels.index("1")
    table = []
    for x in range(n + 1):
        row = [None, None]
        row[zero], row[one] = 0, x
        table.append(tuple(row))
    return PartialMSet(M, tuple(table), tuple(range(n + 1)))


def full_transformation(n: int) -> FiniteMonoid:
    """T_n, generated by a transposition, an n-cycle and a rank n-1 map."""
    if not 1 <= n <= 4:
        raise OutOfRange(f"T_n supported for 1 <= n <= 4, got {n}")
    if n == 1:
        return generate_from_transformations(1, [])
    swap = (2, 1) + tuple(range(3, n + 1))
    cycle = tuple(range(2, n + 1)) + (1,)
    collapse = (1, 1) + tuple(range(3, n + 1))
    return generate_from_transformations(n, [swap, cycle, collapse])


def symmetric_group(n: int) -> FiniteMonoid:
    if not 1 <= n <= 5:
        raise OutOfRange(f"Sym(n) supported for 1 <= n <= 5, got {n}")
    if n == 1:
        return generate_from_transformations(1, [])
    swap = (2, 1) + tuple(range(3, n + 1))
    cycle = tuple(range(2, n + 1)) + (1,)
    return generate_from_transformations(n, [swap, cycle])


def matrix_monoid(n: int, q: int) -> FiniteMonoid:
    """M_{n,q}: all n x n matrices over GF(q)."""
    if not 1 <= n <= 2 or q not in (2, 3):
        raise OutOfRange(f"M_(n,q) supported for n <= 2, q in (2, 3); got n={n}, q={q}")
    gens = []
    for entries in product(range(q), repeat=n * n):
        gens.append([list(entries[i * n:(i + 1) * n]) for i in range(n)])
    return generate_from_matrices(q, n, gens)


def five_element_nonsubring() -> FiniteMonoid:
    """{a, b, e, f, 1}, all idempotent; {a,b} and {e,f} are right-zero
    semigroups, and e, f act as two-sided identities on {a, b}."""
    names = ["a", "b", "e", "f", "1"]
    low = {"a", "b"}

    def mul(x, y):
        if x == "1":
            return y
        if y == "1":
            return x
        if (x in low) == (y in low):
            return y
        return x if x in low else y

    return build_from_cayley(
        [[names.index(mul(x, y)) for y in names] for x in names], labels=names
    )


APPENDIX_E = ((1, 0, 0), (1, 0, 0), (1, 0, 0))


def appendix_generators() -> list:
    out = []
    for k in range(3):
        row = [int(i == k) for i in range(3)]
        neg = [-v for v in row]
        for sign in (1, -1):
            s = [sign * v for v in row]
            t = [sign * v for v in neg]
            out.append([s, s, s])
            out.append([s, t, t])
    return out


def appendix_counterexample() -> FiniteMonoid:
    """Thirteen signed 3x3 matrices: identity plus twelve matrices whose
    rows are +-(one unit vector), with rows two and three equal."""
    return generate_from_matrices("Z", 3, appendix_generators())


def appendix_idempotent(M: FiniteMonoid) -> int:
    return M.elements.index(APPENDIX_E)


def appendix_congruence_pair(M: FiniteMonoid) -> tuple[int, int]:
    a = ((0, 1, 0),) * 3
    b = ((0, 0, 1),) * 3
    return M.elements.index(a), M.elements.index(b)


@dataclass
class CatalogEntry:
    name: str
    monoid: FiniteMonoid
    notes: dict = field(default_factory=dict)


_REGISTRY = {
    "trivial": (trivial_monoid, 0, {"size": 1, "rank": 1}),
    "mono_01": (mono_01, 0, {"size": 2, "rank": 2}),
    "mono_0pm1": (mono_0pm1, 0, {"size": 3}),
    "full_transformation": (full_transformation, 1, {}),
    "symmetric_group": (symmetric_group, 1, {}),
    "matrix_monoid": (matrix_monoid, 2, {}),
    "five_element_nonsubring": (five_element_nonsubring, 0, {"size": 5}),
    "appendix_counterexample": (appendix_counterexample, 0, {"size": 13, "|R_e|": 6, "|H_e|": 2}),
}

_KNOWN = {
    ("full_transformation", (1,)): {"size": 1, "rank": 1},
    ("full_transformation", (2,)): {"size": 4, "rank": 4},
    ("full_transformation", (3,)): {"size": 27, "rank": 8},
    ("full_transformation", (4,)): {"size": 256},
    ("symmetric_group", (3,)): {"size": 6, "rank": 4},
    ("matrix_monoid", (1, 2)): {"size": 2, "rank": 2},
    ("matrix_monoid", (2, 2)): {"size": 16, "rank": 6},
    ("matrix_monoid", (2, 3)): {"size": 81},
}


def names() -> list[str]:
    return list(_REGISTRY)


def parse_name(text: str) -> tuple[str, tuple[int, ...]]:
    """'full_transformation 3', 'full_transformation:3' or 'matrix_monoid:2,2'."""
    parts = text.replace(":", " ").replace(",", " ").split()
    if not parts:
        raise OutOfRange("empty catalog name")
    name, args = parts[0], parts[1:]
    if name not in _REGISTRY:
        raise OutOfRange(f"unknown catalog entry {name!r}; known: {', '.join(_REGISTRY)}")
    try:
        params = tuple(int(a) for a in args)
    except ValueError:
        raise OutOfRange(f"catalog parameters must be integers: {text!r}") from None
    arity = _REGISTRY[name][1]
    if len(params) != arity:
        raise OutOfRange(f"{name} takes {arity} parameter(s), got {len(params)}")
    return name, params


def get(text: str) -> CatalogEntry:
    name, params = parse_name(text)
    ctor, _, notes = _REGISTRY[name]
    M = ctor(*params)
    label = name if not params else f"{name}:{','.join(map(str, params))}"
    return CatalogEntry(label, M, dict(notes, **_KNOWN.get((name, params), {})))


# desk-scale corpus over which the property suites run
CORPUS = [
    "trivial",
    "mono_01",
    "mono_0pm1",
    "full_transformation:2",
    "full_transformation:3",
    "symmetric_group:3",
    "matrix_monoid:1,2",
    "matrix_monoid:1,3",
    "matrix_monoid:2,2",
    "five_element_nonsubring",
    "appendix_counterexample",
]
