"""The strong Burnside ring of a finite monoid and its table of marks.

Ring elements are integer vectors over the strong-orbit-class basis. The
basis is built from quotients R_e / ~ for one idempotent e per regular
J-class; arithmetic goes through strong-orbit decomposition of products.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import product as cartesian

from .action import PartialMSet, PointMap, is_lax_morphism, isomorphic, msum, mproduct, singleton
from .congruences import DEFAULT_CONGRUENCE_CAP, RightCongruence, enumerate_right_congruences, quotient_mset
from .errors import (
    BasisMismatch,
    InternalAssertion,
    MonoidMismatch,
    SizeLimitExceeded,
    TriangularityViolation,
    UnmatchedOrbit,
)
from .monoid import FiniteMonoid, designated_idempotents
from .orbits import StrongOrbit, as_strong_orbit, aut_group, canonical_form, strong_orbits

LAX_ORACLE_GATE = 10**6


@dataclass(eq=False)
class StrongOrbitClass:
    index: int
    e: int
    congruence: RightCongruence
    mset: PartialMSet = field(repr=False)
    aut_order: int
    apex: int

    @property
    def size(self) -> int:
        return self.mset.size

    @property
    def encoding(self) -> tuple:
        return (self.e, self.congruence.classes)

    @property
    def subgroup(self) -> tuple[int, ...] | None:
        """K when the congruence is the coset congruence of K <= H_e."""
        c = self.congruence
        return c.class_of(c.e) if c.contained_in_h else None

    def label(self) -> str:
        M = self.congruence.monoid
        return f"R[{M.label(self.e)}]/{len(self.congruence)}"


# ---------------------------------------------------------------- lax morphisms

def _orbit_mset(O) -> PartialMSet:
    if isinstance(O, StrongOrbit):
        return O.mset
    if isinstance(O, StrongOrbitClass):
        return O.mset
    return O


def lax_count_fast(O, X: PartialMSet) -> int:
    """Lax morphisms from a strong orbit are fixed by the image of one point:
    count the admissible images of point 0."""
    O = _orbit_mset(O)
    if O.monoid is not X.monoid:
        raise MonoidMismatch("orbit and target are over different monoids")
    if O.size == 0:
        return 1
    base = O.table[0]
    groups: dict[int, list[int]] = {}
    for m, v in enumerate(base):
        if v is not None:
            groups.setdefault(v, []).append(m)
    if len(groups) != O.size:
        raise ValueError("source is not a strong orbit (point 0 does not generate it)")
    blocks = list(groups.values())
    count = 0
    for x in range(X.size):
        row = X.table[x]
        ok = True
        for b in blocks:
            v = row[b[0]]
            if v is None or any(row[m] != v for m in b[1:]):
                ok = False
                break
        count += ok
    return count


def iter_lax_morphisms(S: PartialMSet, X: PartialMSet):
    """Every lax morphism S -> X by exhaustive search over point maps."""
    if X.size ** S.size > LAX_ORACLE_GATE:
        raise SizeLimitExceeded(f"{X.size}^{S.size} maps exceeds oracle gate {LAX_ORACLE_GATE}")
    for images in cartesian(range(X.size), repeat=S.size):
        f = PointMap(S, X, images)
        if is_lax_morphism(f):
            yield f


def lax_count_oracle(O, X: PartialMSet) -> int:
    return sum(1 for _ in iter_lax_morphisms(_orbit_mset(O), X))


def lax_count(O, X: PartialMSet, method: str = "fast") -> int:
    if method == "fast":
        return lax_count_fast(O, X)
    if method == "oracle":
        return lax_count_oracle(O, X)
    raise ValueError(f"unknown method {method!r}")


# ---------------------------------------------------------------- basis

@dataclass(eq=False)
class OrbitBasis:
    monoid: FiniteMonoid
    classes: tuple[StrongOrbitClass, ...]
    # every enumerated congruence, mapped to its class index
    lookup: dict = field(repr=False)

    def __len__(self):
        return len(self.classes)

    def __iter__(self):
        return iter(self.classes)

    def __getitem__(self, i) -> StrongOrbitClass:
        return self.classes[i]

    def zero(self) -> BurnsideElement:
        return BurnsideElement(self, (0,) * len(self))

    def unit(self, i: int) -> BurnsideElement:
        v = [0] * len(self)
        v[i] = 1
        return BurnsideElement(self, tuple(v))

    @cached_property
    def one(self) -> BurnsideElement:
        return class_of(singleton(self.monoid), self)

    @cached_property
    def identity_index(self) -> int:
        return self.one.coeffs.index(1)

    @cached_property
    def lax_matrix(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(lax_count(a, b.mset) for b in self.classes) for a in self.classes)

    @cached_property
    def mul_cube(self) -> tuple:
        return multiplication_table(self)


def _raw_classes(M: FiniteMonoid, congruence_cap: int):
    raw = []
    lookup = {}
    for j, e in designated_idempotents(M).items():
        mine = []
        for c in enumerate_right_congruences(M, e, cap=congruence_cap):
            Q = quotient_mset(c)
            for k in mine:
                rep = raw[k]
                if rep[2].size == Q.size and isomorphic(rep[2], Q) is not None:
                    lookup[(e, c.classes)] = k
                    break
            else:
                lookup[(e, c.classes)] = len(raw)
                mine.append(len(raw))
                raw.append((e, c, Q, j))
    return raw, lookup


def compute_basis(M: FiniteMonoid, congruence_cap: int = DEFAULT_CONGRUENCE_CAP) -> OrbitBasis:
    """Strong-orbit classes of M, topologically sorted by lax existence.

    A class comes before another whenever a lax morphism goes from the first
    to the second. Incomparable classes are ordered by descending size and
    then by (e, congruence classes).
    """
    raw, lookup = _raw_classes(M, congruence_cap)
    n = len(raw)
    lax = [[lax_count(raw[a][2], raw[b][2]) for b in range(n)] for a in range(n)]
    indeg = [sum(1 for a in range(n) if a != b and lax[a][b]) for b in range(n)]
    key = [(-raw[k][2].size, raw[k][0], raw[k][1].classes) for k in range(n)]
    order = []
    avail = {k for k in range(n) if indeg[k] == 0}
    while avail:
        k = min(avail, key=key.__getitem__)
        avail.remove(k)
        order.append(k)
        for b in range(n):
            if b != k and lax[k][b]:
                indeg[b] -= 1
                if indeg[b] == 0:
                    avail.add(b)
    if len(order) != n:
        raise TriangularityViolation("lax-existence relation has a cycle between non-isomorphic classes")
    new_index = {old: i for i, old in enumerate(order)}
    classes = []
    for i, old in enumerate(order):
        e, c, Q, j = raw[old]
        aut = aut_group(as_strong_orbit(Q)).order
        classes.append(StrongOrbitClass(i, e, c, Q, aut, j))
    lookup = {k: new_index[v] for k, v in lookup.items()}
    basis = OrbitBasis(M, tuple(classes), lookup)
    basis.__dict__["lax_matrix"] = tuple(tuple(lax[a][b] for b in order) for a in order)
    return basis


def match_orbit(omega: StrongOrbit, basis: OrbitBasis) -> int:
    """Index of the basis class isomorphic to a strong orbit."""
    cf = canonical_form(omega)
    k = basis.lookup.get((cf.e, cf.congruence.classes))
    if k is None or isomorphic(basis[k].mset, omega.mset) is None:
        raise UnmatchedOrbit(f"strong orbit of size {omega.size} matches no basis class")
    return k


def class_of(X: PartialMSet, basis: OrbitBasis) -> BurnsideElement:
    """[X] as a sum of the classes of its strong orbits."""
    if X.monoid is not basis.monoid:
        raise MonoidMismatch("M-set is over a different monoid than the basis")
    v = [0] * len(basis)
    for omega in strong_orbits(X):
        v[match_orbit(omega, basis)] += 1
    return BurnsideElement(basis, tuple(v))


# ---------------------------------------------------------------- arithmetic

@dataclass(frozen=True)
class BurnsideElement:
    basis: OrbitBasis = field(compare=False, repr=False)
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != len(self.basis):
            raise BasisMismatch(f"{len(self.coeffs)} coefficients for a basis of {len(self.basis)}")

    def __add__(self, other):
        return ring_add(self, other)

    def __sub__(self, other):
        return ring_add(self, -other)

    def __neg__(self):
        return BurnsideElement(self.basis, tuple(-c for c in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, int):
            return BurnsideElement(self.basis, tuple(other * c for c in self.coeffs))
        return ring_mul(self, other)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, BurnsideElement):
            return NotImplemented
        return self.basis is other.basis and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __str__(self):
        terms = [f"{c}*{self.basis[i].label()}" for i, c in enumerate(self.coeffs) if c]
        return " + ".join(terms) if terms else "0"


def _same_basis(a: BurnsideElement, b: BurnsideElement):
    if not isinstance(a, BurnsideElement) or not isinstance(b, BurnsideElement):
        raise BasisMismatch("operands must be Burnside ring elements")
    if a.basis is not b.basis:
        raise BasisMismatch("elements belong to different bases")


def ring_add(a: BurnsideElement, b: BurnsideElement) -> BurnsideElement:
    _same_basis(a, b)
    return BurnsideElement(a.basis, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))


def ring_mul(a: BurnsideElement, b: BurnsideElement) -> BurnsideElement:
    _same_basis(a, b)
    cube = a.basis.mul_cube
    n = len(a.basis)
    out = [0] * n
    for i, x in enumerate(a.coeffs):
        if not x:
            continue
        for j, y in enumerate(b.coeffs):
            if not y:
                continue
            for k, z in enumerate(cube[i][j]):
                out[k] += x * y * z
    return BurnsideElement(a.basis, tuple(out))


def multiplication_table(basis: OrbitBasis) -> tuple[tuple[tuple[int, ...], ...], ...]:
    """cube[i][j] = coefficients of [O_i][O_j], from the product M-set."""
    n = len(basis)
    cube = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            v = class_of(mproduct(basis[i].mset, basis[j].mset), basis).coeffs
            cube[i][j] = cube[j][i] = v
    return tuple(tuple(row) for row in cube)


# ---------------------------------------------------------------- marks

@dataclass(frozen=True)
class MarksTable:
    matrix: tuple[tuple[int, ...], ...]
    row_order: tuple[int, ...]
    basis: OrbitBasis = field(compare=False, repr=False)

    @property
    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.matrix[i][i] for i in range(len(self.matrix)))


def marks_table(basis: OrbitBasis) -> MarksTable:
    n = len(basis)
    matrix = tuple(tuple(lax_count(basis[i], basis[j].mset) for j in range(n)) for i in range(n))
    for i in range(n):
        for j in range(i):
            if matrix[i][j]:
                raise TriangularityViolation(f"marks entry ({i},{j}) = {matrix[i][j]} below diagonal")
        if matrix[i][i] != basis[i].aut_order or matrix[i][i] <= 0:
            raise TriangularityViolation(
                f"diagonal entry {i} is {matrix[i][i]}, automorphism group has order {basis[i].aut_order}"
            )
    return MarksTable(matrix, tuple(range(n)), basis)


def marks_vector(X: PartialMSet, basis: OrbitBasis) -> tuple[int, ...]:
    """(|Lax(O, X)|) over the basis classes O."""
    return tuple(lax_count(O, X) for O in basis)


def marks_of_element(x: BurnsideElement, table: MarksTable) -> tuple[int, ...]:
    """Linear extension: T . coeffs."""
    return tuple(sum(r * c for r, c in zip(row, x.coeffs)) for row in table.matrix)


def exact_determinant(matrix) -> int:
    """Gaussian elimination over the rationals."""
    A = [[Fraction(v) for v in row] for row in matrix]
    n = len(A)
    det = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if A[r][c] != 0), None)
        if p is None:
            return 0
        if p != c:
            A[c], A[p] = A[p], A[c]
            det = -det
        det *= A[c][c]
        for r in range(c + 1, n):
            f = A[r][c] / A[c][c]
            if f:
                for k in range(c, n):
                    A[r][k] -= f * A[c][k]
    assert det.denominator == 1
    return int(det)


@dataclass(frozen=True)
class Certificate:
    determinant: int
    index: int
    semisimple: bool
    multiplicative: bool
    checks: int
    failures: tuple = ()


def _random_mset(basis: OrbitBasis, rng: random.Random) -> PartialMSet:
    X = None
    for _ in range(rng.randint(1, 3)):
        O = basis[rng.randrange(len(basis))].mset
        X = O if X is None else msum(X, O)
    return X


def multiplicativity_failures(basis: OrbitBasis, pairs) -> list:
    out = []
    for X, Y, tag in pairs:
        P = mproduct(X, Y)
        for k, O in enumerate(basis):
            lhs = lax_count(O, P)
            rhs = lax_count(O, X) * lax_count(O, Y)
            if lhs != rhs:
                out.append((tag, k, lhs, rhs))
    return out


def semisimplicity_certificate(table: MarksTable, seed: int = 0, samples: int = 20) -> Certificate:
    """Exact determinant of the marks matrix plus a multiplicativity check of
    X -> (|Lax(O, X)|) on all basis pairs and on seeded random sums."""
    basis = table.basis
    det = exact_determinant(table.matrix)
    index = 1
    for d in table.diagonal:
        index *= d
    if det != index:
        raise TriangularityViolation(f"determinant {det} differs from diagonal product {index}")
    n = len(basis)
    pairs = [(basis[i].mset, basis[j].mset, ("basis", i, j)) for i in range(n) for j in range(i, n)]
    rng = random.Random(seed)
    for s in range(samples):
        pairs.append((_random_mset(basis, rng), _random_mset(basis, rng), ("sample", s)))
    failures = multiplicativity_failures(basis, pairs)
    return Certificate(det, index, det != 0, not failures, len(pairs), tuple(failures))


def check_decomposition_consistency(basis: OrbitBasis) -> None:
    """Mutual lax existence between classes must force isomorphism."""
    lax = basis.lax_matrix
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            if lax[i][j] and lax[j][i]:
                raise InternalAssertion(f"classes {i} and {j} have lax maps both ways")
