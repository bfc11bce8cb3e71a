"""Distinguishability and the map [X] -> (e : [Xe]) into group Burnside rings."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations

from .action import PartialMSet, mproduct
from .burnside import BurnsideElement, OrbitBasis, compute_basis, exact_determinant
from .congruences import max_congruence
from .errors import BasisMismatch, InternalAssertion, NotTotal, OutOfRange
from .monoid import (
    FiniteMonoid,
    MaximalSubgroup,
    all_subgroups_bruteforce,
    conjugacy_classes_of_subgroups,
    designated_idempotents,
    j_linear_order,
    maximal_subgroup,
)
from .orbits import weak_orbits


# ---------------------------------------------------------------- distinguishability

@dataclass(frozen=True)
class JClassReport:
    j: int
    idempotent: int
    l_classes: tuple[int, ...]
    indistinguishable: tuple[tuple[int, int], ...]

    @property
    def distinguishable(self) -> bool:
        return not self.indistinguishable


@dataclass(frozen=True)
class DistinguishabilityReport:
    per_j_class: tuple[JClassReport, ...]
    monoid_distinguishable: bool
    er: bool
    commuting_idempotents: bool

    def for_j(self, j: int) -> JClassReport:
        return next(r for r in self.per_j_class if r.j == j)


def _has_idempotent(M: FiniteMonoid, l_id: int, r_id: int) -> bool:
    g = M.green
    return any(g.l_of[x] == l_id for x in g.r_classes[r_id] if M.is_idempotent(x))


def is_ER(M: FiniteMonoid) -> bool:
    """Every R-class holds at most one idempotent."""
    g = M.green
    seen = set()
    for e in g.idempotents:
        if g.r_of[e] in seen:
            return False
        seen.add(g.r_of[e])
    return True


def has_commuting_idempotents(M: FiniteMonoid) -> bool:
    E = M.green.idempotents
    return all(M.cayley[e][f] == M.cayley[f][e] for e in E for f in E)


def distinguishability(M: FiniteMonoid) -> DistinguishabilityReport:
    """For each regular J-class, the pairs of L-classes that no R-class
    separates by idempotent content.

    The idempotent pattern is cross-checked against the product criterion:
    L_x meets R_y in an idempotent iff xy stays in the J-class.
    """
    g = M.green
    reports = []
    for j, e in designated_idempotents(M).items():
        J = g.j_classes[j]
        l_ids = sorted({g.l_of[x] for x in J})
        r_ids = sorted({g.r_of[x] for x in J})
        pattern = {}
        for l in l_ids:
            x = g.l_classes[l][0]
            for r in r_ids:
                y = g.r_classes[r][0]
                p = _has_idempotent(M, l, r)
                if p != (g.j_of[M.cayley[x][y]] == j):
                    raise InternalAssertion(f"idempotent pattern disagrees with products at L={l}, R={r}")
                pattern[l, r] = p
        bad = tuple(
            (a, b) for a, b in combinations(l_ids, 2)
            if all(pattern[a, r] == pattern[b, r] for r in r_ids)
        )
        reports.append(JClassReport(j, e, tuple(l_ids), bad))
    dist = all(r.distinguishable for r in reports)
    er = is_ER(M)
    if er and not dist:
        raise InternalAssertion("ER monoid reported non-distinguishable")
    return DistinguishabilityReport(tuple(reports), dist, er, has_commuting_idempotents(M))


# ---------------------------------------------------------------- group Burnside rings

def restrict_to_group(X: PartialMSet, e: int) -> PartialMSet:
    """Xe = {xe defined} as a total right H_e-set (over ``H.as_monoid``).

    Points of the result are the indices of X, in increasing order.
    """
    M = X.monoid
    H = maximal_subgroup(M, e)
    carrier = sorted({X.table[x][e] for x in range(X.size)} - {None})
    pos = {y: i for i, y in enumerate(carrier)}
    rows = []
    for y in carrier:
        row = []
        for h in H.elements:
            v = X.table[y][h]
            if v not in pos:
                raise InternalAssertion(f"H_e does not act totally on Xe at point {y}")
            row.append(pos[v])
        rows.append(tuple(row))
    return PartialMSet(H.as_monoid, tuple(rows), tuple(carrier))


def _local(H: MaximalSubgroup, S) -> frozenset[int]:
    return frozenset(H.local[x] for x in S)


class GroupBurnsideRing:
    """Burnside ring of a maximal subgroup, with basis the coset spaces H/K
    for K running over conjugacy-class representatives."""

    def __init__(self, H: MaximalSubgroup, subgroups=None):
        self.group = H
        classes = conjugacy_classes_of_subgroups(H, subgroups)
        self.subgroup_classes = tuple(tuple(sorted(c[0])) for c in classes)
        self._class_of = {S: i for i, c in enumerate(classes) for S in c}

    def __len__(self):
        return len(self.subgroup_classes)

    def class_index(self, K) -> int:
        return self._class_of[frozenset(K)]

    def coset_space(self, K) -> PartialMSet:
        """Right cosets Kh with Kh * g = Khg, over ``group.as_monoid``."""
        H = self.group
        G = H.as_monoid
        Kl = _local(H, K)
        cosets = []
        where = {}
        for h in range(G.size):
            if h in where:
                continue
            c = frozenset(G.cayley[k][h] for k in Kl)
            for x in c:
                where[x] = len(cosets)
            cosets.append(min(c))
        rows = tuple(tuple(where[G.cayley[rep][g]] for g in range(G.size)) for rep in cosets)
        return PartialMSet(G, rows, tuple(cosets))

    def stabilizer(self, Y: PartialMSet, y: int) -> frozenset[int]:
        H = self.group
        return frozenset(H.elements[g] for g in range(H.order) if Y.table[y][g] == y)

    def decompose(self, Y: PartialMSet) -> tuple[int, ...]:
        if Y.monoid is not self.group.as_monoid:
            raise BasisMismatch("group-set is not over this maximal subgroup")
        if not Y.is_total():
            raise NotTotal("group-set action must be total")
        v = [0] * len(self)
        for orbit in weak_orbits(Y):
            v[self.class_index(self.stabilizer(Y, orbit[0]))] += 1
        return tuple(v)

    @cached_property
    def mul_cube(self):
        spaces = [self.coset_space(K) for K in self.subgroup_classes]
        n = len(spaces)
        return tuple(
            tuple(self.decompose(mproduct(spaces[i], spaces[j])) for j in range(n)) for i in range(n)
        )

    def mul(self, a, b) -> tuple[int, ...]:
        out = [0] * len(self)
        cube = self.mul_cube
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                if x and y:
                    for k, z in enumerate(cube[i][j]):
                        out[k] += x * y * z
        return tuple(out)

    def one(self) -> tuple[int, ...]:
        v = [0] * len(self)
        v[self.class_index(self.group.elements)] = 1
        return tuple(v)

    def marks(self) -> tuple[tuple[int, ...], ...]:
        """Classical table of marks: fixed points of K on H/L."""
        H = self.group
        out = []
        for K in self.subgroup_classes:
            Kl = _local(H, K)
            row = []
            for L in self.subgroup_classes:
                Y = self.coset_space(L)
                row.append(sum(1 for y in range(Y.size) if all(Y.table[y][k] == y for k in Kl)))
            out.append(tuple(row))
        return tuple(out)


def group_burnside_decompose(Y: PartialMSet, ring: GroupBurnsideRing) -> tuple[int, ...]:
    return ring.decompose(Y)


# ---------------------------------------------------------------- the structure map

@dataclass(eq=False)
class StructureMap:
    basis: OrbitBasis
    idempotents: tuple[int, ...]  # designated, in J-linear order
    rings: tuple[GroupBurnsideRing, ...]
    images: tuple[tuple[tuple[int, ...], ...], ...] = field(repr=False)  # per basis class

    @cached_property
    def subgroup_determined(self) -> dict[int, tuple[int, int]]:
        """Basis class -> (position of e, subgroup class index) for classes
        isomorphic to some R_e/K."""
        out = {}
        pos = {e: i for i, e in enumerate(self.idempotents)}
        M = self.basis.monoid
        for (e, classes), k in sorted(self.basis.lookup.items()):
            if k in out:
                continue
            h_of = M.green.h_of
            if all(len({h_of[x] for x in c}) == 1 for c in classes):
                K = next(c for c in classes if e in c)
                out[k] = (pos[e], self.rings[pos[e]].class_index(K))
        return dict(sorted(out.items()))

    @property
    def target_rank(self) -> int:
        return sum(len(r) for r in self.rings)

    def coordinates(self) -> list[tuple[int, int]]:
        return [(p, i) for p, r in enumerate(self.rings) for i in range(len(r))]

    def flatten(self, value) -> tuple[int, ...]:
        return tuple(c for part in value for c in part)

    def one(self):
        return tuple(r.one() for r in self.rings)

    def mul(self, a, b):
        return tuple(r.mul(x, y) for r, x, y in zip(self.rings, a, b))


def build_structure_map(basis: OrbitBasis) -> StructureMap:
    M = basis.monoid
    order = tuple(j_linear_order(M))
    rings = tuple(GroupBurnsideRing(maximal_subgroup(M, e)) for e in order)
    images = tuple(
        tuple(ring.decompose(restrict_to_group(O.mset, e)) for e, ring in zip(order, rings))
        for O in basis
    )
    return StructureMap(basis, order, rings, images)


def phi(x: BurnsideElement, smap: StructureMap):
    """Image of a ring element: one group Burnside vector per idempotent."""
    if x.basis is not smap.basis:
        raise BasisMismatch("element is not over the structure map's basis")
    out = []
    for p, ring in enumerate(smap.rings):
        v = [0] * len(ring)
        for k, c in enumerate(x.coeffs):
            if c:
                for i, z in enumerate(smap.images[k][p]):
                    v[i] += c * z
        out.append(tuple(v))
    return tuple(out)


def homomorphism_failures(smap: StructureMap) -> list[tuple[int, int]]:
    """Basis pairs where phi(O_i O_j) differs from phi(O_i) phi(O_j)."""
    basis = smap.basis
    n = len(basis)
    bad = []
    for i in range(n):
        for j in range(i, n):
            lhs = phi(basis.unit(i) * basis.unit(j), smap)
            rhs = smap.mul(smap.images[i], smap.images[j])
            if lhs != rhs:
                bad.append((i, j))
    if phi(basis.one, smap) != smap.one():
        bad.append((basis.identity_index, -1))
    return bad


@dataclass(frozen=True)
class StructureMatrix:
    columns: tuple[int, ...]  # basis classes spanning the subgroup-determined part
    rows: tuple[tuple[int, int], ...]  # (position of e, subgroup class)
    matrix: tuple[tuple[int, ...], ...]
    unit_upper_triangular: bool
    rank_burnside: int
    rank_target: int
    isomorphic: bool


def structure_matrix(smap: StructureMap) -> StructureMatrix:
    """phi restricted to the span of subgroup-determined classes, with
    columns ordered like the target coordinates."""
    rows = smap.coordinates()
    by_coord = {v: k for k, v in smap.subgroup_determined.items()}
    if len(by_coord) != len(smap.subgroup_determined):
        raise InternalAssertion("two basis classes determined by the same subgroup class")
    columns = tuple(by_coord[c] for c in rows if c in by_coord)
    if len(columns) != len(rows):
        raise InternalAssertion("some subgroup class yields no basis class")
    matrix = tuple(
        tuple(smap.flatten(smap.images[k])[r] for k in columns) for r in range(len(rows))
    )
    n = len(rows)
    unit = all(matrix[i][i] == 1 for i in range(n)) and all(
        matrix[i][j] == 0 for i in range(n) for j in range(i)
    )
    if not unit:
        raise InternalAssertion("structure matrix is not unit upper-triangular")
    rb = len(smap.basis)
    return StructureMatrix(columns, tuple(rows), matrix, unit, rb, n, rb == n)


def non_distinguishable_witnesses(smap: StructureMap, report: DistinguishabilityReport) -> dict[int, int]:
    """For each non-distinguishable regular J-class (by designated idempotent
    u), the basis class of R_u / ~max; none of these is subgroup-determined."""
    M = smap.basis.monoid
    out = {}
    for r in report.per_j_class:
        if r.distinguishable:
            continue
        u = r.idempotent
        c = max_congruence(M, u)
        k = smap.basis.lookup[(u, c.classes)]
        if k in smap.subgroup_determined:
            raise InternalAssertion(f"R_u/~max for u={u} is subgroup-determined")
        out[u] = k
    return out


# ---------------------------------------------------------------- T_n

def _restriction_to_image(M: FiniteMonoid, e: int):
    """Isomorphism H_e -> Sym(r) for T_n: restrict each map to Im(e) = {a_1 < ... < a_r}."""
    image = sorted(set(M.elements[e]))
    pos = {a: i for i, a in enumerate(image)}

    def iso(h):
        f = M.elements[h]
        return tuple(pos[f[a - 1]] + 1 for a in image)

    return len(image), iso


@dataclass
class TnReport:
    n: int
    rank: int
    formula_rank: int
    sym_subgroup_classes: dict
    identity_index: int
    non_subgroup_classes: tuple[int, ...]
    ideal_closed: bool
    homomorphism_ok: bool
    determinant: int
    group_tables_match: bool
    checks: dict = field(default_factory=dict)


def tn_report(n: int, congruence_cap: int = 12) -> TnReport:
    """B(T_n) against Z x prod_r B(Sym(r)) via x -> (coefficient of 1, phi(x))."""
    from . import catalog

    if not 1 <= n <= 3:
        raise OutOfRange(f"T_n report supported for 1 <= n <= 3, got {n}")
    M = catalog.full_transformation(n)
    basis = compute_basis(M, congruence_cap)
    smap = build_structure_map(basis)
    one = basis.identity_index
    non_sub = tuple(k for k in range(len(basis)) if k not in smap.subgroup_determined)

    sym_classes = {}
    sym_rings = {}
    for r in range(1, n + 1):
        S = catalog.symmetric_group(r)
        G = maximal_subgroup(S, S.identity)
        sym_classes[r] = len(conjugacy_classes_of_subgroups(G, all_subgroups_bruteforce(G)))
        sym_rings[r] = (S, GroupBurnsideRing(G))
    formula = 1 + sum(sym_classes.values())

    cube = basis.mul_cube
    ideal = all(cube[i][j][one] == 0 for i in range(len(basis)) if i != one for j in range(len(basis)))

    def psi(k):
        return (int(k == one),) + smap.flatten(smap.images[k])

    def psi_mul(a, b):
        parts_a, parts_b = [], []
        off = 1
        for ring in smap.rings:
            parts_a.append(a[off:off + len(ring)])
            parts_b.append(b[off:off + len(ring)])
            off += len(ring)
        return (a[0] * b[0],) + smap.flatten(smap.mul(parts_a, parts_b))

    def psi_vec(coeffs):
        out = [0] * (1 + smap.target_rank)
        for k, c in enumerate(coeffs):
            for i, z in enumerate(psi(k)):
                out[i] += c * z
        return tuple(out)

    hom = all(
        psi_vec(cube[i][j]) == psi_mul(psi(i), psi(j))
        for i in range(len(basis)) for j in range(len(basis))
    )
    det = exact_determinant([psi(k) for k in range(len(basis))]) if len(basis) == 1 + smap.target_rank else 0

    # each B(H_e) against an independently built B(Sym(r))
    tables_match = True
    for e, ring in zip(smap.idempotents, smap.rings):
        r, iso = _restriction_to_image(M, e)
        S, sring = sym_rings[r]
        to_sym = {h: S.elements.index(iso(h)) for h in ring.group.elements}
        if len({to_sym[h] for h in ring.group.elements}) != ring.group.order or ring.group.order != sring.group.order:
            tables_match = False
            continue
        for a in ring.group.elements:
            for b in ring.group.elements:
                if to_sym[M.cayley[a][b]] != S.cayley[to_sym[a]][to_sym[b]]:
                    tables_match = False
        perm = [sring.class_index({to_sym[h] for h in K}) for K in ring.subgroup_classes]
        if sorted(perm) != list(range(len(sring))):
            tables_match = False
            continue
        for i in range(len(ring)):
            for j in range(len(ring)):
                mine = ring.mul_cube[i][j]
                theirs = sring.mul_cube[perm[i]][perm[j]]
                if any(mine[k] != theirs[perm[k]] for k in range(len(ring))):
                    tables_match = False

    return TnReport(
        n=n,
        rank=len(basis),
        formula_rank=formula,
        sym_subgroup_classes=sym_classes,
        identity_index=one,
        non_subgroup_classes=non_sub,
        ideal_closed=ideal,
        homomorphism_ok=hom,
        determinant=det,
        group_tables_match=tables_match,
        checks={"phi_hom_failures": homomorphism_failures(smap)},
    )
