"""Arithmetic in GF(q) for prime powers q <= 9, and in the integers."""

from __future__ import annotations

from .errors import NonPrimePowerField

# Conway-style irreducible polynomials, low coefficient first, monic leading term omitted.
_MODULI = {4: (2, 2, (1, 1)), 8: (2, 3, (1, 1, 0)), 9: (3, 2, (1, 0))}
_PRIMES = (2, 3, 5, 7)


class GF:
    """Finite field with elements encoded as integers 0..q-1.

    For prime q the encoding is the residue. For q = p**k the integer's
    base-p digits are the polynomial coefficients (lowest first).
    """

    def __init__(self, q: int):
        if q in _PRIMES:
            self.p, self.k = q, 1
        elif q in _MODULI:
            self.p, self.k, _ = _MODULI[q]
        else:
            raise NonPrimePowerField(f"unsupported field size {q!r}; expected one of 2,3,4,5,7,8,9")
        self.q = q
        self._add = [[self._poly_add(a, b) for b in range(q)] for a in range(q)]
        self._mul = [[self._poly_mul(a, b) for b in range(q)] for a in range(q)]

    def _digits(self, a):
        out = []
        for _ in range(self.k):
            out.append(a % self.p)
            a //= self.p
        return out

    def _undigits(self, ds):
        return sum(d * self.p**i for i, d in enumerate(ds))

    def _poly_add(self, a, b):
        return self._undigits([(x + y) % self.p for x, y in zip(self._digits(a), self._digits(b))])

    def _poly_mul(self, a, b):
        p, k = self.p, self.k
        da, db = self._digits(a), self._digits(b)
        prod = [0] * (2 * k - 1)
        for i, x in enumerate(da):
            for j, y in enumerate(db):
                prod[i + j] = (prod[i + j] + x * y) % p
        if k > 1:
            low = _MODULI[self.q][2]
            # x^k = -(low poly)
            for deg in range(2 * k - 2, k - 1, -1):
                c = prod[deg]
                if c:
                    prod[deg] = 0
                    for i, t in enumerate(low):
                        prod[deg - k + i] = (prod[deg - k + i] - c * t) % p
        return self._undigits(prod[:k])

    def add(self, a, b):
        return self._add[a][b]

    def mul(self, a, b):
        return self._mul[a][b]

    def reduce(self, a: int) -> int:
        if self.k == 1:
            return a % self.p
        if not 0 <= a < self.q:
            raise NonPrimePowerField(f"entry {a} is not an encoded element of GF({self.q})")
        return a

    def matmul(self, A, B):
        n, m, r = len(A), len(B), len(B[0])
        out = []
        for i in range(n):
            row = []
            for j in range(r):
                s = 0
                for t in range(m):
                    s = self._add[s][self._mul[A[i][t]][B[t][j]]]
                row.append(s)
            out.append(tuple(row))
        return tuple(out)


class Integers:
    """Exact integer matrix arithmetic, for signed matrix monoids."""

    q = "Z"

    def reduce(self, a: int) -> int:
        return int(a)

    def matmul(self, A, B):
        n, m, r = len(A), len(B), len(B[0])
        return tuple(
            tuple(sum(A[i][t] * B[t][j] for t in range(m)) for j in range(r)) for i in range(n)
        )


def field(q) -> GF | Integers:
    if q == "Z":
        return Integers()
    if isinstance(q, str) and q.isdigit():
        q = int(q)
    if not isinstance(q, int):
        raise NonPrimePowerField(f"field must be a prime power <= 9 or 'Z', got {q!r}")
    return GF(q)
