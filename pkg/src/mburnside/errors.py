"""Exception hierarchy.

Two families: ``InputError`` for bad caller input (malformed tables, values
out of range, caps exceeded) and ``InternalAssertion`` for checks that can
only fail if the implementation is wrong.
"""


class MBurnsideError(Exception):
    pass


class InputError(MBurnsideError):
    pass


class InternalAssertion(MBurnsideError):
    """A structural theorem failed to hold on computed data. Always a bug."""


class MalformedTable(InputError):
    pass


class NonAssociative(InputError):
    def __init__(self, a, b, c):
        super().__init__(f"(a*b)*c != a*(b*c) for a={a}, b={b}, c={c}")
        self.witness = (a, b, c)


class NoIdentity(InputError):
    pass


class OutOfRange(InputError):
    pass


class SizeLimitExceeded(InputError):
    pass


class CapExceeded(InputError):
    pass


class NonPrimePowerField(InputError):
    pass


class NotIdempotent(InputError):
    pass


class MonoidMismatch(InputError):
    pass


class NotSubquotient(InputError):
    def __init__(self, s, m, n):
        super().__init__(f"s*m*n lands back in S but s*m leaves it: s={s}, m={m}, n={n}")
        self.witness = (s, m, n)


class NotCongruence(InputError):
    def __init__(self, x, x2, m):
        super().__init__(f"partition not preserved: x={x}, x'={x2}, m={m}")
        self.witness = (x, x2, m)


class NotASubgroup(InputError):
    pass


class NotContainedInH(InputError):
    pass


class BasisMismatch(InputError):
    pass


class NotTotal(InputError):
    pass


class UnmatchedOrbit(InternalAssertion):
    pass


class ApexAssertionFailure(InternalAssertion):
    pass


class TriangularityViolation(InternalAssertion):
    pass


class InputParse(InputError):
    """Input document could not be parsed into a monoid or M-set."""
