"""Strong Burnside rings of finite monoids: partial actions, strong orbits,
right congruences, tables of marks and the structure map to group Burnside
rings."""

from .action import PartialMSet, isomorphic, make_mset, mproduct, msum, quotient, restrict, right_regular, validate
from .burnside import (
    BurnsideElement,
    MarksTable,
    OrbitBasis,
    class_of,
    compute_basis,
    lax_count,
    marks_table,
    multiplication_table,
    ring_add,
    ring_mul,
    semisimplicity_certificate,
)
from .errors import InputError, InternalAssertion, MBurnsideError
from .monoid import FiniteMonoid, build_from_cayley, generate_from_matrices, generate_from_transformations
from .orbits import strong_orbits, weak_orbits
from .structure import build_structure_map, distinguishability, phi, structure_matrix, tn_report

__version__ = "0.1.0"
