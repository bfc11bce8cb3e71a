"""scikit-learn style wrappers: fit on a monoid, transform lists of M-sets
into coefficient or marks vectors."""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .action import PartialMSet, validate
from .burnside import class_of, compute_basis, marks_table, marks_vector
from .congruences import DEFAULT_CONGRUENCE_CAP
from .errors import MalformedTable, MonoidMismatch
from .monoid import FiniteMonoid


def check_monoid(M) -> FiniteMonoid:
    if not isinstance(M, FiniteMonoid):
        raise TypeError(f"expected a FiniteMonoid, got {type(M).__name__}")
    return M


def check_msets(X, M: FiniteMonoid, validate_axioms: bool = True) -> list[PartialMSet]:
    if isinstance(X, PartialMSet):
        X = [X]
    out = []
    for i, Y in enumerate(X):
        if not isinstance(Y, PartialMSet):
            raise TypeError(f"item {i} is not a PartialMSet")
        if Y.monoid is not M:
            raise MonoidMismatch(f"item {i} is over a different monoid")
        if validate_axioms:
            report = validate(Y)
            if not report:
                raise MalformedTable(f"item {i} violates {report.axiom} at {report.witness}")
        out.append(Y)
    return out


class BurnsideRing(BaseEstimator, TransformerMixin):
    """Fit computes the strong-orbit basis; transform gives [X] coordinates."""

    def __init__(self, congruence_cap: int = DEFAULT_CONGRUENCE_CAP, validate: bool = True):
        self.congruence_cap = congruence_cap
        self.validate = validate

    def fit(self, X, y=None):
        self.monoid_ = check_monoid(X)
        self.basis_ = compute_basis(self.monoid_, self.congruence_cap)
        self.n_features_out_ = len(self.basis_)
        return self

    def transform(self, X):
        check_is_fitted(self, "basis_")
        msets = check_msets(X, self.monoid_, self.validate)
        return np.array([class_of(Y, self.basis_).coeffs for Y in msets], dtype=np.int64).reshape(
            len(msets), self.n_features_out_
        )


class MarksTransformer(BurnsideRing):
    """transform gives (|Lax(O, X)|) over the basis classes."""

    def fit(self, X, y=None):
        super().fit(X, y)
        self.marks_ = marks_table(self.basis_)
        return self

    def transform(self, X):
        check_is_fitted(self, "marks_")
        msets = check_msets(X, self.monoid_, self.validate)
        return np.array([marks_vector(Y, self.basis_) for Y in msets], dtype=np.int64).reshape(
            len(msets), self.n_features_out_
        )
