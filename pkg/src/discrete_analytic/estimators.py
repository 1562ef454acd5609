"""scikit-learn style wrappers around the factorial transform and the extension.

Only the two operations that take samples in and give samples out are
wrapped; the rest of the library is functional.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .basis import fourier_1d, inverse_fourier_1d
from .gaussian import as_gr
from .zeta import zeta_coefficients

__all__ = ["FactorialFourierTransformer", "DiscreteAnalyticExtension"]


def _validate(X, **kw):
    # check_array refuses complex input, which is valid here
    arr = np.asarray(X)
    if np.iscomplexobj(arr):
        if arr.ndim != 2:
            raise ValueError(f"expected a 2D array, got shape {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise ValueError("input contains NaN or infinity")
        return arr
    return check_array(X, dtype=None, **kw)


def _to_exact(row):
    return [as_gr(complex(v)) if np.iscomplexobj(v) else as_gr(float(v)) for v in row]


class FactorialFourierTransformer(TransformerMixin, BaseEstimator):
    """Row-wise ``f -> f_hat``: each row holds ``f(0), ..., f(N-1)``.

    The transform is exact on the binary values of the input floats and is
    rounded back to floats at the end, unless ``exact=True`` in which case an
    object array of Gaussian rationals is returned.
    """

    def __init__(self, exact: bool = False):
        self.exact = exact

    def fit(self, X, y=None):
        X = _validate(X, ensure_min_features=1)
        self.n_features_in_ = X.shape[1]
        self.complex_ = bool(np.iscomplexobj(X))
        return self

    def _convert(self, rows):
        if self.exact:
            return np.array(rows, dtype=object)
        dtype = complex if self.complex_ else float
        conv = complex if self.complex_ else (lambda v: complex(v).real)
        return np.array([[conv(v) for v in row] for row in rows], dtype=dtype)

    def transform(self, X):
        check_is_fitted(self, "n_features_in_")
        X = _validate(X)
        if X.shape[1] != self.n_features_in_:
            raise ValueError(f"expected {self.n_features_in_} columns, got {X.shape[1]}")
        rows = []
        for row in X:
            c = fourier_1d(_to_exact(row))
            rows.append([c[n] for n in range(X.shape[1])])
        return self._convert(rows)

    def inverse_transform(self, C):
        check_is_fitted(self, "n_features_in_")
        C = np.asarray(C)
        rows = []
        for row in C:
            exact = list(row) if C.dtype == object else _to_exact(row)
            rows.append([inverse_fourier_1d(exact, x) for x in range(C.shape[1])])
        return self._convert(rows)


class DiscreteAnalyticExtension(BaseEstimator):
    """Fit on samples of ``f(x, 0)`` at ``x = 0..N``; predict the extension at ``(x, y)``.

    ``max_degree`` truncates the zeta-series; by default every sample is used,
    which reproduces the samples exactly on the axis.
    """

    def __init__(self, max_degree=None):
        self.max_degree = max_degree

    def fit(self, X, y):
        X = check_array(X, dtype=None, ensure_2d=False).reshape(-1)
        y = np.asarray(y).reshape(-1)
        if len(X) != len(y):
            raise ValueError("X and y have different lengths")
        xs = [int(v) for v in X]
        if sorted(xs) != list(range(len(xs))):
            raise ValueError("fit needs samples at x = 0, 1, ..., N exactly once")
        order = np.argsort(xs)
        values = _to_exact(y[order])
        coeffs = fourier_1d(values)
        top = len(values) - 1 if self.max_degree is None else min(self.max_degree, len(values) - 1)
        self.coef_ = tuple(coeffs[n] for n in range(top + 1))
        self.n_features_in_ = 1
        return self

    def predict_exact(self, P):
        check_is_fitted(self, "coef_")
        P = check_array(P, dtype=None)
        if P.shape[1] != 2:
            raise ValueError("predict expects (x, y) pairs")
        out = []
        for x, yv in P:
            acc = as_gr(0)
            for n, c in enumerate(self.coef_):
                if c:
                    acc = acc + c * zeta_coefficients(n)(int(x), int(yv))
            out.append(acc)
        return np.array(out, dtype=object)

    def predict(self, P):
        return np.array([complex(v) for v in self.predict_exact(P)], dtype=complex)
