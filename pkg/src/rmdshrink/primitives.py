"""Order-statistic and matrix primitives the estimators are built from."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import cho_solve
from scipy.special import gammaincinv

# Variance adjustment for median-of-products scale estimates under
# normality: 1 / Phi^{-1}(3/4)^2, rounded to four significant figures.
COMEDIAN_ADJUST = 2.198

# Relative pivot floor below which a factorization counts as singular.
_PIVOT_RTOL = 1e-12


def as_data_matrix(data) -> np.ndarray:
    """Validate and return an n x p float matrix (rows are observations)."""
    arr = np.asarray(data, dtype=float)
    if arr.ndim != 2 or arr.size == 0:
        raise ValueError("data must be a nonempty 2-D array of shape (n, p)")
    if not np.isfinite(arr).all():
        raise ValueError("data contains NaN or infinite entries")
    return arr


def median(values) -> float:
    """Univariate median; even lengths average the two middle order statistics."""
    arr = np.asarray(values, dtype=float).ravel()
    if arr.size == 0:
        raise ValueError("empty sample")
    if not np.isfinite(arr).all():
        raise ValueError("sample contains NaN or infinite entries")
    return float(np.median(arr))


def mad(values) -> float:
    """Median absolute deviation from the median, unscaled."""
    arr = np.asarray(values, dtype=float).ravel()
    if arr.size == 0:
        raise ValueError("empty sample")
    if not np.isfinite(arr).all():
        raise ValueError("sample contains NaN or infinite entries")
    m = np.median(arr)
    return float(np.median(np.abs(arr - m)))


def comedian(data, center) -> np.ndarray:
    """Entrywise median of cross products of centered columns.

    Entry (j, t) is the median over rows of
    (x[i, j] - center[j]) * (x[i, t] - center[t]). With the component-wise
    median as center, the diagonal reduces to squared MADs.
    """
    X = as_data_matrix(data)
    c = np.asarray(center, dtype=float).ravel()
    if c.shape[0] != X.shape[1]:
        raise ValueError("center length does not match number of columns")
    if not np.isfinite(c).all():
        raise ValueError("center contains NaN or infinite entries")
    Y = X - c
    return np.median(Y[:, :, None] * Y[:, None, :], axis=0)


def adjusted_comedian(data, center) -> np.ndarray:
    """Comedian scaled so diagonals estimate variances under normality."""
    return COMEDIAN_ADJUST * comedian(data, center)


def chi2_quantile(dof: int, prob: float) -> float:
    """Chi-squared quantile through the inverse regularized incomplete gamma."""
    if int(dof) != dof or dof < 1:
        raise ValueError("dof must be a positive integer")
    if not 0.0 < prob < 1.0:
        raise ValueError("prob must lie strictly inside (0, 1)")
    return float(2.0 * gammaincinv(dof / 2.0, prob))


@dataclass(frozen=True)
class PDMatrix:
    """Symmetric positive-definite matrix with its cached lower factor."""

    entries: np.ndarray
    factor: np.ndarray

    @classmethod
    def from_symmetric(cls, entries) -> "PDMatrix":
        m = np.asarray(entries, dtype=float)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.size == 0:
            raise ValueError("expected a nonempty square matrix")
        if not np.isfinite(m).all():
            raise ValueError("matrix contains NaN or infinite entries")
        if not np.array_equal(m, m.T):
            scale = max(1.0, float(np.abs(m).max()))
            if not np.allclose(m, m.T, rtol=0.0, atol=1e-12 * scale):
                raise ValueError("matrix is not symmetric")
            m = 0.5 * (m + m.T)
        try:
            factor = np.linalg.cholesky(m)
        except np.linalg.LinAlgError:
            raise ValueError("matrix is not positive definite") from None
        pivot_floor = _PIVOT_RTOL * float(np.max(np.diag(m)))
        if float(np.min(np.diag(factor)) ** 2) <= pivot_floor:
            raise ValueError("matrix is not positive definite within pivot tolerance")
        return cls(entries=m, factor=factor)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]


def quad_form(m: PDMatrix, y) -> float:
    """Evaluate y' M^{-1} y through triangular solves on the cached factor."""
    v = np.asarray(y, dtype=float).ravel()
    if v.shape[0] != m.dim:
        raise ValueError("vector length does not match matrix dimension")
    sol = cho_solve((m.factor, True), v)
    return float(v @ sol)


def quad_form_rows(m: PDMatrix, rows) -> np.ndarray:
    """quad_form applied to every row of a matrix at once."""
    R = np.asarray(rows, dtype=float)
    if R.ndim != 2 or R.shape[1] != m.dim:
        raise ValueError("row width does not match matrix dimension")
    sol = cho_solve((m.factor, True), R.T)
    return np.einsum("ij,ji->i", R, sol)
