"""Robust multivariate location estimators and their shrinkage versions."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .primitives import adjusted_comedian, as_data_matrix

# Norm floor below which a centered observation carries no direction
# information and is skipped by the sandwich averages.
_NORM_FLOOR = 1e-12

# Denominator floor: the raw estimator already sits on its shrinkage
# target, so the intensity is immaterial and pinned at 1.
_TARGET_FLOOR = 1e-12


@dataclass(frozen=True)
class LocationEstimate:
    """A p-vector center plus its method tag and shrinkage metadata."""

    center: np.ndarray
    method: str
    eta: float | None = None
    nu_mu: float | None = None


def ccm_median(data) -> LocationEstimate:
    """Component-wise median of the rows."""
    X = as_data_matrix(data)
    return LocationEstimate(center=np.median(X, axis=0), method="ccm")


def _medoid_index(X: np.ndarray) -> int:
    # Mean L1 distance from each sample point to the whole sample, via
    # per-column prefix sums in O(p n log n). argmin returns the first
    # minimum, which is the lowest-index tie-break.
    n = X.shape[0]
    objective = np.zeros(n)
    for col in X.T:
        order = np.sort(col)
        pref = np.concatenate(([0.0], np.cumsum(order)))
        total = pref[-1]
        k = np.searchsorted(order, col, side="left")
        below = col * k - pref[k]
        above = (total - pref[k]) - col * (n - k)
        objective += below + above
    return int(np.argmin(objective))


def _weiszfeld(X: np.ndarray, tol: float = 1e-10, max_iter: int = 500) -> np.ndarray:
    # Euclidean geometric median with the standard handling of iterates
    # that land on data points.
    y = X.mean(axis=0)
    for _ in range(max_iter):
        d = np.linalg.norm(X - y, axis=1)
        at_point = d < _NORM_FLOOR
        d = np.where(at_point, np.inf, d)
        w = 1.0 / d
        t = (X * w[:, None]).sum(axis=0) / w.sum()
        if at_point.any():
            pull = np.linalg.norm(((X - y) * w[:, None]).sum(axis=0))
            multiplicity = float(at_point.sum())
            if pull <= multiplicity:
                return y
            step = min(1.0, multiplicity / pull)
            t = (1.0 - step) * t + step * y
        if np.linalg.norm(t - y) <= tol * (1.0 + np.linalg.norm(y)):
            return t
        y = t
    return y


def l1_median(data, mode: str = "medoid") -> LocationEstimate:
    """Multivariate median minimizing mean distance to the sample.

    The default evaluates the mean L1-norm objective over the sample points
    themselves and returns the minimizing observation (lowest row index on
    ties). mode="geometric" instead iterates to the continuous Euclidean
    geometric median.
    """
    X = as_data_matrix(data)
    if mode == "medoid":
        center = X[_medoid_index(X)].copy()
    elif mode == "geometric":
        center = _weiszfeld(X)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return LocationEstimate(center=center, method="mm")


def sandwich_trace(data, center) -> float:
    """Variance proxy for the multivariate median from its asymptotics.

    Averages A(y) = (1/|y|)(I - y y'/|y|^2) and B(y) = y y'/|y|^2 over the
    centered observations, skipping near-zero norms, and returns
    trace((1/n) A^{-1} B A^{-1}).
    """
    X = as_data_matrix(data)
    c = np.asarray(center, dtype=float).ravel()
    n, p = X.shape
    if c.shape[0] != p:
        raise ValueError("center length does not match number of columns")
    if n < p:
        raise ValueError("need at least as many observations as dimensions")
    Y = X - c
    norms = np.linalg.norm(Y, axis=1)
    keep = norms > _NORM_FLOOR
    m = int(keep.sum())
    if m == 0:
        raise ValueError("degenerate direction distribution")
    Yk = Y[keep]
    r = norms[keep]
    U = Yk / r[:, None]
    B = (U.T @ U) / m
    A = (np.sum(1.0 / r) * np.eye(p) - (Yk / r[:, None] ** 3).T @ Yk) / m
    if np.linalg.cond(A) > 1e12:
        raise ValueError("degenerate direction distribution")
    half = np.linalg.solve(A, B)
    inner = np.linalg.solve(A, half.T)
    return float(np.trace(inner)) / n


def _shrink_toward_common(mu: np.ndarray, numerator: float) -> tuple[np.ndarray, float, float]:
    nu = float(mu.mean())
    gap = mu - nu
    denom = float(gap @ gap)
    if denom <= _TARGET_FLOOR:
        eta = 1.0
    else:
        eta = min(max(numerator / denom, 0.0), 1.0)
    return (1.0 - eta) * mu + eta * nu, eta, nu


def shrink_ccm(data) -> LocationEstimate:
    """Shrink the component-wise median toward an equal-coordinate vector.

    The intensity balances a variance proxy for the component-wise median
    (adjusted-comedian trace scaled by pi/2n) against the squared distance
    to the target nu * ones.
    """
    X = as_data_matrix(data)
    n = X.shape[0]
    if n < 2:
        raise ValueError("need at least two observations")
    mu = np.median(X, axis=0)
    S = adjusted_comedian(X, mu)
    numerator = math.pi / (2.0 * n) * float(np.trace(S))
    center, eta, nu = _shrink_toward_common(mu, numerator)
    return LocationEstimate(center=center, method="shrink_ccm", eta=eta, nu_mu=nu)


def shrink_mm(data, mode: str = "medoid") -> LocationEstimate:
    """Shrink the multivariate median toward an equal-coordinate vector."""
    X = as_data_matrix(data)
    mu = l1_median(X, mode=mode).center
    numerator = sandwich_trace(X, mu)
    center, eta, nu = _shrink_toward_common(mu, numerator)
    return LocationEstimate(center=center, method="shrink_mm", eta=eta, nu_mu=nu)
