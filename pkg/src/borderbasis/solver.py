"""Dense kernel: smallest vanishing direction under a weighted unit constraint.

Solves min ||M v||^2 subject to sum_i d_i^2 v_i^2 = 1 where the d_i are
non-negative weights. Coordinates with d_i = 0 (the constant-term column in
basis computation) are unconstrained and are eliminated first by orthogonal
projection; the reduced problem is solved by an SVD of the projected,
weight-scaled matrix. This is the exact limit of the generalized eigenproblem
(M^T M, diag(d)^2) as the singular weights tend to zero, and coincides with
the finite eigenpairs of that singular pencil.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class DegenerateProblemError(ValueError):
    """All weights are zero: the constraint set is empty."""


@dataclass(frozen=True)
class ConstrainedMinProblem:
    """Objective matrix (N x m) and the m non-negative constraint weights."""

    matrix: np.ndarray
    weights: np.ndarray

    def __post_init__(self) -> None:
        m = np.asarray(self.matrix, dtype=float)
        d = np.asarray(self.weights, dtype=float)
        if m.ndim != 2:
            raise ValueError(f"matrix must be 2-D, got shape {m.shape}")
        if d.ndim != 1 or d.shape[0] != m.shape[1]:
            raise ValueError("weight length must equal matrix column count")
        if not np.all(np.isfinite(m)) or not np.all(np.isfinite(d)):
            raise ValueError("non-finite entries")
        if np.any(d < 0):
            raise ValueError("weights must be non-negative")
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "weights", d)


@dataclass(frozen=True)
class MinSolution:
    """Smallest objective value and its coefficient vector.

    ``objective`` is ||M v||^2 at the optimum (clamped at 0); ``coefficients``
    satisfies the weighted unit constraint and the deterministic sign rule
    (first nonzero entry positive).
    """

    objective: float
    coefficients: np.ndarray


def _sign_normalize(v: np.ndarray) -> np.ndarray:
    for x in v:
        if x != 0.0:
            return -v if x < 0.0 else v
    return v


def smallest_constrained_vanisher(problem: ConstrainedMinProblem) -> MinSolution:
    """Minimize ||M v||^2 over the ellipsoid v^T diag(d)^2 v = 1.

    Zero-weight coordinates are free: the optimum over them is the least
    squares complement of the constrained part.
    """
    M, d = problem.matrix, problem.weights
    pos = d > 0.0
    if not np.any(pos):
        raise DegenerateProblemError("all constraint weights are zero")
    P = np.where(pos)[0]
    Z = np.where(~pos)[0]

    B = M[:, P] / d[P]
    if Z.size:
        MZ = M[:, Z]
        coef, *_ = np.linalg.lstsq(MZ, B, rcond=None)
        B = B - MZ @ coef
    # full_matrices so that for wide B the exact null space is reachable
    _, sv, Vt = np.linalg.svd(B, full_matrices=True)
    lam = float(max(sv[-1] ** 2, 0.0)) if sv.shape[0] == B.shape[1] else 0.0
    w = Vt[-1]

    v = np.zeros(M.shape[1])
    v[P] = w / d[P]
    if Z.size:
        MZ = M[:, Z]
        cz, *_ = np.linalg.lstsq(MZ, M[:, P] @ v[P], rcond=None)
        v[Z] = -cz
    return MinSolution(objective=lam, coefficients=_sign_normalize(v))


def smallest_singular_direction(M: np.ndarray) -> MinSolution:
    """Right singular vector of the smallest singular value; objective = sigma_min^2."""
    M = np.asarray(M, dtype=float)
    if M.ndim != 2:
        raise ValueError(f"matrix must be 2-D, got shape {M.shape}")
    if not np.all(np.isfinite(M)):
        raise ValueError("non-finite entries")
    _, sv, Vt = np.linalg.svd(M, full_matrices=True)
    ncols = M.shape[1]
    # with fewer rows than columns the trailing right singular vectors span
    # the exact null space; sigma_min is then 0
    lam = float(sv[-1] ** 2) if sv.shape[0] == ncols else 0.0
    v = Vt[-1]
    return MinSolution(objective=max(lam, 0.0), coefficients=_sign_normalize(v))
