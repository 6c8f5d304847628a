"""Entropic updating of a prior under expectation constraints.

The posterior has the Gibbs form ``p = q exp(-sum_k beta_k f_k) / Z``.  The
multipliers are found by minimizing the convex dual

    g(beta) = log Z(beta) + beta . kappa

with Newton steps and backtracking, starting from ``beta = 0`` (the prior).
The gradient of ``g`` is ``kappa - <f>_p`` and its Hessian is the
covariance of ``f`` under ``p``.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from .dist import JointDistribution, Partition, condition
from .errors import AxisMismatch, InfeasibleConstraint, NotConverged, ShapeMismatch
from .functionals import npartite_information

__all__ = [
    "MomentConstraint",
    "MaxEntResult",
    "maxent_update",
    "bayes_update",
    "correlation_delta",
]

log = logging.getLogger(__name__)

_MAX_HALVINGS = 60
_ARMIJO = 1e-4
_MAX_LOG_STEP = 4.0
_RESOLVE = 64 * np.finfo(float).eps


@dataclass(frozen=True, eq=False)
class MomentConstraint:
    """Expectation constraint ``<f> = target`` with ``f`` tabulated row-major."""

    values: np.ndarray
    target: float

    def __post_init__(self) -> None:
        values = np.array(self.values, dtype=float).reshape(-1)
        if not np.all(np.isfinite(values)):
            raise ShapeMismatch("constraint values must be finite")
        values.flags.writeable = False
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "target", float(self.target))


@dataclass(frozen=True)
class MaxEntResult:
    posterior: JointDistribution
    multipliers: tuple[float, ...]
    residuals: tuple[float, ...]
    iterations: int
    converged: bool


def _check_feasible(f: np.ndarray, target: float, tolerance: float, k: int) -> None:
    lo, hi = float(f.min()), float(f.max())
    if lo == hi:
        if abs(target - lo) > tolerance:
            raise InfeasibleConstraint(f"constraint {k}: f is constant {lo!r} on the support, target {target!r}")
    elif not lo < target < hi:
        raise InfeasibleConstraint(
            f"constraint {k}: target {target!r} outside the open range ({lo!r}, {hi!r})"
        )


class _Dual:
    def __init__(self, q: np.ndarray, F: np.ndarray, kappa: np.ndarray):
        self.logq = np.log(q)
        self.F = F
        self.kappa = kappa

    def weights(self, beta: np.ndarray) -> tuple[np.ndarray, float]:
        s = self.logq - self.F @ beta
        shift = float(s.max())
        w = np.exp(s - shift)
        total = math.fsum(w.tolist())
        return w / total, shift + math.log(total)

    def objective(self, beta: np.ndarray) -> float:
        _, log_z = self.weights(beta)
        return log_z + float(beta @ self.kappa)

    def moments(self, p: np.ndarray) -> np.ndarray:
        return np.array([math.fsum((p * col).tolist()) for col in self.F.T])


def maxent_update(
    prior: JointDistribution,
    constraints: Sequence[MomentConstraint],
    tolerance: float = 1e-10,
    max_iterations: int = 200,
    strict: bool = False,
) -> MaxEntResult:
    """Closest distribution to ``prior`` in relative entropy that meets ``constraints``.

    Cells with zero prior stay at zero.  When the iteration cap is hit the
    best iterate is returned with ``converged=False``; pass ``strict=True``
    to raise :class:`NotConverged` instead.
    """
    constraints = list(constraints)
    if not constraints:
        return MaxEntResult(prior, (), (), 0, True)
    q_all = prior.probs
    for k, c in enumerate(constraints):
        if c.values.size != q_all.size:
            raise ShapeMismatch(
                f"constraint {k} has {c.values.size} values, prior has {q_all.size} cells"
            )
    support = q_all > 0
    F = np.column_stack([c.values[support] for c in constraints])
    kappa = np.array([c.target for c in constraints])
    for k in range(len(constraints)):
        _check_feasible(F[:, k], kappa[k], tolerance, k)

    dual = _Dual(q_all[support], F, kappa)
    beta = np.zeros(len(constraints))
    p, _ = dual.weights(beta)
    resid = dual.moments(p) - kappa
    it = 0
    while np.max(np.abs(resid)) > tolerance and it < max_iterations:
        it += 1
        grad = -resid
        centered = F - dual.moments(p)
        hess = centered.T @ (centered * p[:, None])
        step = np.linalg.lstsq(hess, -grad, rcond=None)[0]
        slope = float(grad @ step)
        if not np.isfinite(slope) or slope >= 0:
            # Hessian numerically singular along the gradient: steepest descent
            step = -grad
            slope = float(grad @ step)
        # bound the change of any cell's log-weight per iteration
        reach = float(np.max(np.abs(F @ step)))
        if reach > _MAX_LOG_STEP:
            step = step * (_MAX_LOG_STEP / reach)
            slope = float(grad @ step)
        g0 = dual.objective(beta)
        worst = float(np.max(np.abs(resid)))
        # predicted decrease below the objective's rounding: judge by the residual
        flat = -slope <= _RESOLVE * (1.0 + abs(g0))
        t = 1.0
        for _ in range(_MAX_HALVINGS):
            trial = beta + t * step
            p_trial, _ = dual.weights(trial)
            r_trial = dual.moments(p_trial) - kappa
            if dual.objective(trial) <= g0 + _ARMIJO * t * slope:
                break
            if flat and np.max(np.abs(r_trial)) < worst:
                break
            t *= 0.5
        beta, p, resid = trial, p_trial, r_trial
        log.debug("maxent iter %d: step %.3g, max|resid| %.3g", it, t, np.max(np.abs(resid)))

    converged = bool(np.max(np.abs(resid)) <= tolerance)
    if not np.any(beta):
        posterior = prior
    else:
        full = np.zeros(q_all.size)
        full[support] = p
        posterior = JointDistribution._wrap(prior.axes, full.reshape(prior.shape))
    result = MaxEntResult(
        posterior,
        tuple(float(b) for b in beta),
        tuple(float(r) for r in resid),
        it,
        converged,
    )
    if strict and not converged:
        raise NotConverged(f"no convergence after {it} iterations", result)
    return result


def bayes_update(dist: JointDistribution, observed_axis, observed_label: str) -> JointDistribution:
    """Bayes' rule as the special case of updating on an observed value."""
    return condition(dist, observed_axis, observed_label)


def correlation_delta(before: JointDistribution, after: JointDistribution, partition: Partition) -> float:
    """Signed change ``NPI(after) - NPI(before)`` under ``partition``."""
    if before.axes != after.axes:
        raise AxisMismatch("correlation_delta needs identical axes")
    return npartite_information(after, partition) - npartite_information(before, partition)
