"""Multi-start Nelder-Mead fitting of closure parameters."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Any

import numpy as np
from scipy.optimize import minimize

from porebench.closure.loss import LossKind, check_targets, loss_from_residuals, residuals
from porebench.closure.models import ClosureModel
from porebench.closure.samples import SampleSet
from porebench.exceptions import NonFiniteLossError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class FitOptions:
    """Optimizer settings.

    Unbounded parameters draw their start points from ``start_box``; the
    initial simplex edges are ``initial_step`` times the sampling box width.
    ``xtol`` and ``ftol`` become scipy's ``xatol`` and ``fatol``; a start
    converges only once both hold, otherwise it stops at ``max_iter``.
    """

    n_starts: int = 8
    xtol: float = 1e-8
    ftol: float = 1e-10
    max_iter: int = 10_000
    seed: int = 0
    start_box: tuple[float, float] = (-1.0, 1.0)
    initial_step: float = 0.1


@dataclass(slots=True)
class ClosureFit:
    model: str
    alpha: tuple[float, ...]
    loss_value: float
    loss_kind: LossKind
    n_iterations: int
    n_evaluations: int
    converged: bool
    residuals: tuple[float, ...]
    underdetermined: bool = False
    failed_starts: int = 0

    def to_dict(self) -> dict[str, Any]:
        return {
            "model": self.model,
            "alpha": list(self.alpha),
            "loss_value": self.loss_value,
            "loss_kind": self.loss_kind.value,
            "n_iterations": self.n_iterations,
            "n_evaluations": self.n_evaluations,
            "converged": self.converged,
            "residuals": list(self.residuals),
            "underdetermined": self.underdetermined,
            "failed_starts": self.failed_starts,
        }


def _sampling_box(model: ClosureModel, options: FitOptions) -> np.ndarray:
    box = np.tile(np.array(options.start_box, dtype=np.float64), (model.n_params, 1))
    for index, bound in enumerate(model.bounds or ()):
        if bound is None:
            continue
        low, high = bound
        if math.isfinite(low) and math.isfinite(high):
            box[index] = (low, high)
    return box


def _initial_simplexes(model: ClosureModel, options: FitOptions) -> list[np.ndarray]:
    rng = np.random.default_rng(options.seed)
    box = _sampling_box(model, options)
    low, high = box[:, 0], box[:, 1]
    width = high - low
    simplexes: list[np.ndarray] = []
    for start in range(max(1, options.n_starts)):
        x0 = (low + high) / 2 if start == 0 else rng.uniform(low, high)
        step = options.initial_step * np.where(width > 0, width, 1.0)
        step = np.where(x0 + step > high, -step, step)
        simplex = np.vstack([x0, x0 + np.diag(step)])
        simplexes.append(simplex)
    return simplexes


def fit(
    model: ClosureModel,
    samples: SampleSet,
    loss_kind: LossKind = LossKind.MSE,
    options: FitOptions | None = None,
) -> ClosureFit:
    """Best of ``options.n_starts`` simplex searches.

    A start whose loss turns non-finite is abandoned; ``NonFiniteLossError`` is
    raised only when every start is abandoned.
    """
    options = options or FitOptions()
    check_targets(samples, loss_kind)
    underdetermined = len(samples) < model.n_params
    if underdetermined:
        logger.warning(
            "Fit of %s is underdetermined: %d samples for %d parameters",
            model.name,
            len(samples),
            model.n_params,
        )

    evaluations = 0

    def objective(alpha: np.ndarray) -> float:
        nonlocal evaluations
        evaluations += 1
        value = loss_from_residuals(residuals(model, alpha, samples), samples.targets, loss_kind)
        if not math.isfinite(value):
            raise NonFiniteLossError(f"{model.name} gives a non-finite loss at alpha={alpha.tolist()}")
        return value

    bounds = None
    if model.bounds is not None:
        bounds = [bound if bound is not None else (None, None) for bound in model.bounds]

    best: tuple[float, np.ndarray, int, bool] | None = None
    failed = 0
    for index, simplex in enumerate(_initial_simplexes(model, options)):
        try:
            if options.max_iter <= 0:
                candidate = (objective(simplex[0]), simplex[0], 0, False)
            else:
                result = minimize(
                    objective,
                    simplex[0],
                    method="Nelder-Mead",
                    bounds=bounds,
                    options={
                        "xatol": options.xtol,
                        "fatol": options.ftol,
                        "maxiter": options.max_iter,
                        "initial_simplex": simplex,
                    },
                )
                candidate = (float(result.fun), np.asarray(result.x), int(result.nit), bool(result.success))
        except NonFiniteLossError as exc:
            failed += 1
            logger.info("Abandoned start %d of %s: %s", index, model.name, exc)
            continue
        if best is None or candidate[0] < best[0]:
            best = candidate

    if best is None:
        raise NonFiniteLossError(f"all {failed} starts of {model.name} produced non-finite losses")

    loss_value, alpha, iterations, converged = best
    return ClosureFit(
        model=model.name,
        alpha=tuple(float(a) for a in alpha),
        loss_value=loss_value,
        loss_kind=loss_kind,
        n_iterations=iterations,
        n_evaluations=evaluations,
        converged=converged,
        residuals=tuple(float(r) for r in residuals(model, alpha, samples)),
        underdetermined=underdetermined,
        failed_starts=failed,
    )
