"""Mismatch between averaged variation targets and closure predictions."""

from __future__ import annotations

from enum import Enum

import numpy as np

from porebench.closure.models import ClosureModel
from porebench.closure.samples import SampleSet
from porebench.exceptions import MapeZeroTargetError


class LossKind(str, Enum):
    MSE = "mse"
    MAPE = "mape"


def residuals(model: ClosureModel, alpha: np.ndarray, samples: SampleSet) -> np.ndarray:
    """``target - F(alpha, features)`` per sample."""
    return samples.targets - model.predict(alpha, samples.features)


def check_targets(samples: SampleSet, kind: LossKind) -> None:
    if len(samples) == 0:
        raise ValueError("loss needs at least one sample")
    if kind is LossKind.MAPE and np.any(samples.targets == 0):
        zero = int(np.count_nonzero(samples.targets == 0))
        raise MapeZeroTargetError(f"MAPE is undefined for {zero} sample(s) with zero target")


def loss_from_residuals(residual: np.ndarray, targets: np.ndarray, kind: LossKind) -> float:
    if kind is LossKind.MSE:
        return float(np.mean(residual**2))
    return float(np.mean(np.abs(residual / targets)) * 100.0)


def loss(
    model: ClosureModel,
    alpha: np.ndarray,
    samples: SampleSet,
    kind: LossKind = LossKind.MSE,
) -> float:
    """Mean squared error, or mean absolute percentage error in percent."""
    check_targets(samples, kind)
    return loss_from_residuals(residuals(model, alpha, samples), samples.targets, kind)
