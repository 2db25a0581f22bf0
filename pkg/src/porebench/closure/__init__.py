"""Closure parameter fitting on averaged variation data."""

from porebench.closure.fit import ClosureFit, FitOptions, fit
from porebench.closure.loss import LossKind, loss, residuals
from porebench.closure.models import (
    ClosureModel,
    ModelFactory,
    build_model_registry,
    constant_model,
    linear_model,
    power_model,
    quadratic_model,
)
from porebench.closure.samples import SampleSet, closure_residual_data

__all__ = [
    "ClosureFit",
    "ClosureModel",
    "FitOptions",
    "LossKind",
    "ModelFactory",
    "SampleSet",
    "build_model_registry",
    "closure_residual_data",
    "constant_model",
    "fit",
    "linear_model",
    "loss",
    "power_model",
    "quadratic_model",
    "residuals",
]
