"""Parametric closure models F(alpha, features) and their registry."""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass

import numpy as np

from porebench.core.registry import Registry

ModelFunc = Callable[[np.ndarray, np.ndarray], np.ndarray]
Bounds = tuple[tuple[float, float] | None, ...]


@dataclass(frozen=True, slots=True)
class ClosureModel:
    """Vectorized model: ``func(alpha, features)`` maps an ``(n, k)`` feature
    matrix to ``n`` predictions."""

    name: str
    n_params: int
    func: ModelFunc
    bounds: Bounds | None = None
    description: str = ""

    def predict(self, alpha: np.ndarray, features: np.ndarray) -> np.ndarray:
        alpha = np.asarray(alpha, dtype=np.float64)
        if alpha.shape != (self.n_params,):
            raise ValueError(f"{self.name} expects {self.n_params} parameters, got {alpha.shape}")
        features = np.atleast_2d(np.asarray(features, dtype=np.float64))
        return np.asarray(self.func(alpha, features), dtype=np.float64).reshape(len(features))


@dataclass(frozen=True, slots=True)
class ModelFactory:
    """Builds a ClosureModel for a given feature count."""

    name: str
    description: str
    build: Callable[[int], ClosureModel]


def constant_model(n_features: int = 0) -> ClosureModel:
    return ClosureModel(
        name="constant",
        n_params=1,
        func=lambda alpha, x: np.full(len(x), alpha[0]),
        description="F = a0",
    )


def linear_model(n_features: int = 1) -> ClosureModel:
    def func(alpha: np.ndarray, x: np.ndarray) -> np.ndarray:
        return alpha[0] + x[:, :n_features] @ alpha[1:]

    return ClosureModel(
        name="linear",
        n_params=n_features + 1,
        func=func,
        description="F = a0 + sum(a_i * x_i)",
    )


def power_model(n_features: int = 1) -> ClosureModel:
    """``a0 * x0 ** a1``; non-positive features give non-finite predictions."""

    def func(alpha: np.ndarray, x: np.ndarray) -> np.ndarray:
        with np.errstate(all="ignore"):
            return alpha[0] * np.power(x[:, 0], alpha[1])

    return ClosureModel(
        name="power",
        n_params=2,
        func=func,
        description="F = a0 * x0 ** a1",
    )


def quadratic_model(n_features: int = 1) -> ClosureModel:
    def func(alpha: np.ndarray, x: np.ndarray) -> np.ndarray:
        return alpha[0] + alpha[1] * x[:, 0] + alpha[2] * x[:, 0] ** 2

    return ClosureModel(
        name="quadratic",
        n_params=3,
        func=func,
        description="F = a0 + a1 * x0 + a2 * x0 ** 2",
    )


def build_model_registry() -> Registry[ModelFactory]:
    """Registry of the built-in closure model forms."""
    registry: Registry[ModelFactory] = Registry("closure model")
    for build in (constant_model, linear_model, power_model, quadratic_model):
        sample = build(1)
        registry.register(ModelFactory(name=sample.name, description=sample.description, build=build))
    return registry
