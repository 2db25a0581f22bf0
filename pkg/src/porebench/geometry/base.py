"""Generator abstractions."""

from __future__ import annotations

import logging
from abc import ABC, abstractmethod
from typing import Any

from porebench.exceptions import InvalidSpecError
from porebench.geometry.image import DEFAULT_RESOLUTION, GeneratorKind, GeneratorSpec, PoreImage

logger = logging.getLogger(__name__)


class BaseGenerator(ABC):
    """Abstract base class for all geometry generators."""

    name: str
    description: str

    @abstractmethod
    def _build(self, spec: GeneratorSpec, width: int, height: int) -> PoreImage:
        """Produce the raster for an already validated spec."""

    def generate(
        self,
        spec: GeneratorSpec,
        width: int = DEFAULT_RESOLUTION,
        height: int = DEFAULT_RESOLUTION,
    ) -> PoreImage:
        """Validate the spec against this generator and build the image."""
        if spec.kind is not GeneratorKind(self.name):
            raise InvalidSpecError(f"Generator '{self.name}' cannot build kind '{spec.kind.value}'")
        if width < 1 or height < 1:
            raise InvalidSpecError(f"Image dimensions must be positive, got {width}x{height}")
        image = self._build(spec, width, height)
        logger.info(
            "Generated %s %dx%d (seed=%d, porosity=%.4f)",
            self.name,
            width,
            height,
            spec.rng_seed,
            image.void_count / image.total_count,
        )
        return image

    def schema(self) -> dict[str, Any]:
        """Optional runtime schema metadata."""
        return {
            "name": self.name,
            "description": self.description,
        }
