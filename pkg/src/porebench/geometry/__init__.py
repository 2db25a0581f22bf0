"""Pore geometry rasters, generators and raster I/O."""

from porebench.core.registry import Registry
from porebench.geometry.base import BaseGenerator
from porebench.geometry.image import (
    DEFAULT_RESOLUTION,
    SHAPE_KINDS,
    GeneratorKind,
    GeneratorSpec,
    PoreImage,
)
from porebench.geometry.noise import NoiseGenerator, generate_noise
from porebench.geometry.raster import read_raster, write_raster
from porebench.geometry.shapes import ShapeGenerator, generate_shape
from porebench.geometry.voronoi import VoronoiGenerator, generate_voronoi


def build_generator_registry() -> Registry[BaseGenerator]:
    """Registry holding one generator per kind."""
    registry: Registry[BaseGenerator] = Registry("generator")
    for kind in GeneratorKind:
        if kind.is_shape:
            registry.register(ShapeGenerator(kind))
        elif kind.is_noise:
            registry.register(NoiseGenerator(kind))
    registry.register(VoronoiGenerator())
    return registry


def generate(
    spec: GeneratorSpec,
    width: int = DEFAULT_RESOLUTION,
    height: int = DEFAULT_RESOLUTION,
) -> PoreImage:
    """Build an image with the generator matching ``spec.kind``."""
    return build_generator_registry().get(spec.kind.value).generate(spec, width, height)


__all__ = [
    "DEFAULT_RESOLUTION",
    "SHAPE_KINDS",
    "BaseGenerator",
    "GeneratorKind",
    "GeneratorSpec",
    "NoiseGenerator",
    "PoreImage",
    "ShapeGenerator",
    "VoronoiGenerator",
    "build_generator_registry",
    "generate",
    "generate_noise",
    "generate_shape",
    "generate_voronoi",
    "read_raster",
    "write_raster",
]
