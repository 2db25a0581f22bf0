"""porebench: periodic pore geometries, pore-scale metrics and closure fitting."""

from porebench.bench import AnalysisResult, PoreBench, create_default_bench
from porebench.config import BenchConfig

__all__ = ["AnalysisResult", "BenchConfig", "PoreBench", "create_default_bench"]
__version__ = "0.1.0"
