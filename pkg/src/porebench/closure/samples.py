"""Closure training samples: features paired with averaged variation products."""

from __future__ import annotations

import csv
import io
import json
import logging
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import numpy as np

from porebench.averaging.field import ScalarField, require_shared_mask
from porebench.averaging.schemes import AveragingScheme, decompose, variation_product

logger = logging.getLogger(__name__)

TARGET_COLUMN = "target"


@dataclass(frozen=True, slots=True, eq=False)
class SampleSet:
    """``features`` is ``(n, k)`` with columns named by ``feature_names``."""

    feature_names: tuple[str, ...]
    features: np.ndarray
    targets: np.ndarray
    metadata: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        targets = np.asarray(self.targets, dtype=np.float64).reshape(-1)
        features = np.asarray(self.features, dtype=np.float64)
        if features.size != len(targets) * len(self.feature_names):
            raise ValueError(f"feature matrix of shape {features.shape} for {len(targets)} targets")
        features = features.reshape(len(targets), len(self.feature_names))
        object.__setattr__(self, "feature_names", tuple(self.feature_names))
        object.__setattr__(self, "features", features)
        object.__setattr__(self, "targets", targets)

    @classmethod
    def from_rows(
        cls, feature_names: Sequence[str], rows: Iterable[tuple[Sequence[float], float]]
    ) -> SampleSet:
        pairs = list(rows)
        features = np.array([list(x) for x, _ in pairs], dtype=np.float64)
        targets = np.array([t for _, t in pairs], dtype=np.float64)
        return cls(tuple(feature_names), features.reshape(len(pairs), len(feature_names)), targets)

    @classmethod
    def concat(cls, sets: Sequence[SampleSet]) -> SampleSet:
        if not sets:
            raise ValueError("nothing to concatenate")
        names = sets[0].feature_names
        if any(s.feature_names != names for s in sets):
            raise ValueError("sample sets have different feature columns")
        return cls(
            names,
            np.concatenate([s.features for s in sets]),
            np.concatenate([s.targets for s in sets]),
        )

    def __len__(self) -> int:
        return int(len(self.targets))

    def to_csv(self) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow([*self.feature_names, TARGET_COLUMN])
        for row, target in zip(self.features, self.targets, strict=True):
            writer.writerow([repr(float(v)) for v in row] + [repr(float(target))])
        return buffer.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> SampleSet:
        reader = csv.reader(io.StringIO(text))
        header = next(reader, None)
        if not header or header[-1].strip() != TARGET_COLUMN:
            raise ValueError(f"sample CSV needs a header ending in '{TARGET_COLUMN}'")
        names = tuple(name.strip() for name in header[:-1])
        rows = [
            ([float(v) for v in record[:-1]], float(record[-1]))
            for record in reader
            if record
        ]
        return cls.from_rows(names, rows)

    def to_json(self) -> str:
        payload = {
            "feature_names": list(self.feature_names),
            "samples": [
                {"features": [float(v) for v in row], TARGET_COLUMN: float(target)}
                for row, target in zip(self.features, self.targets, strict=True)
            ],
            "metadata": self.metadata,
        }
        return json.dumps(payload, indent=2)

    @classmethod
    def from_json(cls, text: str) -> SampleSet:
        payload = json.loads(text)
        rows = [(item["features"], item[TARGET_COLUMN]) for item in payload["samples"]]
        loaded = cls.from_rows(payload["feature_names"], rows)
        return cls(loaded.feature_names, loaded.features, loaded.targets, payload.get("metadata", {}))

    def export(self, output_path: Path, fmt: str | None = None) -> Path:
        """Write CSV or JSON; the format defaults to the file suffix."""
        fmt_normalized = (fmt or output_path.suffix.lstrip(".") or "csv").lower().strip()
        output_path.parent.mkdir(parents=True, exist_ok=True)
        if fmt_normalized == "csv":
            output_path.write_text(self.to_csv(), encoding="utf-8")
        elif fmt_normalized == "json":
            output_path.write_text(self.to_json(), encoding="utf-8")
        else:
            raise ValueError(f"Unsupported sample format: {fmt_normalized}")
        return output_path

    @classmethod
    def load(cls, path: Path) -> SampleSet:
        text = path.read_text(encoding="utf-8")
        if path.suffix.lower() == ".json":
            return cls.from_json(text)
        return cls.from_csv(text)


def closure_residual_data(
    m: ScalarField,
    n: ScalarField,
    scheme: AveragingScheme,
    features: Mapping[str, float] | None = None,
    include_averages: bool = True,
) -> SampleSet:
    """One sample per averaging window.

    The target is the window average of the product of the two variation
    fields. Features are the caller's scalars (repeated for every window)
    followed, when ``include_averages`` is set, by the window averages of
    ``m`` and ``n``.
    """
    require_shared_mask(m, n)
    m_mean, m_var = decompose(m, scheme)
    n_mean, n_var = decompose(n, scheme)
    product = variation_product(m_var, n_var, scheme)

    windows = np.isfinite(product.values)
    targets = product.values[windows]
    columns: list[np.ndarray] = []
    names: list[str] = []
    for name, value in (features or {}).items():
        names.append(name)
        columns.append(np.full(len(targets), float(value)))
    if include_averages:
        names.extend(["mean_m", "mean_n"])
        columns.extend([m_mean.values[windows], n_mean.values[windows]])

    matrix = np.column_stack(columns) if columns else np.zeros((len(targets), 0))
    logger.debug("Built %d closure samples with %d features", len(targets), len(names))
    return SampleSet(tuple(names), matrix, targets, {"scheme": scheme.to_dict()})
