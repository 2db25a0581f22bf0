"""JSON and checksum helpers."""

from porebench.utils.serialization import dumps, json_default, sha256_file

__all__ = ["dumps", "json_default", "sha256_file"]
