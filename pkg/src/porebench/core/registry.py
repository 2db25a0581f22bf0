"""Name-keyed registries for generators and closure models."""

from __future__ import annotations

import logging
from typing import Any, Generic, Protocol, TypeVar

from porebench.exceptions import UnknownEntryError


class Named(Protocol):
    name: str
    description: str


T = TypeVar("T", bound=Named)


class Registry(Generic[T]):
    """Registry for dynamic registration, discovery, and lookup by name."""

    def __init__(self, kind: str) -> None:
        self.kind = kind
        self._entries: dict[str, T] = {}
        self._logger = logging.getLogger(f"{self.__class__.__name__}.{kind}")

    def register(self, entry: T) -> None:
        """Register an entry by its unique name."""
        if entry.name in self._entries:
            self._logger.warning("Replacing %s '%s'", self.kind, entry.name)
        self._entries[entry.name] = entry

    def unregister(self, name: str) -> None:
        """Remove an entry from the registry."""
        self._entries.pop(name, None)

    def get(self, name: str) -> T:
        """Return an entry or raise if not found."""
        entry = self._entries.get(name)
        if entry is None:
            known = ", ".join(sorted(self._entries)) or "none"
            raise UnknownEntryError(f"Unknown {self.kind}: {name} (known: {known})")
        return entry

    def names(self) -> list[str]:
        return list(self._entries)

    def list_entries(self) -> list[dict[str, Any]]:
        """List registered entry metadata."""
        return [{"name": entry.name, "description": entry.description} for entry in self._entries.values()]

    def __contains__(self, name: object) -> bool:
        return name in self._entries

    def __len__(self) -> int:
        return len(self._entries)
