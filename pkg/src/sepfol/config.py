"""Resource caps shared by the library and the command line."""
from __future__ import annotations

import os
from dataclasses import dataclass, fields


@dataclass(frozen=True)
class Caps:
    node_cap: int = 10**6
    constant_cap: int = 10**4
    structure_cap: int = 10**7
    size_cap: int = 8
    magnitude_cap: int = 10**9

    def __post_init__(self):
        for f in fields(self):
            if getattr(self, f.name) <= 0:
                raise ValueError(f"cap {f.name} must be positive")

    @classmethod
    def from_env(cls, value: str | None = None) -> "Caps":
        """Read comma-separated caps in field order, e.g. ``SEPFOL_CAPS=1000000,10000,10000000,8``."""
        if value is None:
            value = os.environ.get("SEPFOL_CAPS", "")
        value = value.strip()
        if not value:
            return cls()
        parts = [int(p) for p in value.split(",") if p.strip()]
        names = [f.name for f in fields(cls)]
        if len(parts) > len(names):
            raise ValueError("too many caps in SEPFOL_CAPS")
        return cls(**dict(zip(names, parts)))


DEFAULT_CAPS = Caps()
