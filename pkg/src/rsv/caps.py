"""Search limits shared by the library and the CLI."""

from __future__ import annotations

import os
from dataclasses import dataclass, fields, replace

ENV_PREFIX = "RSV_CAPS_"


class CapExceeded(RuntimeError):
    """A bounded search ran out of budget before reaching a decision."""

    def __init__(self, cap: str, limit: int):
        self.cap = cap
        self.limit = limit
        super().__init__(f"cap {cap}={limit} exceeded")


@dataclass(frozen=True)
class Caps:
    subset_size: int = 4
    hom_checks: int = 10_000_000
    free_elements: int = 20_000
    free_coordinates: int = 50_000
    pres_elements: int = 10_000
    pres_rules: int = 500
    pres_word_length: int = 24

    def __post_init__(self):
        for f in fields(self):
            if getattr(self, f.name) <= 0:
                raise ValueError(f"cap {f.name} must be positive")

    @classmethod
    def from_env(cls, environ=None) -> Caps:
        """Defaults overridden by ``RSV_CAPS_<NAME>`` variables."""
        environ = os.environ if environ is None else environ
        updates = {}
        for f in fields(cls):
            raw = environ.get(ENV_PREFIX + f.name.upper())
            if raw is not None:
                try:
                    updates[f.name] = int(raw)
                except ValueError:
                    raise ValueError(f"{ENV_PREFIX}{f.name.upper()} must be an integer, got {raw!r}") from None
        return replace(cls(), **updates)

    def as_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}


DEFAULT_CAPS = Caps()


class Budget:
    """Mutable counter charged by homomorphism searches."""

    def __init__(self, limit: int, name: str = "hom_checks"):
        self.limit = limit
        self.name = name
        self.used = 0

    def charge(self, amount: int = 1):
        self.used += amount
        if self.used > self.limit:
            raise CapExceeded(self.name, self.limit)
