"""Step budgets shared by every fuel-bounded algorithm."""

from __future__ import annotations

from typing import Union

from .errors import OutOfFuel


class Fuel:
    """A mutable step counter; one instance is shared by a whole query."""

    def __init__(self, limit: int):
        if limit < 1:
            raise ValueError(f"fuel must be positive, got {limit}")
        self.limit = limit
        self.remaining = limit

    @property
    def used(self) -> int:
        return self.limit - self.remaining

    def consume(self, amount: int = 1) -> None:
        if self.remaining < amount:
            self.remaining = 0
            raise OutOfFuel(f"fuel exhausted after {self.limit} steps")
        self.remaining -= amount

    @classmethod
    def coerce(cls, fuel: Union[int, "Fuel"]) -> "Fuel":
        return fuel if isinstance(fuel, Fuel) else cls(fuel)

    def __repr__(self) -> str:
        return f"Fuel({self.remaining}/{self.limit})"
