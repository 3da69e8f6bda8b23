"""Shared data model: speeds, attacker records, full game state."""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Tuple

from .angles import canonical

# capture orders as attacker index pairs (captured first, captured second)
ORDER_12 = (0, 1)
ORDER_21 = (1, 0)
ORDERS = (ORDER_12, ORDER_21)


class PreconditionError(Exception):
    """An operation was invoked on a state outside its declared regime."""


@dataclass(frozen=True)
class SpeedParams:
    """The two admissible attacker speed classes. Both attackers share the
    true speed, which is one of these; the turret rotates at unit rate."""

    nu_slow: float
    nu_fast: float

    def __post_init__(self):
        if not (0.0 < self.nu_slow < self.nu_fast <= 1.0):
            raise ValueError(
                f"need 0 < nu_slow < nu_fast <= 1, got "
                f"({self.nu_slow}, {self.nu_fast})"
            )

    @property
    def ratio(self) -> float:
        """nu_slow / nu_fast, in (0, 1)."""
        return self.nu_slow / self.nu_fast

    @property
    def inverse_ratio(self) -> float:
        """nu_fast / nu_slow, above 1."""
        return self.nu_fast / self.nu_slow


@dataclass(frozen=True)
class AttackerPolar:
    """One attacker in polar coordinates about the turret's pivot."""

    r: float
    theta: float
    alive: bool = True

    def __post_init__(self):
        object.__setattr__(self, "theta", canonical(self.theta))

    def moved(self, r: float, theta: float) -> "AttackerPolar":
        return replace(self, r=r, theta=theta)

    def removed(self) -> "AttackerPolar":
        return replace(self, alive=False)


@dataclass(frozen=True)
class GameState:
    """Turret pointing angle plus both attackers at a common time."""

    theta_t: float
    attackers: Tuple[AttackerPolar, AttackerPolar]
    t: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "theta_t", canonical(self.theta_t))
        if len(self.attackers) != 2:
            raise ValueError("exactly two attackers required")

    @property
    def alive_indices(self) -> Tuple[int, ...]:
        return tuple(i for i, a in enumerate(self.attackers) if a.alive)

    def with_attacker(self, i: int, a: AttackerPolar) -> "GameState":
        att = list(self.attackers)
        att[i] = a
        return replace(self, attackers=(att[0], att[1]))
