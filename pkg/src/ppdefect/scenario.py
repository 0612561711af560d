"""Physical configuration: interval widths, uncertainty suppression and evaluation time.

Units are fixed by hbar = 1; the position interval ``L`` and the mass default
to 1 as well, so that ``B = 2 pi U`` and ``t = m L / B = 1 / (2 pi U)``.
"""

import math
from dataclasses import dataclass
from typing import ClassVar


@dataclass(frozen=True)
class Scenario:
    """Target intervals |x| <= L/2, |p| <= B/2 and |x(t)| <= L at t = m L / B."""

    U: float
    L: float = 1.0
    mass: float = 1.0
    hbar: ClassVar[float] = 1.0

    def __post_init__(self):
        if not 0.0 < self.U < 1.0:
            raise ValueError(f"uncertainty suppression U must lie in (0, 1), got {self.U}")
        if not self.L > 0:
            raise ValueError(f"interval width L must be positive, got {self.L}")
        if not self.mass > 0:
            raise ValueError(f"mass must be positive, got {self.mass}")

    @property
    def B(self) -> float:
        return 2.0 * math.pi * self.U * self.hbar / self.L

    @property
    def time(self) -> float:
        return self.mass * self.L / self.B

    @property
    def reduced_time(self) -> float:
        """hbar t / m, the parameter entering the free-evolution phase."""
        return self.hbar * self.time / self.mass

    @property
    def sqrt_U(self) -> float:
        return math.sqrt(self.U)

    @classmethod
    def from_widths(cls, L: float, B: float, mass: float = 1.0) -> "Scenario":
        return cls(U=L * B / (2.0 * math.pi * cls.hbar), L=L, mass=mass)

    @classmethod
    def from_sigmas(cls, sigma1: float, sigma2: float, L: float = 1.0, mass: float = 1.0) -> "Scenario":
        """Scenario matching a Gaussian pair through 4 pi U sigma1 sigma2 = L**2."""
        if sigma1 <= 0 or sigma2 <= 0:
            raise ValueError("Gaussian widths must be positive")
        return cls(U=L**2 / (4.0 * math.pi * sigma1 * sigma2), L=L, mass=mass)
