"""
Critical points of the radial quartic psi(rho) = q rho^4 + (c + t/2) rho^2
and of its Cerf unfolding x^4 +- t x^2 on a line.
"""

import math
from dataclasses import dataclass
from typing import List

from apps.errors import DomainError
from apps.topohiggs.config import MORSE_DEFAULTS

MAXIMUM = 'maximum'
MINIMUM = 'minimum'
DEGENERATE = 'degenerate'


@dataclass(frozen=True)
class PotentialShape:
    quartic: float = MORSE_DEFAULTS['quartic']
    quadratic: float = MORSE_DEFAULTS['quadratic']
    t: float = 0.0

    def __post_init__(self):
        if not self.quartic > 0.0:
            raise DomainError(f"quartic coefficient must be positive, got {self.quartic}")

    @property
    def effective_quadratic(self):
        return self.quadratic + 0.5 * self.t

    def value(self, rho):
        return self.quartic * rho ** 4 + self.effective_quadratic * rho ** 2


@dataclass(frozen=True)
class CriticalPoint:
    location: float
    value: float
    index: int
    kind: str

    @property
    def degenerate(self):
        return self.kind == DEGENERATE


def critical_unfolding_parameter(shape):
    """t at which the quadratic term vanishes and the origin becomes a dovetail point."""
    return -2.0 * shape.quadratic


def morse_critical_points(shape, lifted=False) -> List[CriticalPoint]:
    """
    Critical points in the radial variable, origin first.

    ``lifted`` reports them on a line through the origin, so the outer
    minimum appears at both +rho and -rho.
    """
    c = shape.effective_quadratic
    if c < 0.0:
        origin = CriticalPoint(0.0, 0.0, 1, MAXIMUM)
    elif c > 0.0:
        origin = CriticalPoint(0.0, 0.0, 0, MINIMUM)
    else:
        # psi ~ rho^4 at the origin
        origin = CriticalPoint(0.0, 0.0, 0, DEGENERATE)
    points = [origin]
    if c < 0.0:
        rho = math.sqrt(-c / (2.0 * shape.quartic))
        value = -c * c / (4.0 * shape.quartic)
        outer = [rho] if not lifted else [-rho, rho]
        points += [CriticalPoint(location, value, 0, MINIMUM) for location in outer]
    return sorted(points, key=lambda point: point.location) if lifted else points


def cerf_unfolding(t, sign=-1):
    """Critical points of x^4 + sign * t * x^2 on the line."""
    if sign not in (-1, 1):
        raise DomainError(f"unfolding sign must be +1 or -1, got {sign}")
    return morse_critical_points(PotentialShape(quartic=1.0, quadratic=sign * t), lifted=True)
