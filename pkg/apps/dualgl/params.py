"""
Couplings of the dual abelian Higgs model and the scales derived from them.

The energy per unit length of a straight vortex of winding n is

    E = S'^2 + n^2 (1-a)^2 S^2 / r^2 + n^2 a'^2 / (g^2 r^2) + lambda (S^2 - v^2)^2

which gives m_H = 2 v sqrt(lambda), m_B = g v and the Bogomolny point
m_H = m_B, i.e. lambda = g^2 / 4.
"""

import math
from dataclasses import dataclass, replace

from apps.errors import DomainError


@dataclass(frozen=True)
class GLParameters:
    g: float
    lam: float
    v: float = 1.0
    n: int = 1

    def __post_init__(self):
        if not math.isfinite(self.g) or self.g == 0.0:
            raise DomainError(f"magnetic coupling g must be nonzero, got {self.g}", key='vortex.g')
        if not math.isfinite(self.lam) or self.lam <= 0.0:
            raise DomainError(f"lambda must be > 0, got {self.lam}", key='vortex.lambda')
        if not math.isfinite(self.v) or self.v <= 0.0:
            raise DomainError(f"v must be > 0, got {self.v}", key='vortex.v')
        if int(self.n) != self.n or self.n < 1:
            raise DomainError(f"winding n must be an integer >= 1, got {self.n}", key='vortex.n')
        object.__setattr__(self, 'n', int(self.n))

    def to_dict(self):
        return {'g': self.g, 'lambda': self.lam, 'v': self.v, 'n': self.n}


@dataclass(frozen=True)
class LengthScales:
    Lambda: float
    L: float
    type2: bool
    critical: bool


def masses(p):
    """(m_H, m_B) = (2 v sqrt(lambda), |g| v)."""
    return 2.0 * p.v * math.sqrt(p.lam), abs(p.g) * p.v


def lengths_and_type(p):
    """Penetration depth 1/m_B, coherence length 1/m_H and the type-II flag (Lambda > L)."""
    m_h, m_b = masses(p)
    critical = math.isclose(m_h, m_b, rel_tol=1e-12)
    return LengthScales(Lambda=1.0 / m_b, L=1.0 / m_h, type2=(m_h > m_b) and not critical, critical=critical)


def critical_lambda(g):
    """Self-coupling of the Bogomolny point for coupling g."""
    return g * g / 4.0


def rescale(p, kappa):
    """Same couplings with v -> kappa v; lengths scale as 1/kappa, tensions as kappa^2."""
    if not kappa > 0.0:
        raise DomainError(f"scale factor must be positive, got {kappa}")
    return replace(p, v=p.v * kappa)
