"""
Mass and expansion formulas driven by the invariants of a homology 3-sphere.

    N     = 3 vol / (2 cs)                e-folds
    a     = a0 exp(N)                     scale factor
    M     = m_P exp(-vol / (2 cs))        Higgs mass
    M(L)  = m_P (L_P / L)^(1/3)           length-dependent mass scale
"""

import math
from dataclasses import dataclass

import numpy as np

from apps.errors import ConfigError, DomainError
from apps.topohiggs.config import (
    DEFAULT_PLANCK_CONVENTION,
    HIGGS_MASS_CONVENTIONS,
    PLANCK_MASS_GEV,
    SUFFICIENT_EFOLDS,
)


@dataclass(frozen=True)
class PhysicalConstants:
    planck_mass_gev: float = PLANCK_MASS_GEV[DEFAULT_PLANCK_CONVENTION]
    planck_length: float = 1.0

    def __post_init__(self):
        if not self.planck_mass_gev > 0.0 or not self.planck_length > 0.0:
            raise ConfigError("Planck mass and length must be positive")

    @classmethod
    def for_convention(cls, convention=DEFAULT_PLANCK_CONVENTION):
        try:
            return cls(planck_mass_gev=PLANCK_MASS_GEV[convention])
        except KeyError:
            raise ConfigError(
                f"unknown Planck-mass convention {convention!r}; choose one of {sorted(PLANCK_MASS_GEV)}",
                key='higgsmass.planck_convention',
            )


@dataclass(frozen=True)
class ScaleFactor:
    value: float
    log10: float
    saturated: bool


def _ratio(inv):
    if inv.cs == 0.0:
        raise DomainError(f"{inv.name}: Chern-Simons invariant is zero")
    return inv.volume / (2.0 * inv.cs)


def efolds(inv):
    return 3.0 * _ratio(inv)


def mass_exponent(inv):
    """Exponent of the Higgs mass formula, equal to -efolds/3."""
    return -_ratio(inv)


def sufficient_inflation(n_efolds):
    return n_efolds >= SUFFICIENT_EFOLDS


def scale_factor(inv, a0=1.0):
    """a0 exp(N); past the float range the value saturates at inf and log10 stays exact."""
    if not a0 > 0.0:
        raise DomainError(f"initial scale a0 must be positive, got {a0}", key='higgsmass.a0')
    n = efolds(inv)
    log10 = (math.log(a0) + n) / math.log(10.0)
    try:
        return ScaleFactor(value=a0 * math.exp(n), log10=log10, saturated=False)
    except OverflowError:
        return ScaleFactor(value=math.inf, log10=log10, saturated=True)


def higgs_mass(inv, consts=None):
    """Mass in GeV."""
    consts = consts or PhysicalConstants()
    return consts.planck_mass_gev * math.exp(mass_exponent(inv))


def mass_length_scale(length, consts=None):
    consts = consts or PhysicalConstants()
    if not length > 0.0:
        raise DomainError(f"length must be positive, got {length}", key='higgsmass.length')
    return consts.planck_mass_gev * float(np.cbrt(consts.planck_length / length))


def higgs_potential(phi_norm, lam, v):
    """U = lambda/4 (|phi|^2 - v^2)^2; works elementwise on arrays."""
    return 0.25 * lam * (np.square(phi_norm) - v * v) ** 2


def radial_curvature(lam, v):
    """d^2 U / d|phi|^2 at the vacuum."""
    return 2.0 * lam * v * v


def classical_higgs_mass(lam, v, convention='coupling'):
    """
    'coupling' quotes v sqrt(lambda); 'curvature' is the square root of the
    radial curvature, v sqrt(2 lambda).
    """
    if convention not in HIGGS_MASS_CONVENTIONS:
        raise ConfigError(f"unknown Higgs mass convention {convention!r}")
    if convention == 'curvature':
        return math.sqrt(radial_curvature(lam, v))
    return v * math.sqrt(lam)
