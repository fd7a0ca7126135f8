"""
Higgs and gauge fields of the continuum SU(2) theory sampled on a grid.

Conventions: adjoint vectors carry the colour index first, so Phi has shape
(3, N, N, N) and the spatial potential A has shape (3, 3, N, N, N) indexed
[i, a]. The Prasad-Sommerfield hedgehog is

    Phi^a   = xhat^a (v coth(e v r) - 1/(e r))
    A_i^a   = eps_{aij} xhat_j (1 - e v r / sinh(e v r)) / (e r)
"""

import logging
from dataclasses import dataclass

import numpy as np

from apps.bps.config import BPS_CONFIG

logger = logging.getLogger("dualmeissner.bps.fields")

LEVI_CIVITA = np.zeros((3, 3, 3))
for _a, _b, _c in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
    LEVI_CIVITA[_a, _b, _c] = 1.0
    LEVI_CIVITA[_a, _c, _b] = -1.0


@dataclass
class FieldConfig:
    phi: np.ndarray
    A: np.ndarray

    def is_finite(self):
        return bool(np.all(np.isfinite(self.phi)) and np.all(np.isfinite(self.A)))

    def phi_norm(self):
        return np.sqrt(np.sum(self.phi ** 2, axis=0))

    def copy(self):
        return FieldConfig(self.phi.copy(), self.A.copy())


def _odd_profiles(xi):
    """coth(xi) - 1/xi and (1 - xi/sinh(xi))/xi, both odd in xi."""
    x = np.abs(np.asarray(xi, dtype=float))
    sign = np.sign(xi)
    small = x < BPS_CONFIG['series_threshold']
    safe = np.where(small, 1.0, x)

    higgs = 1.0 / np.tanh(safe) - 1.0 / safe
    # xi / sinh(xi) without overflow for large xi
    ratio = 2.0 * safe * np.exp(-safe) / -np.expm1(-2.0 * safe)
    gauge = (1.0 - ratio) / safe

    x2 = x * x
    higgs = np.where(small, x * (1.0 / 3.0 - x2 / 45.0 + 2.0 * x2 * x2 / 945.0), higgs)
    gauge = np.where(small, x * (1.0 / 6.0 - 7.0 * x2 / 360.0 + 31.0 * x2 * x2 / 15120.0), gauge)
    return sign * higgs, sign * gauge


def ps_profiles(r, v, e):
    """Radial functions (h, w) with Phi^a = xhat^a h(r) and A_i^a = eps_aij xhat_j w(r)."""
    higgs, gauge = _odd_profiles(e * v * np.asarray(r, dtype=float))
    return v * higgs, v * gauge


def hedgehog(cfg, higgs, gauge):
    """FieldConfig of a spherically symmetric hedgehog from radial profiles on the grid."""
    x = cfg.coordinates()
    r = np.sqrt(np.sum(x ** 2, axis=0))
    xhat = x / r
    phi = xhat * higgs
    A = np.einsum('aij,j...->ia...', LEVI_CIVITA, xhat) * gauge
    return FieldConfig(phi, A)


def prasad_sommerfield(cfg):
    """The BPS monopole of charge 4 pi / e."""
    h, w = ps_profiles(cfg.radius(), cfg.v, cfg.e)
    fc = hedgehog(cfg, h, w)
    logger.debug(f"Prasad-Sommerfield fields on {cfg.n}^3 grid, h={cfg.h}")
    return fc


def vacuum(cfg):
    """Phi = (0, 0, v), A = 0."""
    shape = (cfg.n,) * 3
    phi = np.zeros((3,) + shape)
    phi[2] = cfg.v
    return FieldConfig(phi, np.zeros((3, 3) + shape))


def rippled_vacuum(cfg, ripple=0.01):
    """A winding-zero configuration: Phi along the third colour axis with a small smooth ripple."""
    fc = vacuum(cfg)
    x = cfg.coordinates()
    fc.phi[2] = cfg.v * (1.0 + ripple * np.sin(x[0]) * np.sin(x[1]) * np.sin(x[2]))
    return fc


def color_rotate(fc, rotation):
    """Global gauge rotation Phi^a -> R_ab Phi^b, A_i^a -> R_ab A_i^b by an SO(3) matrix."""
    rotation = np.asarray(rotation, dtype=float)
    return FieldConfig(
        np.einsum('ab,b...->a...', rotation, fc.phi),
        np.einsum('ab,ib...->ia...', rotation, fc.A),
    )
