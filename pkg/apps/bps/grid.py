"""
Cubic grids for the continuum monopole fields and the quadratures on them.

Points sit at x_i = (i - N/2 + offset) h in each axis. The default offset of
one half cell keeps r = 0 off the grid.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import trapezoid
from scipy.interpolate import RegularGridInterpolator

from apps.bps.config import BPS_CONFIG, MIN_GRID_POINTS
from apps.errors import ConfigError, LoopRangeError


@dataclass(frozen=True)
class ContinuumConfig:
    n: int
    h: float
    v: float = 1.0
    e: float = 1.0
    lam: float = 0.0
    offset: float = 0.5

    def __post_init__(self):
        if int(self.n) != self.n or self.n < MIN_GRID_POINTS:
            raise ConfigError(f"grid must have at least {MIN_GRID_POINTS} points per axis, got {self.n}", key='bps.grid')
        for key, value in (('bps.h', self.h), ('bps.v', self.v)):
            if not math.isfinite(value) or value <= 0.0:
                raise ConfigError(f"{key} must be a positive number, got {value}", key=key)
        if not math.isfinite(self.e) or self.e == 0.0:
            raise ConfigError(f"gauge coupling e must be nonzero, got {self.e}", key='bps.e')
        if not math.isfinite(self.lam) or self.lam < 0.0:
            raise ConfigError(f"lambda must be >= 0, got {self.lam}", key='bps.lambda')
        if float(self.offset - self.n / 2).is_integer():
            raise ConfigError(f"offset {self.offset} puts a grid point on the origin", key='bps.offset')

    def axis(self):
        return (np.arange(self.n) - self.n / 2 + self.offset) * self.h

    def coordinates(self):
        """Array (3, N, N, N) of point positions."""
        x = self.axis()
        return np.stack(np.meshgrid(x, x, x, indexing='ij'))

    def radius(self):
        return np.sqrt(np.sum(self.coordinates() ** 2, axis=0))

    @property
    def max_radius(self):
        """Largest sphere about the origin that stays inside the grid."""
        x = self.axis()
        return float(min(-x[0], x[-1]))

    def to_dict(self):
        return {'grid': self.n, 'h': self.h, 'v': self.v, 'e': self.e, 'lambda': self.lam, 'offset': self.offset}


def gradient(values, h, axis):
    """Second-order central differences, second-order one-sided at the faces."""
    return np.gradient(values, h, axis=axis, edge_order=2)


def grid_integral(values, h):
    """Trapezoid rule over the last three axes."""
    result = values
    for _ in range(3):
        result = trapezoid(result, dx=h, axis=-1)
    return result


def sphere_nodes(radius, nodes=None):
    """(points (M, 3), outward normals (M, 3), weights (M,)) of a sphere quadrature."""
    n_theta, n_phi = nodes or BPS_CONFIG['sphere_nodes']
    cos_theta, w_theta = np.polynomial.legendre.leggauss(n_theta)
    phi = 2.0 * np.pi * np.arange(n_phi) / n_phi
    ct, ph = np.meshgrid(cos_theta, phi, indexing='ij')
    st = np.sqrt(1.0 - ct ** 2)
    normals = np.stack([st * np.cos(ph), st * np.sin(ph), ct], axis=-1).reshape(-1, 3)
    weights = (np.repeat(w_theta, n_phi) * (2.0 * np.pi / n_phi)) * radius ** 2
    return radius * normals, normals, weights


def check_radius(cfg, radius):
    if not radius > 0.0:
        raise ConfigError(f"sphere radius must be positive, got {radius}", key='bps.radius')
    if radius > cfg.max_radius:
        raise LoopRangeError(
            f"sphere radius {radius} exceeds the grid half-width {cfg.max_radius}", key='bps.radius'
        )


def interpolate(cfg, values, points):
    """Trilinear interpolation of a grid array (..., N, N, N) at points (M, 3)."""
    x = cfg.axis()
    values = np.asarray(values)
    lead = values.shape[:-3]
    flat = values.reshape((-1,) + values.shape[-3:])
    samples = [
        RegularGridInterpolator((x, x, x), component, method='linear')(points)
        for component in flat
    ]
    return np.stack(samples).reshape(lead + (len(points),))


def sphere_flux(cfg, vector_field, radius, nodes=None):
    """Outward flux of a vector field (3, N, N, N) through a sphere about the origin."""
    check_radius(cfg, radius)
    points, normals, weights = sphere_nodes(radius, nodes)
    samples = interpolate(cfg, vector_field, points)
    return float(np.sum(weights * np.einsum('im,mi->m', samples, normals)))


def sphere_average(cfg, scalar_field, radius, nodes=None):
    check_radius(cfg, radius)
    points, _, weights = sphere_nodes(radius, nodes)
    samples = interpolate(cfg, scalar_field, points)
    return float(np.sum(weights * samples) / np.sum(weights))
