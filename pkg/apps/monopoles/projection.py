"""
Abelian projection onto the diagonal U(1).

theta_mu(x) is the phase of the upper-diagonal entry a0 + i a3 of each link,
taken in (-pi, pi].
"""

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from apps.lattice.config import validate_dims
from apps.lattice.field import NDIM, GaugeField, shift
from apps.lattice.observables import gauge_transform

TWO_PI = 2.0 * np.pi


def wrap_angle(angle):
    """Map angles into (-pi, pi]; returns (wrapped, n) with angle = wrapped + 2 pi n."""
    angle = np.asarray(angle, dtype=float)
    n = np.ceil((angle - np.pi) / TWO_PI)
    wrapped = angle - TWO_PI * n
    # rounding can leave -pi exactly; send it to +pi
    fix = wrapped <= -np.pi
    wrapped = np.where(fix, wrapped + TWO_PI, wrapped)
    n = np.where(fix, n - 1, n)
    return wrapped, n.astype(np.int64)


@dataclass
class AbelianField:
    """Per-link U(1) angles, shape (4, Lx, Ly, Lz, Lt)."""

    dims: Tuple[int, int, int, int]
    theta: np.ndarray

    def __post_init__(self):
        self.dims = validate_dims(self.dims)
        self.theta = np.asarray(self.theta, dtype=float)
        expected = (NDIM,) + self.dims
        if self.theta.shape != expected:
            raise ValueError(f"theta must have shape {expected}, got {self.theta.shape}")

    @classmethod
    def from_angles(cls, theta):
        """Build from arbitrary real angles, reducing them into (-pi, pi]."""
        theta = np.asarray(theta, dtype=float)
        return cls(tuple(theta.shape[1:]), wrap_angle(theta)[0])

    @classmethod
    def zeros(cls, dims):
        dims = validate_dims(dims)
        return cls(dims, np.zeros((NDIM,) + dims))

    def in_range(self):
        return bool(np.all((self.theta > -np.pi) & (self.theta <= np.pi)))

    def scaled(self, charge):
        """Angles of the charge-``charge`` field, charge * theta reduced into (-pi, pi]."""
        return AbelianField.from_angles(charge * self.theta)


def abelian_project(field):
    """theta = arg(a0 + i a3) of every link."""
    links = field.links
    theta = np.arctan2(links[..., 3], links[..., 0])
    theta = np.where(theta <= -np.pi, np.pi, theta)
    return AbelianField(field.dims, theta)


def residual_u1_transform(field, phi):
    """Gauge transform by diag(e^{i phi(x)}, e^{-i phi(x)}), the residual U(1) of the MAG."""
    phi = np.asarray(phi, dtype=float)
    g = np.zeros(phi.shape + (4,))
    g[..., 0] = np.cos(phi)
    g[..., 3] = np.sin(phi)
    return gauge_transform(field, g)


def gradient_field(phi):
    """Pure-gauge abelian field theta_mu(x) = phi(x) - phi(x+mu), reduced into (-pi, pi]."""
    phi = np.asarray(phi, dtype=float)
    theta = np.stack([phi - shift(phi, mu) for mu in range(NDIM)])
    return AbelianField.from_angles(theta)


def diagonal_field(theta):
    """GaugeField of diagonal links exp(i theta s3) from link angles."""
    theta = np.asarray(theta, dtype=float)
    links = np.zeros(theta.shape + (4,))
    links[..., 0] = np.cos(theta)
    links[..., 3] = np.sin(theta)
    return GaugeField(tuple(theta.shape[1:]), links)
