"""
Static monopole-antimonopole test configuration.

The continuum potential of a unit monopole at pole 1 and an antimonopole at
pole 2 on a common axis parallel to z,

    A = 1/2 (cos a2 - cos a1) grad(phi)

(a_i the polar angle seen from pole i, phi the azimuth about the axis) has its
Dirac string on the axis between the poles. Link angles are line integrals of
A along each spatial link, evaluated with Gauss-Legendre quadrature; time links
carry no phase.
"""

import numpy as np

from apps.lattice.config import validate_dims
from apps.monopoles.projection import AbelianField


def pair_potential(points, axis, poles):
    """A(x) at an array of points (..., 3)."""
    x0, y0 = axis
    dx = points[..., 0] - x0
    dy = points[..., 1] - y0
    rho2 = dx * dx + dy * dy
    coefficient = 0.0
    for sign, z_pole in ((-1.0, poles[0]), (1.0, poles[1])):
        dz = points[..., 2] - z_pole
        coefficient = coefficient + sign * dz / np.sqrt(rho2 + dz * dz)
    coefficient = 0.5 * coefficient
    grad_phi = np.stack([-dy / rho2, dx / rho2, np.zeros_like(dx)], axis=-1)
    return coefficient[..., None] * grad_phi


def dirac_pair_field(dims=(6, 6, 6, 6), axis=(2.5, 2.5), poles=(1.5, 3.5), nodes=16):
    """AbelianField of the static pair; the axis must avoid lattice links."""
    dims = validate_dims(dims)
    s, w = np.polynomial.legendre.leggauss(nodes)
    s = 0.5 * (s + 1.0)
    w = 0.5 * w
    sites = np.stack(np.meshgrid(*(np.arange(d, dtype=float) for d in dims[:3]), indexing="ij"), axis=-1)

    theta = np.zeros((4,) + dims)
    for mu in range(3):
        direction = np.zeros(3)
        direction[mu] = 1.0
        total = np.zeros(dims[:3])
        for node, weight in zip(s, w):
            a = pair_potential(sites + node * direction, axis, poles)
            total += weight * a[..., mu]
        theta[mu] = total[..., None]
    return AbelianField.from_angles(theta)
