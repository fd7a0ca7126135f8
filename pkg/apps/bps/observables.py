"""
Gauge-invariant observables of a continuum field configuration.

    D_i X^a    = d_i X^a + e eps_abc A_i^b X^c
    F_ij^a     = d_i A_j^a - d_j A_i^a + e eps_abc A_i^b A_j^c
    B_i^a      = -1/2 eps_ijk F_jk^a
    f_ij       = phihat . F_ij - (1/e) phihat . (D_i phihat x D_j phihat)

Derivatives are second-order finite differences; with these conventions the
Prasad-Sommerfield fields obey B = D Phi and carry charge +4 pi / e.
"""

import logging

import numpy as np
from scipy.stats import binned_statistic

from apps.bps.config import BPS_CONFIG
from apps.bps.fields import LEVI_CIVITA
from apps.bps.grid import gradient, sphere_average, sphere_flux
from apps.errors import SingularPointError
from apps.topohiggs.formulas import higgs_potential

logger = logging.getLogger("dualmeissner.bps.observables")

# corners of a unit cell for each face, counter-clockwise seen from outside
CELL_FACES = (
    ((1, 0, 0), (1, 1, 0), (1, 1, 1), (1, 0, 1)),
    ((0, 0, 0), (0, 0, 1), (0, 1, 1), (0, 1, 0)),
    ((0, 1, 0), (0, 1, 1), (1, 1, 1), (1, 1, 0)),
    ((0, 0, 0), (1, 0, 0), (1, 0, 1), (0, 0, 1)),
    ((0, 0, 1), (1, 0, 1), (1, 1, 1), (0, 1, 1)),
    ((0, 0, 0), (0, 1, 0), (1, 1, 0), (1, 0, 0)),
)


def covariant_derivative(fc, cfg, adjoint=None):
    """D_i X^a of an adjoint field X (default Phi); shape (3, 3, N, N, N)."""
    x = fc.phi if adjoint is None else adjoint
    partial = np.stack([gradient(x, cfg.h, axis=i + 1) for i in range(3)])
    return partial + cfg.e * np.einsum('abc,ib...,c...->ia...', LEVI_CIVITA, fc.A, x)


def field_strength(fc, cfg):
    """F_ij^a, shape (3, 3, 3, N, N, N)."""
    # d[i, j] = d_i A_j
    d = np.stack([np.stack([gradient(fc.A[j], cfg.h, axis=i + 1) for j in range(3)]) for i in range(3)])
    commutator = np.einsum('abc,ib...,jc...->ija...', LEVI_CIVITA, fc.A, fc.A)
    return d - d.swapaxes(0, 1) + cfg.e * commutator


def magnetic_field(fc, cfg):
    """Non-abelian B_i^a, shape (3, 3, N, N, N)."""
    return -0.5 * np.einsum('ijk,jka...->ia...', LEVI_CIVITA, field_strength(fc, cfg))


def unit_higgs(fc, cfg):
    """Phi / |Phi|; raises SingularPointError where |Phi| vanishes."""
    norm = fc.phi_norm()
    floor = BPS_CONFIG['singular_tol'] * cfg.v
    if np.min(norm) < floor:
        index = np.unravel_index(np.argmin(norm), norm.shape)
        point = cfg.coordinates()[(slice(None),) + index]
        raise SingularPointError(
            f"|phi| = {norm[index]:.3e} < {floor:.3e} at x = {tuple(round(float(c), 6) for c in point)}"
        )
    return fc.phi / norm


def thooft_tensor(fc, cfg):
    """'t Hooft's abelian field strength f_ij, shape (3, 3, N, N, N), antisymmetric in (i, j)."""
    phihat = unit_higgs(fc, cfg)
    d_hat = covariant_derivative(fc, cfg, phihat)
    cross = np.einsum('abc,ib...,jc...->ija...', LEVI_CIVITA, d_hat, d_hat)
    projected = np.einsum('a...,ija...->ij...', phihat, field_strength(fc, cfg))
    return projected - np.einsum('a...,ija...->ij...', phihat, cross) / cfg.e


def thooft_magnetic_field(fc, cfg):
    """b_i = -1/2 eps_ijk f_jk, shape (3, N, N, N)."""
    return -0.5 * np.einsum('ijk,jk...->i...', LEVI_CIVITA, thooft_tensor(fc, cfg))


def magnetic_charge(fc, cfg, radius=None):
    """Flux of the 't Hooft magnetic field through a sphere about the origin."""
    radius = cfg.max_radius if radius is None else float(radius)
    charge = sphere_flux(cfg, thooft_magnetic_field(fc, cfg), radius)
    logger.debug(f"magnetic charge {charge:.6f} through r={radius}")
    return charge


def _solid_angle(n1, n2, n3):
    """Signed solid angle of the geodesic triangle (n1, n2, n3) on the unit sphere."""
    triple = np.einsum('a...,a...->...', n1, np.cross(n2, n3, axis=0))
    dots = 1.0 + np.sum(n1 * n2 + n2 * n3 + n3 * n1, axis=0)
    return 2.0 * np.arctan2(triple, dots)


def magnetic_current_topological(fc, cfg):
    """
    Magnetic charge density j_0 = 1/(2e) eps_ijk eps_abc d_i phihat^a d_j phihat^b d_k phihat^c
    on the (N-1)^3 cell centres.

    The density is the Jacobian of phihat, so its integral over a cell is the
    solid angle phihat sweeps over the cell surface, divided by e. Each cell
    sums that solid angle over its twelve face triangles; the cell totals are
    multiples of 4 pi and the grid integral is 4 pi / e times the winding.
    """
    phihat = unit_higgs(fc, cfg)
    n = cfg.n

    def corner(offset):
        dx, dy, dz = offset
        return phihat[:, dx:n - 1 + dx, dy:n - 1 + dy, dz:n - 1 + dz]

    swept = np.zeros((n - 1,) * 3)
    for q0, q1, q2, q3 in CELL_FACES:
        c0, c1, c2, c3 = corner(q0), corner(q1), corner(q2), corner(q3)
        swept += _solid_angle(c0, c1, c2) + _solid_angle(c0, c2, c3)
    return swept / (cfg.e * cfg.h ** 3)


def total_magnetic_current(fc, cfg):
    """Grid integral of j_0: the enclosed magnetic charge."""
    return float(np.sum(magnetic_current_topological(fc, cfg)) * cfg.h ** 3)


def energy_density(fc, cfg):
    """Static energy density 1/2 (B^2 + (D Phi)^2) + lambda/4 (|Phi|^2 - v^2)^2."""
    b = magnetic_field(fc, cfg)
    d_phi = covariant_derivative(fc, cfg)
    kinetic = 0.5 * (np.sum(b ** 2, axis=(0, 1)) + np.sum(d_phi ** 2, axis=(0, 1)))
    return kinetic + higgs_potential(fc.phi_norm(), cfg.lam, cfg.v)


def total_energy(fc, cfg):
    """
    Energy inside the largest inscribed sphere plus a Coulomb tail.

    Beyond the sphere the density is taken to fall as r^-4 from its
    spherical average on the sphere, which adds 4 pi R^3 <E(R)>.
    """
    density = energy_density(fc, cfg)
    radius = cfg.max_radius
    inside = cfg.radius() <= radius
    core = float(np.sum(density[inside]) * cfg.h ** 3)
    tail = 4.0 * np.pi * radius ** 3 * sphere_average(cfg, density, radius)
    logger.debug(f"energy: core={core:.6f} tail={tail:.6f}")
    return core + tail


def bogomolny_residual(fc, cfg):
    """max over the grid of |B_i^a - D_i Phi^a|."""
    difference = magnetic_field(fc, cfg) - covariant_derivative(fc, cfg)
    return float(np.max(np.sqrt(np.sum(difference ** 2, axis=(0, 1)))))


def radial_profile(fc, cfg, bins=None):
    """Rows (r, |phi|, |B|, energy_density) averaged over radial shells."""
    bins = bins or BPS_CONFIG['profile_bins']
    r = cfg.radius().ravel()
    columns = (
        r,
        fc.phi_norm().ravel(),
        np.sqrt(np.sum(magnetic_field(fc, cfg) ** 2, axis=(0, 1))).ravel(),
        energy_density(fc, cfg).ravel(),
    )
    edges = np.linspace(0.0, cfg.max_radius, bins + 1)
    means = [binned_statistic(r, column, statistic='mean', bins=edges).statistic for column in columns]
    rows = np.column_stack(means)
    return [tuple(float(value) for value in row) for row in rows if np.all(np.isfinite(row))]
