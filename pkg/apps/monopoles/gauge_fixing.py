"""
Maximal abelian gauge fixing.

The functional maximised is

    R[U] = sum_{x,mu} 1/2 Tr(s3 U_mu(x) s3 U_mu(x)^+)

reported per link and mapped to [0, 1], i.e. the mean of a0^2 + a3^2.

Under a rotation g(x) at one site the local part of R is
Tr(g^+ s3 g X(x)) with

    X(x) = sum_mu U_mu(x) s3 U_mu(x)^+ + U_mu(x-mu)^+ s3 U_mu(x-mu)

so the optimum is the g that rotates the direction of X onto s3. Sites of one
checkerboard parity share no link and are rotated together; each rotation is
raised to the power omega (overrelaxation).
"""

import logging
from dataclasses import dataclass, field as dataclass_field
from typing import List

import numpy as np

from apps.errors import ConfigError
from apps.lattice.field import NDIM, GaugeField, shift, site_parity
from apps.lattice.observables import gauge_transform
from apps.monopoles.config import mag_defaults
from apps.su2.group import qdag, qmul, qnormalize

logger = logging.getLogger("dualmeissner.monopoles.gauge_fixing")

SIGMA3 = np.array([0.0, 0.0, 0.0, 1.0])
E3 = np.array([0.0, 0.0, 1.0])


@dataclass
class MagFixReport:
    functional_value: float
    iterations: int
    converged: bool
    final_delta: float
    max_rotation: float = 0.0
    history: List[float] = dataclass_field(default_factory=list)

    def to_dict(self):
        return {
            'functional_value': self.functional_value,
            'iterations': self.iterations,
            'converged': self.converged,
            'final_delta': self.final_delta,
            'max_rotation': self.max_rotation,
        }


def mag_functional(field):
    """Per-link MAG functional in [0, 1]; 1 for diagonal links."""
    links = field.links
    return float(np.mean(links[..., 0] ** 2 + links[..., 3] ** 2))


def adjoint_vector(field):
    """The vector x(x) of X(x) = x . sigma for every site."""
    links = field.links
    total = np.zeros(field.dims + (3,))
    for mu in range(NDIM):
        u = links[mu]
        total += qmul(qmul(u, SIGMA3), qdag(u))[..., 1:]
        back = shift(u, mu, -1)
        total += qmul(qmul(qdag(back), SIGMA3), back)[..., 1:]
    return total


def optimal_rotation(x, degenerate_norm=1e-14):
    """
    g with g^+ s3 g = x_hat . s, written (1 + x_hat.e3, -(x_hat x e3)) normalised.

    x_hat = -e3 rotates by pi about e1; |x| ~ 0 gives the identity.
    """
    norm = np.linalg.norm(x, axis=-1)
    safe = np.where(norm > degenerate_norm, norm, 1.0)
    xhat = x / safe[..., None]
    cos_angle = xhat[..., 2]
    g = np.concatenate([(1.0 + cos_angle)[..., None], -np.cross(xhat, E3)], axis=-1)
    antiparallel = (norm > degenerate_norm) & (np.linalg.norm(g, axis=-1) < 1e-12)
    g[antiparallel] = np.array([0.0, -1.0, 0.0, 0.0])
    g[norm <= degenerate_norm] = np.array([1.0, 0.0, 0.0, 0.0])
    return qnormalize(g)


def overrelax_rotation(g, omega):
    """g = (cos phi, sin phi w) -> (cos omega phi, sin omega phi w)."""
    g = np.where((g[..., 0] < 0.0)[..., None], -g, g)
    phi = np.arccos(np.clip(g[..., 0], -1.0, 1.0))
    vec_norm = np.linalg.norm(g[..., 1:], axis=-1)
    safe = np.where(vec_norm > 0.0, vec_norm, 1.0)
    w = g[..., 1:] / safe[..., None]
    out = np.concatenate([np.cos(omega * phi)[..., None], np.sin(omega * phi)[..., None] * w], axis=-1)
    return qnormalize(out)


def rotation_angle(g):
    """Rotation angle in [0, pi] of the adjoint action of g."""
    return 2.0 * np.arccos(np.clip(np.abs(g[..., 0]), 0.0, 1.0))


def mag_fix(field, tol=None, max_iter=None, omega=None):
    """
    Rotate ``field`` towards the maximal abelian gauge.

    Returns a new GaugeField and a MagFixReport. Running out of iterations is
    reported through ``converged=False``; the caller decides what to do.
    """
    defaults = mag_defaults()
    tol = defaults['tol'] if tol is None else float(tol)
    max_iter = defaults['max_iter'] if max_iter is None else int(max_iter)
    omega = defaults['omega'] if omega is None else float(omega)
    if not tol > 0:
        raise ConfigError(f"MAG tolerance must be positive, got {tol}", key='mag.tol')
    if max_iter < 1:
        raise ConfigError(f"MAG max_iter must be >= 1, got {max_iter}", key='mag.max_iter')
    if not 1.0 <= omega < 2.0:
        raise ConfigError(f"MAG overrelaxation omega must be in [1, 2), got {omega}", key='mag.omega')

    parity = site_parity(field.dims)
    current = GaugeField(field.dims, field.links.copy())
    value = mag_functional(current)
    history = [value]
    delta = float('inf')
    max_rotation = 0.0
    identity = np.array([1.0, 0.0, 0.0, 0.0])

    for iteration in range(1, max_iter + 1):
        max_rotation = 0.0
        for p in (0, 1):
            g = optimal_rotation(adjoint_vector(current), defaults['degenerate_norm'])
            g = np.where((parity == p)[..., None], g, identity)
            max_rotation = max(max_rotation, float(np.max(rotation_angle(g))))
            if omega != 1.0:
                g = overrelax_rotation(g, omega)
            current = gauge_transform(current, g)

        new_value = mag_functional(current)
        delta = abs(new_value - value) / max(abs(new_value), 1e-300)
        history.append(new_value)
        value = new_value
        if delta < tol:
            logger.debug(f"MAG converged after {iteration} iterations (R={value:.12f})")
            return current, MagFixReport(value, iteration, True, delta, max_rotation, history)

    logger.warning(f"⚠️ MAG not converged after {max_iter} iterations (delta={delta:.3e})")
    return current, MagFixReport(value, max_iter, False, delta, max_rotation, history)
