"""
GaugeField: SU(2) links on a periodic 4-D lattice.

Links are held in one array of shape ``(4, Lx, Ly, Lz, Lt, 4)``: direction
first, then the site, then the quaternion component. Neighbour access is a
periodic ``np.roll`` over the site axes.
"""

import logging
import math

import numpy as np

from apps.errors import ConfigError
from apps.lattice.config import LINK_NORM_TOL, validate_dims
from apps.lattice.streams import block_generator
from apps.su2.group import GroupElement, haar_array, qnormalize

logger = logging.getLogger("dualmeissner.lattice.field")

NDIM = 4


def shift(array, mu, step=1):
    """Value at x + step*mu for a site array with site axes first."""
    return np.roll(array, -step, axis=mu)


def site_parity(dims):
    """(x + y + z + t) mod 2 for every site; checkerboard updates need even extents."""
    if any(d % 2 for d in dims):
        raise ConfigError(f"checkerboard updates need even lattice extents, got {tuple(dims)}", key="lattice.dims")
    grids = np.indices(dims)
    return np.sum(grids, axis=0) % 2


class GaugeField:
    """Exclusive owner of a link array; copy before handing to another updater."""

    def __init__(self, dims, links):
        self.dims = validate_dims(dims)
        links = np.asarray(links, dtype=float)
        expected = (NDIM,) + self.dims + (4,)
        if links.shape != expected:
            raise ValueError(f"links must have shape {expected}, got {links.shape}")
        self.links = links

    @property
    def volume(self):
        return math.prod(self.dims)

    @property
    def n_links(self):
        return self.volume * NDIM

    def copy(self):
        return GaugeField(self.dims, self.links.copy())

    def link(self, site, mu):
        return GroupElement.from_array(self.links[(mu,) + tuple(site)])

    def set_link(self, site, mu, element):
        self.links[(mu,) + tuple(site)] = element.as_array()

    def max_norm_deviation(self):
        return float(np.max(np.abs(np.linalg.norm(self.links, axis=-1) - 1.0)))

    def is_normalized(self, tol=LINK_NORM_TOL):
        return self.max_norm_deviation() <= tol

    def renormalize(self):
        self.links = qnormalize(self.links)

    def __eq__(self, other):
        return (
            isinstance(other, GaugeField)
            and self.dims == other.dims
            and np.array_equal(self.links, other.links)
        )

    def __repr__(self):
        return f"GaugeField(dims={self.dims})"


def cold_start(dims):
    """All links set to the identity."""
    dims = validate_dims(dims)
    links = np.zeros((NDIM,) + dims + (4,))
    links[..., 0] = 1.0
    logger.debug(f"Cold start on {dims}")
    return GaugeField(dims, links)


def hot_start(dims, seed):
    """Every link drawn from the Haar measure; reproducible for a fixed seed."""
    dims = validate_dims(dims)
    rng = block_generator(int(seed))
    logger.debug(f"Hot start on {dims} with seed {seed}")
    return GaugeField(dims, haar_array(rng, (NDIM,) + dims))
