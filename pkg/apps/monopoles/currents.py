"""
Dirac-string decomposition of abelian plaquettes and monopole currents.

The plaquette angle

    f_{mu nu}(x) = theta_mu(x) + theta_nu(x+mu) - theta_mu(x+nu) - theta_nu(x)

is split as f = fbar + 2 pi n with fbar in (-pi, pi]. The integer n counts
Dirac strings through the plaquette and the current on the dual link

    k_mu(x) = 1/2 eps_{mu nu rho sigma} [n_{rho sigma}(x+mu+nu) - n_{rho sigma}(x+mu)]

is integer valued and conserved exactly.
"""

import itertools
import logging
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from apps.lattice.field import NDIM, shift
from apps.monopoles.projection import wrap_angle

logger = logging.getLogger("dualmeissner.monopoles.currents")


def levi_civita(*indices):
    """Sign of the permutation ``indices`` of (0, 1, 2, 3); 0 if any index repeats."""
    if len(set(indices)) != len(indices):
        return 0
    sign = 1
    idx = list(indices)
    for i in range(len(idx)):
        for j in range(i + 1, len(idx)):
            if idx[i] > idx[j]:
                sign = -sign
    return sign


@dataclass
class MonopoleCurrent:
    """Integer currents k, shape (4, Lx, Ly, Lz, Lt), on dual links."""

    dims: Tuple[int, int, int, int]
    k: np.ndarray

    def divergence(self):
        """sum_mu k_mu(x) - k_mu(x - mu) at every dual site."""
        return sum(self.k[mu] - shift(self.k[mu], mu, -1) for mu in range(NDIM))

    def is_conserved(self):
        return bool(np.all(self.divergence() == 0))

    def nonzero(self):
        """(x, y, z, t, mu, k) rows of every nonzero current, in lexicographic order."""
        rows = []
        for mu in range(NDIM):
            for site in zip(*np.nonzero(self.k[mu])):
                rows.append(tuple(int(c) for c in site) + (mu, int(self.k[mu][site])))
        return sorted(rows)


def plaquette_angle(theta, mu, nu):
    return theta[mu] + shift(theta[nu], mu) - shift(theta[mu], nu) - theta[nu]


def decompose(f):
    """(fbar, n) with f = fbar + 2 pi n, fbar in (-pi, pi]."""
    return wrap_angle(f)


def abelian_plaquette_decompose(af, site, mu, nu):
    """Decomposition of the single plaquette (site, mu, nu)."""
    fbar, n = decompose(plaquette_angle(af.theta, mu, nu)[tuple(site)])
    return float(fbar), int(n)


def dirac_strings(af):
    """n_{rho sigma}(x) for all ordered pairs, antisymmetric in (rho, sigma)."""
    n = np.zeros((NDIM, NDIM) + af.dims, dtype=np.int64)
    for rho, sigma in itertools.combinations(range(NDIM), 2):
        _, n_rs = decompose(plaquette_angle(af.theta, rho, sigma))
        n[rho, sigma] = n_rs
        n[sigma, rho] = -n_rs
    return n


def monopole_current(af):
    """DeGrand-Toussaint current of an abelian field."""
    n = dirac_strings(af)
    k = np.zeros((NDIM,) + af.dims, dtype=np.int64)
    for mu in range(NDIM):
        for nu in range(NDIM):
            for rho, sigma in itertools.combinations(range(NDIM), 2):
                sign = levi_civita(mu, nu, rho, sigma)
                if sign == 0:
                    continue
                ahead = shift(n[rho, sigma], mu)
                k[mu] += sign * (shift(ahead, nu) - ahead)
    return MonopoleCurrent(af.dims, k)


def monopole_density(mc):
    """sum |k_mu| / (4 V)."""
    volume = int(np.prod(mc.dims))
    return float(np.sum(np.abs(mc.k))) / (NDIM * volume)
