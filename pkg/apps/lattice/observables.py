"""
Gauge-invariant observables and gauge transformations of a GaugeField.
"""

import itertools

import numpy as np

from apps.errors import ConfigError, LoopRangeError
from apps.lattice.field import NDIM, GaugeField, shift
from apps.su2.group import haar_array, qdag, qmul

PLANES = tuple(itertools.combinations(range(NDIM), 2))


def plaquettes(links, mu, nu):
    """U_mu(x) U_nu(x+mu) U_mu(x+nu)^+ U_nu(x)^+ for every site."""
    u_mu, u_nu = links[mu], links[nu]
    return qmul(
        qmul(qmul(u_mu, shift(u_nu, mu)), qdag(shift(u_mu, nu))),
        qdag(u_nu),
    )


def average_plaquette(field):
    """Mean of 1/2 Re Tr U_p over all 6 V plaquettes."""
    return float(np.mean([plaquettes(field.links, mu, nu)[..., 0].mean() for mu, nu in PLANES]))


def wilson_action(field, beta):
    """S_W = beta * sum_p (1 - 1/2 Re Tr U_p)."""
    total = sum(np.sum(1.0 - plaquettes(field.links, mu, nu)[..., 0]) for mu, nu in PLANES)
    return float(beta * total)


def line_product(links, mu, length):
    """Ordered product U_mu(x) U_mu(x+mu) ... U_mu(x+(length-1)mu) for every start x."""
    u = links[mu]
    line = u.copy()
    for step in range(1, length):
        line = qmul(line, shift(u, mu, step))
    return line


def check_loop_extent(dims, r, t):
    if int(r) != r or int(t) != t or r < 1 or t < 1:
        raise ConfigError(f"loop extents must be positive integers, got R={r}, T={t}")
    limit = min(dims) / 2
    if r > limit or t > limit:
        raise LoopRangeError(
            f"{r}x{t} loop exceeds half the smallest lattice extent ({min(dims)})"
        )


def wilson_loop(field, r, t):
    """
    1/2 Re Tr of the R x T loop averaged over all positions, all six planes
    and both orientations of each plane.
    """
    r, t = int(r), int(t)
    check_loop_extent(field.dims, r, t)
    links = field.links
    values = []
    for mu, nu in PLANES:
        for a, b, la, lb in ((mu, nu, r, t), (nu, mu, r, t)):
            side_a = line_product(links, a, la)
            side_b = line_product(links, b, lb)
            loop = qmul(
                qmul(qmul(side_a, shift(side_b, a, la)), qdag(shift(side_a, b, lb))),
                qdag(side_b),
            )
            values.append(loop[..., 0].mean())
    return float(np.mean(values))


def gauge_transform(field, g):
    """U_mu(x) -> g(x) U_mu(x) g(x+mu)^+ for a site array ``g`` of quaternions."""
    links = np.empty_like(field.links)
    for mu in range(NDIM):
        links[mu] = qmul(qmul(g, field.links[mu]), qdag(shift(g, mu)))
    return GaugeField(field.dims, links)


def random_gauge_transform(field, rng):
    """Gauge transform by Haar-random g(x); returns a new field."""
    return gauge_transform(field, haar_array(rng, field.dims))
