"""
Abelian Wilson loops and Creutz ratios.
"""

import numpy as np

from apps.errors import ConfigError, SignalError
from apps.lattice.field import shift
from apps.lattice.observables import PLANES, check_loop_extent


def line_sum(theta_mu, mu, length):
    """theta_mu(x) + theta_mu(x+mu) + ... over ``length`` links from every start x."""
    total = theta_mu.copy()
    for step in range(1, length):
        total = total + shift(theta_mu, mu, step)
    return total


def abelian_wilson_loop(af, r, t, charge=1):
    """
    < cos(charge * sum_C theta) > over all positions, planes and orientations
    of the R x T loop C.
    """
    if charge not in (1, 2):
        raise ConfigError(f"abelian loop charge must be 1 or 2, got {charge}")
    r, t = int(r), int(t)
    check_loop_extent(af.dims, r, t)
    theta = af.theta
    values = []
    for mu, nu in PLANES:
        for a, b in ((mu, nu), (nu, mu)):
            side_a = line_sum(theta[a], a, r)
            side_b = line_sum(theta[b], b, t)
            circulation = side_a + shift(side_b, a, r) - shift(side_a, b, t) - side_b
            values.append(np.cos(charge * circulation).mean())
    return float(np.mean(values))


def creutz_ratio(loop_table):
    """
    chi(R, T) = -ln[ W(R,T) W(R-1,T-1) / (W(R,T-1) W(R-1,T)) ]

    for every (R, T) with R, T >= 2 whose four loops are in ``loop_table``.
    """
    chi = {}
    for (r, t) in sorted(loop_table):
        if r < 2 or t < 2:
            continue
        keys = ((r, t), (r - 1, t - 1), (r, t - 1), (r - 1, t))
        if not all(key in loop_table for key in keys):
            continue
        w = [float(loop_table[key]) for key in keys]
        if any(not value > 0.0 for value in w):
            raise SignalError(
                f"Creutz ratio chi({r},{t}) undefined: non-positive Wilson loop in {dict(zip(keys, w))}"
            )
        chi[(r, t)] = -np.log(w[0] * w[1] / (w[2] * w[3]))
    return chi
