"""
Monte Carlo updates for the Wilson plaquette action

    S_W = beta * sum_p (1 - 1/2 Re Tr U_p)

Links of one direction and one checkerboard parity share no staple, so each
(direction, parity) block is updated at once from staples computed before the
block starts. Within a block the work is split into time slices; every slice
owns its random stream, so the result is the same for any number of worker
threads.
"""

import logging

import numpy as np

from apps.errors import DualMeissnerError
from apps.lattice.config import HEATBATH_CONFIG, validate_beta
from apps.lattice.field import NDIM, shift, site_parity
from apps.lattice.streams import BlockStreams, resolve
from apps.su2.group import GroupElement, qdag, qmul

logger = logging.getLogger("dualmeissner.lattice.updates")


# ---------------------------------------------------------------------------
# Staples
# ---------------------------------------------------------------------------

def staple_sum(links, mu):
    """
    Unnormalised staple A_mu(x) for every site, quaternion array (Lx, Ly, Lz, Lt, 4).

    A = sum_{nu != mu} U_nu(x+mu) U_mu(x+nu)^+ U_nu(x)^+
                     + U_nu(x+mu-nu)^+ U_mu(x-nu)^+ U_nu(x-nu)

    so that the action of the link U_mu(x) is -beta/2 Re Tr(U_mu(x) A).
    """
    u_mu = links[mu]
    total = np.zeros_like(u_mu)
    for nu in range(NDIM):
        if nu == mu:
            continue
        u_nu = links[nu]
        upper = qmul(qmul(shift(u_nu, mu), qdag(shift(u_mu, nu))), qdag(u_nu))
        u_nu_back = shift(u_nu, nu, -1)
        lower = qmul(qmul(qdag(shift(u_nu_back, mu)), qdag(shift(u_mu, nu, -1))), u_nu_back)
        total += upper + lower
    return total


def split_staple(staple):
    """Write a staple sum as k * V with k >= 0 and V in SU(2)."""
    k = np.linalg.norm(staple, axis=-1)
    safe = np.where(k > 0.0, k, 1.0)
    v = np.where((k > 0.0)[..., None], staple / safe[..., None], np.array([1.0, 0.0, 0.0, 0.0]))
    return k, v


def staple(field, site, mu):
    """(k, V) for a single link; k = 6 and V = 1 on a cold field."""
    k, v = split_staple(staple_sum(field.links, mu)[tuple(site)])
    return float(k), GroupElement.from_array(v)


# ---------------------------------------------------------------------------
# Heatbath sampling
# ---------------------------------------------------------------------------

def sample_w0(alpha, rng):
    """
    Draw w0 in [-1, 1] with density sqrt(1 - w0^2) exp(alpha w0).

    Kennedy-Pendleton accept/reject for alpha above ``creutz_threshold``,
    otherwise the inverse CDF of exp(alpha w0) accepted with probability
    sqrt(1 - w0^2). Rejected entries are redrawn until all are accepted.
    """
    alpha = np.asarray(alpha, dtype=float)
    w0 = np.empty_like(alpha)
    pending = np.arange(alpha.size)
    threshold = HEATBATH_CONFIG['creutz_threshold']
    flat = w0.reshape(-1)
    flat_alpha = alpha.reshape(-1)

    for _ in range(HEATBATH_CONFIG['max_rounds']):
        if pending.size == 0:
            return w0
        a = flat_alpha[pending]
        r = 1.0 - rng.random((4, pending.size))  # in (0, 1]
        use_kp = a >= threshold

        with np.errstate(divide='ignore', invalid='ignore', over='ignore'):
            x = -(np.log(r[0]) + np.cos(2.0 * np.pi * r[1]) ** 2 * np.log(r[2])) / np.where(use_kp, a, 1.0)
            kp_value = 1.0 - x
            kp_ok = r[3] ** 2 <= 1.0 - 0.5 * x

            tiny = a < 1e-10
            a_safe = np.where(tiny, 1.0, a)
            floor = np.exp(-2.0 * a_safe)
            creutz_value = np.where(
                tiny,
                2.0 * r[0] - 1.0,
                1.0 + np.log(r[0] * (-np.expm1(-2.0 * a_safe)) + floor) / a_safe,
            )
            creutz_value = np.clip(creutz_value, -1.0, 1.0)
            creutz_ok = r[3] <= np.sqrt(1.0 - creutz_value ** 2)

        value = np.where(use_kp, kp_value, creutz_value)
        accepted = np.where(use_kp, kp_ok, creutz_ok)
        flat[pending[accepted]] = value[accepted]
        pending = pending[~accepted]

    raise DualMeissnerError(f"heatbath sampler did not terminate ({pending.size} entries pending)")


def heatbath_elements(alpha, rng):
    """SU(2) elements W distributed as sqrt(1 - w0^2) exp(alpha w0) dW."""
    w0 = sample_w0(alpha, rng)
    n = w0.shape
    cos_theta = 2.0 * rng.random(n) - 1.0
    phi = 2.0 * np.pi * rng.random(n)
    sin_theta = np.sqrt(1.0 - cos_theta ** 2)
    length = np.sqrt(np.clip(1.0 - w0 ** 2, 0.0, None))
    return np.stack(
        [
            w0,
            length * sin_theta * np.cos(phi),
            length * sin_theta * np.sin(phi),
            length * cos_theta,
        ],
        axis=-1,
    )


# ---------------------------------------------------------------------------
# Sweeps
# ---------------------------------------------------------------------------

def _run_slices(dims, worker, executor):
    slices = range(dims[3])
    if executor is None:
        return list(map(worker, slices))
    return list(executor.map(worker, slices))


def heatbath_sweep(field, beta, rng, executor=None):
    """
    Visit every link once in checkerboard order with the SU(2) heatbath.

    ``rng`` is a BlockStreams (deterministic for any thread count) or a numpy
    Generator (always run in the calling thread).
    """
    beta = validate_beta(beta)
    if not isinstance(rng, BlockStreams):
        executor = None
    parity = site_parity(field.dims)

    for mu in range(NDIM):
        for p in (0, 1):
            k, v = split_staple(staple_sum(field.links, mu))
            mask = parity == p

            def update_slice(t, mu=mu, p=p, k=k, v=v, mask=mask):
                sites = mask[..., t]
                gen = resolve(rng, mu, p, t)
                w = heatbath_elements(beta * k[..., t][sites], gen)
                return t, sites, qmul(w, qdag(v[..., t, :][sites]))

            for t, sites, new in _run_slices(field.dims, update_slice, executor):
                field.links[mu, :, :, :, t][sites] = new
    return field


def overrelax_sweep(field, executor=None):
    """Microcanonical reflection U -> V^+ U^+ V^+ of every link; S_W is unchanged."""
    parity = site_parity(field.dims)

    for mu in range(NDIM):
        for p in (0, 1):
            k, v = split_staple(staple_sum(field.links, mu))
            mask = parity == p

            def reflect_slice(t, mu=mu, k=k, v=v, mask=mask):
                sites = mask[..., t] & (k[..., t] > 0.0)
                vd = qdag(v[..., t, :][sites])
                u = field.links[mu, :, :, :, t][sites]
                return t, sites, qmul(qmul(vd, qdag(u)), vd)

            for t, sites, new in _run_slices(field.dims, reflect_slice, executor):
                field.links[mu, :, :, :, t][sites] = new
    return field


def reflect_link(u, v):
    """Single-link overrelaxation against a frozen staple direction V."""
    vd = qdag(v.as_array())
    return GroupElement.from_array(qmul(qmul(vd, qdag(u.as_array())), vd))


class MarkovChain:
    """One heatbath sweep followed by ``overrelax_per_heatbath`` reflections per step."""

    def __init__(self, field, beta, seed, overrelax_per_heatbath=0, executor=None, sweep=0):
        self.field = field
        self.beta = validate_beta(beta)
        self.seed = int(seed)
        self.overrelax_per_heatbath = int(overrelax_per_heatbath)
        self.executor = executor
        self.sweep_index = int(sweep)

    def step(self):
        self.sweep_index += 1
        heatbath_sweep(self.field, self.beta, BlockStreams(self.seed, self.sweep_index), self.executor)
        for _ in range(self.overrelax_per_heatbath):
            overrelax_sweep(self.field, self.executor)
        return self.sweep_index

    def run(self, n_sweeps):
        for _ in range(n_sweeps):
            self.step()
        logger.debug(f"Chain at sweep {self.sweep_index} (beta={self.beta})")
        return self.field
