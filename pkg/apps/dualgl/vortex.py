"""
Static vortex profiles of the dual abelian Higgs model.

With S = v sigma and x = ln r the profile equations read

    sigma_xx - n^2 (1-a)^2 sigma - 2 lambda v^2 r^2 sigma (sigma^2 - 1) = 0
    a_xx - 2 a_x + g^2 v^2 r^2 sigma^2 (1-a) = 0

on a uniform x grid. Near the axis sigma ~ r^n and a ~ r^2, imposed as
sigma_x = n sigma and a_x = 2 a at the innermost point; sigma = a = 1 at rmax.
The discrete system is solved by damped Newton iteration on a sparse
Jacobian.
"""

import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy import sparse
from scipy.integrate import simpson
from scipy.sparse.linalg import spsolve
from scipy.stats import linregress

from apps.dualgl.config import MIN_GRID_POINTS, MIN_RMAX_FACTOR, TAIL_FIT_BAND, vortex_defaults
from apps.dualgl.params import lengths_and_type, masses
from apps.errors import ConfigError, ConvergenceError, SignalError

logger = logging.getLogger("dualmeissner.dualgl.vortex")


@dataclass
class VortexProfile:
    """S(r) and a(r) on a logarithmic grid; the dual potential is b_theta = n a / (g r)."""

    params: object
    r: np.ndarray
    S: np.ndarray
    a: np.ndarray
    iterations: int = 0
    residual: float = 0.0

    @classmethod
    def constant(cls, params, r, s_value, a_value):
        r = np.asarray(r, dtype=float)
        return cls(params, r, np.full_like(r, s_value), np.full_like(r, a_value))

    @property
    def x(self):
        return np.log(self.r)

    def b_theta(self):
        return self.params.n * self.a / (self.params.g * self.r)

    def derivatives(self):
        """(S', a') with respect to r."""
        x = self.x
        return (
            np.gradient(self.S, x, edge_order=2) / self.r,
            np.gradient(self.a, x, edge_order=2) / self.r,
        )

    def energy_density(self):
        p = self.params
        ds, da = self.derivatives()
        winding = p.n * p.n
        return (
            ds ** 2
            + winding * (1.0 - self.a) ** 2 * self.S ** 2 / self.r ** 2
            + winding * da ** 2 / (p.g * p.g * self.r ** 2)
            + p.lam * (self.S ** 2 - p.v ** 2) ** 2
        )

    def rows(self):
        return zip(self.r, self.S, self.a, self.b_theta(), self.energy_density())


def radial_grid(p, grid_points=None, rmax=None, rmin=None):
    defaults = vortex_defaults()
    scales = lengths_and_type(p)
    longest, shortest = max(scales.Lambda, scales.L), min(scales.Lambda, scales.L)
    grid_points = int(grid_points or defaults['grid_points'])
    rmax = float(rmax or defaults['rmax_factor'] * longest)
    rmin = float(rmin or defaults['rmin_factor'] * shortest)
    if grid_points < MIN_GRID_POINTS:
        raise ConfigError(f"vortex grid needs at least {MIN_GRID_POINTS} points, got {grid_points}", key='vortex.grid')
    if rmax < MIN_RMAX_FACTOR * longest:
        raise ConfigError(
            f"rmax={rmax} must be at least {MIN_RMAX_FACTOR:g} * max(Lambda, L) = {MIN_RMAX_FACTOR * longest}",
            key='vortex.rmax',
        )
    if not 0.0 < rmin < rmax:
        raise ConfigError(f"rmin={rmin} must lie in (0, rmax)", key='vortex.rmin')
    return np.exp(np.linspace(math.log(rmin), math.log(rmax), grid_points))


class NewtonSystem:
    """Residual and Jacobian of the discretised profile equations in (sigma, a)."""

    def __init__(self, p, r):
        self.p = p
        self.r = r
        self.size = len(r)
        self.dx = math.log(r[1] / r[0])
        self.mass_h2 = 2.0 * p.lam * p.v ** 2 * r ** 2
        self.mass_b2 = (p.g * p.v) ** 2 * r ** 2

    def split(self, u):
        return u[:self.size], u[self.size:]

    def residual(self, u):
        sigma, a = self.split(u)
        n, dx = self.p.n, self.dx
        f_s = np.empty(self.size)
        f_a = np.empty(self.size)
        inner = slice(1, -1)
        d2s = (sigma[2:] - 2.0 * sigma[1:-1] + sigma[:-2]) / dx ** 2
        d2a = (a[2:] - 2.0 * a[1:-1] + a[:-2]) / dx ** 2
        d1a = (a[2:] - a[:-2]) / (2.0 * dx)
        s, b = sigma[inner], a[inner]
        f_s[inner] = d2s - n * n * (1.0 - b) ** 2 * s - self.mass_h2[inner] * s * (s * s - 1.0)
        f_a[inner] = d2a - 2.0 * d1a + self.mass_b2[inner] * s * s * (1.0 - b)
        f_s[0] = (-3.0 * sigma[0] + 4.0 * sigma[1] - sigma[2]) / (2.0 * dx) - n * sigma[0]
        f_a[0] = (-3.0 * a[0] + 4.0 * a[1] - a[2]) / (2.0 * dx) - 2.0 * a[0]
        f_s[-1] = sigma[-1] - 1.0
        f_a[-1] = a[-1] - 1.0
        return np.concatenate([f_s, f_a])

    def _banded(self, main, lower, upper, first_row_far):
        """Tridiagonal block with one extra entry at (0, 2) for the one-sided boundary row."""
        second = np.zeros(self.size - 2)
        second[0] = first_row_far
        return sparse.diags([lower, main, upper, second], [-1, 0, 1, 2], format='csr')

    def jacobian(self, u):
        sigma, a = self.split(u)
        n, dx, size = self.p.n, self.dx, self.size
        inv2 = 1.0 / dx ** 2

        main_s = -2.0 * inv2 - n * n * (1.0 - a) ** 2 - self.mass_h2 * (3.0 * sigma ** 2 - 1.0)
        main_a = -2.0 * inv2 - self.mass_b2 * sigma ** 2
        cross_sa = 2.0 * n * n * (1.0 - a) * sigma
        cross_as = 2.0 * self.mass_b2 * sigma * (1.0 - a)

        upper_s = np.full(size - 1, inv2)
        lower_s = np.full(size - 1, inv2)
        upper_a = np.full(size - 1, inv2 - 1.0 / dx)
        lower_a = np.full(size - 1, inv2 + 1.0 / dx)

        # innermost row: one-sided derivative minus the indicial term
        main_s[0] = -1.5 / dx - n
        main_a[0] = -1.5 / dx - 2.0
        upper_s[0] = upper_a[0] = 2.0 / dx
        # outermost row: Dirichlet
        main_s[-1] = main_a[-1] = 1.0
        lower_s[-1] = lower_a[-1] = 0.0
        for cross in (cross_sa, cross_as):
            cross[0] = cross[-1] = 0.0

        return sparse.bmat([
            [self._banded(main_s, lower_s, upper_s, -0.5 / dx), sparse.diags(cross_sa)],
            [sparse.diags(cross_as), self._banded(main_a, lower_a, upper_a, -0.5 / dx)],
        ], format='csc')


def initial_guess(p, r):
    m_h, m_b = masses(p)
    return np.concatenate([np.tanh(m_h * r) ** p.n, np.tanh(m_b * r) ** 2])


def solve_vortex(p, rmax=None, grid_points=None, tol=None, max_iter=None, rmin=None):
    """Damped Newton solution of the profile equations; raises ConvergenceError on failure."""
    defaults = vortex_defaults()
    tol = float(tol or defaults['tol'])
    max_iter = int(max_iter or defaults['max_iter'])
    if not tol > 0.0:
        raise ConfigError(f"tolerance must be positive, got {tol}", key='vortex.tol')

    r = radial_grid(p, grid_points, rmax, rmin)
    system = NewtonSystem(p, r)
    u = initial_guess(p, r)
    f = system.residual(u)
    residual = float(np.max(np.abs(f)))

    iterations = 0
    while residual >= tol:
        if iterations >= max_iter:
            raise ConvergenceError(
                f"vortex solver did not converge in {max_iter} iterations (residual {residual:.3e})",
                residual=residual, iterations=iterations,
            )
        iterations += 1
        step = spsolve(system.jacobian(u), -f)
        # backtrack on the Euclidean norm
        merit = np.linalg.norm(f)
        damping = 1.0
        while True:
            trial = u + damping * step
            f_trial = system.residual(trial)
            merit_trial = np.linalg.norm(f_trial)
            if np.isfinite(merit_trial) and merit_trial < merit:
                break
            damping *= 0.5
            if damping < defaults['min_step']:
                raise ConvergenceError(
                    f"vortex solver stalled at iteration {iterations} (residual {residual:.3e})",
                    residual=residual, iterations=iterations,
                )
        u, f = trial, f_trial
        residual = float(np.max(np.abs(f)))
        logger.debug(f"Newton iteration {iterations}: residual={residual:.3e} damping={damping:g}")

    sigma, a = system.split(u)
    logger.info(f"✅ Vortex n={p.n} g={p.g} lambda={p.lam} converged in {iterations} iterations")
    return VortexProfile(p, r, p.v * sigma, a.copy(), iterations=iterations, residual=residual)


def flux(profile):
    """Line integral of the dual potential around r = rmax: 2 pi n a(rmax) / g."""
    p = profile.params
    return 2.0 * math.pi * p.n * float(profile.a[-1]) / p.g


def string_tension(profile, core_cutoff=None):
    """
    2 pi integral of r E(r) dr, optionally restricted to r >= core_cutoff.

    The cutoff need not sit on a grid point: the integrand is interpolated at
    ln(core_cutoff) and the partial panel up to the first kept point is added
    by the trapezoid rule.
    """
    x = profile.x
    integrand = profile.r ** 2 * profile.energy_density()
    if core_cutoff is None:
        return 2.0 * math.pi * float(simpson(integrand, x=x))

    if not core_cutoff > profile.r[0]:
        raise ConfigError(f"core cutoff {core_cutoff} lies inside the innermost radius {profile.r[0]:g}")
    x_cut = math.log(core_cutoff)
    keep = x > x_cut
    if np.count_nonzero(keep) < 3:
        raise ConfigError(f"core cutoff {core_cutoff} leaves too few grid points")
    first = int(np.argmax(keep))
    head = float(np.interp(x_cut, x, integrand))
    edge = 0.5 * (x[first] - x_cut) * (head + integrand[first])
    return 2.0 * math.pi * (float(simpson(integrand[keep], x=x[keep])) + float(edge))


def _fit_decay(r, deviation, prefactor_power):
    low, high = TAIL_FIT_BAND
    window = (deviation > low) & (deviation < high)
    if np.count_nonzero(window) < 5:
        raise SignalError(f"tail fit window holds only {np.count_nonzero(window)} points")
    fit = linregress(r[window], np.log(deviation[window] / r[window] ** prefactor_power))
    return -fit.slope


def fit_tail_masses(profile):
    """
    Decay masses of the approach to the vacuum.

    v - S falls as exp(-m_H r)/sqrt(r) and 1 - a as sqrt(r) exp(-m_B r);
    returns (m_H fit, m_B fit).
    """
    v = profile.params.v
    m_h = _fit_decay(profile.r, (v - profile.S) / v, -0.5)
    m_b = _fit_decay(profile.r, 1.0 - profile.a, 0.5)
    return m_h, m_b
