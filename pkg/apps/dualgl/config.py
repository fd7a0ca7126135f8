"""
Solver defaults for the dual Ginzburg-Landau vortex.

``settings.DUALMEISSNER['VORTEX']`` overrides any of the solver keys.
"""

from django.conf import settings

VORTEX_CONFIG = {
    'grid_points': 1024,
    # rmax = rmax_factor * max(Lambda, L), rmin = rmin_factor * min(Lambda, L)
    'rmax_factor': 20.0,
    'rmin_factor': 1e-3,
    'tol': 1e-8,
    'max_iter': 100,
    # smallest damping factor tried before giving up on a Newton step
    'min_step': 1.0 / 1024,
}

# solve_vortex preconditions
MIN_GRID_POINTS = 256
MIN_RMAX_FACTOR = 10.0

# tail fits use the stretch where the deviation lies in this band
TAIL_FIT_BAND = (1e-6, 1e-3)

LONDON_CONFIG = {
    # radii in units of the penetration depth Lambda
    'core_cutoff': 1.0,
    'sample_radius': 1.0,
    # deviations are reported outside this many coherence lengths
    'core_multiple': 3.0,
}

SUMMARY_COLUMNS = (
    'g', 'lambda', 'v', 'n', 'm_H', 'm_B', 'Lambda', 'L', 'type2',
    'flux', 'tension', 'iters', 'residual',
)
PROFILE_COLUMNS = ('r', 'S', 'a', 'b_theta', 'energy_density')


def vortex_defaults():
    overrides = getattr(settings, 'DUALMEISSNER', {}).get('VORTEX', {})
    return {**VORTEX_CONFIG, **overrides}
