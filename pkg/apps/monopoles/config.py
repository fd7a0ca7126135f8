"""
Defaults for maximal abelian gauge fixing and the abelian measurements.

Project-wide overrides live in ``settings.DUALMEISSNER``.
"""

from django.conf import settings

MAG_CONFIG = {
    'tol': 1e-7,
    'max_iter': 5000,
    # overrelaxation exponent of the local gauge rotation, 1 <= omega < 2
    'omega': 1.7,
    # |x| below this leaves the site unrotated
    'degenerate_norm': 1e-14,
}

# loop sizes measured by the simulate/magflow pipelines
LOOP_SIZES = ((1, 1), (2, 2), (3, 3))
CREUTZ_MAX_EXTENT = 3
ABELIAN_CHARGE = 2


def mag_defaults():
    """MAG_CONFIG merged with any ``DUALMEISSNER['MAG']`` override from settings."""
    overrides = getattr(settings, 'DUALMEISSNER', {}).get('MAG', {})
    return {**MAG_CONFIG, **overrides}
