"""
Numerical settings for the continuum monopole evaluator.
"""

BPS_CONFIG = {
    # |phi| / v below this is treated as a zero of the Higgs field
    'singular_tol': 1e-8,
    # Gauss-Legendre nodes in cos(theta) x uniform nodes in phi
    'sphere_nodes': (32, 64),
    # below this value of e v r the closed forms switch to their Taylor series
    'series_threshold': 1e-2,
    'profile_bins': 48,
}

# smallest grid accepted by ContinuumConfig
MIN_GRID_POINTS = 8
