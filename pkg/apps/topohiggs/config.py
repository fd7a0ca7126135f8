"""
Constants for the homology-sphere mass and e-fold formulas.
"""

import math
from pathlib import Path

# Planck mass in GeV; 'hbar' is sqrt(hbar c / G), 'h' is sqrt(h c / G)
PLANCK_MASS_GEV = {
    'hbar': 1.220890e19,
    'h': 1.220890e19 * math.sqrt(2.0 * math.pi),
}
DEFAULT_PLANCK_CONVENTION = 'hbar'

# minimal number of e-folds for sufficient inflation
SUFFICIENT_EFOLDS = 60.0

INVARIANTS_CSV = Path(__file__).resolve().parent / 'data' / 'invariants.csv'
INVARIANT_COLUMNS = ('name', 'volume', 'cs')
OUTPUT_COLUMNS = ('name', 'efolds', 'log10_scale', 'higgs_mass_gev', 'sufficient_inflation')

# psi(rho) = rho^4 - rho^2 before unfolding
MORSE_DEFAULTS = {
    'quartic': 1.0,
    'quadratic': -1.0,
}

HIGGS_MASS_CONVENTIONS = ('coupling', 'curvature')
