"""
Configuration for the lattice Monte Carlo.

Holds the tunable constants of the update algorithms and the validated
``SimulationConfig`` value built by the run layer from a config file.
"""

import math
from dataclasses import asdict, dataclass
from typing import Tuple

from apps.errors import ConfigError

# Heatbath tuning
HEATBATH_CONFIG = {
    # below this value of beta*k the exp(alpha*w0) inverse-CDF sampler is used
    'creutz_threshold': 2.0,
    # rejected entries are redrawn in rounds; a round count this large means a bug
    'max_rounds': 10_000,
}

SNAPSHOT_MAGIC = b"SU2LAT\0\0"
SNAPSHOT_VERSION = 1
# links must come back normalised to this tolerance
LINK_NORM_TOL = 1e-10

START_CHOICES = ('cold', 'hot')
MAX_SEED = 2 ** 64 - 1


def validate_dims(dims):
    """Return ``dims`` as a 4-tuple of ints >= 2 or raise ConfigError."""
    try:
        dims = tuple(int(d) for d in dims)
    except (TypeError, ValueError):
        raise ConfigError(f"dims must be four integers, got {dims!r}", key='lattice.dims')
    if len(dims) != 4:
        raise ConfigError(f"dims must have 4 components, got {len(dims)}", key='lattice.dims')
    if any(d < 2 for d in dims):
        raise ConfigError(f"every lattice extent must be >= 2, got {dims}", key='lattice.dims')
    return dims


def validate_beta(beta, allow_zero=True):
    beta = float(beta)
    if not math.isfinite(beta):
        raise ConfigError(f"beta must be finite, got {beta}", key='lattice.beta')
    if beta < 0 or (beta == 0 and not allow_zero):
        raise ConfigError(f"beta must be {'>= 0' if allow_zero else '> 0'}, got {beta}", key='lattice.beta')
    return beta


@dataclass(frozen=True)
class SimulationConfig:
    """Validated parameters of one Markov chain."""

    beta: float
    dims: Tuple[int, int, int, int]
    seed: int = 0
    n_therm: int = 0
    n_sweeps: int = 1
    measure_every: int = 1
    overrelax_per_heatbath: int = 0
    start: str = 'cold'
    snapshot_every: int = 0
    measure_monopoles: bool = False

    def __post_init__(self):
        object.__setattr__(self, 'dims', validate_dims(self.dims))
        object.__setattr__(self, 'beta', validate_beta(self.beta, allow_zero=False))
        if not 0 <= int(self.seed) <= MAX_SEED:
            raise ConfigError(f"seed must be a 64-bit unsigned integer, got {self.seed}", key='run.seed')
        for name, minimum in (
            ('n_therm', 0),
            ('n_sweeps', 1),
            ('measure_every', 1),
            ('overrelax_per_heatbath', 0),
            ('snapshot_every', 0),
        ):
            value = getattr(self, name)
            if int(value) != value or value < minimum:
                raise ConfigError(f"{name} must be an integer >= {minimum}, got {value}", key=f"mc.{name}")
        if self.start not in START_CHOICES:
            raise ConfigError(f"start must be one of {START_CHOICES}, got {self.start!r}", key='mc.start')

    @property
    def volume(self):
        return math.prod(self.dims)

    def to_dict(self):
        data = asdict(self)
        data['dims'] = list(self.dims)
        return data
