"""
Run configuration for the dualmeissner command line.

Run files are flat ``key=value`` text with ``#`` comments and dotted
section prefixes::

    # thermalised ensemble
    lattice.dims=8,8,8,8
    lattice.beta=2.3
    mc.n_sweeps=200

Every key has a command-line flag (``--beta``, ``--n-sweeps`` ...) and
flags override file values.
"""

import re
from dataclasses import dataclass
from typing import Any, Callable, Optional

from django.conf import settings

from apps.errors import ConfigError
from apps.monopoles.config import ABELIAN_CHARGE

# Output layout
MANIFEST_NAME = 'manifest.json'
MEASUREMENTS_CSV = 'measurements.csv'
SNAPSHOT_DIR = 'snapshots'
SNAPSHOT_PATTERN = 'config_{sweep:06d}.su2'
MAGFLOW_CSV = 'magflow.csv'
CREUTZ_CSV = 'creutz.csv'
ENSEMBLE_CSV = 'ensemble.csv'
CURRENTS_DIR = 'currents'
BPS_PROFILE_CSV = 'profile.csv'
BPS_SUMMARY_CSV = 'summary.csv'
VORTEX_SUMMARY_CSV = 'summary.csv'
VORTEX_PROFILE_PATTERN = 'profile_{index:03d}.csv'
HIGGSMASS_CSV = 'higgsmass.csv'

# CSV headers
MEASUREMENT_HEADER = ('sweep', 'avg_plaquette')
MAGFLOW_HEADER = ('snapshot', 'sweep', 'beta', 'mag_converged', 'mag_iterations')
CREUTZ_HEADER = ('R', 'T', 'chi', 'chi_err', 'chi_abelian_q2', 'chi_abelian_q2_err')
ENSEMBLE_HEADER = ('quantity', 'mean', 'error', 'samples')
CURRENT_HEADER = ('x', 'y', 'z', 't', 'mu', 'k')
BPS_PROFILE_HEADER = ('r', '|phi|', '|B|', 'energy_density')
BPS_SUMMARY_HEADER = ('charge', 'total_energy', 'bogomolny_residual')

MANIFEST_STATUS = {
    'complete': 'complete',
    'partial': 'partial',
}

# Error messages
ERROR_MESSAGES = {
    'malformed_line': 'expected key=value',
    'bad_key': 'keys look like section.name',
    'unknown_key': 'unknown key {key!r} for {command}',
    'duplicate_key': 'key {key!r} given twice',
    'bad_value': 'bad value {value!r} for {key}: {reason}',
    'missing_key': "missing required key '{key}' (set it in the config file or pass {flag})",
    'unreadable': 'cannot read config file {path}: {reason}',
}

KEY_PATTERN = re.compile(r'^[a-z][a-z0-9_]*(\.[a-z][a-z0-9_]*)+$')
TRUE_WORDS = ('1', 'true', 'yes', 'on')
FALSE_WORDS = ('0', 'false', 'no', 'off')


def code_version():
    return getattr(settings, 'DUALMEISSNER', {}).get('VERSION', '1.0.0')


def thread_count():
    """Worker threads for sweeps and fan-out; 1 keeps runs byte-reproducible."""
    threads = int(getattr(settings, 'DUALMEISSNER', {}).get('THREADS', 1) or 1)
    return max(threads, 1)


def output_root():
    return getattr(settings, 'DUALMEISSNER', {}).get('OUTPUT_DIR', 'runs')


# ---------------------------------------------------------------------------
# Value parsers (accept strings from files/flags and native values from call_command)
# ---------------------------------------------------------------------------

def parse_str(value):
    return str(value).strip()


def parse_int(value):
    if isinstance(value, bool):
        raise ValueError('expected an integer')
    if isinstance(value, float):
        if not value.is_integer():
            raise ValueError('expected an integer')
        return int(value)
    return int(str(value).strip())


def parse_float(value):
    if isinstance(value, bool):
        raise ValueError('expected a number')
    return float(str(value).strip()) if isinstance(value, str) else float(value)


def parse_bool(value):
    if isinstance(value, bool):
        return value
    word = str(value).strip().lower()
    if word in TRUE_WORDS:
        return True
    if word in FALSE_WORDS:
        return False
    raise ValueError('expected true or false')


def _items(value):
    if isinstance(value, str):
        return [item for item in re.split(r'[,x\s]+', value.strip()) if item]
    if isinstance(value, (list, tuple)):
        return list(value)
    return [value]


def parse_dims(value):
    dims = tuple(parse_int(item) for item in _items(value))
    if len(dims) != 4:
        raise ValueError(f'expected 4 extents, got {len(dims)}')
    return dims


def parse_float_list(value):
    values = [parse_float(item) for item in (value.split(',') if isinstance(value, str) else _items(value))]
    if not values:
        raise ValueError('expected at least one number')
    return values


def parse_int_list(value):
    values = [parse_int(item) for item in (value.split(',') if isinstance(value, str) else _items(value))]
    if not values:
        raise ValueError('expected at least one integer')
    return values


@dataclass(frozen=True)
class ConfigKey:
    """One run-file key and its command-line flag."""

    key: str
    parse: Callable[[Any], Any]
    default: Any = None
    required: bool = False
    help: str = ''
    flag: Optional[str] = None
    dest: Optional[str] = None

    @property
    def option(self):
        return self.flag or '--' + self.key.split('.')[-1].replace('_', '-')

    @property
    def attr(self):
        return self.dest or self.option[2:].replace('-', '_')


OUTPUT_KEY = ConfigKey('output.dir', parse_str, help='Run directory (default: <OUTPUT_DIR>/<command>_<run id>)', flag='--output-dir')
MAG_KEYS = (
    ConfigKey('mag.tol', parse_float, help='MAG relative functional tolerance', flag='--mag-tol'),
    ConfigKey('mag.max_iter', parse_int, help='MAG iteration cap', flag='--mag-max-iter'),
)

SIMULATE_KEYS = (
    ConfigKey('lattice.beta', parse_float, required=True, help='Wilson coupling beta > 0'),
    ConfigKey('lattice.dims', parse_dims, default=(4, 4, 4, 4), help='Lattice extents, e.g. 8,8,8,8'),
    ConfigKey('run.seed', parse_int, default=0, help='64-bit seed'),
    ConfigKey('mc.start', parse_str, default='cold', help='cold or hot'),
    ConfigKey('mc.n_therm', parse_int, default=0, help='Unmeasured thermalisation sweeps'),
    ConfigKey('mc.n_sweeps', parse_int, required=True, help='Measured sweeps'),
    ConfigKey('mc.measure_every', parse_int, default=1, help='Sweeps between measurement rows'),
    ConfigKey('mc.overrelax_per_heatbath', parse_int, default=0, help='Reflections per heatbath sweep', flag='--overrelax'),
    ConfigKey('mc.snapshot_every', parse_int, default=0, help='Sweeps between snapshots (0 = none)'),
    ConfigKey('measure.monopoles', parse_bool, default=False, help='Append MAG/monopole columns', flag='--monopoles'),
) + MAG_KEYS + (OUTPUT_KEY,)

MAGFLOW_KEYS = (
    ConfigKey('input.snapshots', parse_str, required=True, help='Run directory, manifest.json or single snapshot'),
    ConfigKey('mag.charge', parse_int, default=ABELIAN_CHARGE, help='Charge of the abelian Wilson loops', flag='--charge'),
    ConfigKey('output.currents', parse_bool, default=False, help='Dump nonzero monopole currents', flag='--dump-currents'),
) + MAG_KEYS + (OUTPUT_KEY,)

BPS_KEYS = (
    ConfigKey('bps.grid', parse_int, default=48, help='Grid points per axis'),
    ConfigKey('bps.h', parse_float, default=0.25, help='Lattice spacing'),
    ConfigKey('bps.v', parse_float, default=1.0, help='Higgs vacuum value'),
    ConfigKey('bps.e', parse_float, default=1.0, help='Gauge coupling'),
    ConfigKey('bps.lambda', parse_float, default=0.0, help='Higgs self-coupling', dest='lam'),
    ConfigKey('bps.offset', parse_float, default=0.5, help='Grid offset in units of h'),
    ConfigKey('bps.radius', parse_float, help='Flux sphere radius (default: largest inscribed)'),
    ConfigKey('bps.bins', parse_int, help='Radial profile bins'),
    OUTPUT_KEY,
)

VORTEX_KEYS = (
    ConfigKey('vortex.g', parse_float_list, required=True, help='Magnetic coupling(s), comma separated'),
    ConfigKey('vortex.lambda', parse_float_list, required=True, help='Self-coupling(s), comma separated', dest='lam'),
    ConfigKey('vortex.v', parse_float_list, default=[1.0], help='Condensate value(s)'),
    ConfigKey('vortex.n', parse_int_list, default=[1], help='Winding number(s)'),
    ConfigKey('vortex.rmax', parse_float, help='Outer radius'),
    ConfigKey('vortex.grid', parse_int, help='Radial grid points'),
    ConfigKey('vortex.tol', parse_float, help='Newton residual tolerance'),
    ConfigKey('vortex.max_iter', parse_int, help='Newton iteration cap', flag='--max-iter'),
    OUTPUT_KEY,
)

HIGGSMASS_KEYS = (
    ConfigKey('higgsmass.vol', parse_float, help='Hyperbolic volume'),
    ConfigKey('higgsmass.cs', parse_float, help='Chern-Simons invariant'),
    ConfigKey('higgsmass.name', parse_str, help='Row name (with --vol/--cs) or table entry to select'),
    ConfigKey('higgsmass.table', parse_str, help='CSV of name,volume,cs rows', flag='--invariants'),
    ConfigKey('higgsmass.planck_convention', parse_str, help='hbar or h'),
    ConfigKey('higgsmass.a0', parse_float, default=1.0, help='Initial scale factor'),
    OUTPUT_KEY,
)

COMMAND_KEYS = {
    'simulate': SIMULATE_KEYS,
    'magflow': MAGFLOW_KEYS,
    'bps': BPS_KEYS,
    'vortex': VORTEX_KEYS,
    'higgsmass': HIGGSMASS_KEYS,
}


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------

def _convert(entry, value, line=None):
    try:
        return entry.parse(value)
    except (TypeError, ValueError) as exc:
        raise ConfigError(
            ERROR_MESSAGES['bad_value'].format(value=value, key=entry.key, reason=exc),
            line=line, key=entry.key,
        )


def parse_config_text(text, command, source='<config>'):
    """Parse run-file text into {key: value} for ``command``."""
    entries = {entry.key: entry for entry in COMMAND_KEYS[command]}
    values = {}
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split('#', 1)[0].strip()
        if not line:
            continue
        if '=' not in line:
            raise ConfigError(f"{source}: {ERROR_MESSAGES['malformed_line']}, got {raw.strip()!r}", line=line_no)
        key, value = (part.strip() for part in line.split('=', 1))
        if not KEY_PATTERN.match(key):
            raise ConfigError(f"{source}: {ERROR_MESSAGES['bad_key']}, got {key!r}", line=line_no, key=key)
        if key not in entries:
            raise ConfigError(
                f"{source}: {ERROR_MESSAGES['unknown_key'].format(key=key, command=command)}",
                line=line_no, key=key,
            )
        if key in values:
            raise ConfigError(f"{source}: {ERROR_MESSAGES['duplicate_key'].format(key=key)}", line=line_no, key=key)
        values[key] = _convert(entries[key], value, line=line_no)
    return values


def parse_config_file(path, command):
    try:
        with open(path, encoding='utf-8') as handle:
            text = handle.read()
    except OSError as exc:
        raise ConfigError(ERROR_MESSAGES['unreadable'].format(path=path, reason=exc.strerror or exc))
    return parse_config_text(text, command, source=str(path))


def resolve_options(command, file_values=None, flags=None):
    """
    Merge defaults, file values and flags (in rising priority) into
    {key: value}; raises ConfigError naming any missing required key.
    """
    file_values = file_values or {}
    flags = flags or {}
    resolved = {}
    for entry in COMMAND_KEYS[command]:
        flag_value = flags.get(entry.attr)
        if flag_value is not None:
            resolved[entry.key] = _convert(entry, flag_value)
        elif entry.key in file_values:
            resolved[entry.key] = file_values[entry.key]
        elif entry.required:
            raise ConfigError(ERROR_MESSAGES['missing_key'].format(key=entry.key, flag=entry.option), key=entry.key)
        else:
            resolved[entry.key] = entry.default
    return resolved


def load_run_options(command, config_path=None, flags=None):
    file_values = parse_config_file(config_path, command) if config_path else {}
    return resolve_options(command, file_values, flags)
