"""
Jackknife error bars for ensemble measurements.
"""

import logging

import numpy as np
from astropy.stats import jackknife_resampling, jackknife_stats

from apps.errors import SignalError
from apps.monopoles.loops import creutz_ratio

logger = logging.getLogger("dualmeissner.monopoles.statistics")


def jackknife_mean(samples):
    """(mean, standard error) of a 1-D sample."""
    samples = np.asarray(samples, dtype=float)
    if samples.size < 2:
        return float(samples.mean()) if samples.size else float('nan'), float('nan')
    estimate, _, stderr, _ = jackknife_stats(samples, np.mean, 0.95)
    return float(estimate), float(stderr)


def _ratio_at(table, key):
    """chi at ``key`` from the four loops around it, or None when they are not all measured."""
    r, t = key
    corners = {k: table[k] for k in ((r, t), (r - 1, t - 1), (r, t - 1), (r - 1, t)) if k in table}
    return creutz_ratio(corners).get(key)


def jackknife_creutz(tables):
    """
    Creutz ratios of the ensemble-mean loop table with jackknife errors.

    ``tables`` is a list of {(R, T): W} dicts, one per configuration.
    Returns {(R, T): (chi, error)}. A size whose ratio is undefined in the
    mean or in any jackknife replica is left out; SignalError only when no
    size survives.
    """
    if not tables:
        raise SignalError("no configurations to analyse")
    keys = sorted(tables[0])
    data = np.array([[table[key] for key in keys] for table in tables], dtype=float)
    n = data.shape[0]
    central = dict(zip(keys, data.mean(axis=0)))
    replicas = []
    if n >= 2:
        index_sets = jackknife_resampling(np.arange(n)).astype(int)
        replicas = [dict(zip(keys, data[rows].mean(axis=0))) for rows in index_sets]

    result, dropped = {}, []
    for key in keys:
        try:
            value = _ratio_at(central, key)
            if value is None:
                continue
            values = np.array([_ratio_at(replica, key) for replica in replicas], dtype=float)
        except SignalError as exc:
            logger.warning(f"⚠️ Leaving out {key}: {exc.message}")
            dropped.append(key)
            continue
        error = np.sqrt((n - 1) / n * np.sum((values - values.mean()) ** 2)) if n >= 2 else float('nan')
        result[key] = (float(value), float(error))
    if dropped and not result:
        raise SignalError(f"no Creutz ratio defined, non-positive loops at every size {dropped}")
    return result
