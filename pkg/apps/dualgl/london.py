"""
London limit of the dual superconductor: lambda -> infinity at fixed g and v.
"""

import logging
from dataclasses import dataclass, field, replace
from typing import List

import numpy as np

from apps.dualgl.config import LONDON_CONFIG
from apps.dualgl.params import lengths_and_type
from apps.dualgl.vortex import flux, solve_vortex, string_tension
from apps.errors import ConfigError

logger = logging.getLogger("dualmeissner.dualgl.london")


@dataclass
class LondonPoint:
    lam: float
    coherence_length: float
    sample_deviation: float
    max_deviation_outside_core: float
    flux: float
    core_tension: float


@dataclass
class LondonReport:
    points: List[LondonPoint] = field(default_factory=list)
    sample_radius: float = 0.0
    core_cutoff: float = 0.0

    def condensate_monotone(self):
        """True when |v - S| at the sample radius shrinks as lambda grows."""
        deviations = [point.sample_deviation for point in self.points]
        return all(later < earlier for earlier, later in zip(deviations, deviations[1:]))

    def flux_spread(self):
        values = np.array([point.flux for point in self.points])
        return float(values.max() - values.min())

    def tension_cauchy(self):
        """Relative change of the core-excised tension between the last two couplings."""
        if len(self.points) < 2:
            return float('nan')
        previous, last = self.points[-2].core_tension, self.points[-1].core_tension
        return abs(last - previous) / abs(last)


def london_limit_check(base, lambdas, **solver_options):
    """
    Solve the vortex along an increasing sequence of couplings.

    ``base`` supplies g, v and n; radii are measured in units of the
    penetration depth 1/(g v), which does not change along the sequence.
    """
    lambdas = [float(lam) for lam in lambdas]
    if not lambdas or any(b <= a for a, b in zip(lambdas, lambdas[1:])):
        raise ConfigError(f"London sequence must be strictly increasing, got {lambdas}", key='vortex.lambda')

    penetration = lengths_and_type(base).Lambda
    sample = LONDON_CONFIG['sample_radius'] * penetration
    cutoff = LONDON_CONFIG['core_cutoff'] * penetration
    report = LondonReport(sample_radius=sample, core_cutoff=cutoff)

    for lam in lambdas:
        p = replace(base, lam=lam)
        profile = solve_vortex(p, **solver_options)
        coherence = lengths_and_type(p).L
        deviation = np.abs(p.v - profile.S) / p.v
        outside = profile.r > LONDON_CONFIG['core_multiple'] * coherence
        report.points.append(LondonPoint(
            lam=lam,
            coherence_length=coherence,
            sample_deviation=float(np.interp(sample, profile.r, deviation)),
            max_deviation_outside_core=float(deviation[outside].max()),
            flux=flux(profile),
            core_tension=string_tension(profile, core_cutoff=cutoff),
        ))
        logger.info(f"London sequence lambda={lam}: deviation at r={sample:g} is {report.points[-1].sample_deviation:.3e}")
    return report
