"""
The per-configuration measurement bundle shared by ``simulate`` and ``magflow``:
MAG fix a copy of the field, project, extract currents, measure loops.
"""

import logging
from dataclasses import dataclass, field as dataclass_field
from typing import Dict, Tuple

from apps.lattice.observables import wilson_loop
from apps.monopoles.config import ABELIAN_CHARGE, CREUTZ_MAX_EXTENT, LOOP_SIZES
from apps.monopoles.currents import MonopoleCurrent, monopole_current, monopole_density
from apps.monopoles.gauge_fixing import MagFixReport, mag_fix
from apps.monopoles.loops import abelian_wilson_loop
from apps.monopoles.projection import abelian_project

logger = logging.getLogger("dualmeissner.monopoles.measurements")

MEASUREMENT_COLUMNS = (
    'mag_functional', 'monopole_density',
    'w11', 'w22', 'w33', 'aw11_q2', 'aw22_q2', 'aw33_q2',
)


@dataclass
class ConfigurationMeasurement:
    report: MagFixReport
    current: MonopoleCurrent
    density: float
    loops: Dict[Tuple[int, int], float] = dataclass_field(default_factory=dict)
    abelian_loops: Dict[Tuple[int, int], float] = dataclass_field(default_factory=dict)

    def row(self):
        """Values in MEASUREMENT_COLUMNS order; loops that do not fit are NaN."""
        values = [self.report.functional_value, self.density]
        values += [self.loops.get(size, float('nan')) for size in LOOP_SIZES]
        values += [self.abelian_loops.get(size, float('nan')) for size in LOOP_SIZES]
        return values


def loop_sizes_for(dims, max_extent):
    limit = min(dims) // 2
    return [(r, t) for r in range(1, min(max_extent, limit) + 1) for t in range(1, min(max_extent, limit) + 1)]


def measure_configuration(field, tol=None, max_iter=None, charge=ABELIAN_CHARGE):
    """Every abelian and non-abelian observable of one configuration."""
    fixed, report = mag_fix(field, tol=tol, max_iter=max_iter)
    af = abelian_project(fixed)
    current = monopole_current(af)
    sizes = loop_sizes_for(field.dims, CREUTZ_MAX_EXTENT)
    loops = {size: wilson_loop(field, *size) for size in sizes}
    abelian = {size: abelian_wilson_loop(af, *size, charge=charge) for size in sizes}
    return ConfigurationMeasurement(
        report=report,
        current=current,
        density=monopole_density(current),
        loops=loops,
        abelian_loops=abelian,
    )
