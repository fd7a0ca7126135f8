"""
Run orchestration for the dualmeissner commands.

Each service turns resolved run options into files in a run directory and
records them in the run manifest. ``start_run`` wraps a service with the
``SimulationRun`` bookkeeping and the worker pool.
"""

import itertools
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from contextlib import contextmanager
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List

import numpy as np
from django.conf import settings

from apps.bps.fields import prasad_sommerfield
from apps.bps.grid import ContinuumConfig
from apps.bps.observables import bogomolny_residual, magnetic_charge, radial_profile, total_energy
from apps.dualgl.config import PROFILE_COLUMNS, SUMMARY_COLUMNS
from apps.dualgl.params import GLParameters, lengths_and_type, masses
from apps.dualgl.vortex import flux, solve_vortex, string_tension
from apps.errors import ConfigError, DualMeissnerError, SignalError, SnapshotError, as_run_error
from apps.lattice.config import SimulationConfig
from apps.lattice.field import cold_start, hot_start
from apps.lattice.observables import average_plaquette
from apps.lattice.snapshot import read_snapshot, write_snapshot
from apps.lattice.updates import MarkovChain
from apps.monopoles.measurements import MEASUREMENT_COLUMNS, measure_configuration
from apps.monopoles.statistics import jackknife_creutz, jackknife_mean
from apps.runs.config import (
    BPS_PROFILE_CSV,
    BPS_PROFILE_HEADER,
    BPS_SUMMARY_CSV,
    BPS_SUMMARY_HEADER,
    CREUTZ_CSV,
    CREUTZ_HEADER,
    CURRENT_HEADER,
    CURRENTS_DIR,
    ENSEMBLE_CSV,
    ENSEMBLE_HEADER,
    HIGGSMASS_CSV,
    MAGFLOW_CSV,
    MAGFLOW_HEADER,
    MANIFEST_NAME,
    MEASUREMENT_HEADER,
    MEASUREMENTS_CSV,
    SNAPSHOT_DIR,
    SNAPSHOT_PATTERN,
    VORTEX_PROFILE_PATTERN,
    VORTEX_SUMMARY_CSV,
    output_root,
    thread_count,
)
from apps.runs.csvio import CsvStream, write_csv
from apps.runs.manifest import RunManifest, load_manifest
from apps.runs.models import SimulationRun
from apps.topohiggs.config import DEFAULT_PLANCK_CONVENTION, OUTPUT_COLUMNS
from apps.topohiggs.formulas import PhysicalConstants, efolds, higgs_mass, scale_factor, sufficient_inflation
from apps.topohiggs.invariants import TopoInvariants, find_invariants, load_invariants

logger = logging.getLogger("dualmeissner.runs.services")


@dataclass
class RunResult:
    run_dir: Path
    manifest: RunManifest
    manifest_path: Path
    summary: Dict = field(default_factory=dict)
    lines: List[str] = field(default_factory=list)


class RunService:
    """Base orchestrator: owns the run directory and writes the manifest."""

    kind = None

    def __init__(self, options, run_dir, executor=None):
        self.options = options
        self.run_dir = Path(run_dir)
        self.executor = executor
        self.manifest = RunManifest(kind=self.kind, config=dict(options), seed=self.seed())
        self._tracked = []
        self.summary = {}
        self.lines = []

    def seed(self):
        return None

    def track(self, relative):
        """Register an output that is hashed into the manifest once the run ends."""
        path = self.run_dir / relative
        self._tracked.append(path)
        return path

    def map(self, function, items):
        """Apply ``function`` to every item, fanned out over the pool when there is one."""
        if self.executor is None:
            return [function(item) for item in items]
        return list(self.executor.map(function, items))

    def execute(self):
        raise NotImplementedError

    def _hash_tracked(self):
        for path in self._tracked:
            if path.is_file():
                self.manifest.add_output(self.run_dir, path)

    def _abort(self, error):
        """Leave a partial manifest covering whatever was written before ``error``."""
        logger.error(f"❌ {self.kind} run failed: {error.diagnostic()}")
        try:
            self._hash_tracked()
        except (DualMeissnerError, OSError) as exc:
            logger.warning(f"⚠️ Could not hash outputs of the aborted run: {exc}")
        self.manifest.write_partial(self.run_dir, error.message)

    def run(self):
        logger.info(f"🚀 Starting {self.kind} run in {self.run_dir}")
        try:
            self.run_dir.mkdir(parents=True, exist_ok=True)
            self.execute()
            self._hash_tracked()
            manifest_path = self.manifest.write(self.run_dir)
        except Exception as exc:
            error = as_run_error(exc)
            self._abort(error)
            if error is exc:
                raise
            raise error from exc
        logger.info(f"✅ {self.kind} run finished: {len(self.manifest.outputs)} output file(s)")
        return RunResult(self.run_dir, self.manifest, manifest_path, self.summary, self.lines)


# ---------------------------------------------------------------------------
# Lattice Monte Carlo
# ---------------------------------------------------------------------------

class SimulateService(RunService):
    kind = 'simulate'

    def seed(self):
        return self.options['run.seed']

    def simulation_config(self):
        o = self.options
        return SimulationConfig(
            beta=o['lattice.beta'],
            dims=o['lattice.dims'],
            seed=o['run.seed'],
            n_therm=o['mc.n_therm'],
            n_sweeps=o['mc.n_sweeps'],
            measure_every=o['mc.measure_every'],
            overrelax_per_heatbath=o['mc.overrelax_per_heatbath'],
            start=o['mc.start'],
            snapshot_every=o['mc.snapshot_every'],
            measure_monopoles=o['measure.monopoles'],
        )

    def execute(self):
        cfg = self.simulation_config()
        field = cold_start(cfg.dims) if cfg.start == 'cold' else hot_start(cfg.dims, cfg.seed)
        chain = MarkovChain(field, cfg.beta, cfg.seed, cfg.overrelax_per_heatbath, executor=self.executor)
        if cfg.n_therm:
            chain.run(cfg.n_therm)
            logger.info(f"Thermalised {cfg.n_therm} sweep(s) at beta={cfg.beta}")

        header = MEASUREMENT_HEADER + (MEASUREMENT_COLUMNS if cfg.measure_monopoles else ())
        plaquettes = []
        with CsvStream(self.track(MEASUREMENTS_CSV), header) as stream:
            for step in range(1, cfg.n_sweeps + 1):
                sweep = chain.step()
                if step % cfg.measure_every == 0:
                    plaquette = average_plaquette(chain.field)
                    plaquettes.append(plaquette)
                    row = [sweep, plaquette]
                    if cfg.measure_monopoles:
                        measured = measure_configuration(
                            chain.field, tol=self.options['mag.tol'], max_iter=self.options['mag.max_iter'],
                        )
                        row += measured.row()
                    stream.write_row(row)
                if cfg.snapshot_every and step % cfg.snapshot_every == 0:
                    self._snapshot(chain, cfg.beta, sweep)

        mean, error = jackknife_mean(plaquettes)
        self.summary = {'sweeps': chain.sweep_index, 'rows': len(plaquettes), 'avg_plaquette': mean,
                        'avg_plaquette_err': error}
        self.lines.append(
            f"simulate: {len(plaquettes)} measurement(s) on {'x'.join(map(str, cfg.dims))} "
            f"at beta={cfg.beta:g}, <P> = {mean:.6f} +- {error:.6f}"
        )

    def _snapshot(self, chain, beta, sweep):
        relative = Path(SNAPSHOT_DIR) / SNAPSHOT_PATTERN.format(sweep=sweep)
        path = self.run_dir / relative
        path.parent.mkdir(parents=True, exist_ok=True)
        digest = write_snapshot(path, chain.field, beta, sweep)
        self.manifest.add_output(self.run_dir, path, digest)
        logger.debug(f"Snapshot at sweep {sweep}")


# ---------------------------------------------------------------------------
# MAG / monopole analysis of stored configurations
# ---------------------------------------------------------------------------

def collect_snapshots(source):
    """
    (path, expected digest or None) for a run directory, a manifest or a
    single snapshot file. Manifests contribute their recorded digests.
    """
    path = Path(source)
    if path.is_dir():
        if (path / MANIFEST_NAME).is_file():
            return collect_snapshots(path / MANIFEST_NAME)
        return [(item, None) for item in sorted(path.rglob('*.su2'))]
    if path.suffix == '.json':
        manifest = load_manifest(path)
        return [
            (path.parent / item.path, item.sha256)
            for item in sorted(manifest.outputs, key=lambda item: item.path)
            if item.path.endswith('.su2')
        ]
    if path.is_file():
        return [(path, None)]
    raise ConfigError(f"snapshot source {source} does not exist", key='input.snapshots')


def _charge_label(columns, charge):
    return tuple(column.replace('_q2', f'_q{charge}') for column in columns)


class MagflowService(RunService):
    kind = 'magflow'

    def load(self):
        entries = collect_snapshots(self.options['input.snapshots'])
        loaded, skipped = [], []
        for path, digest in entries:
            try:
                field, beta, sweep = read_snapshot(path, expected_digest=digest)
            except SnapshotError as exc:
                logger.warning(f"⚠️ Skipping snapshot {path}: {exc.message}")
                skipped.append(str(path))
                continue
            loaded.append((Path(path), field, beta, sweep))
        if not loaded:
            raise SnapshotError(
                f"no readable snapshots in {self.options['input.snapshots']} "
                f"({len(skipped)} skipped)"
            )
        return loaded, skipped

    def execute(self):
        charge = self.options['mag.charge']
        if charge not in (1, 2):
            raise ConfigError(f"abelian loop charge must be 1 or 2, got {charge}", key='mag.charge')
        loaded, skipped = self.load()
        logger.info(f"Measuring {len(loaded)} configuration(s), {len(skipped)} skipped")

        def measure(entry):
            return measure_configuration(
                entry[1], tol=self.options['mag.tol'], max_iter=self.options['mag.max_iter'], charge=charge,
            )

        measurements = self.map(measure, loaded)
        columns = _charge_label(MEASUREMENT_COLUMNS, charge)
        rows = [
            [path.name, sweep, beta, m.report.converged, m.report.iterations] + m.row()
            for (path, _, beta, sweep), m in zip(loaded, measurements)
        ]
        write_csv(self.track(MAGFLOW_CSV), MAGFLOW_HEADER + columns, rows)

        if self.options['output.currents']:
            for (path, *_), m in zip(loaded, measurements):
                write_csv(self.track(Path(CURRENTS_DIR) / f"{path.stem}.csv"), CURRENT_HEADER, m.current.nonzero())

        self._write_creutz(measurements, charge)
        self._write_ensemble(measurements, columns)

        density, density_err = jackknife_mean([m.density for m in measurements])
        unconverged = sum(1 for m in measurements if not m.report.converged)
        self.summary = {
            'configurations': len(measurements),
            'skipped': len(skipped),
            'mag_unconverged': unconverged,
            'monopole_density': density,
            'monopole_density_err': density_err,
        }
        self.lines.append(
            f"magflow: {len(measurements)} configuration(s), {len(skipped)} skipped, "
            f"monopole density = {density:.6f} +- {density_err:.6f}"
        )
        if unconverged:
            self.lines.append(f"magflow: MAG did not converge on {unconverged} configuration(s)")

    def _creutz_table(self, tables, label):
        try:
            return jackknife_creutz(tables)
        except SignalError as exc:
            logger.warning(f"⚠️ {label} Creutz ratios undefined: {exc.message}")
            return {}

    def _write_creutz(self, measurements, charge):
        plain = self._creutz_table([m.loops for m in measurements], 'Wilson loop')
        abelian = self._creutz_table([m.abelian_loops for m in measurements], f'charge-{charge} abelian')
        nan = (float('nan'), float('nan'))
        rows = [
            [r, t, *plain.get((r, t), nan), *abelian.get((r, t), nan)]
            for (r, t) in sorted(set(plain) | set(abelian))
        ]
        write_csv(self.track(CREUTZ_CSV), _charge_label(CREUTZ_HEADER, charge), rows)

    def _write_ensemble(self, measurements, columns):
        data = np.array([m.row() for m in measurements], dtype=float)
        rows = []
        for index, column in enumerate(columns):
            values = data[:, index]
            values = values[np.isfinite(values)]
            if values.size == 0:
                continue
            mean, error = jackknife_mean(values)
            rows.append([column, mean, error, int(values.size)])
        write_csv(self.track(ENSEMBLE_CSV), ENSEMBLE_HEADER, rows)


# ---------------------------------------------------------------------------
# Continuum BPS monopole
# ---------------------------------------------------------------------------

class BpsService(RunService):
    kind = 'bps'

    def execute(self):
        o = self.options
        cfg = ContinuumConfig(
            n=o['bps.grid'], h=o['bps.h'], v=o['bps.v'], e=o['bps.e'], lam=o['bps.lambda'], offset=o['bps.offset'],
        )
        fc = prasad_sommerfield(cfg)
        charge = magnetic_charge(fc, cfg, o['bps.radius'])
        energy = total_energy(fc, cfg)
        residual = bogomolny_residual(fc, cfg)

        write_csv(self.track(BPS_PROFILE_CSV), BPS_PROFILE_HEADER, radial_profile(fc, cfg, o['bps.bins']))
        write_csv(self.track(BPS_SUMMARY_CSV), BPS_SUMMARY_HEADER, [[charge, energy, residual]])
        # charge in units of the Dirac quantum 4 pi / e
        quanta = charge * cfg.e / (4.0 * math.pi)
        self.summary = {'charge': charge, 'charge_quanta': quanta, 'total_energy': energy,
                        'bogomolny_residual': residual}
        self.lines.append(
            f"bps: magnetic charge = {charge:.6f} = {quanta:.6f} x 4*pi/e, "
            f"energy = {energy:.6f}, Bogomolny residual = {residual:.3e}"
        )


# ---------------------------------------------------------------------------
# Dual Ginzburg-Landau vortices
# ---------------------------------------------------------------------------

class VortexService(RunService):
    kind = 'vortex'

    def parameter_sweep(self):
        o = self.options
        return [
            GLParameters(g=g, lam=lam, v=v, n=n)
            for g, lam, v, n in itertools.product(o['vortex.g'], o['vortex.lambda'], o['vortex.v'], o['vortex.n'])
        ]

    def solve_one(self, job):
        """Solve one profile and write its CSV; the worker owns that file."""
        index, p = job
        o = self.options
        profile = solve_vortex(
            p, rmax=o['vortex.rmax'], grid_points=o['vortex.grid'], tol=o['vortex.tol'], max_iter=o['vortex.max_iter'],
        )
        write_csv(self.run_dir / VORTEX_PROFILE_PATTERN.format(index=index), PROFILE_COLUMNS, profile.rows())
        m_h, m_b = masses(p)
        scales = lengths_and_type(p)
        return [
            p.g, p.lam, p.v, p.n, m_h, m_b, scales.Lambda, scales.L, scales.type2,
            flux(profile), string_tension(profile), profile.iterations, profile.residual,
        ]

    def execute(self):
        jobs = list(enumerate(self.parameter_sweep()))
        for index, _ in jobs:
            self.track(VORTEX_PROFILE_PATTERN.format(index=index))
        rows = self.map(self.solve_one, jobs)
        # row i of the summary describes profile_<i>.csv
        write_csv(self.track(VORTEX_SUMMARY_CSV), SUMMARY_COLUMNS, rows)

        self.summary = {'profiles': len(rows)}
        for (index, p), row in zip(jobs, rows):
            tension = row[SUMMARY_COLUMNS.index('tension')]
            ratio = tension / (2.0 * math.pi * p.n * p.v * p.v)
            self.lines.append(
                f"vortex g={p.g:g} lambda={p.lam:g} v={p.v:g} n={p.n}: "
                f"tension/(2 pi n v^2) = {ratio:.6f}, flux = {row[SUMMARY_COLUMNS.index('flux')]:.6f}"
                f" ({VORTEX_PROFILE_PATTERN.format(index=index)})"
            )
        if len(rows) == 1:
            self.summary.update(dict(zip(SUMMARY_COLUMNS, rows[0])))


# ---------------------------------------------------------------------------
# Topological Higgs mass
# ---------------------------------------------------------------------------

class HiggsmassService(RunService):
    kind = 'higgsmass'

    def invariants(self):
        o = self.options
        vol, cs = o['higgsmass.vol'], o['higgsmass.cs']
        if vol is not None or cs is not None:
            if vol is None or cs is None:
                missing = 'higgsmass.vol' if vol is None else 'higgsmass.cs'
                raise ConfigError(f"--vol and --cs must be given together ({missing} missing)", key=missing)
            return [TopoInvariants(o['higgsmass.name'] or 'custom', vol, cs)]
        if o['higgsmass.name']:
            return [find_invariants(o['higgsmass.name'], o['higgsmass.table'])]
        return load_invariants(o['higgsmass.table'])

    def execute(self):
        o = self.options
        convention = (
            o['higgsmass.planck_convention']
            or getattr(settings, 'DUALMEISSNER', {}).get('PLANCK_CONVENTION', DEFAULT_PLANCK_CONVENTION)
        )
        consts = PhysicalConstants.for_convention(convention)
        rows = []
        for inv in self.invariants():
            n = efolds(inv)
            scale = scale_factor(inv, o['higgsmass.a0'])
            mass = higgs_mass(inv, consts)
            rows.append([inv.name, n, scale.log10, mass, sufficient_inflation(n)])
            self.lines.append(
                f"{inv.name}: M_H = {mass:.1f} GeV, N = {n:.1f} e-folds, "
                f"log10(a/a0) = {scale.log10 - math.log10(o['higgsmass.a0']):.2f}"
            )
        write_csv(self.track(HIGGSMASS_CSV), OUTPUT_COLUMNS, rows)
        self.summary = {'planck_convention': convention, 'rows': len(rows)}
        if len(rows) == 1:
            self.summary.update(dict(zip(OUTPUT_COLUMNS, rows[0])))


SERVICES = {
    service.kind: service
    for service in (SimulateService, MagflowService, BpsService, VortexService, HiggsmassService)
}


@contextmanager
def worker_pool(threads):
    """ThreadPoolExecutor when more than one thread is configured, else None."""
    if threads <= 1:
        yield None
        return
    with ThreadPoolExecutor(max_workers=threads, thread_name_prefix='dualmeissner') as executor:
        logger.info(f"🧵 Using {threads} worker threads")
        yield executor


def _json_summary(summary):
    clean = {}
    for key, value in summary.items():
        if isinstance(value, (np.floating, float)):
            value = float(value)
            clean[key] = value if math.isfinite(value) else None
        elif isinstance(value, (np.integer, np.bool_)):
            clean[key] = value.item()
        else:
            clean[key] = value
    return clean


def start_run(kind, options, config_file=''):
    """Run ``kind`` with resolved ``options``, recording it as a SimulationRun."""
    threads = thread_count()
    run = SimulationRun.objects.create(
        kind=kind,
        parameters=RunManifest(kind=kind, config=dict(options)).to_dict()['config'],
        config_file=str(config_file or ''),
        seed='' if options.get('run.seed') is None else str(options['run.seed']),
        threads=threads,
    )
    run_dir = Path(options.get('output.dir') or Path(output_root()) / f"{kind}_{run.pk:05d}")
    run.mark_running(run_dir)
    try:
        with worker_pool(threads) as executor:
            result = SERVICES[kind](options, run_dir, executor=executor).run()
    except Exception as exc:
        error = as_run_error(exc)
        partial = run_dir / MANIFEST_NAME
        run.mark_failed(error, partial if partial.is_file() else None)
        if error is exc:
            raise
        raise error from exc
    run.mark_completed(result.manifest_path, _json_summary(result.summary))
    return run, result
