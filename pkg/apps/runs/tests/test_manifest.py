import hashlib
import json
import os
import tempfile
from pathlib import Path

from django.test import SimpleTestCase, TestCase

from apps.errors import ConvergenceError, ManifestError
from apps.runs.manifest import RunManifest, file_digest, load_manifest, verify_manifest
from apps.runs.models import SimulationRun


class ManifestTests(SimpleTestCase):
    def setUp(self):
        tmp = tempfile.TemporaryDirectory()
        self.addCleanup(tmp.cleanup)
        self.run_dir = Path(tmp.name)
        (self.run_dir / 'sub').mkdir()
        (self.run_dir / 'a.csv').write_text('x\n1\n')
        (self.run_dir / 'sub' / 'b.su2').write_bytes(b'\x00\x01\x02')

    def manifest(self):
        manifest = RunManifest(kind='simulate', config={'lattice.dims': (4, 4, 4, 4), 'lattice.beta': 2.0}, seed=3)
        manifest.add_output(self.run_dir, 'a.csv')
        manifest.add_output(self.run_dir, self.run_dir / 'sub' / 'b.su2')
        return manifest

    def test_digest(self):
        self.assertEqual(file_digest(self.run_dir / 'a.csv'), hashlib.sha256(b'x\n1\n').hexdigest())

    def test_write_and_load(self):
        path = self.manifest().write(self.run_dir)
        self.assertEqual(path, self.run_dir / 'manifest.json')
        data = json.loads(path.read_text())
        self.assertEqual(data['status'], 'complete')
        self.assertEqual(data['config']['lattice.dims'], [4, 4, 4, 4])
        self.assertEqual([item['path'] for item in data['outputs']], ['a.csv', 'sub/b.su2'])
        self.assertIsNotNone(data['finished_at'])
        loaded = load_manifest(self.run_dir)
        self.assertEqual(loaded.seed, 3)
        self.assertEqual(loaded.digests()['sub/b.su2'], hashlib.sha256(b'\x00\x01\x02').hexdigest())
        # no temp files left behind
        self.assertEqual(sorted(os.listdir(self.run_dir)), ['a.csv', 'manifest.json', 'sub'])

    def test_re_adding_replaces_entry(self):
        manifest = self.manifest()
        (self.run_dir / 'a.csv').write_text('x\n2\n')
        manifest.add_output(self.run_dir, 'a.csv')
        self.assertEqual(len(manifest.outputs), 2)
        self.assertEqual(manifest.digests()['a.csv'], hashlib.sha256(b'x\n2\n').hexdigest())

    def test_verify(self):
        self.manifest().write(self.run_dir)
        report = verify_manifest(self.run_dir / 'manifest.json')
        self.assertTrue(report.ok)
        self.assertEqual(report.checked, ['a.csv', 'sub/b.su2'])

        (self.run_dir / 'a.csv').write_text('x\n9\n')
        (self.run_dir / 'sub' / 'b.su2').unlink()
        report = verify_manifest(self.run_dir)
        self.assertFalse(report.ok)
        self.assertEqual(report.mismatched, ['a.csv'])
        self.assertEqual(report.missing, ['sub/b.su2'])

    def test_partial(self):
        path = self.manifest().write_partial(self.run_dir, 'disk full')
        data = json.loads(path.read_text())
        self.assertEqual((data['status'], data['error']), ('partial', 'disk full'))

    def test_missing_or_broken_manifest(self):
        with self.assertRaises(ManifestError):
            load_manifest(self.run_dir)
        (self.run_dir / 'manifest.json').write_text('{not json')
        with self.assertRaises(ManifestError) as caught:
            load_manifest(self.run_dir)
        self.assertEqual(caught.exception.exit_code, 4)


class SimulationRunModelTests(TestCase):
    def test_lifecycle(self):
        run = SimulationRun.objects.create(kind='vortex', parameters={'vortex.g': [1.0]})
        self.assertEqual(run.status, 'pending')
        run.mark_running('/tmp/vortex_00001')
        self.assertEqual(run.status, 'running')
        self.assertIsNotNone(run.started_at)
        run.mark_completed('/tmp/vortex_00001/manifest.json', {'tension': 6.28})
        run.refresh_from_db()
        self.assertEqual((run.status, run.exit_code), ('completed', 0))
        self.assertEqual(run.summary, {'tension': 6.28})
        self.assertGreaterEqual(run.duration_seconds, 0.0)
        self.assertIn('Dual GL Vortex', str(run))

    def test_failure_records_error_class(self):
        run = SimulationRun.objects.create(kind='vortex')
        run.mark_running('/tmp/x')
        run.mark_failed(ConvergenceError('no convergence', residual=1e-3, iterations=1))
        run.refresh_from_db()
        self.assertEqual((run.status, run.error_class, run.exit_code), ('failed', 'convergence', 3))
        self.assertEqual(run.error_message, 'no convergence')
