import math
import os
import tempfile

from django.test import SimpleTestCase, override_settings

from apps.errors import ConfigError
from apps.runs.config import (
    COMMAND_KEYS,
    load_run_options,
    parse_config_text,
    parse_dims,
    parse_float_list,
    resolve_options,
    thread_count,
)
from apps.runs.csvio import format_value, read_csv, write_csv


class ConfigParserTests(SimpleTestCase):
    def test_comments_and_sections(self):
        text = (
            "# thermalised ensemble\n"
            "lattice.beta = 2.3   # coupling\n"
            "\n"
            "lattice.dims=8x8x8x8\n"
            "mc.n_sweeps=200\n"
            "measure.monopoles=yes\n"
        )
        values = parse_config_text(text, 'simulate')
        self.assertEqual(values, {
            'lattice.beta': 2.3,
            'lattice.dims': (8, 8, 8, 8),
            'mc.n_sweeps': 200,
            'measure.monopoles': True,
        })

    def test_malformed_line_reports_line_number(self):
        with self.assertRaises(ConfigError) as caught:
            parse_config_text("lattice.beta=2.0\nmc.n_sweeps 10\n", 'simulate')
        self.assertEqual(caught.exception.line, 2)
        self.assertIn('line 2', caught.exception.message)

    def test_unknown_key(self):
        with self.assertRaises(ConfigError) as caught:
            parse_config_text("# header\nlattice.temperature=1\n", 'simulate')
        self.assertEqual((caught.exception.line, caught.exception.key), (2, 'lattice.temperature'))

    def test_key_without_section(self):
        with self.assertRaises(ConfigError) as caught:
            parse_config_text("beta=2.0\n", 'simulate')
        self.assertEqual(caught.exception.line, 1)

    def test_bad_value_names_key(self):
        with self.assertRaises(ConfigError) as caught:
            parse_config_text("lattice.beta=2.0\nmc.n_sweeps=ten\n", 'simulate')
        self.assertEqual(caught.exception.line, 2)
        self.assertEqual(caught.exception.key, 'mc.n_sweeps')

    def test_duplicate_key(self):
        with self.assertRaises(ConfigError) as caught:
            parse_config_text("lattice.beta=2.0\nlattice.beta=2.1\n", 'simulate')
        self.assertEqual(caught.exception.line, 2)

    def test_key_belongs_to_another_command(self):
        with self.assertRaises(ConfigError):
            parse_config_text("vortex.g=1\n", 'simulate')

    def test_value_parsers(self):
        self.assertEqual(parse_dims('4,4,6,8'), (4, 4, 6, 8))
        self.assertEqual(parse_dims((2, 2, 2, 2)), (2, 2, 2, 2))
        with self.assertRaises(ValueError):
            parse_dims('4,4,4')
        self.assertEqual(parse_float_list('0.1, 0.25,1'), [0.1, 0.25, 1.0])
        self.assertEqual(parse_float_list(0.5), [0.5])


class ResolveOptionsTests(SimpleTestCase):
    def test_defaults_file_and_flags(self):
        options = resolve_options(
            'simulate',
            {'lattice.beta': 2.3, 'mc.n_sweeps': 20, 'run.seed': 5},
            {'seed': '9', 'beta': None, 'overrelax': 3},
        )
        self.assertEqual(options['lattice.beta'], 2.3)
        self.assertEqual(options['run.seed'], 9)
        self.assertEqual(options['mc.overrelax_per_heatbath'], 3)
        self.assertEqual(options['lattice.dims'], (4, 4, 4, 4))
        self.assertEqual(options['mc.start'], 'cold')
        self.assertEqual(set(options), {entry.key for entry in COMMAND_KEYS['simulate']})

    def test_missing_required_key_is_named(self):
        with self.assertRaises(ConfigError) as caught:
            resolve_options('simulate', {'mc.n_sweeps': 10}, {})
        self.assertEqual(caught.exception.key, 'lattice.beta')
        self.assertIn('lattice.beta', caught.exception.message)
        self.assertIn('--beta', caught.exception.message)

    def test_bad_flag_value(self):
        with self.assertRaises(ConfigError) as caught:
            resolve_options('vortex', {}, {'g': '1', 'lam': 'weak'})
        self.assertEqual(caught.exception.key, 'vortex.lambda')
        self.assertIsNone(caught.exception.line)

    def test_load_from_file(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, 'vortex.cfg')
            with open(path, 'w', encoding='utf-8') as handle:
                handle.write("vortex.g=1\nvortex.lambda=0.25,1.0\nvortex.n=1,2\n")
            options = load_run_options('vortex', path, {'v': '2'})
        self.assertEqual(options['vortex.lambda'], [0.25, 1.0])
        self.assertEqual(options['vortex.n'], [1, 2])
        self.assertEqual(options['vortex.v'], [2.0])

    def test_unreadable_file(self):
        with self.assertRaises(ConfigError):
            load_run_options('bps', '/nonexistent/run.cfg', {})

    @override_settings(DUALMEISSNER={'THREADS': 4})
    def test_thread_count(self):
        self.assertEqual(thread_count(), 4)

    @override_settings(DUALMEISSNER={})
    def test_thread_count_default(self):
        self.assertEqual(thread_count(), 1)


class CsvTests(SimpleTestCase):
    def test_format_value(self):
        self.assertEqual(format_value(0.1), '0.10000000000000001')
        self.assertEqual(float(format_value(math.pi)), math.pi)
        self.assertEqual(format_value(True), 'true')
        self.assertEqual(format_value(7), '7')
        self.assertEqual(format_value(float('nan')), 'nan')
        self.assertEqual(format_value(None), '')

    def test_write_and_read(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, 'nested', 'table.csv')
            write_csv(path, ('sweep', 'avg_plaquette'), [(1, 0.5), (2, 0.25)])
            with open(path, encoding='utf-8') as handle:
                self.assertEqual(handle.read(), 'sweep,avg_plaquette\n1,0.5\n2,0.25\n')
            self.assertEqual(read_csv(path)[1], {'sweep': '2', 'avg_plaquette': '0.25'})

    def test_row_width_checked(self):
        with tempfile.TemporaryDirectory() as tmp:
            with self.assertRaises(ValueError):
                write_csv(os.path.join(tmp, 't.csv'), ('a', 'b'), [(1,)])
