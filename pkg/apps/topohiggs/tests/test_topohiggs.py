import math
import os
import tempfile

from django.test import SimpleTestCase

from apps.errors import ConfigError, DomainError
from apps.topohiggs.formulas import (
    PhysicalConstants,
    classical_higgs_mass,
    efolds,
    higgs_mass,
    higgs_potential,
    mass_exponent,
    mass_length_scale,
    radial_curvature,
    scale_factor,
    sufficient_inflation,
)
from apps.topohiggs.invariants import TopoInvariants, find_invariants, load_invariants
from apps.topohiggs.morse import (
    DEGENERATE,
    MAXIMUM,
    MINIMUM,
    PotentialShape,
    cerf_unfolding,
    critical_unfolding_parameter,
    morse_critical_points,
)

SURGERY = TopoInvariants('Σ̃(8_10)', 5.902827, 0.07546)


class InvariantTableTests(SimpleTestCase):
    def test_bundled_table(self):
        table = load_invariants()
        self.assertEqual(table, [SURGERY])
        self.assertEqual(find_invariants('Σ̃(8_10)'), SURGERY)
        with self.assertRaises(ConfigError):
            find_invariants('unknown')

    def test_user_table(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, 'extra.csv')
            with open(path, 'w', encoding='utf-8') as handle:
                handle.write('name,volume,cs\nA,1.5,0.5\nB,2.0,-0.25\n')
            table = load_invariants(path)
        self.assertEqual([entry.name for entry in table], ['A', 'B'])
        self.assertEqual(table[1].cs, -0.25)

    def test_bad_rows(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, 'bad.csv')
            with open(path, 'w', encoding='utf-8') as handle:
                handle.write('name,volume,cs\nA,1.5,0.5\nB,2.0,0\n')
            with self.assertRaises(DomainError) as caught:
                load_invariants(path)
            self.assertEqual(caught.exception.line, 3)

    def test_zero_chern_simons(self):
        with self.assertRaises(DomainError):
            TopoInvariants('flat', 1.0, 0.0)


class EfoldTests(SimpleTestCase):
    def test_surgery_value(self):
        n = efolds(SURGERY)
        self.assertAlmostEqual(n, 117.3, delta=0.5)
        self.assertTrue(sufficient_inflation(n))
        self.assertFalse(sufficient_inflation(59.9))

    def test_unit_ratio(self):
        self.assertEqual(efolds(TopoInvariants('unit', 0.3, 0.3)), 1.5)

    def test_scale_factor(self):
        unit = TopoInvariants('unit', 0.3, 0.3)
        self.assertAlmostEqual(scale_factor(unit, 1.0).value, math.exp(1.5), places=12)
        self.assertAlmostEqual(scale_factor(unit, 2.0).value, 2.0 * scale_factor(unit, 1.0).value, places=12)
        self.assertAlmostEqual(scale_factor(SURGERY).log10, 117.34 / math.log(10.0), delta=0.01)
        with self.assertRaises(DomainError):
            scale_factor(unit, 0.0)

    def test_scale_factor_saturates(self):
        huge = scale_factor(TopoInvariants('huge', 1000.0, 1.0))
        self.assertTrue(huge.saturated)
        self.assertEqual(huge.value, math.inf)
        self.assertAlmostEqual(huge.log10, 1500.0 / math.log(10.0))


class HiggsMassTests(SimpleTestCase):
    def test_surgery_mass(self):
        self.assertAlmostEqual(higgs_mass(SURGERY), 126.0, delta=1.0)

    def test_planck_convention(self):
        ratio = higgs_mass(SURGERY, PhysicalConstants.for_convention('h')) / higgs_mass(SURGERY)
        self.assertAlmostEqual(ratio, math.sqrt(2.0 * math.pi))
        with self.assertRaises(ConfigError):
            PhysicalConstants.for_convention('planck')

    def test_vanishing_volume(self):
        consts = PhysicalConstants()
        self.assertEqual(higgs_mass(TopoInvariants('tiny', 1e-300, 1.0), consts), consts.planck_mass_gev)

    def test_monotone_in_cs(self):
        masses = [higgs_mass(TopoInvariants('x', 5.0, cs)) for cs in (0.05, 0.1, 0.2, 0.4)]
        self.assertEqual(masses, sorted(masses))
        doubled = higgs_mass(TopoInvariants('x', 5.0, 0.2))
        expected = PhysicalConstants().planck_mass_gev * math.exp(-5.0 / 0.4)
        self.assertAlmostEqual(doubled / expected, 1.0, places=12)

    def test_algebraic_inverse(self):
        consts = PhysicalConstants()
        restored = higgs_mass(SURGERY, consts) * math.exp(SURGERY.volume / (2 * SURGERY.cs))
        self.assertAlmostEqual(restored / consts.planck_mass_gev, 1.0, places=12)
        self.assertAlmostEqual(mass_exponent(SURGERY), -efolds(SURGERY) / 3.0, places=12)


class LengthScaleTests(SimpleTestCase):
    def test_planck_length(self):
        consts = PhysicalConstants()
        self.assertAlmostEqual(mass_length_scale(consts.planck_length, consts) / consts.planck_mass_gev, 1.0, places=14)

    def test_cube_root_scaling(self):
        for length in (0.5, 3.0, 1e6):
            self.assertAlmostEqual(mass_length_scale(8 * length) / mass_length_scale(length), 0.5, places=14)
        values = [mass_length_scale(length) for length in (1.0, 2.0, 5.0, 10.0)]
        self.assertEqual(values, sorted(values, reverse=True))

    def test_non_positive_length(self):
        for length in (0.0, -1.0):
            with self.assertRaises(DomainError):
                mass_length_scale(length)


class PotentialTests(SimpleTestCase):
    def test_higgs_potential(self):
        self.assertEqual(higgs_potential(2.0, 0.7, 2.0), 0.0)
        self.assertEqual(higgs_potential(0.0, 4.0, 1.0), 1.0)
        self.assertGreater(higgs_potential(1.5, 0.1, 1.0), 0.0)

    def test_mass_conventions(self):
        self.assertAlmostEqual(radial_curvature(0.5, 2.0), 4.0)
        self.assertAlmostEqual(classical_higgs_mass(0.5, 2.0), 2.0 * math.sqrt(0.5))
        self.assertAlmostEqual(classical_higgs_mass(0.5, 2.0, 'curvature'), 2.0)
        with self.assertRaises(ConfigError):
            classical_higgs_mass(0.5, 2.0, 'other')


class MorseTests(SimpleTestCase):
    def test_double_well(self):
        points = morse_critical_points(PotentialShape())
        self.assertEqual(len(points), 2)
        top, bottom = points
        self.assertEqual((top.location, top.value, top.kind, top.index), (0.0, 0.0, MAXIMUM, 1))
        self.assertAlmostEqual(bottom.location, 1.0 / math.sqrt(2.0))
        self.assertAlmostEqual(bottom.value, -0.25)
        self.assertEqual(bottom.kind, MINIMUM)
        self.assertAlmostEqual(PotentialShape().value(bottom.location), bottom.value)

    def test_lifted_inventory(self):
        kinds = [point.kind for point in morse_critical_points(PotentialShape(), lifted=True)]
        self.assertEqual(kinds, [MINIMUM, MAXIMUM, MINIMUM])

    def test_unfolding_transition(self):
        shape = PotentialShape()
        t_crit = critical_unfolding_parameter(shape)
        self.assertEqual(t_crit, 2.0)
        self.assertEqual(len(morse_critical_points(PotentialShape(t=1.9))), 2)
        at_crit = morse_critical_points(PotentialShape(t=t_crit))
        self.assertEqual(len(at_crit), 1)
        self.assertTrue(at_crit[0].degenerate)
        beyond = morse_critical_points(PotentialShape(t=5.0))
        self.assertEqual([(p.location, p.kind) for p in beyond], [(0.0, MINIMUM)])

    def test_cerf_unfolding(self):
        self.assertEqual([p.kind for p in cerf_unfolding(1.0, -1)], [MINIMUM, MAXIMUM, MINIMUM])
        self.assertEqual([p.kind for p in cerf_unfolding(1.0, +1)], [MINIMUM])
        self.assertEqual([p.kind for p in cerf_unfolding(0.0)], [DEGENERATE])
        with self.assertRaises(DomainError):
            cerf_unfolding(1.0, 0)

    def test_quartic_must_be_positive(self):
        with self.assertRaises(DomainError):
            PotentialShape(quartic=0.0)
