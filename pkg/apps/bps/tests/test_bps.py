import numpy as np
from django.test import SimpleTestCase

from apps.bps.fields import (
    FieldConfig,
    color_rotate,
    prasad_sommerfield,
    ps_profiles,
    rippled_vacuum,
    vacuum,
)
from apps.bps.grid import ContinuumConfig, grid_integral, sphere_flux, sphere_nodes
from apps.bps.observables import (
    bogomolny_residual,
    energy_density,
    magnetic_charge,
    magnetic_current_topological,
    radial_profile,
    thooft_magnetic_field,
    thooft_tensor,
    total_energy,
    total_magnetic_current,
)
from apps.errors import ConfigError, LoopRangeError, SingularPointError

FOUR_PI = 4.0 * np.pi


def rotation_matrix(axis, angle):
    axis = np.asarray(axis, dtype=float)
    axis = axis / np.linalg.norm(axis)
    k = np.array([[0, -axis[2], axis[1]], [axis[2], 0, -axis[0]], [-axis[1], axis[0], 0]])
    return np.eye(3) + np.sin(angle) * k + (1 - np.cos(angle)) * k @ k


class ContinuumGridTests(SimpleTestCase):
    def test_default_offset_excludes_origin(self):
        cfg = ContinuumConfig(n=16, h=0.25)
        self.assertGreater(cfg.radius().min(), 0.0)
        self.assertAlmostEqual(cfg.radius().min(), np.sqrt(3) * 0.125)
        self.assertEqual(ContinuumConfig(n=48, h=0.25).max_radius, 5.875)

    def test_invalid_configs(self):
        for kwargs in ({'n': 6, 'h': 0.25}, {'n': 16, 'h': 0.0}, {'n': 16, 'h': 0.25, 'e': 0.0},
                       {'n': 16, 'h': 0.25, 'v': -1.0}, {'n': 16, 'h': 0.25, 'offset': 0.0},
                       {'n': 16, 'h': 0.25, 'lam': -0.1}):
            with self.assertRaises(ConfigError):
                ContinuumConfig(**kwargs)

    def test_quadratures(self):
        cfg = ContinuumConfig(n=16, h=0.5)
        self.assertAlmostEqual(float(grid_integral(np.ones((16, 16, 16)), cfg.h)), 7.5 ** 3)
        _, _, weights = sphere_nodes(2.0)
        self.assertAlmostEqual(weights.sum(), FOUR_PI * 4.0, places=10)

    def test_coulomb_flux(self):
        cfg = ContinuumConfig(n=32, h=0.25)
        x = cfg.coordinates()
        r = cfg.radius()
        self.assertAlmostEqual(sphere_flux(cfg, x / r ** 3, 3.0), FOUR_PI, delta=1e-3 * FOUR_PI)
        with self.assertRaises(LoopRangeError):
            sphere_flux(cfg, x / r ** 3, 4.0)


class PrasadSommerfieldTests(SimpleTestCase):
    def test_asymptotic_higgs_norm(self):
        for v, e in ((1.0, 1.0), (2.0, 0.5), (0.5, 3.0)):
            h, _ = ps_profiles(10.0 / (e * v), v, e)
            self.assertAlmostEqual(float(h), 0.9 * v, delta=0.01 * v)

    def test_linear_vanishing_at_the_core(self):
        cfg = ContinuumConfig(n=16, h=0.25, v=1.5, e=0.8)
        fc = prasad_sommerfield(cfg)
        self.assertTrue(fc.is_finite())
        self.assertLess(fc.phi_norm().min(), cfg.v * cfg.e * cfg.v * cfg.h)

    def test_series_matches_closed_form_at_threshold(self):
        below = ps_profiles(np.nextafter(1e-2, 0.0), 1.0, 1.0)
        above = ps_profiles(np.nextafter(1e-2, 1.0), 1.0, 1.0)
        for lower, upper in zip(below, above):
            self.assertAlmostEqual(float(lower), float(upper), delta=1e-12)

    def test_quarter_turn_symmetry(self):
        cfg = ContinuumConfig(n=16, h=0.3)
        phi = prasad_sommerfield(cfg).phi
        rotation = np.array([[0.0, -1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 1.0]])
        # value at the rotated point: (x, y, z) -> (-y, x, z)
        at_rotated = np.swapaxes(phi[:, ::-1], 1, 2)
        np.testing.assert_allclose(at_rotated, np.einsum('ab,b...->a...', rotation, phi), atol=1e-14)


class ThooftTensorTests(SimpleTestCase):
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.cfg = ContinuumConfig(n=48, h=0.25)
        cls.fc = prasad_sommerfield(cls.cfg)

    def test_vacuum_has_no_field(self):
        cfg = ContinuumConfig(n=12, h=0.5)
        np.testing.assert_array_equal(thooft_tensor(vacuum(cfg), cfg), 0.0)

    def test_antisymmetric(self):
        cfg = ContinuumConfig(n=16, h=0.25)
        f = thooft_tensor(prasad_sommerfield(cfg), cfg)
        np.testing.assert_allclose(f, -f.swapaxes(0, 1), atol=1e-14)

    def test_coulomb_field_far_from_core(self):
        b = thooft_magnetic_field(self.fc, self.cfg)
        r = self.cfg.radius()
        shell = (r > 4.5) & (r < 5.5)
        magnitude = np.sqrt(np.sum(b ** 2, axis=0))[shell]
        np.testing.assert_allclose(magnitude * r[shell] ** 2, 1.0 / self.cfg.e, rtol=0.02)
        radial = np.sum(b * self.cfg.coordinates(), axis=0)[shell] / r[shell]
        self.assertTrue(np.all(radial > 0.0))

    def test_global_gauge_rotation(self):
        cfg = ContinuumConfig(n=16, h=0.25)
        fc = prasad_sommerfield(cfg)
        rotated = color_rotate(fc, rotation_matrix((1.0, 2.0, -0.5), 0.7))
        np.testing.assert_allclose(thooft_tensor(rotated, cfg), thooft_tensor(fc, cfg), atol=1e-10)

    def test_zero_of_higgs_field(self):
        cfg = ContinuumConfig(n=12, h=0.5)
        fc = vacuum(cfg)
        fc.phi[:, 3, 4, 5] = 0.0
        with self.assertRaises(SingularPointError):
            thooft_tensor(fc, cfg)


class MagneticChargeTests(SimpleTestCase):
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.cfg = ContinuumConfig(n=48, h=0.25)
        cls.fc = prasad_sommerfield(cls.cfg)

    def test_unit_charge(self):
        charge = magnetic_charge(self.fc, self.cfg)
        self.assertAlmostEqual(charge / FOUR_PI, 1.0, delta=1e-2)

    def test_charge_independent_of_radius(self):
        outer = magnetic_charge(self.fc, self.cfg, 4.5)
        inner = magnetic_charge(self.fc, self.cfg, 3.5)
        self.assertLess(abs(outer - inner) / abs(outer), 1e-2)

    def test_charge_scales_with_inverse_coupling(self):
        cfg = ContinuumConfig(n=48, h=0.25, e=2.0)
        charge = magnetic_charge(prasad_sommerfield(cfg), cfg, 4.0)
        self.assertAlmostEqual(charge / (FOUR_PI / 2.0), 1.0, delta=2e-2)

    def test_radius_outside_grid(self):
        with self.assertRaises(LoopRangeError):
            magnetic_charge(self.fc, self.cfg, 6.0)

    def test_winding_zero_configurations(self):
        cfg = ContinuumConfig(n=16, h=0.5)
        self.assertAlmostEqual(magnetic_charge(vacuum(cfg), cfg), 0.0, delta=1e-10)
        rippled = rippled_vacuum(cfg)
        self.assertAlmostEqual(magnetic_charge(rippled, cfg), 0.0, delta=1e-10)
        self.assertAlmostEqual(total_magnetic_current(rippled, cfg), 0.0, delta=1e-6)

    def test_integrated_current_equals_charge(self):
        self.assertAlmostEqual(total_magnetic_current(self.fc, self.cfg) / FOUR_PI, 1.0, delta=0.02)

    def test_vacuum_current_vanishes(self):
        cfg = ContinuumConfig(n=12, h=0.5)
        np.testing.assert_array_equal(magnetic_current_topological(vacuum(cfg), cfg), 0.0)

    def test_current_sits_in_the_core_cell(self):
        cfg = ContinuumConfig(n=16, h=0.5)
        cells = magnetic_current_topological(prasad_sommerfield(cfg), cfg) * cfg.h ** 3
        self.assertEqual(cells.shape, (15, 15, 15))
        self.assertAlmostEqual(cells[7, 7, 7], FOUR_PI, delta=1e-9)
        cells[7, 7, 7] = 0.0
        np.testing.assert_allclose(cells, 0.0, atol=1e-9)

    def test_antihedgehog_carries_negative_charge(self):
        cfg = ContinuumConfig(n=16, h=0.5)
        fc = prasad_sommerfield(cfg)
        anti = FieldConfig(-fc.phi, fc.A)
        self.assertAlmostEqual(total_magnetic_current(anti, cfg) / FOUR_PI, -1.0, delta=1e-9)

    def test_tilted_trivial_field_has_no_current(self):
        cfg = ContinuumConfig(n=16, h=0.5)
        fc = vacuum(cfg)
        x = cfg.coordinates()
        fc.phi[0] = 0.3 * cfg.v * np.sin(x[0])
        fc.phi[1] = 0.3 * cfg.v * np.sin(x[1])
        cells = magnetic_current_topological(fc, cfg) * cfg.h ** 3
        np.testing.assert_allclose(cells, 0.0, atol=1e-9)

    def test_current_scales_with_inverse_coupling(self):
        cfg = ContinuumConfig(n=16, h=0.5, e=2.0)
        total = total_magnetic_current(prasad_sommerfield(cfg), cfg)
        self.assertAlmostEqual(total / (FOUR_PI / 2.0), 1.0, delta=1e-9)


class EnergyTests(SimpleTestCase):
    def test_vacuum_energy(self):
        cfg = ContinuumConfig(n=12, h=0.5, lam=0.3)
        np.testing.assert_array_equal(energy_density(vacuum(cfg), cfg), 0.0)

    def test_bps_bound_is_saturated(self):
        cfg = ContinuumConfig(n=48, h=0.25)
        fc = prasad_sommerfield(cfg)
        self.assertTrue(np.all(energy_density(fc, cfg) >= -1e-12))
        self.assertAlmostEqual(total_energy(fc, cfg) / (FOUR_PI * cfg.v / cfg.e), 1.0, delta=0.03)

    def test_potential_raises_energy(self):
        bps = ContinuumConfig(n=16, h=0.25)
        massive = ContinuumConfig(n=16, h=0.25, lam=0.5)
        fc = prasad_sommerfield(bps)
        self.assertGreater(
            float(grid_integral(energy_density(fc, massive), massive.h)),
            float(grid_integral(energy_density(fc, bps), bps.h)),
        )

    def test_energy_is_gauge_invariant(self):
        cfg = ContinuumConfig(n=16, h=0.25, lam=0.2)
        fc = prasad_sommerfield(cfg)
        rotated = color_rotate(fc, rotation_matrix((0.3, -1.0, 0.4), 2.1))
        np.testing.assert_allclose(energy_density(rotated, cfg), energy_density(fc, cfg), atol=1e-10)

    def test_radial_profile_rows(self):
        cfg = ContinuumConfig(n=16, h=0.5)
        rows = radial_profile(prasad_sommerfield(cfg), cfg, bins=8)
        self.assertTrue(rows)
        radii = [row[0] for row in rows]
        self.assertEqual(radii, sorted(radii))
        self.assertTrue(all(len(row) == 4 for row in rows))


class BogomolnyResidualTests(SimpleTestCase):
    def test_vacuum(self):
        cfg = ContinuumConfig(n=12, h=0.5)
        self.assertLess(bogomolny_residual(vacuum(cfg), cfg), 1e-12)

    def test_second_order_convergence(self):
        coarse = ContinuumConfig(n=32, h=0.25)
        fine = ContinuumConfig(n=64, h=0.125)
        ratio = bogomolny_residual(prasad_sommerfield(coarse), coarse) / bogomolny_residual(prasad_sommerfield(fine), fine)
        self.assertAlmostEqual(ratio, 4.0, delta=0.5)

    def test_perturbation_breaks_self_duality(self):
        cfg = ContinuumConfig(n=16, h=0.25)
        fc = prasad_sommerfield(cfg)
        rng = np.random.default_rng(3)
        noisy = FieldConfig(fc.phi + 0.05 * rng.standard_normal(fc.phi.shape), fc.A.copy())
        self.assertGreater(bogomolny_residual(noisy, cfg), bogomolny_residual(fc, cfg))
