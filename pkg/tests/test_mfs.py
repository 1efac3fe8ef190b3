"""Collocation solver core: assembly, residual dips, eigenfunction recovery."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dirac_spectra import SpectralConfig, SatSolver, disk
from dirac_spectra.errors import (
    ConfigError,
    DomainError,
    InvalidSpectralParameterError,
    NotAnEigenvalueError,
)
from dirac_spectra.geometry import BoundarySample
from dirac_spectra.mfs import (
    assemble,
    boundary_operator_row,
    evaluate_spinor,
    evaluate_spinor_grid,
    sat_value,
)

from oracles import DISK_LAMBDA1_M0, disk_eigenvalues, golden_minimum


class TestSpectralConfig:
    def test_collocation_defaults_to_twice_sources(self):
        cfg = SpectralConfig(n_sources=150)
        assert cfg.n_collocation == 300

    def test_interpolation_variant_allowed(self):
        cfg = SpectralConfig(n_sources=100, n_collocation=100)
        assert cfg.n_collocation == 100

    def test_validation(self):
        with pytest.raises(ConfigError):
            SpectralConfig(mass=-1.0)
        with pytest.raises(ConfigError):
            SpectralConfig(n_sources=0)
        with pytest.raises(ConfigError):
            SpectralConfig(n_sources=100, n_collocation=50)
        with pytest.raises(ConfigError):
            SpectralConfig(displacement=0.0)

    def test_with_mass(self):
        cfg = SpectralConfig(mass=0.0, n_sources=80).with_mass(2.0)
        assert cfg.mass == 2.0
        assert cfg.n_sources == 80


class TestAssembly:
    def test_block_shapes_and_finiteness(self, disk_m0):
        cfg, dom, _ = disk_m0
        a1, a2 = assemble(1.2, cfg, dom)
        assert a1.shape == (cfg.n_collocation, cfg.n_sources)
        assert a2.shape == (cfg.n_interior, cfg.n_sources)
        assert np.all(np.isfinite(a1))
        assert np.all(np.isfinite(a2))

    def test_matches_scalar_boundary_operator(self, disk_m0):
        cfg, dom, solver = disk_m0
        lam = 1.7
        a1, _ = solver.assemble(lam)
        i, j = 3, 11
        sample = BoundarySample(dom.boundary_points[i], dom.boundary_normals[i])
        row = boundary_operator_row(lam, cfg.mass, sample, dom.sources[j])
        assert a1[i, j] == pytest.approx(row, abs=1e-13)

    def test_spectral_parameter_must_exceed_mass(self, disk_m0):
        cfg, dom, solver = disk_m0
        with pytest.raises(InvalidSpectralParameterError):
            solver.sat_value(0.0)
        with pytest.raises(InvalidSpectralParameterError):
            solver.assemble(-2.0)

    def test_mismatched_domain_rejected(self, disk_m0):
        cfg, dom, _ = disk_m0
        other = SpectralConfig(mass=0.0, n_sources=cfg.n_sources + 10)
        with pytest.raises(ValueError):
            SatSolver(other, dom)


class TestSatValue:
    @given(st.floats(0.3, 11.0))
    @settings(max_examples=25, deadline=None)
    def test_value_in_unit_interval(self, lam):
        # session fixtures are unavailable inside hypothesis; build once
        cfg = SpectralConfig(mass=0.0, n_sources=40, n_interior=30,
                             displacement=0.3)
        dom = disk(1.0, cfg)
        s = sat_value(lam, cfg, dom)
        assert 0.0 <= s <= 1.0

    def test_dip_at_reference_eigenvalue(self, disk_m0):
        cfg, dom, solver = disk_m0
        s_at = solver.sat_value(DISK_LAMBDA1_M0)
        assert s_at < 1e-4

    def test_midpoint_contrast(self, disk_m0):
        _, _, solver = disk_m0
        lam2 = disk_eigenvalues(0.0, 1.0, 2)[1]
        midway = 0.5 * (DISK_LAMBDA1_M0 + lam2)
        assert solver.sat_value(midway) > 10.0 * solver.sat_value(DISK_LAMBDA1_M0)

    def test_first_three_dips_match_secular_oracle(self, disk_m0):
        _, _, solver = disk_m0
        for lam_ref in disk_eigenvalues(0.0, 1.0, 3):
            lam = golden_minimum(solver.sat_value, lam_ref - 0.03, lam_ref + 0.03,
                                 tol=1e-10)
            assert lam == pytest.approx(lam_ref, abs=1e-6)

    def test_multiplicity_one_on_disk(self, disk_m0):
        _, _, solver = disk_m0
        assert solver.multiplicity(DISK_LAMBDA1_M0) == 1


class TestEigenfunction:
    def test_alpha_unit_norm_and_residual(self, disk_m0):
        cfg, dom, solver = disk_m0
        lam = golden_minimum(solver.sat_value, 1.40, 1.47, tol=1e-12)
        coeffs = solver.eigenfunction(lam)
        assert np.linalg.norm(coeffs.alpha) == pytest.approx(1.0, abs=1e-12)
        a1, a2 = solver.assemble(lam)
        ratio = np.linalg.norm(a1 @ coeffs.alpha) / np.linalg.norm(a2 @ coeffs.alpha)
        assert ratio <= 1e-4

    def test_rejected_away_from_eigenvalue(self, disk_m0):
        _, _, solver = disk_m0
        with pytest.raises(NotAnEigenvalueError):
            solver.eigenfunction(2.0)

    def test_radial_symmetry_of_first_mode(self, disk_m0):
        cfg, dom, solver = disk_m0
        lam = golden_minimum(solver.sat_value, 1.40, 1.47, tol=1e-12)
        coeffs = solver.eigenfunction(lam)
        theta = np.linspace(0.0, 2.0 * np.pi, 16, endpoint=False)
        for radius in (0.3, 0.7):
            pts = radius * np.column_stack([np.cos(theta), np.sin(theta)])
            u1, _ = evaluate_spinor_grid(coeffs, pts)
            mags = np.abs(u1)
            assert mags.max() - mags.min() < 1e-4 * mags.max()

    def test_phase_invariance_of_magnitudes(self, disk_m0):
        cfg, dom, solver = disk_m0
        lam = golden_minimum(solver.sat_value, 1.40, 1.47, tol=1e-12)
        coeffs = solver.eigenfunction(lam)
        phased = type(coeffs)(
            lam=coeffs.lam,
            alpha=coeffs.alpha * np.exp(0.73j),
            sources=coeffs.sources,
            mass=coeffs.mass,
            domain=coeffs.domain,
            residual=coeffs.residual,
        )
        pts = np.array([[0.1, 0.2], [-0.4, 0.3], [0.0, -0.6]])
        u1a, u2a = evaluate_spinor_grid(coeffs, pts)
        u1b, u2b = evaluate_spinor_grid(phased, pts)
        assert np.allclose(np.abs(u1a), np.abs(u1b), atol=1e-13)
        assert np.allclose(np.abs(u2a), np.abs(u2b), atol=1e-13)

    def test_u2_linear_in_alpha(self, disk_m0):
        cfg, dom, solver = disk_m0
        lam = golden_minimum(solver.sat_value, 1.40, 1.47, tol=1e-12)
        coeffs = solver.eigenfunction(lam)
        doubled = type(coeffs)(
            lam=coeffs.lam, alpha=2.0 * coeffs.alpha, sources=coeffs.sources,
            mass=coeffs.mass, domain=coeffs.domain, residual=coeffs.residual,
        )
        pt = (0.25, -0.1)
        _, u2 = evaluate_spinor(coeffs, pt)
        _, u2d = evaluate_spinor(doubled, pt)
        assert u2d == pytest.approx(2.0 * u2, abs=1e-13)

    def test_boundary_condition_residual(self, disk_m0):
        cfg, dom, solver = disk_m0
        lam = golden_minimum(solver.sat_value, 1.40, 1.47, tol=1e-12)
        coeffs = solver.eigenfunction(lam)
        theta = np.linspace(0.0, 2.0 * np.pi, 400, endpoint=False)
        r = 1.0 - 1e-9
        pts = r * np.column_stack([np.cos(theta), np.sin(theta)])
        u1, u2 = evaluate_spinor_grid(coeffs, pts)
        normal_c = np.exp(1j * theta)  # n1 + i n2 on the circle
        residual = np.abs(u2 - 1j * normal_c * u1)
        assert residual.max() <= 1e-3 * np.abs(u1).max()

    def test_outside_point_rejected(self, disk_m0):
        cfg, dom, solver = disk_m0
        lam = golden_minimum(solver.sat_value, 1.40, 1.47, tol=1e-12)
        coeffs = solver.eigenfunction(lam)
        with pytest.raises(DomainError):
            evaluate_spinor(coeffs, (2.0, 0.0))
        u1, _ = evaluate_spinor_grid(coeffs, np.array([[2.0, 0.0]]))
        assert np.isnan(u1[0].real)


class TestChargeConjugateReduction:
    def test_u2_reduction_dips_at_same_eigenvalue(self, disk_m0):
        cfg, dom, _ = disk_m0
        alt = SatSolver(cfg, dom, reduction="u2")
        lam = golden_minimum(alt.sat_value, 1.40, 1.47, tol=1e-10)
        assert lam == pytest.approx(DISK_LAMBDA1_M0, abs=1e-6)

    def test_unknown_reduction_rejected(self, disk_m0):
        cfg, dom, _ = disk_m0
        with pytest.raises(ValueError):
            SatSolver(cfg, dom, reduction="u3")
