"""Shared fixtures: small-but-accurate solver configurations and cached
spectra that several test modules reuse. A larger source displacement
compensates for the reduced basis size on smooth domains, keeping the
residual dips far below the detection threshold at interactive speed."""

import math

import pytest

from dirac_spectra import SpectralConfig, SatSolver, compute_spectrum, disk
from dirac_spectra.geometry import disk_shape, fourier_domain

UNIT_AREA_RADIUS = 1.0 / math.sqrt(math.pi)


def quick_config(mass, n_sources=100, displacement=0.2, n_interior=80):
    return SpectralConfig(
        mass=mass,
        n_sources=n_sources,
        displacement=displacement,
        n_interior=n_interior,
    )


@pytest.fixture(scope="session")
def disk_m0():
    """Unit disk at zero mass with its cached solver."""
    cfg = quick_config(0.0)
    dom = disk(1.0, cfg)
    return cfg, dom, SatSolver(cfg, dom)


@pytest.fixture(scope="session")
def disk_m0_spectrum(disk_m0):
    cfg, dom, solver = disk_m0
    return compute_spectrum(cfg, dom, k=3, solver=solver)


@pytest.fixture(scope="session")
def unit_area_disk_m1():
    """Unit-area disk at mass 1 via the Fourier shape route, with solver."""
    cfg = quick_config(1.0)
    dom = fourier_domain(disk_shape(), cfg)
    return cfg, dom, SatSolver(cfg, dom)


@pytest.fixture(scope="session")
def unit_area_disk_m1_spectrum(unit_area_disk_m1):
    cfg, dom, solver = unit_area_disk_m1
    return compute_spectrum(cfg, dom, k=3, solver=solver)
