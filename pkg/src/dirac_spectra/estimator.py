"""Scikit-learn style front end to the spectrum solver.

``DiracSpectrumSolver.fit`` accepts a discretised domain (or a vertex array,
treated as a counterclockwise polygon) and exposes the detected eigenvalues
as fitted attributes; ``transform`` samples the lowest eigenfunction, which
lets the solver sit at the end of an sklearn pipeline.
"""

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.exceptions import NotFittedError

from .config import SpectralConfig
from .eigensearch import compute_spectrum, eigenvalue_ratio
from .geometry import DiscretizedDomain, polygon
from .mfs import SatSolver, evaluate_spinor_grid


def check_vertices(X):
    """Validate a vertex array: finite, shape (n, 2), n >= 3."""
    X = np.asarray(X, dtype=float)
    if X.ndim != 2 or X.shape[1] != 2:
        raise ValueError(f"expected an (n, 2) vertex array, got shape {X.shape}")
    if len(X) < 3:
        raise ValueError("need at least 3 vertices")
    if not np.all(np.isfinite(X)):
        raise ValueError("vertex coordinates must be finite")
    return X


class DiracSpectrumSolver(BaseEstimator):
    """Computes the first positive eigenvalues of a planar domain.

    Parameters mirror the discretisation: ``n_sources`` exterior kernels,
    ``collocation_factor`` boundary points per source, ``n_interior`` probe
    points, ``displacement`` of the sources along the outward normals.
    """

    def __init__(self, mass=0.0, n_sources=200, collocation_factor=2,
                 n_interior=228, displacement=0.05, n_eigenvalues=3,
                 window=None, step=0.05, tol=1e-10):
        self.mass = mass
        self.n_sources = n_sources
        self.collocation_factor = collocation_factor
        self.n_interior = n_interior
        self.displacement = displacement
        self.n_eigenvalues = n_eigenvalues
        self.window = window
        self.step = step
        self.tol = tol

    def _config(self):
        return SpectralConfig(
            mass=self.mass,
            n_sources=self.n_sources,
            n_collocation=self.collocation_factor * self.n_sources,
            n_interior=self.n_interior,
            displacement=self.displacement,
        )

    def fit(self, X, y=None):
        """Solve the eigenproblem on ``X`` (DiscretizedDomain or vertices)."""
        cfg = self._config()
        if isinstance(X, DiscretizedDomain):
            dom = X
        else:
            dom = polygon(check_vertices(X), cfg)
        solver = SatSolver(cfg, dom)
        result = compute_spectrum(
            cfg, dom, k=self.n_eigenvalues, window=self.window,
            step=self.step, tol=self.tol, solver=solver,
        )
        self.domain_ = dom
        self.spectrum_ = result
        self.eigenvalues_ = np.array(result.lambdas()[: self.n_eigenvalues])
        self.residuals_ = np.array([h.residual for h in result.eigenvalues])
        self.multiplicities_ = np.array([h.multiplicity for h in result.eigenvalues])
        self.coefficients_ = solver.eigenfunction(result.eigenvalues[0].lam)
        return self

    def _check_fitted(self):
        if not hasattr(self, "eigenvalues_"):
            raise NotFittedError("call fit before using the solver")

    def transform(self, X):
        """Sample |u1|, |u2| of the lowest eigenfunction at points X (n, 2)."""
        self._check_fitted()
        pts = np.asarray(X, dtype=float)
        u1, u2 = evaluate_spinor_grid(self.coefficients_, pts)
        return np.column_stack([np.abs(u1), np.abs(u2)])

    def fit_transform(self, X, y=None, points=None):
        self.fit(X)
        return self.transform(points if points is not None else self.domain_.interior)

    def eigenvalue_ratio(self, i, j):
        self._check_fitted()
        return eigenvalue_ratio(self.spectrum_, i, j)
