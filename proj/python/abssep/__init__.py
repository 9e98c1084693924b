"""Spectral tests for absolutely PPT bipartite states."""

import json

from . import _core
from ._core import Error, canonical_pair_count, fixture_names, lambda_sym, sample_pair_count, sym_eigenvalues

__all__ = [
    "Error",
    "aligned_state_min_pt_eigenvalue",
    "canonical_pair_count",
    "classify",
    "fixture",
    "fixture_names",
    "falsify",
    "lambda_sym",
    "sample_pair_count",
    "sample_spectrum",
    "sym_eigenvalues",
    "x_witness",
]


def classify(m, n, eigenvalues, *, normalize=False, sum_tol=1e-6, tol=1e-8, tol_abs=1e-10):
    """Classify a spectrum; returns the report as a dict."""
    return json.loads(_core.classify(m, n, list(eigenvalues), normalize, sum_tol, tol, tol_abs))


def falsify(m, n, eigenvalues, *, trials=2000, seed=1, sum_tol=1e-6):
    return json.loads(_core.falsify(m, n, list(eigenvalues), trials, seed, sum_tol))


def x_witness(m, n, eigenvalues, *, sum_tol=1e-6):
    """Eigenvector certificate, or None when every canonical matrix is PSD."""
    return json.loads(_core.x_witness(m, n, list(eigenvalues), sum_tol))


def aligned_state_min_pt_eigenvalue(m, n, eigenvalues, x, *, sum_tol=1e-6):
    """(overlap, smallest partial-transpose eigenvalue) of the aligned state."""
    return _core.aligned_state_min_pt_eigenvalue(m, n, list(eigenvalues), list(x), sum_tol)


def sample_spectrum(m, n, seed, index):
    return _core.sample_spectrum(m, n, seed, index)


def fixture(name):
    """(m, n, eigenvalues, sum_tol) of a worked example."""
    return _core.fixture_spectrum(name)
