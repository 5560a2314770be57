"""Seeded random operators and states.

Unitaries are drawn Haar-like by QR-decomposing a complex Gaussian matrix and
absorbing the phases of R's diagonal; states come from normalized Gaussian
purifications. Everything takes a ``numpy.random.Generator`` so identical
seeds reproduce bit-for-bit.
"""

from __future__ import annotations

import numpy as np

from .linalg import dagger, hermitize, principal_generator


def rng_from_seed(seed: int) -> np.random.Generator:
    return np.random.default_rng(seed)


def gaussian_matrix(d: int, rng: np.random.Generator) -> np.ndarray:
    return rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))


def haar_unitary(d: int, rng: np.random.Generator) -> np.ndarray:
    q, r = np.linalg.qr(gaussian_matrix(d, rng))
    phases = np.diagonal(r) / np.abs(np.diagonal(r))
    return q * phases


def random_hermitian(d: int, rng: np.random.Generator, scale: float = 1.0) -> np.ndarray:
    return hermitize(scale * gaussian_matrix(d, rng))


def random_density(d: int, rng: np.random.Generator) -> np.ndarray:
    g = gaussian_matrix(d, rng)
    rho = g @ dagger(g)
    return rho / np.trace(rho).real


def random_pure_density(d: int, rng: np.random.Generator) -> np.ndarray:
    psi = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    psi /= np.linalg.norm(psi)
    return np.outer(psi, psi.conj())


def random_bounded_generator(d: int, rng: np.random.Generator) -> np.ndarray:
    """Random Hermitian with eigenvalues in (-pi, pi], drawn via a Haar unitary."""
    return principal_generator(haar_unitary(d, rng))
