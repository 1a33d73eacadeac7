"""Shared random generators for the test suite.  Everything is seeded."""

import numpy as np

from lroof.herm import HermitianMatrix
from lroof.maps import KrausMap


def rand_hermitian(rng, d):
    a = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    return HermitianMatrix.from_entries((a + a.conj().T) / 2.0)


def rand_psd(rng, d, rank):
    v = rng.standard_normal((d, rank)) + 1j * rng.standard_normal((d, rank))
    return HermitianMatrix.from_entries(v @ v.conj().T)


def rand_kraus(rng, d1, d2, d3):
    ops = rng.standard_normal((d3, d2, d1)) + 1j * rng.standard_normal((d3, d2, d1))
    return KrausMap(d1=d1, d2=d2, d3=d3, ops=ops)


def rand_cone_interior(rng, m, radius=0.95):
    u = rng.standard_normal(m - 1)
    u *= rng.uniform(0.0, radius) / np.linalg.norm(u)
    return np.concatenate(([1.0], u))


def sqrt_with_zero_band(radicand, scale=1.0):
    """sqrt that treats radicands below rounding noise as exact zeros.

    Mirrors the library's dead band: without it, a mathematically zero
    radicand evaluated in doubles turns into a sqrt(eps)-sized artifact.
    """
    if abs(radicand) <= 1e-12 * max(1.0, scale):
        return 0.0
    return float(np.sqrt(max(radicand, 0.0)))
