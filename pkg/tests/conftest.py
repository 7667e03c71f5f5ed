import numpy as np
import pytest

from majorant import MajorantInstance, make


@pytest.fixture
def rng():
    return np.random.default_rng(20260811)


def random_int_poly(rng, max_freq=20, max_terms=6, lo=-4, hi=4):
    """Random polynomial with small integer coefficients (exact arithmetic)."""
    count = int(rng.integers(0, max_terms + 1))
    freqs = rng.integers(-max_freq, max_freq + 1, size=count)
    coeffs = rng.integers(lo, hi + 1, size=count)
    return make((int(n), complex(int(c))) for n, c in zip(freqs, coeffs))


def random_instance(rng, max_n=64, max_size=16):
    """Random frequency set with random unimodular coefficients."""
    size = int(rng.integers(1, max_size + 1))
    lam = sorted(int(v) for v in rng.choice(max_n + 1, size=size, replace=False))
    phases = rng.random(size)
    coeffs = {
        n: complex(np.cos(2 * np.pi * t), np.sin(2 * np.pi * t))
        for n, t in zip(lam, phases)
    }
    return MajorantInstance(tuple(lam), coeffs)
