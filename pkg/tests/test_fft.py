import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hyperan.fft import fft, ifft, is_power_of_two


def naive_dft(x):
    n = x.size
    k = np.arange(n)
    return np.exp(-2j * np.pi * np.outer(k, k) / n) @ x


@pytest.mark.parametrize("n", list(range(1, 40)) + [64, 100, 127, 128])
def test_matches_direct_sum(n, rng):
    x = rng.normal(size=n) + 1j * rng.normal(size=n)
    assert np.max(np.abs(fft(x) - naive_dft(x))) < 1e-10 * max(1, n)


@pytest.mark.parametrize("n", [1000, 1024, 4096, 4097])
def test_matches_numpy(n, rng):
    x = rng.normal(size=n) + 1j * rng.normal(size=n)
    assert np.allclose(fft(x), np.fft.fft(x), atol=1e-9)
    assert np.allclose(ifft(x), np.fft.ifft(x), atol=1e-12)


def test_batched_last_axis(rng):
    x = rng.normal(size=(3, 2, 24)) + 0j
    assert np.allclose(fft(x), np.fft.fft(x, axis=-1), atol=1e-12)


@given(st.integers(1, 200))
def test_round_trip(n):
    x = np.random.default_rng(n).normal(size=n) + 1j
    assert np.allclose(ifft(fft(x)), x, atol=1e-12)


def test_power_of_two():
    assert [is_power_of_two(n) for n in (1, 2, 3, 64, 96)] == [True, True, False, True, False]
