import warnings

import numpy as np
import pytest

from hyperan.analytic import hypercomplex
from hyperan.features import extract
from hyperan.qft import ComplexSignal, qft_forward
from hyperan.signals import (
    BasebandSpec,
    PhaseLaw,
    SeparationWarning,
    bandlimited_random,
    example,
    frequency_samples,
    modulate,
    modulate_spectral,
    phase_samples,
    resample_bandlimited,
    separation_check,
)


def spec_bins_beyond(z, cycles):
    b = qft_forward(z).modulus()
    k = np.abs(np.rint(np.fft.fftfreq(len(z), 1.0 / len(z))))
    return b[k > cycles].max() / b.max()


def test_baseband_band_limited():
    z = bandlimited_random(BasebandSpec(1024, 16, 1))
    assert spec_bins_beyond(z, 16) < 1e-12


def test_baseband_deterministic():
    a = bandlimited_random(BasebandSpec(512, 10, 99)).samples
    b = bandlimited_random(BasebandSpec(512, 10, 99)).samples
    assert np.array_equal(a, b)
    c = bandlimited_random(BasebandSpec(512, 10, 100)).samples
    assert not np.array_equal(a, c)


def test_baseband_passthrough_at_edge():
    n = 64
    z = bandlimited_random(BasebandSpec(n, n // 2 - 1, 5))
    rng = np.random.Generator(np.random.PCG64(5))
    white = rng.uniform(-1, 1, n) + 1j * rng.uniform(-1, 1, n)
    W = np.fft.fft(white)
    W[n // 2] = 0
    assert np.allclose(z.samples, np.fft.ifft(W), atol=1e-12)


@pytest.mark.parametrize("kw", [dict(n_samples=2), dict(max_cycles=0), dict(max_cycles=512), dict(seed=-1)])
def test_baseband_spec_validation(kw):
    base = dict(n_samples=1024, max_cycles=16, seed=1)
    base.update(kw)
    with pytest.raises(ValueError):
        BasebandSpec(**base)


def test_resample_is_exact_interpolation():
    z = bandlimited_random(BasebandSpec(256, 12, 3))
    up = resample_bandlimited(z, 1024)
    assert np.allclose(up.samples[::4], z.samples, atol=1e-13)
    assert up.dt * 1024 == pytest.approx(z.dt * 256)


def test_phase_laws():
    n, dt = 1024, 1 / 1024
    t = np.arange(n) * dt
    b1 = phase_samples(PhaseLaw("constant_freq", nu0=64), n, dt)
    assert np.allclose(b1, 2 * np.pi * 64 * t)
    f2 = frequency_samples(PhaseLaw("step_freq", nu0=200), n, dt)
    assert np.all(f2[(t >= 0.25) & (t < 0.75)] == 400) and np.all(f2[(t < 0.25) | (t >= 0.75)] == 200)
    b2 = phase_samples(PhaseLaw("step_freq", nu0=200), n, dt)
    slope = np.diff(b2) / dt / (2 * np.pi)
    assert np.allclose(slope[300:700], 400) and np.allclose(slope[:250], 200)
    f3 = frequency_samples(PhaseLaw("triangle_sweep", nu0=400), n, dt)
    assert f3[0] == 400 and f3[512] == 800 and np.argmax(f3) == 512
    assert np.allclose(np.diff(f3[:512]), 800 * dt)


def test_triangle_phase_integrates_frequency():
    law = PhaseLaw("triangle_sweep", nu0=100, alpha=50)
    n, dt = 4096, 1 / 4096
    f = frequency_samples(law, n, dt)
    b = phase_samples(law, n, dt)
    trap = np.concatenate([[0], np.cumsum(0.5 * (f[1:] + f[:-1]) * dt)]) * 2 * np.pi
    # the triangle is piecewise linear, so the trapezoid rule is exact
    assert np.allclose(b, trap, atol=1e-9)


def test_phase_law_validation():
    with pytest.raises(ValueError, match="kind"):
        PhaseLaw("chirp")
    with pytest.raises(ValueError, match="t1 < t2"):
        PhaseLaw("step_freq", t1=0.8, t2=0.2)
    with pytest.raises(ValueError, match="nu0"):
        PhaseLaw(nu0=-1)


def test_modulate_unit_amplitude_cosine():
    n = 128
    t = np.arange(n) / n
    A = ComplexSignal(np.ones(n, complex), 1 / n)
    m = modulate(A, 2 * np.pi * 5 * t)
    assert np.allclose(m.z.samples, np.cos(2 * np.pi * 5 * t), atol=1e-14)
    assert np.allclose(m.o.samples, np.sin(2 * np.pi * 5 * t), atol=1e-14)


def test_modulate_zero_and_modulus(rng):
    n = 64
    zero = modulate(ComplexSignal(np.zeros(n, complex), 1 / n), np.arange(n))
    assert np.all(zero.q.samples == 0)
    A = ComplexSignal(rng.normal(size=n) + 1j * rng.normal(size=n), 1 / n)
    m = modulate(A, rng.uniform(-10, 10, n))
    assert np.allclose(np.linalg.norm(m.q.samples, axis=1), np.abs(A.samples), atol=1e-12)


def test_modulate_length_mismatch():
    with pytest.raises(ValueError, match="length mismatch"):
        modulate(ComplexSignal(np.ones(4, complex), 1.0), np.ones(3))


def test_spectral_and_time_modulation_agree():
    A = bandlimited_random(BasebandSpec(1024, 16, 1))
    t = np.arange(1024) / 1024
    a = modulate_spectral(A, 64)
    b = modulate(A, 2 * np.pi * 64 * t)
    assert np.sqrt(np.mean(np.abs(a.z.samples - b.z.samples) ** 2)) < 1e-10
    assert np.sqrt(np.mean(np.abs(a.o.samples - b.o.samples) ** 2)) < 1e-10


def test_spectral_shift_zero_is_identity():
    A = bandlimited_random(BasebandSpec(128, 8, 2))
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", SeparationWarning)
        m = modulate_spectral(A, 0)
    assert np.allclose(m.z.samples, A.samples, atol=1e-14)
    assert not m.separated


def test_spectral_shift_warns_when_not_separated():
    A = bandlimited_random(BasebandSpec(128, 8, 2))
    with pytest.warns(SeparationWarning):
        m = modulate_spectral(A, 8)
    assert not m.separated


@pytest.mark.parametrize("number", [1, 2, 3])
def test_examples_separated(number):
    ex = example(number)
    assert separation_check(qft_forward(ex.baseband), ex.law).one_sided


def test_separation_fails_for_slow_carrier():
    A = bandlimited_random(BasebandSpec(1024, 16, 1))
    rep = separation_check(qft_forward(A), PhaseLaw(nu0=8))
    assert not rep.one_sided and rep.margin < 0


def test_example_defaults():
    ex2 = example(2)
    assert ex2.law.nu1_resolved == 2 * ex2.law.nu0 == 400
    assert (ex2.law.t1, ex2.law.t2) == (0.25, 0.75)
    assert example(1).law.nu0 == 64
    ex3 = example(3)
    assert ex3.n == 2048 and ex3.law.nu0 == 400


def test_examples_share_baseband():
    a = example(1, seed=4).baseband.samples
    b = example(3, seed=4).baseband.samples
    assert np.allclose(b[::2], a, atol=1e-13)


# The step and triangle carriers have corners in their phase, so the
# modulated quaternion signal itself leaks into negative bins (about 1e-2
# and 4e-5 of the peak). Recovery to 1e-8 is then out of reach.
LEAKY = pytest.mark.xfail(strict=True, reason="carrier phase not band-limited; see negative-band leak")


@pytest.mark.parametrize("number", [1, pytest.param(2, marks=LEAKY), pytest.param(3, marks=LEAKY)])
def test_modulate_then_extract_recovers(number):
    ex = example(number)
    F = extract(hypercomplex(ex.z))
    assert np.sqrt(np.mean(np.abs(F.rho - ex.baseband.samples) ** 2)) < 1e-8


def test_leak_explains_recovery_error():
    from hyperan.analytic import negative_band_ratio

    assert negative_band_ratio(example(1).modulated.q) < 1e-12
    assert negative_band_ratio(example(2).modulated.q) > 1e-3
    assert negative_band_ratio(example(3).modulated.q) > 1e-6


def test_example_rejects_unknown():
    with pytest.raises(ValueError, match="1, 2 or 3"):
        example(5)
