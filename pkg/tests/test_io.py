import numpy as np
import pytest

from hyperan import io
from hyperan.analytic import hypercomplex
from hyperan.features import extract
from hyperan.qft import ComplexSignal, QuaternionSignal, qft_forward
from hyperan.signals import BasebandSpec, bandlimited_random
from hyperan.stqft import stqft


def test_signal_round_trip_bit_equal(tmp_path):
    z = bandlimited_random(BasebandSpec(1024, 16, 1))
    p = tmp_path / "z.csv"
    io.write_signal(p, z, {"seed": 1})
    back = io.read_signal(p)
    assert np.array_equal(back.samples, z.samples) and back.dt == z.dt
    assert io.read_metadata(p)["seed"] == "1"


def test_quaternion_round_trip(tmp_path, rng):
    q = QuaternionSignal(rng.normal(size=(37, 4)), 0.1)
    p = tmp_path / "q.csv"
    io.write_signal(p, q)
    assert np.array_equal(io.read_signal(p).samples, q.samples)


def test_format_is_plain_text(tmp_path):
    p = tmp_path / "z.csv"
    io.write_signal(p, ComplexSignal(np.array([0.1 + 2j, -3e-20 + 0j]), 0.5))
    raw = p.read_bytes()
    assert b"\r" not in raw and raw.endswith(b"\n")
    lines = raw.decode().splitlines()
    g = lambda v: format(v, ".17g")  # noqa: E731
    assert lines[-2:] == [f"0,{g(0.1)},2", f"0.5,{g(-3e-20)},0"]
    assert float(g(-3e-20)) == -3e-20
    assert "t,re,im" in lines


def test_timestamp_only_when_not_deterministic(tmp_path):
    z = ComplexSignal(np.ones(4, complex), 1.0)
    io.write_signal(tmp_path / "a.csv", z, deterministic=True)
    io.write_signal(tmp_path / "b.csv", z, deterministic=False)
    assert "created" not in io.read_metadata(tmp_path / "a.csv")
    assert "created" in io.read_metadata(tmp_path / "b.csv")


def _file(tmp_path, text):
    p = tmp_path / "f.csv"
    p.write_text(text)
    return p


def test_wrong_column_count(tmp_path):
    p = _file(tmp_path, "# schema=hyperan/signal\n# kind=complex\n# dt=1\nt,w,x,y\n0,1,2,3\n")
    with pytest.raises(io.FormatError, match="complex signal needs columns"):
        io.read_signal(p)


def test_missing_dt_named(tmp_path):
    p = _file(tmp_path, "# schema=hyperan/signal\n# kind=complex\nt,re,im\n0,1,2\n")
    with pytest.raises(io.FormatError, match="'dt'"):
        io.read_signal(p)


def test_ragged_rows(tmp_path):
    p = _file(tmp_path, "# schema=hyperan/signal\n# kind=complex\n# dt=1\nt,re,im\n0,1,2\n1,2\n")
    with pytest.raises(io.FormatError, match="ragged"):
        io.read_signal(p)


def test_nonuniform_time(tmp_path):
    p = _file(tmp_path, "# schema=hyperan/signal\n# kind=complex\n# dt=1\nt,re,im\n0,1,2\n1,2,3\n2.5,0,0\n")
    with pytest.raises(io.FormatError, match="uniformly"):
        io.read_signal(p)


def test_malformed_header(tmp_path):
    p = _file(tmp_path, "# schema=hyperan/signal\n# nonsense\nt,re,im\n")
    with pytest.raises(io.FormatError, match="key=value"):
        io.read_signal(p)


def test_spectrum_of_impulse(tmp_path):
    x = np.zeros(8, complex)
    x[0] = 1
    S = qft_forward(ComplexSignal(x, 1 / 8))
    p = tmp_path / "s.csv"
    io.write_spectrum(p, S)
    data = np.array([row.split(",") for row in p.read_text().splitlines() if not row.startswith("#")][1:], float)
    assert data.shape == (8, 5)
    assert np.allclose(data[:, 1:], [[1, 0, 0, 0]] * 8)
    assert np.all(np.diff(data[:, 0]) > 0)  # centered order
    assert np.array_equal(io.read_spectrum(p).bins, S.bins)


def test_features_round_trip(tmp_path):
    n = 128
    t = np.arange(n) / n
    F = extract(hypercomplex(ComplexSignal(np.cos(2 * np.pi * 10 * t).astype(complex), 1 / n)))
    p = tmp_path / "f.csv"
    io.write_features(p, F)
    G = io.read_features(p)
    assert np.array_equal(G.rho, F.rho) and np.array_equal(G.phi, F.phi)
    assert np.array_equal(G.mask, F.mask) and np.array_equal(G.normal, F.normal)
    assert np.allclose(np.diff(G.phi, 2), 0, atol=1e-9)  # pure tone: linear phase
    header = [line for line in p.read_text().splitlines() if not line.startswith("#")][0]
    assert header == "t,rho_re,rho_im,phi,freq,nx,ny,nz,mask"


def test_spectrogram_of_zero(tmp_path):
    G = stqft(ComplexSignal(np.zeros(256, complex), 1 / 256), window_len=64)
    p = tmp_path / "g.csv"
    io.write_spectrogram(p, G)
    back = io.read_spectrogram(p)
    assert np.all(back.mags == 0) and back.mags.shape == G.mags.shape
    assert back.window_len == 64 and back.frame_hop == 32


def test_spectrogram_round_trip(tmp_path, rng):
    z = ComplexSignal(rng.normal(size=300) + 1j * rng.normal(size=300), 0.01)
    G = stqft(z, window_len=50, hop=25, window="rect")
    p = tmp_path / "g.csv"
    io.write_spectrogram(p, G)
    back = io.read_spectrogram(p)
    assert np.array_equal(back.mags, G.mags)
    assert np.allclose(back.times, G.times, rtol=1e-15) and np.allclose(back.freqs, G.freqs, rtol=1e-15)


def test_schema_mismatch(tmp_path):
    p = tmp_path / "s.csv"
    io.write_spectrum(p, qft_forward(ComplexSignal(np.ones(4, complex), 1.0)))
    with pytest.raises(io.FormatError, match="expected schema"):
        io.read_signal(p)
