import subprocess
import sys

import numpy as np
import pytest

from hyperan import io
from hyperan.cli import main
from hyperan.qft import qft_forward
from hyperan.signals import example


def run(*args):
    return main([str(a) for a in args])


def test_generate_example1_pipeline(tmp_path, capsys):
    z = tmp_path / "z1.csv"
    f = tmp_path / "f1.csv"
    assert run("generate", "--example", 1, "--seed", 1, "-o", z, "--deterministic") == 0
    assert run("features", "-i", z, "-o", f, "--deterministic") == 0
    out = capsys.readouterr().out
    assert "max |rho|" in out and "mean freq" in out
    F = io.read_features(f)
    A = example(1, seed=1).baseband.samples
    assert np.sqrt(np.mean(np.abs(F.rho - A) ** 2)) < 1e-8
    assert np.allclose(F.freq, 64.0, atol=1e-6)


def test_generate_example2_defaults(tmp_path):
    z = tmp_path / "z2.csv"
    assert run("generate", "--example", 2, "-o", z, "-q") == 0
    meta = io.read_metadata(z)
    assert float(meta["law_nu1"]) == 2 * float(meta["law_nu0"])
    assert (meta["law_t1"], meta["law_t2"]) == ("0.25", "0.75")
    assert meta["prng"] == "numpy.PCG64" and "created" in meta


def test_generate_baseband(tmp_path):
    z = tmp_path / "b.csv"
    assert run("generate", "--baseband", "--max-cycles", 16, "-o", z, "-q") == 0
    s = io.read_signal(z)
    mod = qft_forward(s).modulus()
    k = np.abs(np.fft.fftfreq(len(s), 1 / len(s)))
    assert mod[k > 16].max() < 1e-12 * mod.max()


def test_seed_from_environment(tmp_path, monkeypatch):
    monkeypatch.setenv("HYPERAN_SEED", "42")
    z = tmp_path / "z.csv"
    assert run("generate", "--baseband", "-o", z, "-q", "--deterministic") == 0
    assert io.read_metadata(z)["seed"] == "42"
    monkeypatch.setenv("HYPERAN_SEED", "abc")
    assert run("generate", "--baseband", "-o", z, "-q") == 1


def test_extras_and_svg(tmp_path):
    z = tmp_path / "z3.csv"
    svg = tmp_path / "z3.svg"
    assert run("generate", "--example", 3, "-o", z, "--extras", "--svg", svg, "-q") == 0
    for name in ("o", "A", "B"):
        assert (tmp_path / f"z3_{name}.csv").exists()
    assert svg.read_text().startswith("<svg")


def test_features_frequency_triangular(tmp_path):
    z, f = tmp_path / "z3.csv", tmp_path / "f3.csv"
    run("generate", "--example", 3, "-o", z, "-q")
    assert run("features", "-i", z, "-o", f, "-q") == 0
    F = io.read_features(f)
    peak = np.argmax(F.freq)
    assert abs(peak - len(F) // 2) <= 8
    assert F.freq[peak] > 1.9 * F.freq[0]


def test_features_zero_signal(tmp_path, capsys):
    from hyperan.qft import ComplexSignal

    z = tmp_path / "zero.csv"
    io.write_signal(z, ComplexSignal(np.zeros(64, complex), 1 / 64))
    assert run("features", "-i", z, "-o", tmp_path / "f.csv") == 1
    assert "degenerate everywhere" in capsys.readouterr().err


def test_pipeline_closure(tmp_path):
    z = tmp_path / "z.csv"
    run("generate", "--example", 1, "-o", z, "-q")
    made = {"signal": z}
    steps = [
        ("qft", "spectrum", []),
        ("analytic", "hyper", []),
        ("features", "features", []),
        ("stqft", "spectrogram", []),
    ]
    for cmd, name, extra in steps:
        out = tmp_path / f"{name}.csv"
        assert run(cmd, "-i", z, "-o", out, "-q", *extra) == 0
        made[name] = out
    # every signal-carrying file feeds every subcommand
    for src_name, src in made.items():
        if src_name == "spectrogram":
            continue
        for cmd in ("qft", "analytic", "features", "stqft"):
            code = run(cmd, "-i", src, "-o", tmp_path / f"{cmd}_{src_name}.csv", "-q")
            assert code == 0, (cmd, src_name)
    assert run("qft", "--inverse", "-i", made["spectrum"], "-o", tmp_path / "back.csv", "-q") == 0
    back = io.read_signal(tmp_path / "back.csv").samples
    orig = io.read_signal(z).samples
    assert np.allclose(back[:, 0] + 1j * back[:, 1], orig, atol=1e-14)


def test_spectrogram_input_rejected(tmp_path, capsys):
    z, g = tmp_path / "z.csv", tmp_path / "g.csv"
    run("generate", "--example", 1, "-o", z, "-q")
    run("stqft", "-i", z, "-o", g, "-q")
    assert run("features", "-i", g, "-o", tmp_path / "x.csv") == 1
    assert "magnitudes only" in capsys.readouterr().err


def test_missing_file_is_io_error(tmp_path):
    assert run("qft", "-i", tmp_path / "nope.csv", "-o", tmp_path / "x.csv") == 2


def test_bad_flag_is_validation_error(tmp_path):
    with pytest.raises(SystemExit) as e:
        run("generate", "--example", 7, "-o", tmp_path / "x.csv")
    assert e.value.code == 1
    assert run("generate", "--baseband", "--max-cycles", 900, "-o", tmp_path / "x.csv") == 1


def test_verify_passes_and_fault_fails(capsys):
    assert run("verify", "--no-bench", "--sizes", "8-16") == 0
    assert run("verify", "--no-bench", "--sizes", "8", "--inject-fault", "involution-sign") == 3
    out = capsys.readouterr().out
    assert "FAIL  i_involution_reversal" in out


def test_console_entry_point(tmp_path):
    z = tmp_path / "z.csv"
    res = subprocess.run(
        [sys.executable, "-m", "hyperan.cli", "generate", "--baseband", "-o", str(z), "-q"],
        capture_output=True,
        text=True,
    )
    assert res.returncode == 0 and z.exists()
