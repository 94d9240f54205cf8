"""Command-line front end: ``hyperan <subcommand> ...``.

Exit codes: 0 success, 1 invalid arguments or input values, 2 file errors,
3 a verification check failed.
"""

from __future__ import annotations

import argparse
import os
import sys
import warnings
from pathlib import Path

import numpy as np

from . import __version__
from . import io
from .analytic import HyperRep, hypercomplex, hypercomplex_time, simplex
from .features import DegenerateSignalError, extract
from .qft import ComplexSignal, QuaternionSignal, qft_forward, qft_inverse
from .signals import (
    BASEBAND_N,
    BasebandSpec,
    SeparationWarning,
    bandlimited_random,
    baseband_params,
    example,
    separation_check,
)
from .stqft import ridge, stqft
from .svg import line_chart
from . import verify as _verify

EXIT_OK, EXIT_VALIDATION, EXIT_IO, EXIT_VERIFY = 0, 1, 2, 3
SEED_ENV = "HYPERAN_SEED"


class UsageError(Exception):
    """Bad flag combination or value; exits with code 1."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_VALIDATION, f"{self.prog}: error: {message}\n")


def _resolve_seed(seed: int | None) -> int:
    if seed is not None:
        return seed
    env = os.environ.get(SEED_ENV)
    if env is None:
        return 1
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"{SEED_ENV}={env!r} is not an integer") from None


def _provenance(args, command: str) -> dict:
    return {"generator": f"hyperan {__version__}", "command": command}


def _say(args, msg: str) -> None:
    if not getattr(args, "quiet", False):
        print(msg)


# -- input handling ------------------------------------------------------------


def load_any_signal(path) -> ComplexSignal | QuaternionSignal:
    """Read any file this tool writes and return the signal it carries.

    Spectra are inverted back to the time domain and feature files yield
    their complex envelope ``rho``. Spectrograms carry no phase, so they
    cannot be turned back into a signal.
    """
    meta = io.read_metadata(path)
    schema = meta.get("schema", "")
    if schema == "hyperan/signal":
        return io.read_signal(path)
    if schema == "hyperan/spectrum":
        q = qft_inverse(io.read_spectrum(path))
        # round-off leaves ~1e-16 in the j, k parts of a complex signal
        if np.max(np.abs(q.samples[:, 2:]), initial=0.0) <= 1e-12 * np.max(np.abs(q.samples), initial=0.0):
            return ComplexSignal(q.samples[:, 0] + 1j * q.samples[:, 1], q.dt)
        return q
    if schema == "hyperan/features":
        F = io.read_features(path)
        return ComplexSignal(np.nan_to_num(F.rho), F.dt)
    if schema == "hyperan/spectrogram":
        raise UsageError(f"{path}: a spectrogram holds magnitudes only and cannot be used as a signal")
    raise io.FormatError(f"{path}: unrecognised schema {schema!r}")


def _as_hyper(s) -> HyperRep:
    # a quaternion input is taken to be a hypercomplex representation already
    if isinstance(s, QuaternionSignal):
        return HyperRep.from_quaternion(s)
    return hypercomplex(s)


# -- subcommands ---------------------------------------------------------------


def cmd_generate(args) -> int:
    seed = _resolve_seed(args.seed)
    out = Path(args.output)
    meta = _provenance(args, "generate")
    if args.baseband:
        n = BASEBAND_N if args.n is None else args.n
        z = bandlimited_random(BasebandSpec(n, args.max_cycles, seed))
        meta.update({"signal": "baseband", **baseband_params(BasebandSpec(n, args.max_cycles, seed))})
        io.write_signal(out, z, meta, args.deterministic)
        _say(args, f"wrote baseband ({n} samples, {args.max_cycles} cycles max, seed {seed}) to {out}")
        if args.svg:
            line_chart(args.svg, np.arange(n) * z.dt, {"re": z.samples.real, "im": z.samples.imag}, "baseband")
        return EXIT_OK

    kwargs = {k: getattr(args, k) for k in ("nu0", "nu1", "alpha", "t1", "t2", "T", "theta")}
    kwargs = {k: v for k, v in kwargs.items() if v is not None}
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", SeparationWarning)
        ex = example(args.example, seed=seed, n=args.n, max_cycles=args.max_cycles, **kwargs)
    rep = separation_check(qft_forward(ex.baseband), ex.law)
    meta.update({"signal": "z", **ex.params, "one_sided": int(rep.one_sided)})
    io.write_signal(out, ex.z, meta, args.deterministic)
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    if not rep.one_sided:
        print(
            f"warning: carrier {rep.min_carrier:g}..{rep.max_carrier:g} Hz and band edge "
            f"{rep.band_edge:g} Hz do not guarantee a one-sided spectrum (nyquist {rep.nyquist:g} Hz)",
            file=sys.stderr,
        )
    resolved = ", ".join(f"{k}={v}" for k, v in ex.params.items())
    _say(args, f"wrote example {args.example} to {out}: {resolved}")
    if args.extras:
        stem = out.with_suffix("")
        extras = {
            "o": ex.o,
            "A": ex.baseband,
            "B": ComplexSignal(ex.phase.astype(complex), ex.dt),
        }
        for name, sig in extras.items():
            path = Path(f"{stem}_{name}.csv")
            io.write_signal(path, sig, {**meta, "signal": name}, args.deterministic)
            _say(args, f"wrote {name} to {path}")
    if args.svg:
        t = np.arange(ex.n) * ex.dt
        line_chart(args.svg, t, {"re z": ex.z.samples.real, "|A|": np.abs(ex.baseband.samples)},
                   f"example {args.example}")
    return EXIT_OK


def cmd_qft(args) -> int:
    meta = _provenance(args, "qft")
    if args.inverse:
        S = io.read_spectrum(args.input)
        q = qft_inverse(S)
        meta["source"] = Path(args.input).name
        io.write_signal(args.output, q, meta, args.deterministic)
        _say(args, f"wrote inverse transform ({len(q)} samples) to {args.output}")
        return EXIT_OK
    s = load_any_signal(args.input)
    S = qft_forward(s)
    meta.update({"source": Path(args.input).name, "kind": "complex" if isinstance(s, ComplexSignal) else "quaternion"})
    io.write_spectrum(args.output, S, meta, args.deterministic)
    _say(args, f"wrote spectrum ({len(S)} bins, df={S.df:g}) to {args.output}")
    return EXIT_OK


def cmd_analytic(args) -> int:
    s = load_any_signal(args.input)
    if isinstance(s, QuaternionSignal):
        # the {1, i} part is the complex signal a representation was built from
        s = simplex(s)
    h = hypercomplex_time(s) if args.time_domain else hypercomplex(s)
    meta = _provenance(args, "analytic")
    meta.update({"source": Path(args.input).name, "method": "time" if args.time_domain else "spectral"})
    io.write_signal(args.output, h.signal, meta, args.deterministic)
    _say(args, f"wrote hypercomplex representation ({len(h)} samples) to {args.output}")
    return EXIT_OK


def cmd_features(args) -> int:
    s = load_any_signal(args.input)
    F = extract(_as_hyper(s), mode=args.mode, eps=args.eps, savgol=args.savgol)
    meta = _provenance(args, "features")
    meta.update({"source": Path(args.input).name, "mode": args.mode, "eps": args.eps,
                 "savgol": args.savgol if args.savgol else "none"})
    io.write_features(args.output, F, meta, args.deterministic)
    max_rho = np.nanmax(np.abs(F.rho))
    mean_freq = np.nanmean(F.freq)
    flagged = int(np.count_nonzero(F.mask))
    _say(args, f"max |rho| = {max_rho:.6g}")
    _say(args, f"mean freq = {mean_freq:.6g} Hz")
    _say(args, f"flagged samples = {flagged}")
    if args.svg:
        line_chart(args.svg, F.t, {"freq": F.freq}, "instantaneous frequency")
    return EXIT_OK


def cmd_stqft(args) -> int:
    s = load_any_signal(args.input)
    spec = stqft(s, window_len=args.window_len, hop=args.hop, window=args.window, onesided=not args.twosided)
    meta = _provenance(args, "stqft")
    meta["source"] = Path(args.input).name
    io.write_spectrogram(args.output, spec, meta, args.deterministic)
    _say(args, f"wrote spectrogram ({spec.n_frames} frames x {spec.mags.shape[1]} bins) to {args.output}")
    if args.svg:
        line_chart(args.svg, spec.times, {"ridge": ridge(spec)}, "spectrogram ridge")
    return EXIT_OK


def _parse_sizes(text: str) -> list[int]:
    sizes: list[int] = []
    for part in text.split(","):
        part = part.strip()
        if "-" in part:
            a, b = part.split("-", 1)
            sizes.extend(range(int(a), int(b) + 1))
        elif part:
            sizes.append(int(part))
    if not sizes or min(sizes) < 1:
        raise UsageError(f"--sizes must list positive lengths, got {text!r}")
    return sizes


def cmd_verify(args) -> int:
    seed = _resolve_seed(args.seed)
    sizes = _parse_sizes(args.sizes)
    print(f"verify: seed={seed} sizes={min(sizes)}..{max(sizes)} fault={args.inject_fault or 'none'}")
    results = _verify.run_all(seed=seed, sizes=sizes, inject_fault=args.inject_fault)
    for r in results:
        print(r.line())
    if not args.no_bench:
        b = _verify.benchmark(n=args.bench_n, seed=seed)
        verdict = "meets" if b["speedup"] >= 20 else "below"
        print(
            f"INFO  benchmark N={b['n']}: fast {b['fast_s'] * 1e3:.3f} ms, naive {b['naive_s'] * 1e3:.1f} ms, "
            f"speedup {b['speedup']:.0f}x ({verdict} the 20x target)"
        )
    failed = [r.name for r in results if not r.passed]
    if failed:
        print(f"verification failed: {', '.join(failed)}")
        return EXIT_VERIFY
    print(f"all {len(results)} checks passed")
    return EXIT_OK


# -- parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="hyperan", description="Hypercomplex signal analysis of complex-valued signals.")
    p.add_argument("--version", action="version", version=f"hyperan {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, needs_input=True):
        if needs_input:
            sp.add_argument("-i", "--input", required=True, help="input CSV file")
        sp.add_argument("-o", "--output", required=True, help="output CSV file")
        sp.add_argument("--deterministic", action="store_true", help="omit the timestamp header line")
        sp.add_argument("-q", "--quiet", action="store_true")

    g = sub.add_parser("generate", help="write a baseband or one of the three modulation examples")
    which = g.add_mutually_exclusive_group(required=True)
    which.add_argument("--example", type=int, choices=(1, 2, 3))
    which.add_argument("--baseband", action="store_true")
    g.add_argument("--seed", type=int, default=None, help=f"PRNG seed (default: ${SEED_ENV} or 1)")
    g.add_argument("--n", type=int, default=None, help="samples (default 1024; 2048 for example 3)")
    g.add_argument("--max-cycles", type=int, default=16, help="baseband band edge in cycles per record")
    g.add_argument("--nu0", type=float, default=None, help="carrier frequency (default: ratio x max-cycles)")
    g.add_argument("--nu1", type=float, default=None, help="example 2 middle frequency (default 2 nu0)")
    g.add_argument("--alpha", type=float, default=None, help="example 3 sweep height in Hz (default nu0)")
    g.add_argument("--t1", type=float, default=None)
    g.add_argument("--t2", type=float, default=None)
    g.add_argument("--T", type=float, default=None, help="example 3 boxcar width (default 0.5)")
    g.add_argument("--theta", type=float, default=None, help="constant phase offset")
    g.add_argument("--extras", action="store_true", help="also write o(t), A(t) and B(t) next to the output")
    g.add_argument("--svg", default=None, help="also render a line chart")
    common(g, needs_input=False)
    g.set_defaults(func=cmd_generate)

    q = sub.add_parser("qft", help="quaternion Fourier transform of a signal file")
    q.add_argument("--inverse", action="store_true", help="input is a spectrum; write the time signal")
    common(q)
    q.set_defaults(func=cmd_qft)

    a = sub.add_parser("analytic", help="hypercomplex representation z + o j of a complex signal")
    a.add_argument("--time-domain", action="store_true", help="build z + H_j[z] j instead of masking the spectrum")
    common(a)
    a.set_defaults(func=cmd_analytic)

    f = sub.add_parser("features", help="instantaneous envelope, phase, frequency and normal")
    f.add_argument("--mode", choices=("frenet", "literal"), default="frenet")
    f.add_argument("--eps", type=float, default=1e-10, help="degeneracy threshold on |z1|^2/|q|^2")
    f.add_argument("--savgol", type=int, default=None, help="Savitzky-Golay window for the derivative")
    f.add_argument("--svg", default=None)
    common(f)
    f.set_defaults(func=cmd_features)

    s = sub.add_parser("stqft", help="short-time QFT modulus spectrogram")
    s.add_argument("--window-len", type=int, default=128)
    s.add_argument("--hop", type=int, default=32)
    s.add_argument("--window", choices=("hann", "rect"), default="hann")
    s.add_argument("--twosided", action="store_true", help="keep negative-frequency bins")
    s.add_argument("--svg", default=None)
    common(s)
    s.set_defaults(func=cmd_stqft)

    v = sub.add_parser("verify", help="run the built-in property checks")
    v.add_argument("--seed", type=int, default=None)
    v.add_argument("--sizes", default="8-64", help="transform lengths for the oracle sweep, e.g. 8-64 or 8,16,100")
    v.add_argument("--inject-fault", choices=_verify.FAULTS, default=None, help="negative control")
    v.add_argument("--no-bench", action="store_true", help="skip the N=4096 micro-benchmark")
    v.add_argument("--bench-n", type=int, default=4096)
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (OSError, io.FormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (UsageError, DegenerateSignalError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
