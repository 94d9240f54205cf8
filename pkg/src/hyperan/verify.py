"""Self-verification suite: named invariant checks and a micro-benchmark.

Each check returns a :class:`CheckResult` holding the measured deviation
and the tolerance it was held to. :func:`run_all` is what ``hyperan verify``
executes. ``inject_fault="involution-sign"`` swaps in an involution with a
flipped sign as a negative control; the involution-dependent checks must
then fail by name.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import quaternion as qt
from .analytic import hypercomplex, negative_band_ratio, simplex
from .features import extract
from .qft import (
    ComplexSignal,
    QuaternionSignal,
    convolve_right_real,
    qft_forward,
    qft_forward_naive,
    qft_inverse,
    qmul_bins,
)
from .signals import example

__all__ = ["CheckResult", "FAULTS", "run_all", "benchmark", "DEFAULT_SIZES"]

DEFAULT_SIZES = tuple(range(8, 65))
FAULTS = ("involution-sign",)


@dataclass(frozen=True)
class CheckResult:
    name: str
    value: float
    tol: float
    passed: bool
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = f"  {self.detail}" if self.detail else ""
        return f"{status}  {self.name:<28} {self.value:.3e} (tol {self.tol:.1e}){extra}"


def _result(name: str, value: float, tol: float, detail: str = "") -> CheckResult:
    return CheckResult(name, float(value), tol, bool(np.isfinite(value) and value < tol), detail)


def _rand_complex(rng: np.random.Generator, n: int) -> ComplexSignal:
    return ComplexSignal(rng.uniform(-1, 1, n) + 1j * rng.uniform(-1, 1, n), 1.0 / n)


def _faulty_involution(q, axis: str) -> np.ndarray:
    out = qt.involution_array(q, axis)
    out[..., 0] = -out[..., 0]
    return out


# -- individual checks --------------------------------------------------------


def check_naive_oracle(rng, sizes) -> CheckResult:
    worst = 0.0
    for n in sizes:
        z = _rand_complex(rng, n)
        q = QuaternionSignal(rng.uniform(-1, 1, (n, 4)), 1.0 / n)
        for s in (z, q):
            d = np.max(np.abs(qft_forward(s).bins - qft_forward_naive(s).bins))
            worst = max(worst, d)
    return _result("qft_naive_oracle", worst, 1e-10, f"N={min(sizes)}..{max(sizes)}")


def check_round_trip(rng, n: int = 1024) -> CheckResult:
    q = rng.uniform(-1, 1, (n, 4))
    back = qft_inverse(qft_forward(QuaternionSignal(q, 1.0 / n))).samples
    rel = np.sqrt(np.mean((back - q) ** 2) / np.mean(q**2))
    return _result("qft_round_trip", rel, 1e-10, f"N={n}")


def check_symmetry(rng, n: int = 64) -> CheckResult:
    # even real part -> only the scalar component survives, and so on
    worst = 0.0
    k = np.arange(n)
    for part, keep in ((0, 0), (1, 1), (2, 2), (3, 3)):
        x = rng.uniform(-1, 1, n)
        even = 0.5 * (x + x[(-k) % n])
        odd = 0.5 * (x - x[(-k) % n])
        sig = {0: even, 1: 1j * even, 2: odd, 3: 1j * odd}[part]
        b = qft_forward(ComplexSignal(sig.astype(complex), 1.0 / n)).bins
        others = np.delete(b, keep, axis=1)
        worst = max(worst, np.max(np.abs(others)) / np.max(np.abs(b)))
    return _result("symmetry_components", worst, 1e-12)


def check_i_involution(rng, involution: Callable, n: int = 256, trials: int = 100) -> CheckResult:
    worst = 0.0
    idx = np.arange(n)
    for _ in range(trials):
        b = qft_forward(_rand_complex(rng, n)).bins
        dev = np.max(np.linalg.norm(b[(-idx) % n] - involution(b, "i"), axis=1))
        worst = max(worst, dev / np.max(np.linalg.norm(b, axis=1)))
    return _result("i_involution_reversal", worst, 1e-10, f"{trials} signals, N={n}")


def check_j_involution(rng, involution: Callable, n: int = 128) -> CheckResult:
    z = _rand_complex(rng, n)
    lhs = qft_forward(ComplexSignal(np.conj(z.samples), z.dt)).bins
    rhs = involution(qft_forward(z).bins, "j")
    return _result("j_involution_conjugate", np.max(np.abs(lhs - rhs)) / np.max(np.abs(lhs)), 1e-10)


def check_involution_identity(rng, involution: Callable) -> CheckResult:
    q = rng.uniform(-1, 1, (200, 4))
    worst = 0.0
    for axis, mu in (("i", [0, 1, 0, 0]), ("j", [0, 0, 1, 0]), ("k", [0, 0, 0, 1])):
        mu = np.broadcast_to(np.array(mu, float), q.shape)
        direct = -qt.qmul_array(qt.qmul_array(mu, q), mu)
        worst = max(worst, np.max(np.abs(involution(q, axis) - direct)))
    return _result("involution_definition", worst, 1e-14)


def check_convolution(rng, n: int = 128) -> CheckResult:
    g = _rand_complex(rng, n)
    f = rng.uniform(-1, 1, n)
    direct = np.array([np.sum(g.samples * f[(m - np.arange(n)) % n]) for m in range(n)])
    conv = convolve_right_real(g, f).samples
    spectral = qmul_bins(qft_forward(g), qft_forward(ComplexSignal(f.astype(complex), g.dt)))
    via_spec = qft_inverse(spectral).samples
    rms = max(
        np.sqrt(np.mean(np.abs(conv - direct) ** 2)),
        np.sqrt(np.mean((via_spec[:, 0] - direct.real) ** 2 + (via_spec[:, 1] - direct.imag) ** 2)),
        np.max(np.abs(via_spec[:, 2:])),
    )
    return _result("convolution_theorem", rms, 1e-9, f"N={n}")


def check_convolution_order(rng, n: int = 16) -> CheckResult:
    """Negative control: the reversed product must not give the convolution."""
    g = _rand_complex(rng, n)
    f = rng.uniform(-1, 1, n)
    G = qft_forward(g)
    F = qft_forward(ComplexSignal(f.astype(complex), g.dt))
    right = qmul_bins(G, F).bins
    wrong = qmul_bins(F, G).bins
    gap = np.max(np.abs(right - wrong)) / np.max(np.abs(right))
    # passes when the two orders differ clearly
    return CheckResult("convolution_order_matters", float(gap), 1e-3, bool(gap > 1e-3), "reversed product differs")


def check_one_sided(rng, n: int = 256, trials: int = 100) -> list[CheckResult]:
    worst = 0.0
    rec = 0.0
    for _ in range(trials):
        z = _rand_complex(rng, n)
        h = hypercomplex(z)
        worst = max(worst, negative_band_ratio(h))
        rec = max(rec, np.max(np.abs(simplex(h).samples - z.samples)))
    return [
        _result("one_sided_spectrum", worst, 1e-9, f"{trials} signals, N={n}"),
        _result("simplex_recovery", rec, 1e-12),
    ]


def check_polar_round_trip(rng, count: int = 10_000) -> CheckResult:
    q = rng.uniform(-1, 1, (count, 4))
    A, B = qt.to_polar_cd_array(q)
    err = np.max(np.abs(qt.from_polar_cd_array(A, B) - q))
    return _result("polar_cd_round_trip", err, 1e-12, f"{count} quaternions")


def check_example1(seed: int) -> CheckResult:
    ex = example(1, seed=seed)
    F = extract(hypercomplex(ex.z))
    A = ex.baseband.samples
    rho_err = np.sqrt(np.mean(np.abs(F.rho - A) ** 2))
    return _result("example1_envelope", rho_err, 1e-8)


def run_all(
    seed: int = 1,
    sizes=DEFAULT_SIZES,
    inject_fault: str | None = None,
) -> list[CheckResult]:
    if inject_fault is not None and inject_fault not in FAULTS:
        raise ValueError(f"unknown fault {inject_fault!r}; choose from {', '.join(FAULTS)}")
    involution = _faulty_involution if inject_fault == "involution-sign" else qt.involution_array
    rng = np.random.default_rng(seed)
    return [
        check_naive_oracle(rng, sizes),
        check_round_trip(rng),
        check_symmetry(rng),
        check_involution_identity(rng, involution),
        check_i_involution(rng, involution),
        check_j_involution(rng, involution),
        check_convolution(rng),
        check_convolution_order(rng),
        *check_one_sided(rng),
        check_polar_round_trip(rng),
        check_example1(seed),
    ]


def benchmark(n: int = 4096, seed: int = 1, repeats: int = 3) -> dict:
    """Best-of-``repeats`` wall time of the fast and naive transforms."""
    rng = np.random.default_rng(seed)
    s = QuaternionSignal(rng.uniform(-1, 1, (n, 4)), 1.0 / n)

    def best(fn):
        times = []
        for _ in range(repeats):
            t0 = time.perf_counter()
            fn(s)
            times.append(time.perf_counter() - t0)
        return min(times)

    fast = best(qft_forward)
    naive = best(qft_forward_naive) if repeats else float("nan")
    return {"n": n, "fast_s": fast, "naive_s": naive, "speedup": naive / fast}

