"""Line-oriented CSV formats for signals, spectra, features and spectrograms.

Every file starts with ``#``-prefixed ``key=value`` metadata lines, then one
column-name line, then data rows. Numbers are written with 17 significant
digits, so floats survive a write/read cycle bit for bit. The layouts are
documented in ``docs/formats.md``.
"""

from __future__ import annotations

import datetime as _dt
from pathlib import Path

import numpy as np

from .features import InstFeatures
from .qft import ComplexSignal, QSpectrum, QuaternionSignal, centered
from .stqft import Spectrogram

__all__ = [
    "SCHEMA_VERSION",
    "FormatError",
    "write_signal",
    "read_signal",
    "read_metadata",
    "write_spectrum",
    "read_spectrum",
    "write_features",
    "read_features",
    "write_spectrogram",
    "read_spectrogram",
]

SCHEMA_VERSION = "1"

SIGNAL_COLUMNS = {
    "complex": ["t", "re", "im"],
    "quaternion": ["t", "w", "x", "y", "z"],
}
SPECTRUM_COLUMNS = ["nu", "w", "x", "y", "z"]
FEATURE_COLUMNS = ["t", "rho_re", "rho_im", "phi", "freq", "nx", "ny", "nz", "mask"]


class FormatError(ValueError):
    """A file does not match the declared schema."""


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _meta_value(v) -> str:
    if isinstance(v, float):
        return _fmt(v)
    return str(v)


def _header(kind: str, meta: dict, deterministic: bool) -> list[str]:
    lines = [f"# schema=hyperan/{kind}", f"# version={SCHEMA_VERSION}"]
    for k, v in meta.items():
        if "\n" in str(v) or "=" in str(k):
            raise ValueError(f"metadata entry {k!r} cannot be written on one line")
        lines.append(f"# {k}={_meta_value(v)}")
    if not deterministic:
        stamp = _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")
        lines.append(f"# created={stamp}")
    return lines


def _write(path, header: list[str], columns: list[str], rows: np.ndarray, int_cols: tuple[int, ...] = ()) -> None:
    out = header + [",".join(columns)]
    for row in rows:
        out.append(",".join(str(int(v)) if i in int_cols else _fmt(v) for i, v in enumerate(row)))
    Path(path).write_text("\n".join(out) + "\n", encoding="utf-8", newline="\n")


def _parse(path) -> tuple[dict, list[str], np.ndarray]:
    text = Path(path).read_text(encoding="utf-8")
    meta: dict[str, str] = {}
    columns: list[str] | None = None
    rows: list[list[float]] = []
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        if line.startswith("#"):
            if columns is not None:
                raise FormatError(f"{path}:{lineno}: metadata after the column header")
            body = line[1:].strip()
            if "=" not in body:
                raise FormatError(f"{path}:{lineno}: metadata line is not key=value")
            key, value = body.split("=", 1)
            meta[key.strip()] = value.strip()
            continue
        fields = line.split(",")
        if columns is None:
            columns = [f.strip() for f in fields]
            continue
        if len(fields) != len(columns):
            raise FormatError(
                f"{path}:{lineno}: ragged row with {len(fields)} fields, expected {len(columns)}"
            )
        try:
            rows.append([float(f) for f in fields])
        except ValueError as exc:
            raise FormatError(f"{path}:{lineno}: {exc}") from None
    if columns is None:
        raise FormatError(f"{path}: no column header")
    data = np.array(rows, dtype=float).reshape(len(rows), len(columns))
    return meta, columns, data


def _require(meta: dict, key: str, path) -> str:
    if key not in meta:
        raise FormatError(f"{path}: missing required header key '{key}'")
    return meta[key]


def _check_schema(meta: dict, kind: str, path) -> None:
    schema = _require(meta, "schema", path)
    if schema != f"hyperan/{kind}":
        raise FormatError(f"{path}: expected schema hyperan/{kind}, found {schema}")


def _check_time(t: np.ndarray, dt: float, path) -> None:
    if t.size < 2:
        return
    expected = t[0] + np.arange(t.size) * dt
    span = max(abs(expected[-1]), dt * t.size)
    if np.max(np.abs(t - expected)) > 1e-9 * span:
        raise FormatError(f"{path}: time column is not uniformly spaced with dt={dt!r}")


# -- signals ------------------------------------------------------------------


def write_signal(path, signal, meta: dict | None = None, deterministic: bool = True) -> None:
    """Write a complex (``t,re,im``) or quaternion (``t,w,x,y,z``) signal."""
    if isinstance(signal, ComplexSignal):
        kind = "complex"
        values = np.stack([signal.samples.real, signal.samples.imag], axis=1)
    elif isinstance(signal, QuaternionSignal):
        kind = "quaternion"
        values = np.asarray(signal.samples)
    else:
        raise TypeError(f"cannot write {type(signal).__name__} as a signal")
    n = len(signal)
    head = {"kind": kind, "n": n, "dt": float(signal.dt)}
    head.update(meta or {})
    rows = np.column_stack([np.arange(n) * signal.dt, values])
    _write(path, _header("signal", head, deterministic), SIGNAL_COLUMNS[kind], rows)


def read_metadata(path) -> dict:
    meta, _, _ = _parse(path)
    return meta


def read_signal(path) -> ComplexSignal | QuaternionSignal:
    meta, columns, data = _parse(path)
    _check_schema(meta, "signal", path)
    kind = _require(meta, "kind", path)
    if kind not in SIGNAL_COLUMNS:
        raise FormatError(f"{path}: unknown signal kind {kind!r}")
    raw_dt = _require(meta, "dt", path)
    try:
        dt = float(raw_dt)
    except ValueError:
        raise FormatError(f"{path}: header key 'dt' is not a number") from None
    expected = SIGNAL_COLUMNS[kind]
    if columns != expected:
        raise FormatError(
            f"{path}: {kind} signal needs columns {','.join(expected)}, found {len(columns)}: {','.join(columns)}"
        )
    if "n" in meta and int(meta["n"]) != data.shape[0]:
        raise FormatError(f"{path}: header declares n={meta['n']} but file has {data.shape[0]} rows")
    if data.shape[0] == 0:
        raise FormatError(f"{path}: no samples")
    _check_time(data[:, 0], dt, path)
    if kind == "complex":
        return ComplexSignal(data[:, 1] + 1j * data[:, 2], dt)
    return QuaternionSignal(data[:, 1:5], dt)


# -- spectra ------------------------------------------------------------------


def write_spectrum(path, S: QSpectrum, meta: dict | None = None, deterministic: bool = True) -> None:
    """Write bins in centered frequency order as ``nu,w,x,y,z``."""
    nu, bins = centered(S)
    head = {"n": len(S), "df": float(S.df), "order": "centered"}
    head.update(meta or {})
    _write(path, _header("spectrum", head, deterministic), SPECTRUM_COLUMNS, np.column_stack([nu, bins]))


def read_spectrum(path) -> QSpectrum:
    meta, columns, data = _parse(path)
    _check_schema(meta, "spectrum", path)
    if columns != SPECTRUM_COLUMNS:
        raise FormatError(f"{path}: spectrum needs columns {','.join(SPECTRUM_COLUMNS)}")
    df = float(_require(meta, "df", path))
    return QSpectrum(np.fft.ifftshift(data[:, 1:5], axes=0), df)


# -- features -----------------------------------------------------------------


def write_features(path, F: InstFeatures, meta: dict | None = None, deterministic: bool = True) -> None:
    n = len(F)
    head = {"n": n, "dt": float(F.dt)}
    head.update(meta or {})
    rows = np.column_stack([F.t, F.rho.real, F.rho.imag, F.phi, F.freq, F.normal, F.mask])
    _write(path, _header("features", head, deterministic), FEATURE_COLUMNS, rows, int_cols=(8,))


def read_features(path) -> InstFeatures:
    meta, columns, data = _parse(path)
    _check_schema(meta, "features", path)
    if columns != FEATURE_COLUMNS:
        raise FormatError(f"{path}: features need columns {','.join(FEATURE_COLUMNS)}")
    dt = float(_require(meta, "dt", path))
    rho = data[:, 1] + 1j * data[:, 2]
    return InstFeatures(
        rho=rho,
        phi=data[:, 3],
        freq=data[:, 4],
        normal=data[:, 5:8],
        dt=dt,
        axis=np.ones(data.shape[0], dtype=complex),
        mask=data[:, 8].astype(np.int8),
    )


# -- spectrograms -------------------------------------------------------------


def write_spectrogram(path, spec: Spectrogram, meta: dict | None = None, deterministic: bool = True) -> None:
    """Frame-major matrix: first column frame-center time, one column per bin.

    The column header row carries the bin frequencies as ``nu=<value>``.
    """
    head = {
        "frames": spec.n_frames,
        "bins": spec.mags.shape[1],
        "window_len": spec.window_len,
        "hop": spec.frame_hop,
        "window": spec.window,
        "onesided": int(spec.onesided),
        "df": float(spec.df),
        "dt": float(spec.dt),
        "dt_frame": float(spec.dt_frame),
    }
    head.update(meta or {})
    columns = ["t"] + [f"nu={_fmt(f)}" for f in spec.freqs]
    rows = np.column_stack([spec.times, spec.mags])
    _write(path, _header("spectrogram", head, deterministic), columns, rows)


def read_spectrogram(path) -> Spectrogram:
    meta, columns, data = _parse(path)
    _check_schema(meta, "spectrogram", path)
    if not columns or columns[0] != "t" or not all(c.startswith("nu=") for c in columns[1:]):
        raise FormatError(f"{path}: spectrogram header must be t,nu=<f0>,nu=<f1>,...")
    return Spectrogram(
        mags=data[:, 1:],
        frame_hop=int(_require(meta, "hop", path)),
        window_len=int(_require(meta, "window_len", path)),
        df=float(_require(meta, "df", path)),
        dt_frame=float(_require(meta, "dt_frame", path)),
        dt=float(_require(meta, "dt", path)),
        window=meta.get("window", "hann"),
        onesided=bool(int(meta.get("onesided", "1"))),
    )

