"""Quaternion Fourier analysis of complex-valued signals.

The package builds the hypercomplex representation ``z + o j`` of a complex
signal from its one-sided quaternion spectrum and reads an instantaneous
complex envelope, phase and frequency off its polar Cayley-Dickson form.
"""

__version__ = "0.1.0"

from .analytic import HyperRep, hilbert_j, hypercomplex, hypercomplex_time, perplex, simplex
from .features import DegenerateSignalError, InstFeatures, extract, inst_frequency, osculating_normal, unwrap
from .qft import ComplexSignal, QSpectrum, QuaternionSignal, qft_forward, qft_forward_naive, qft_inverse
from .quaternion import DegenerateQuaternionError, Quaternion
from .signals import example, modulate, separation_check
from .stqft import Spectrogram, ridge, stqft

__all__ = [
    "ComplexSignal",
    "DegenerateQuaternionError",
    "DegenerateSignalError",
    "HyperRep",
    "InstFeatures",
    "QSpectrum",
    "Quaternion",
    "QuaternionSignal",
    "Spectrogram",
    "example",
    "extract",
    "hilbert_j",
    "hypercomplex",
    "hypercomplex_time",
    "inst_frequency",
    "modulate",
    "osculating_normal",
    "perplex",
    "qft_forward",
    "qft_forward_naive",
    "qft_inverse",
    "ridge",
    "separation_check",
    "simplex",
    "stqft",
    "unwrap",
]
