"""Symbol and waveform primitives: 16-QAM mapping, RRC pulse shaping,
matched filtering, SNR and spectrum metrics.

All waveforms are complex baseband. Convolutions in the DSP chain use
same-length output with symmetric edge truncation so symbol index k always
lives at sample k*sps throughout the pipeline.
"""

from dataclasses import dataclass, field

import numpy as np
from scipy import signal as sps_signal
from scipy.fft import next_fast_len

from .errors import ConfigError, ShapeError

# Gray-coded 16-QAM: two bits per axis, 00->-3, 01->-1, 11->+1, 10->+3,
# first bit pair -> I, second -> Q, normalized to unit average power.
_GRAY_LEVELS = np.array([-3.0, -1.0, 1.0, 3.0])
_GRAY_INDEX = {(0, 0): 0, (0, 1): 1, (1, 1): 2, (1, 0): 3}
QAM16_SCALE = 1.0 / np.sqrt(10.0)
QAM16_CONSTELLATION = np.array(
    [(i + 1j * q) * QAM16_SCALE for i in _GRAY_LEVELS for q in _GRAY_LEVELS]
)


@dataclass
class SymbolSequence:
    """A stream of unit-average-power constellation symbols."""

    symbols: np.ndarray
    modulation: str = "QAM16"

    def __post_init__(self):
        self.symbols = np.asarray(self.symbols, dtype=np.complex128)
        if not np.all(np.isfinite(self.symbols.view(np.float64))):
            raise ShapeError("symbol sequence contains non-finite values")

    def __len__(self):
        return len(self.symbols)


@dataclass
class ComplexSignal:
    """Time-domain complex baseband waveform, one row per polarization."""

    samples: np.ndarray  # (npol, n) complex
    sample_rate: float  # Hz
    sps: int  # samples per symbol

    def __post_init__(self):
        s = np.asarray(self.samples, dtype=np.complex128)
        if s.ndim == 1:
            s = s[None, :]
        if s.ndim != 2 or s.shape[0] not in (1, 2):
            raise ShapeError(f"expected (npol, n) with npol in {{1,2}}, got {s.shape}")
        if not np.all(np.isfinite(s.view(np.float64))):
            raise ShapeError("waveform contains non-finite samples")
        self.samples = s

    @property
    def polarizations(self):
        return self.samples.shape[0]

    @property
    def baud_rate(self):
        return self.sample_rate / self.sps

    def mean_power(self):
        """Time-averaged total power, summed over polarizations."""
        return float(np.mean(np.sum(np.abs(self.samples) ** 2, axis=0)))

    def copy(self):
        return ComplexSignal(self.samples.copy(), self.sample_rate, self.sps)


@dataclass
class RrcSpec:
    """Root-raised-cosine shaping filter parameters."""

    rolloff: float = 0.01
    span_symbols: int = 64
    sps: int = 2
    _taps: np.ndarray = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if not 0.0 < self.rolloff <= 1.0:
            raise ConfigError(f"rolloff must be in (0, 1], got {self.rolloff}")
        if self.sps < 2:
            raise ConfigError(f"sps must be >= 2, got {self.sps}")

    @property
    def taps(self):
        if self._taps is None:
            self._taps = rrc_taps(self.rolloff, self.span_symbols, self.sps)
        return self._taps


def rrc_taps(rolloff, span_symbols, sps):
    """Unit-energy, even-symmetric RRC impulse response (odd length)."""
    half = span_symbols * sps // 2
    t = np.arange(-half, half + 1) / sps  # in symbol periods
    h = np.empty_like(t)
    b = rolloff
    at_zero = t == 0.0
    at_sing = np.abs(np.abs(t) - 1.0 / (4.0 * b)) < 1e-12
    other = ~(at_zero | at_sing)
    h[at_zero] = 1.0 - b + 4.0 * b / np.pi
    h[at_sing] = (b / np.sqrt(2.0)) * (
        (1.0 + 2.0 / np.pi) * np.sin(np.pi / (4.0 * b))
        + (1.0 - 2.0 / np.pi) * np.cos(np.pi / (4.0 * b))
    )
    tt = t[other]
    h[other] = (
        np.sin(np.pi * tt * (1.0 - b)) + 4.0 * b * tt * np.cos(np.pi * tt * (1.0 + b))
    ) / (np.pi * tt * (1.0 - (4.0 * b * tt) ** 2))
    return h / np.sqrt(np.sum(h**2))


def conv_same(x, h, axis=-1):
    """FFT-based linear convolution, center-truncated to the input length.

    Kernel length must be odd so the truncation window is symmetric. Works
    on 1-D arrays and on batches; convolution runs along the last axis.
    """
    x = np.asarray(x)
    h = np.asarray(h)
    if h.ndim != 1 or len(h) % 2 == 0:
        raise ShapeError("kernel must be 1-D with odd length")
    if axis not in (-1, x.ndim - 1):
        raise ShapeError("conv_same convolves along the last axis")
    n = x.shape[-1]
    k = len(h)
    m = next_fast_len(n + k - 1)
    xc = np.asarray(x, dtype=np.complex128)
    hf = np.fft.fft(h.astype(np.complex128), m)
    full = np.fft.ifft(np.fft.fft(xc, m, axis=-1) * hf, axis=-1)
    p = k // 2
    out = full[..., p : p + n]
    if np.isrealobj(x) and np.isrealobj(h):
        return out.real.copy()
    return out


def upsample_zero(x, sps, axis=-1):
    """Insert sps-1 zeros between samples; output length = n * sps."""
    x = np.asarray(x)
    shape = list(x.shape)
    shape[axis if axis >= 0 else x.ndim + axis] *= sps
    out = np.zeros(shape, dtype=np.complex128)
    sl = [slice(None)] * x.ndim
    sl[axis] = slice(0, None, sps)
    out[tuple(sl)] = x
    return out


def map_qam16(bit_stream):
    """Map a 0/1 bit stream onto Gray-coded unit-power 16-QAM.

    Four bits per symbol: [b0 b1] select the I level, [b2 b3] the Q level.
    """
    bits = np.asarray(bit_stream).astype(np.int64).ravel()
    if len(bits) % 4 != 0:
        raise ShapeError(f"bit stream length {len(bits)} not divisible by 4")
    if np.any((bits != 0) & (bits != 1)):
        raise ShapeError("bit stream must contain only 0/1")
    quads = bits.reshape(-1, 4)
    lut = np.zeros((2, 2), dtype=np.int64)
    for (b0, b1), idx in _GRAY_INDEX.items():
        lut[b0, b1] = idx
    i_lv = _GRAY_LEVELS[lut[quads[:, 0], quads[:, 1]]]
    q_lv = _GRAY_LEVELS[lut[quads[:, 2], quads[:, 3]]]
    return SymbolSequence((i_lv + 1j * q_lv) * QAM16_SCALE)


def rrc_shape(symbols, spec, baud_rate):
    """Upsample by zero insertion and pulse-shape with the RRC filter.

    Output length is len(symbols) * sps; symbol k peaks at sample k * sps.
    """
    seq = symbols.symbols if isinstance(symbols, SymbolSequence) else np.asarray(symbols)
    up = upsample_zero(seq, spec.sps)
    shaped = conv_same(up, spec.taps)
    return ComplexSignal(shaped, baud_rate * spec.sps, spec.sps)


def matched_filter_downsample(signal, spec, timing_phase=0):
    """RRC matched filter followed by symbol-rate decimation.

    Returns one SymbolSequence per polarization.
    """
    if signal.sps != spec.sps:
        raise ConfigError(f"signal sps {signal.sps} != spec sps {spec.sps}")
    if not 0 <= timing_phase < spec.sps:
        raise ConfigError(f"timing phase {timing_phase} outside [0, {spec.sps})")
    filtered = conv_same(signal.samples, spec.taps, axis=-1)
    out = filtered[:, timing_phase :: spec.sps]
    return [SymbolSequence(row) for row in out]


def snr_db(received, reference, cap_db=80.0):
    """10*log10(mean|ref|^2 / mean|rx - ref|^2), capped at `cap_db`.

    Inputs must already be phase/amplitude aligned; accepts SymbolSequence
    or plain arrays (pooled over all elements).
    """
    rx = received.symbols if isinstance(received, SymbolSequence) else np.asarray(received)
    ref = reference.symbols if isinstance(reference, SymbolSequence) else np.asarray(reference)
    if rx.shape != ref.shape:
        raise ShapeError(f"shape mismatch {rx.shape} vs {ref.shape}")
    p_ref = np.mean(np.abs(ref) ** 2)
    p_err = np.mean(np.abs(rx - ref) ** 2)
    if p_err <= p_ref * 10.0 ** (-cap_db / 10.0):
        return cap_db
    return float(10.0 * np.log10(p_ref / p_err))


def evm(received, reference):
    """Root-mean-square error vector magnitude relative to reference power."""
    rx = received.symbols if isinstance(received, SymbolSequence) else np.asarray(received)
    ref = reference.symbols if isinstance(reference, SymbolSequence) else np.asarray(reference)
    return float(
        np.sqrt(np.mean(np.abs(rx - ref) ** 2) / np.mean(np.abs(ref) ** 2))
    )


def power_spectrum(signal, nfft):
    """Welch-averaged two-sided power spectral density, baseband-centered.

    Returns an (nfft, 2) array of (frequency Hz, dB). Polarizations are
    summed. Report emission only; absolute level is the PSD in dB(1/Hz).
    """
    x = signal.samples
    n = x.shape[-1]
    if nfft > n:
        raise ConfigError(f"nfft {nfft} exceeds signal length {n}")
    if nfft < 2 or (nfft & (nfft - 1)) != 0:
        raise ConfigError(f"nfft must be a power of two, got {nfft}")
    psd = None
    for row in x:
        f, p = sps_signal.welch(
            row,
            fs=signal.sample_rate,
            nperseg=nfft,
            return_onesided=False,
            detrend=False,
        )
        psd = p if psd is None else psd + p
    f = np.fft.fftshift(f)
    psd = np.fft.fftshift(psd)
    db = 10.0 * np.log10(np.maximum(psd, 1e-300))
    return np.column_stack([f, db])
