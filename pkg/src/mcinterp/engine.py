"""Multichannel reconstruction: from M x L channel samples back to f.

The pipeline is

1. :func:`demodulate` turns the L samples of each channel into the folded
   spectra ``d_m(n)``, n in I_1, with one length-L FFT per channel;
2. :func:`reconstruct_spectrum` solves ``A_n H_n = D_n`` for every n in I_1
   using the precomputed inverses in a :class:`~mcinterp.channels.Kernel`;
3. :func:`evaluate` synthesizes the recovered coefficients on any grid.

For f outside the band the same pipeline yields the approximation
``T_N f``, never f itself.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .channels import ChannelSpec, Kernel, bank_multipliers
from .errors import AliasError, BandMismatch, ModeMismatch, SizeMismatch
from .spectrum import (BandSpec, GridSignal, Spectrum, apply_multiplier,
                       hilbert_multiplier, synthesize)

log = logging.getLogger(__name__)

FROM_F = "f"
FROM_F_AND_HF = "f+hf"


@dataclass(frozen=True, eq=False)
class SampleSet:
    """Channel samples ``g[m, p] = g_m(2 pi p / L)``."""

    band: BandSpec
    g: np.ndarray

    def __post_init__(self):
        g = np.array(self.g, dtype=complex)
        if g.shape != (self.band.m, self.band.l):
            raise SizeMismatch(
                f"samples have shape {g.shape}, band needs "
                f"({self.band.m}, {self.band.l})")
        g.setflags(write=False)
        object.__setattr__(self, "g", g)

    @property
    def count(self) -> int:
        return self.g.size


@dataclass(frozen=True, eq=False)
class DemodTable:
    """Folded channel spectra ``d[m, j] = d_m(n1 + j)``."""

    band: BandSpec
    d: np.ndarray


def sample_times(l: int) -> np.ndarray:
    return 2 * np.pi * np.arange(l) / l


def fold_spectrum(spec: Spectrum, channels: Sequence[ChannelSpec],
                  band: BandSpec) -> np.ndarray:
    """``d_m(n) = sum_k a(n + kL) b_m(n + kL)`` for n in I_1, shape (M, L)."""
    n = spec.frequencies()
    c = bank_multipliers(channels, n) * spec.coeffs
    bins = np.mod(n - band.n1, band.l)
    d = np.zeros((len(channels), band.l), complex)
    for m in range(len(channels)):
        np.add.at(d[m], bins, c[m])
    return d


def _modulation(band: BandSpec) -> np.ndarray:
    return np.exp(1j * band.n1 * sample_times(band.l))


def sample_channels(spec: Spectrum, channels: Sequence[ChannelSpec],
                    band: BandSpec) -> SampleSet:
    """Sample every channel output of ``spec`` on the L-point grid.

    The whole support of ``spec`` is folded, so frequencies outside the band
    alias exactly as they would under physical sampling.
    """
    if len(channels) != band.m:
        raise SizeMismatch(f"band expects {band.m} channels, got {len(channels)}")
    d = fold_spectrum(spec, channels, band)
    g = np.fft.ifft(d, axis=1) * band.l * _modulation(band)
    return SampleSet(band, g)


def ingest(raw, band: BandSpec) -> SampleSet:
    """Wrap M rows of L measured channel samples."""
    rows = [np.asarray(r, dtype=complex).reshape(-1) for r in raw]
    if len(rows) != band.m:
        raise SizeMismatch(f"expected {band.m} channel rows, got {len(rows)}")
    for i, r in enumerate(rows):
        if r.size != band.l:
            raise SizeMismatch(
                f"channel row {i} has {r.size} samples, expected {band.l}")
    return SampleSet(band, np.stack(rows))


def demodulate(samples: SampleSet) -> DemodTable:
    """Recover ``d_m(n)`` for n in I_1 from the samples of channel m."""
    band = samples.band
    d = np.fft.fft(samples.g * np.conj(_modulation(band)), axis=1) / band.l
    return DemodTable(band, d)


def _check_band(samples: SampleSet, kernel: Kernel):
    if samples.band != kernel.band:
        raise BandMismatch(f"samples on {samples.band}, kernel on {kernel.band}")


def reconstruct_spectrum(samples: SampleSet, kernel: Kernel) -> Spectrum:
    """Coefficients of ``T_N f`` on the band; exact when f is in the band."""
    _check_band(samples, kernel)
    d = demodulate(samples).d
    # a[k, j] = sum_m d[m, j] q[m, k, j]
    a = np.einsum("mj,mkj->kj", d, kernel.q)
    return Spectrum(kernel.band.n1, a.reshape(-1))


def evaluate(samples: SampleSet, kernel: Kernel, grid_size: int) -> GridSignal:
    """``T_N f`` on a uniform grid of ``grid_size`` points (FFT path)."""
    _check_band(samples, kernel)
    if grid_size < kernel.band.size:
        raise AliasError(
            f"grid_size {grid_size} is smaller than the band size "
            f"{kernel.band.size}")
    return synthesize(reconstruct_spectrum(samples, kernel), grid_size)


def hilbert_evaluate(samples: SampleSet, kernel: Kernel,
                     grid_size: int) -> GridSignal:
    """Hilbert transform of ``T_N f`` on a uniform grid."""
    _check_band(samples, kernel)
    if grid_size < kernel.band.size:
        raise AliasError(
            f"grid_size {grid_size} is smaller than the band size "
            f"{kernel.band.size}")
    spec = apply_multiplier(reconstruct_spectrum(samples, kernel),
                            hilbert_multiplier)
    return synthesize(spec, grid_size)


def evaluate_at(samples: SampleSet, kernel: Kernel, t) -> np.ndarray:
    """``T_N f(t)`` at arbitrary points as ``sum_m sum_n d_m(n) v_{m,n}(t)``."""
    _check_band(samples, kernel)
    t = np.asarray(t, dtype=float)
    band = kernel.band
    d = demodulate(samples).d
    base = np.exp(1j * np.multiply.outer(t, band.base_frequencies()))
    out = np.zeros(t.shape, complex)
    for k in range(band.m):
        # v_{m,n} contributes q_{mk}(n) exp(i (n + kL) t) for each block k
        weights = np.einsum("mj,mj->j", d, kernel.q[:, k, :])
        out += np.exp(1j * k * band.l * t) * (base @ weights)
    return out


def evaluate_translates(samples: SampleSet, kernel: Kernel, t,
                        chunk: int = 256) -> np.ndarray:
    """``T_N f(t)`` as ``(1/L) sum_m sum_p g_m(t_p) y_m(t - t_p)``.

    For each output point the L shifted kernels ``y_m(t - t_p)`` are obtained
    from one length-L FFT of ``[v_{m,n}(t)]_n``, giving
    O(N_out M L log L) work in total. This is the reference translate-sum
    path; :func:`evaluate` is much faster on uniform grids.
    """
    _check_band(samples, kernel)
    t = np.atleast_1d(np.asarray(t, dtype=float))
    band = kernel.band
    l = band.l
    ns = band.base_frequencies()
    unmod = np.conj(_modulation(band))
    out = np.zeros(t.shape, complex)
    for start in range(0, t.size, chunk):
        tc = t[start:start + chunk]
        acc = np.zeros(tc.size, complex)
        for m in range(band.m):
            v = np.zeros((tc.size, l), complex)
            for k in range(band.m):
                v += np.exp(1j * np.multiply.outer(tc, ns + k * l)) * kernel.q[m, k]
            shifted = np.fft.fft(v, axis=1) * unmod
            acc += shifted @ samples.g[m]
        out[start:start + chunk] = acc / l
    return out


def take_real(signal: GridSignal, tol: float = 1e-6) -> GridSignal:
    """Drop imaginary parts, logging a warning when they exceed ``tol``."""
    residual = float(np.abs(np.imag(signal.values)).max())
    if residual > tol:
        log.warning("discarding imaginary residual %.3e (> %.1e)", residual, tol)
    return GridSignal(np.real(signal.values))


def estimate_a0(samples: SampleSet, channels: Sequence[ChannelSpec],
                mode: str = FROM_F) -> complex:
    """Mean value a(0) from the identity row, or the identity and Hilbert rows.

    ``mode="f"`` averages the samples of f. ``mode="f+hf"`` averages
    ``f + i Hf``, which needs only half as many points for the same band.
    """
    kinds = [c.kind for c in channels]
    if "identity" not in kinds:
        raise ModeMismatch("an identity channel is required to estimate a(0)")
    f = samples.g[kinds.index("identity")]
    if mode == FROM_F:
        return complex(np.mean(f))
    if mode == FROM_F_AND_HF:
        if "hilbert" not in kinds:
            raise ModeMismatch(f"mode {mode!r} needs a Hilbert channel")
        hf = samples.g[kinds.index("hilbert")]
        return complex(np.mean(f + 1j * hf))
    raise ModeMismatch(f"unknown mode {mode!r}")
