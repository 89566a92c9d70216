"""Error analysis for signals that are not bandlimited to the band.

The shift-averaged error ``epsilon(f, N)`` averages the squared L2 error of
reconstructing ``f(t - tau)`` over a full sampling period of tau. It has a
closed form in terms of the Fourier coefficients of f and the kernel tables
(:func:`averaged_error`), which :func:`averaged_error_empirical` checks by
brute-force quadrature over tau.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Callable, Sequence

import numpy as np

from .channels import ChannelSpec, Kernel, bank_multipliers
from .engine import SampleSet, evaluate, reconstruct_spectrum, sample_channels
from .errors import SizeMismatch, ZeroReference
from .spectrum import BandSpec, GridSignal, Spectrum, synthesize


@dataclass
class ErrorReport:
    epsilon: float
    bound: float
    out_of_band_energy: float
    omega: list[float] = field(default_factory=list)

    def to_json(self) -> dict:
        return asdict(self)


def consistency_residual(samples: SampleSet, kernel: Kernel,
                         channels: Sequence[ChannelSpec] | None = None) -> float:
    """Largest deviation between the samples and a re-sampling of ``T_N f``.

    The reconstruction is filtered by every channel again and sampled on the
    original grid; for a correct kernel this reproduces the input samples
    even when f is not bandlimited.
    """
    channels = kernel.channels if channels is None else tuple(channels)
    spec = reconstruct_spectrum(samples, kernel)
    again = sample_channels(spec, channels, samples.band)
    return float(np.abs(again.g - samples.g).max())


def omega(kernel: Kernel) -> np.ndarray:
    """``sup_n |r_m(n)|^2`` over the band, one value per channel."""
    return (np.abs(kernel.r_table()) ** 2).max(axis=1)


def averaged_error(true_spec: Spectrum, kernel: Kernel,
                   channels: Sequence[ChannelSpec] | None = None) -> ErrorReport:
    """Closed-form shift-averaged error and its Cauchy-Schwarz style bound.

    Every out-of-band frequency n contributes ``|a(n)|^2`` once for being
    missed and again, weighted by ``sum_l |sum_m r_m(n + (l-k)L) b_m(n)|^2``,
    for the energy it aliases into the band. The bound replaces that weight
    by ``M * sum_m Omega_m^2 * sum_m |b_m(n)|^2``.
    """
    channels = kernel.channels if channels is None else tuple(channels)
    band = kernel.band
    n = true_spec.frequencies()
    a2 = np.abs(true_spec.coeffs) ** 2
    out = ~band.contains(n)
    n_out, a2_out = n[out], a2[out]
    oob = float(a2_out.sum())

    om = omega(kernel)
    if n_out.size:
        b = bank_multipliers(channels, n_out)                 # (M, c)
        q = kernel.q[:, :, np.mod(n_out - band.n1, band.l)]   # (M, M, c)
        alias = np.einsum("mlc,mc->lc", q, b)
        weight = (np.abs(alias) ** 2).sum(axis=0)
        eps2 = oob + float((a2_out * weight).sum())
        b2 = (np.abs(b) ** 2).sum(axis=0)
        bound2 = oob + float((a2_out * b2).sum()) * band.m * float((om ** 2).sum())
    else:
        eps2 = bound2 = 0.0
    return ErrorReport(float(np.sqrt(eps2)), float(np.sqrt(bound2)), oob,
                       [float(x) for x in om])


Sampler = Callable[[float, int], "tuple[SampleSet, GridSignal]"]


def spectral_sampler(spec: Spectrum, channels: Sequence[ChannelSpec],
                     band: BandSpec) -> Sampler:
    """Sampler for the shifts ``f(t - tau)`` of a finitely supported f.

    The returned callable maps ``(tau, grid_size)`` to the channel samples of
    the shifted signal and its exact values on the output grid.
    """
    n = spec.frequencies()

    def sampler(tau: float, grid_size: int):
        shifted = Spectrum(spec.offset, spec.coeffs * np.exp(-1j * n * tau))
        return (sample_channels(shifted, channels, band),
                synthesize(shifted, grid_size))

    return sampler


def averaged_error_empirical(f_sampler: Sampler, kernel: Kernel,
                             tau_count: int = 64,
                             grid_size: int = 2048) -> float:
    """Quadrature estimate of the shift-averaged error.

    ``tau`` runs over ``tau_count`` uniform nodes of one sampling period
    ``[0, 2 pi / L)``; the squared error for each shift is measured on a
    ``grid_size`` grid, which is exact once the grid covers the supports.
    """
    if tau_count < 8:
        raise ValueError("tau_count must be at least 8")
    l = kernel.band.l
    total = 0.0
    for i in range(tau_count):
        tau = 2 * np.pi * i / (l * tau_count)
        samples, truth = f_sampler(tau, grid_size)
        approx = evaluate(samples, kernel, grid_size)
        total += float(np.mean(np.abs(truth.values - approx.values) ** 2))
    return float(np.sqrt(total / tau_count))


def rmse(reference: GridSignal, approx: GridSignal) -> float:
    """Relative root-mean-square error ``||ref - approx|| / ||ref||``."""
    ref = np.asarray(reference.values)
    app = np.asarray(approx.values)
    if ref.shape != app.shape:
        raise SizeMismatch(f"grid sizes differ: {ref.size} vs {app.size}")
    denom = np.linalg.norm(ref)
    if denom == 0:
        raise ZeroReference("reference signal is identically zero")
    return float(np.linalg.norm(ref - app) / denom)
