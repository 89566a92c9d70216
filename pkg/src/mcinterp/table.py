"""Approximation-error table for the rational test signal phi.

Each row fixes how many samples of f, Hf, f' and f'' are available. Every
non-zero count equals the per-channel sample count L, the band holds
``mu = L*M`` frequencies starting at ``-(mu // 2)``, and both f and Hf are
reconstructed on a 2048-point grid. Since f is real, only the real parts of
the reconstructions are kept.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .analysis import rmse
from .channels import ChannelSpec, build_kernel
from .engine import evaluate, hilbert_evaluate, sample_channels
from .oracle import phi_eval, phi_spectrum
from .spectrum import BandSpec, GridSignal, grid_times

OUTPUT_GRID = 2048

CHANNEL_ORDER = (
    ("f", ChannelSpec.identity()),
    ("hf", ChannelSpec.hilbert()),
    ("d1", ChannelSpec.derivative(1)),
    ("d2", ChannelSpec.derivative(2)),
)


@dataclass(frozen=True)
class TableRow:
    f: int = 0
    hf: int = 0
    d1: int = 0
    d2: int = 0

    @property
    def mu(self) -> int:
        return self.f + self.hf + self.d1 + self.d2

    def bank(self) -> tuple[ChannelSpec, ...]:
        return tuple(ch for name, ch in CHANNEL_ORDER if getattr(self, name))

    def band(self) -> BandSpec:
        counts = {getattr(self, name) for name, _ in CHANNEL_ORDER} - {0}
        if len(counts) != 1:
            raise ValueError(f"all used channels need the same sample count: {self}")
        return BandSpec.centered(self.mu, len(self.bank()))


DEFAULT_ROWS = (
    TableRow(f=16),
    TableRow(f=24),
    TableRow(f=16, hf=16),
    TableRow(f=32),
    TableRow(f=16, d1=16, d2=16),
    TableRow(f=24, hf=24),
    TableRow(f=48),
    TableRow(f=24, d1=24, d2=24),
    TableRow(f=36, hf=36),
    TableRow(f=72),
    TableRow(f=32, d1=32, d2=32),
    TableRow(f=48, hf=48),
    TableRow(f=96),
    TableRow(f=36, d1=36, d2=36),
    TableRow(f=54, hf=54),
    TableRow(f=108),
)


def run_row(row: TableRow, grid_size: int = OUTPUT_GRID) -> tuple[float, float]:
    """Relative errors ``(delta1, delta2)`` of f and Hf for one row."""
    band = row.band()
    bank = row.bank()
    kernel = build_kernel(band, bank)
    spec, _ = phi_spectrum(tol=1e-20)
    samples = sample_channels(spec, bank, band)
    f_true, hf_true = phi_eval(grid_times(grid_size))
    f_hat = np.real(evaluate(samples, kernel, grid_size).values)
    hf_hat = np.real(hilbert_evaluate(samples, kernel, grid_size).values)
    return (rmse(GridSignal(f_true), GridSignal(f_hat)),
            rmse(GridSignal(hf_true), GridSignal(hf_hat)))


def run_table(rows=DEFAULT_ROWS, grid_size: int = OUTPUT_GRID):
    return [(row, *run_row(row, grid_size)) for row in rows]
