"""Fourier-series primitives on the circle [0, 2pi).

Frequency ``n`` of a length-``J`` transform lives in bin ``n mod J``. The
forward transform is unnormalized and the inverse carries ``1/J``, so
:func:`analyze` returns Fourier coefficients directly and :func:`synthesize`
returns point values of ``sum_n a(n) exp(i n t)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import AliasError, SizeMismatch


@dataclass(frozen=True)
class BandSpec:
    """Frequency window ``{n1, ..., n2}`` split into ``m`` blocks of length ``l``."""

    n1: int
    n2: int
    m: int = 1

    def __post_init__(self):
        if self.m < 1:
            raise ValueError(f"channel count must be positive, got {self.m}")
        if self.n2 < self.n1:
            raise ValueError(f"empty band: n2={self.n2} < n1={self.n1}")
        if self.size % self.m:
            raise ValueError(
                f"band size {self.size} is not divisible by M={self.m}")

    @classmethod
    def centered(cls, size: int, m: int = 1) -> "BandSpec":
        """Band of ``size`` frequencies starting at ``-(size // 2)``."""
        n1 = -(size // 2)
        return cls(n1, n1 + size - 1, m)

    @classmethod
    def parse(cls, text: str) -> "BandSpec":
        """Parse ``"n1:n2:m"`` (``m`` optional)."""
        parts = [int(p) for p in text.split(":")]
        if len(parts) not in (2, 3):
            raise ValueError(f"band must look like n1:n2[:m], got {text!r}")
        return cls(*parts)

    @property
    def size(self) -> int:
        return self.n2 - self.n1 + 1

    @property
    def l(self) -> int:  # noqa: E743
        return self.size // self.m

    def frequencies(self) -> np.ndarray:
        return np.arange(self.n1, self.n2 + 1)

    def base_frequencies(self) -> np.ndarray:
        """The first block I_1, which indexes the per-frequency matrices."""
        return np.arange(self.n1, self.n1 + self.l)

    def contains(self, n) -> np.ndarray | bool:
        n = np.asarray(n)
        out = (n >= self.n1) & (n <= self.n2)
        return bool(out) if out.ndim == 0 else out

    def block_of(self, n):
        """1-based block index k with ``n`` in I_k; defined for every integer."""
        return np.floor_divide(np.asarray(n) - self.n1, self.l) + 1

    def fold(self, n):
        """Representative of ``n`` in I_1 modulo ``l``."""
        return self.n1 + np.mod(np.asarray(n) - self.n1, self.l)


def partition_bands(band: BandSpec) -> list[range]:
    """Return the sub-bands I_1, ..., I_M as consecutive ranges."""
    return [range(band.n1 + k * band.l, band.n1 + (k + 1) * band.l)
            for k in range(band.m)]


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Finitely supported Fourier coefficients ``a(offset), a(offset+1), ...``."""

    offset: int
    coeffs: np.ndarray

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=complex).reshape(-1)
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)
        object.__setattr__(self, "offset", int(self.offset))

    @classmethod
    def from_dict(cls, values: dict[int, complex]) -> "Spectrum":
        if not values:
            return cls(0, np.zeros(0, complex))
        lo, hi = min(values), max(values)
        c = np.zeros(hi - lo + 1, complex)
        for n, v in values.items():
            c[n - lo] = v
        return cls(lo, c)

    @classmethod
    def zeros(cls, band: BandSpec) -> "Spectrum":
        return cls(band.n1, np.zeros(band.size, complex))

    @property
    def width(self) -> int:
        return len(self.coeffs)

    def frequencies(self) -> np.ndarray:
        return np.arange(self.offset, self.offset + self.width)

    def __getitem__(self, n: int) -> complex:
        i = n - self.offset
        if 0 <= i < self.width:
            return complex(self.coeffs[i])
        return 0j

    def at(self, n) -> np.ndarray:
        """Coefficients at an array of frequencies, zero outside the support."""
        n = np.asarray(n)
        i = n - self.offset
        inside = (i >= 0) & (i < self.width)
        out = np.zeros(n.shape, complex)
        out[inside] = self.coeffs[i[inside]]
        return out

    def restrict(self, band: BandSpec) -> "Spectrum":
        """Coefficients on ``band`` only (zero-padded where unsupported)."""
        return Spectrum(band.n1, self.at(band.frequencies()))

    def energy(self) -> float:
        return float(np.sum(np.abs(self.coeffs) ** 2))

    def __add__(self, other: "Spectrum") -> "Spectrum":
        lo = min(self.offset, other.offset)
        hi = max(self.offset + self.width, other.offset + other.width)
        n = np.arange(lo, hi)
        return Spectrum(lo, self.at(n) + other.at(n))

    def __neg__(self) -> "Spectrum":
        return Spectrum(self.offset, -self.coeffs)

    def __sub__(self, other: "Spectrum") -> "Spectrum":
        return self + (-other)

    def __mul__(self, scalar: complex) -> "Spectrum":
        return Spectrum(self.offset, self.coeffs * scalar)

    __rmul__ = __mul__


@dataclass(frozen=True, eq=False)
class GridSignal:
    """Samples on ``t_j = 2 pi j / J``, ``j = 0..J-1``."""

    values: np.ndarray

    def __post_init__(self):
        v = np.array(self.values).reshape(-1)
        if v.size < 1:
            raise SizeMismatch("a grid signal needs at least one sample")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @property
    def grid_size(self) -> int:
        return self.values.size

    def times(self) -> np.ndarray:
        return grid_times(self.grid_size)


def grid_times(size: int) -> np.ndarray:
    return 2 * np.pi * np.arange(size) / size


def synthesize(spec: Spectrum, grid_size: int) -> GridSignal:
    """Evaluate the trigonometric polynomial on a uniform grid of ``grid_size``.

    Raises
    ------
    AliasError
        If the support is wider than the grid, so two frequencies would share
        a bin.
    """
    if grid_size < 1:
        raise SizeMismatch(f"grid_size must be positive, got {grid_size}")
    if spec.width > grid_size:
        raise AliasError(
            f"support width {spec.width} exceeds grid size {grid_size}")
    bins = np.zeros(grid_size, complex)
    bins[np.mod(spec.frequencies(), grid_size)] = spec.coeffs
    return GridSignal(np.fft.ifft(bins) * grid_size)


def analyze(signal: GridSignal, band: BandSpec) -> Spectrum:
    """Coefficients on ``band`` of the unique interpolant of ``signal``."""
    if signal.grid_size != band.size:
        raise SizeMismatch(
            f"grid size {signal.grid_size} != band size {band.size}")
    bins = np.fft.fft(signal.values) / signal.grid_size
    return Spectrum(band.n1, bins[np.mod(band.frequencies(), band.size)])


def apply_multiplier(spec: Spectrum,
                     mult: Callable[[np.ndarray], np.ndarray]) -> Spectrum:
    """Multiply each coefficient ``a(n)`` by ``mult(n)``.

    ``mult`` receives the integer frequency array and must broadcast.
    """
    n = spec.frequencies()
    factors = np.broadcast_to(np.asarray(mult(n), dtype=complex), n.shape)
    return Spectrum(spec.offset, spec.coeffs * factors)


def hilbert_multiplier(n) -> np.ndarray:
    """Fourier multiplier ``-i sgn(n)`` of the circular Hilbert transform."""
    return -1j * np.sign(np.asarray(n))
