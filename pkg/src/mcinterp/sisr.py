"""Single-image super-resolution with the (f, f', f'') channel bank.

Every image line is treated as L = W samples of a 2 pi-periodic signal.
Centered differences supply the first and second derivative channels, so a
line of W pixels feeds a 3-channel reconstruction over 3W frequencies. Rows
are upscaled first, then the columns of the intermediate image.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .channels import DERIVATIVE_BANK, Kernel, build_kernel
from .errors import DimensionNotDivisible, SizeMismatch, TooShort, ZeroVariance
from .spectrum import BandSpec

PERIODIC = "periodic"
MIRROR = "mirror"


@dataclass(frozen=True, eq=False)
class ImagePlane:
    """A single luminance plane, ``pixels[y, x]``, values nominally in [0, 255]."""

    pixels: np.ndarray

    def __post_init__(self):
        p = np.array(self.pixels, dtype=float)
        if p.ndim != 2 or p.size == 0:
            raise SizeMismatch(f"expected a non-empty 2-D array, got shape {p.shape}")
        if not np.all(np.isfinite(p)):
            raise ValueError("image contains non-finite pixels")
        p.setflags(write=False)
        object.__setattr__(self, "pixels", p)

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    def clamp(self) -> "ImagePlane":
        return ImagePlane(np.clip(self.pixels, 0, 255))


@dataclass(frozen=True)
class DegradeConfig:
    kernel_size: int = 5
    sigma: float = 1.0
    factor: int = 3
    noise_sigma: float = 0.0
    seed: int | None = None

    def __post_init__(self):
        if self.kernel_size < 1 or self.kernel_size % 2 == 0:
            raise ValueError("kernel_size must be a positive odd integer")
        if self.sigma <= 0:
            raise ValueError("sigma must be positive")
        if self.factor < 1:
            raise ValueError("factor must be at least 1")
        if self.noise_sigma < 0:
            raise ValueError("noise_sigma must be non-negative")


def gaussian_kernel(size: int, sigma: float) -> np.ndarray:
    x = np.arange(size) - (size - 1) / 2
    g = np.exp(-(x[:, None] ** 2 + x[None, :] ** 2) / (2 * sigma ** 2))
    return g / g.sum()


def blur(pixels: np.ndarray, kernel: np.ndarray) -> np.ndarray:
    """2-D convolution with edge replication."""
    r = kernel.shape[0] // 2
    padded = np.pad(pixels, r, mode="edge")
    h, w = pixels.shape
    out = np.zeros((h, w))
    # symmetric kernel, so correlation and convolution coincide
    for dy in range(kernel.shape[0]):
        for dx in range(kernel.shape[1]):
            out += kernel[dy, dx] * padded[dy:dy + h, dx:dx + w]
    return out


def degrade(img: ImagePlane, cfg: DegradeConfig = DegradeConfig()) -> ImagePlane:
    """Blur, optionally add noise, and keep every ``factor``-th pixel."""
    f = cfg.factor
    if img.width % f or img.height % f:
        raise DimensionNotDivisible(
            f"{img.width}x{img.height} image is not divisible by factor {f}")
    out = blur(img.pixels, gaussian_kernel(cfg.kernel_size, cfg.sigma))
    if cfg.noise_sigma > 0:
        rng = np.random.default_rng(cfg.seed)
        out = out + rng.normal(0.0, cfg.noise_sigma, out.shape)
    return ImagePlane(np.clip(out[::f, ::f], 0, 255))


def row_derivatives(row) -> tuple[np.ndarray, np.ndarray]:
    """Centered first and second differences of a periodic line.

    Pixel p sits at ``t_p = 2 pi p / W``; the results are derivatives with
    respect to t, which is what the derivative channels expect.
    """
    d1, d2 = _differences(np.asarray(row, dtype=float)[None, :])
    return d1[0], d2[0]


def _differences(lines: np.ndarray):
    w = lines.shape[-1]
    if w < 3:
        raise TooShort(f"need at least 3 samples per line, got {w}")
    nxt = np.roll(lines, -1, axis=-1)
    prv = np.roll(lines, 1, axis=-1)
    scale = w / (2 * np.pi)
    return scale * (nxt - prv) / 2, scale ** 2 * (nxt - 2 * lines + prv)


def line_band(w: int) -> BandSpec:
    n1 = -((3 * w) // 2)
    return BandSpec(n1, n1 + 3 * w - 1, 3)


@lru_cache(maxsize=16)
def line_kernel(w: int) -> Kernel:
    """Derivative-bank kernel for lines of ``w`` pixels (shared, read-only)."""
    return build_kernel(line_band(w), DERIVATIVE_BANK)


def upscale_lines(lines: np.ndarray, factor: int) -> np.ndarray:
    """Upscale each row of ``lines`` by ``factor`` with the 3-channel bank.

    Output pixel ``factor * p`` lies on input pixel ``p``. Values are not
    clamped.
    """
    lines = np.asarray(lines, dtype=float)
    count, w = lines.shape
    d1, d2 = _differences(lines)
    kernel = line_kernel(w)
    band = kernel.band
    g = np.stack([lines, d1, d2], axis=1)                     # (count, 3, W)
    t = 2 * np.pi * np.arange(w) / w
    demod = np.fft.fft(g * np.exp(-1j * band.n1 * t), axis=-1) / w
    coeffs = np.einsum("cmj,mkj->ckj", demod, kernel.q).reshape(count, band.size)
    # the 3W-frequency band needs a grid of at least 3W points
    over = -(-3 // factor)
    grid = factor * w * over
    bins = np.zeros((count, grid), complex)
    bins[:, np.mod(band.frequencies(), grid)] = coeffs
    values = np.fft.ifft(bins, axis=-1) * grid
    return np.real(values[:, ::over])


def _upscale_axis(pixels: np.ndarray, factor: int, extend: str) -> np.ndarray:
    """Upscale along the last axis."""
    if extend == PERIODIC:
        return upscale_lines(pixels, factor)
    if extend == MIRROR:
        w = pixels.shape[-1]
        left = w // 2
        ext = np.pad(pixels, ((0, 0), (left, w - left)), mode="symmetric")
        up = upscale_lines(ext, factor)
        return up[:, left * factor:(left + w) * factor]
    raise ValueError(f"unknown extension mode {extend!r}")


def upscale(img: ImagePlane, factor: int = 3, extend: str = PERIODIC,
            clamp: bool = True) -> ImagePlane:
    """Separable super-resolution: rows first, then columns."""
    if factor < 1:
        raise ValueError("factor must be positive")
    if factor == 1:
        return ImagePlane(img.pixels.copy())
    if min(img.width, img.height) < 3:
        raise TooShort("image must be at least 3x3")
    rows = _upscale_axis(img.pixels, factor, extend)
    both = _upscale_axis(rows.T, factor, extend).T
    out = ImagePlane(both)
    return out.clamp() if clamp else out


def _cropped(a: ImagePlane, b: ImagePlane, crop: int):
    if a.pixels.shape != b.pixels.shape:
        raise SizeMismatch(f"image shapes differ: {a.pixels.shape} vs {b.pixels.shape}")
    if crop:
        if 2 * crop >= min(a.pixels.shape):
            raise SizeMismatch(f"crop {crop} leaves no pixels")
        sl = (slice(crop, -crop), slice(crop, -crop))
        return a.pixels[sl], b.pixels[sl]
    return a.pixels, b.pixels


def psnr(a: ImagePlane, b: ImagePlane, crop: int = 3) -> float:
    """Peak signal-to-noise ratio in dB, ignoring a ``crop``-pixel border.

    Identical images give ``inf``.
    """
    x, y = _cropped(a, b, crop)
    mse = float(np.mean((x - y) ** 2))
    if mse == 0:
        return float("inf")
    return float(10 * np.log10(255.0 ** 2 / mse))


def cc(a: ImagePlane, b: ImagePlane, crop: int = 3) -> float:
    """Pearson correlation over the same cropped region as :func:`psnr`."""
    x, y = _cropped(a, b, crop)
    x = x - x.mean()
    y = y - y.mean()
    denom = np.sqrt((x * x).sum() * (y * y).sum())
    if denom == 0:
        raise ZeroVariance("correlation undefined for a constant image")
    return float((x * y).sum() / denom)
