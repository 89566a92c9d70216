"""Reference paths used to cross-check the fast reconstruction.

Everything here is written for clarity rather than speed. The closed-form
kernels are the literal textbook expressions; they are 0/0 at multiples of
2 pi, so evaluating them within :data:`SINGULAR_GUARD` of such a point raises
:class:`~mcinterp.errors.NearSingularity` instead of returning garbage.
"""

from __future__ import annotations

import numpy as np

from .errors import NearSingularity
from .spectrum import Spectrum

SINGULAR_GUARD = 1e-6

# phi(z) = P1(z) / ((1.3 - z)(1.5 - z)) + P2(z) / ((1.2 + z)(1.3 + z)),
# with polynomial coefficients listed from z^0 upwards.
_PHI_TERMS = (
    ({2: 0.08, 10: 0.06}, (1.3, 1.5)),
    ({3: 0.05, 10: 0.09}, (-1.2, -1.3)),
)


def phi(z):
    """The rational test function, analytic in the disc ``|z| < 1.2``."""
    z = np.asarray(z, dtype=complex)
    out = np.zeros(z.shape, complex)
    for poly, (alpha, beta) in _PHI_TERMS:
        num = sum(c * z ** k for k, c in poly.items())
        out += num / ((alpha - z) * (beta - z))
    return out


def phi_eval(t):
    """Return ``(f, hf)``: the real and imaginary parts of ``phi(exp(i t))``.

    Because phi is analytic inside the unit disc and vanishes at 0, the
    imaginary part is the circular Hilbert transform of the real part.
    """
    v = phi(np.exp(1j * np.asarray(t, dtype=float)))
    return v.real, v.imag


def phi_taylor(count: int) -> np.ndarray:
    """First ``count`` Taylor coefficients of phi, by partial fractions."""
    k = np.arange(count)
    out = np.zeros(count)
    for poly, (alpha, beta) in _PHI_TERMS:
        # 1/((alpha-z)(beta-z)) = (1/(alpha-z) - 1/(beta-z)) / (beta-alpha)
        s = (alpha ** -(k + 1.0) - beta ** -(k + 1.0)) / (beta - alpha)
        for shift, c in poly.items():
            out[shift:] += c * s[:count - shift]
    return out


def phi_spectrum(tol: float = 1e-14) -> tuple[Spectrum, Spectrum]:
    """Fourier coefficients of ``f = Re phi`` and ``Hf = Im phi``.

    The infinite spectra are truncated symmetrically at the last frequency
    where ``|a(n)| >= tol``; the tail decays like ``1.2**-n``.
    """
    c = phi_taylor(600)
    a_pos = c / 2
    big = np.nonzero(np.abs(a_pos) >= tol)[0]
    top = int(big.max())
    n = np.arange(-top, top + 1)
    a = np.where(n > 0, a_pos[np.abs(n)], np.conj(a_pos[np.abs(n)])).astype(complex)
    a[top] = c[0].real
    hf = -1j * np.sign(n) * a
    return Spectrum(-top, a), Spectrum(-top, hf)


def _guard(t):
    t = np.asarray(t, dtype=float)
    dist = np.abs(np.remainder(t + np.pi, 2 * np.pi) - np.pi)
    if np.any(dist < SINGULAR_GUARD):
        raise NearSingularity(
            "closed form evaluated within 1e-6 of a multiple of 2*pi")
    return t


def _dirichlet(n_order: int, t) -> np.ndarray:
    """D_N(t), switching to the series near removable singularities."""
    t = np.asarray(t, dtype=float)
    dist = np.abs(np.remainder(t + np.pi, 2 * np.pi) - np.pi)
    near = dist < 1e-8
    safe = np.where(near, 1.0, t)
    out = np.sin((n_order + 0.5) * safe) / np.sin(safe / 2)
    if np.any(near):
        k = np.arange(-n_order, n_order + 1)
        series = np.exp(1j * np.multiply.outer(t[near], k)).sum(axis=-1).real
        out = np.where(near, 0.0, out)
        out[near] = series
    return out


def dirichlet_interpolate(values, t) -> np.ndarray:
    """Trigonometric interpolation of ``2N+1`` equispaced samples."""
    values = np.asarray(values)
    count = values.size
    if count % 2 == 0:
        raise ValueError("Dirichlet interpolation needs an odd sample count")
    n_order = count // 2
    tp = 2 * np.pi * np.arange(count) / count
    t = np.asarray(t, dtype=float)
    kern = _dirichlet(n_order, np.subtract.outer(t, tp))
    return kern @ values / count


def closed_form_y(example: str, t, *, n: int | None = None,
                  n0: int | None = None) -> np.ndarray:
    """Printed closed-form interpolation kernels.

    ======================  =============================================
    key                     kernel
    ======================  =============================================
    ``ex1``                 Dirichlet kernel, f only, band -N..N
    ``ex2_y1/y2/y3``        f, f', f'', band -(3 n0 + 1)..3 n0 + 1
    ``ex3``                 Hf only, band -N..N with a(0) = 0
    ``ex4_yr``, ``ex4_yi``  real and imaginary parts, f only, band 0..N
    ``ex5_y1``, ``ex5_y2``  f and Hf, band -N..N+1
    ======================  =============================================

    The ``ex2_*`` kernels take ``n0``; the others take ``n``. ``ex5_y2`` is
    reproduced as printed and differs from the exact kernel by
    ``(i - 1) exp(i (N+1) t)``; see the tests.
    """
    t = _guard(t)
    if example.startswith("ex2"):
        if n0 is None:
            raise ValueError("ex2 kernels need n0")
        s3 = np.sin((n0 + 0.5) * t) ** 3
        denom = (2 * n0 + 1) ** 2
        if example == "ex2_y1":
            poly = n0 ** 2 + n0 + 1 - (n0 + 1) * n0 * np.cos(t)
            return s3 * poly / (denom * np.sin(t / 2) ** 3) + 0j
        if example == "ex2_y2":
            return np.sin(t) * s3 / (denom * np.sin(t / 2) ** 3) + 0j
        if example == "ex2_y3":
            return 2 * s3 / (denom * np.sin(t / 2)) + 0j
        raise ValueError(f"unknown example {example!r}")
    if n is None:
        raise ValueError(f"{example} needs n")
    csc = 1 / np.sin(t / 2)
    if example == "ex1":
        return np.sin((n + 0.5) * t) * csc + 0j
    if example == "ex3":
        return -2 * csc * np.sin(n * t / 2) * np.sin((1 + n) * t / 2) + 0j
    if example == "ex4_yr":
        return csc * np.cos(n * t / 2) * np.sin((1 + n) * t / 2) + 0j
    if example == "ex4_yi":
        return csc * np.sin(n * t / 2) * np.sin((1 + n) * t / 2) + 0j
    if example == "ex5_y1":
        return ((np.cos((n + 1) * t) - np.cos(n * t) + np.cos(t) - 1)
                / (2 * np.cos(t) - 2)) + 0j
    if example == "ex5_y2":
        e = np.exp(1j * t)
        return (np.exp(1j * (n + 1) * t) - 1j
                - 1j * (np.exp(-1j * n * t) - 1) * (np.exp(1j * (n + 1) * t) - 1)
                / (2 * (e - 1)))
    raise ValueError(f"unknown example {example!r}")


def _translate_sum(samples, kernel, t):
    samples = np.asarray(samples)
    count = samples.size
    tp = 2 * np.pi * np.arange(count) / count
    t = np.asarray(t, dtype=float)
    return kernel(np.subtract.outer(t, tp)) @ samples / count


def _csc_kernel(n):
    def kern(s):
        s = _guard(s)
        return (1 / np.sin(s / 2)) * np.sin(n * s / 2) * np.sin((1 + n) * s / 2)
    return kern


def hilbert_sampling_reference(formula: str, t, *, f=None, hf=None,
                               a0: complex | None = None) -> np.ndarray:
    """Literal sampling formulas that involve the Hilbert transform.

    ``samplbyhilbert``
        f from 2N+1 samples of Hf (valid when a(0) = 0).
    ``computehilbert1``
        Hf from 2N+1 samples of f; a(0) defaults to the sample mean.
    ``realvalued2`` / ``realvalued2h``
        f / Hf from N+1 samples each of real f and Hf.
    ``complexbyhil2`` / ``complexbyhil2h``
        f / Hf from N+1 samples each of (possibly complex) f and Hf; a(0)
        defaults to the mean of ``f + i Hf``.
    """
    formula = formula.lower()
    f = None if f is None else np.asarray(f)
    hf = None if hf is None else np.asarray(hf)
    if formula == "samplbyhilbert":
        n = hf.size // 2
        return -2 * _translate_sum(hf, _csc_kernel(n), t)
    if formula == "computehilbert1":
        n = f.size // 2
        if a0 is None:
            a0 = np.mean(f)
        return 2 * _translate_sum(f - a0, _csc_kernel(n), t)
    if f.size != hf.size:
        raise ValueError("f and Hf sample counts differ")
    n = f.size - 1
    if formula in ("realvalued2", "realvalued2h"):
        if np.iscomplexobj(f) and np.abs(np.imag(f)).max() > 0:
            raise ValueError(f"{formula} requires real-valued f")
        yr = lambda s: closed_form_y("ex4_yr", s, n=n)  # noqa: E731
        yi = lambda s: closed_form_y("ex4_yi", s, n=n)  # noqa: E731
        if formula == "realvalued2":
            return _translate_sum(f, yr, t) - _translate_sum(hf, yi, t)
        return _translate_sum(f, yi, t) + _translate_sum(hf, yr, t)
    if formula in ("complexbyhil2", "complexbyhil2h"):
        y1 = lambda s: closed_form_y("ex5_y1", s, n=n)  # noqa: E731
        y2 = lambda s: closed_form_y("ex5_y2", s, n=n)  # noqa: E731
        if formula == "complexbyhil2":
            return _translate_sum(f, y1, t) + _translate_sum(hf, y2, t)
        if a0 is None:
            a0 = np.mean(f + 1j * hf)
        return _translate_sum(hf, y1, t) + _translate_sum(a0 - f, y2, t)
    raise ValueError(f"unknown formula {formula!r}")
