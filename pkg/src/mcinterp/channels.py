"""Channel multipliers and the per-frequency inverse tables built from them.

A channel is a linear filter acting on f through a Fourier multiplier b(n).
For a band of M blocks of length L, frequency ``n`` in the first block I_1
couples the M frequencies ``n, n+L, ..., n+(M-1)L`` through the matrix
``H_n[j, k] = b_k(n + jL)``. The :class:`Kernel` stores the inverses of all
``H_n`` and evaluates the interpolation kernels built from them.

Channel indices are 0-based throughout the Python API.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import SingularMatrix
from .spectrum import BandSpec

KINDS = ("identity", "derivative", "hilbert", "analytic", "table")

# Pivot threshold relative to the largest entry of H_n.
PIVOT_RTOL = 1e-12


@dataclass(frozen=True)
class ChannelSpec:
    kind: str
    order: int = 0
    table: tuple[tuple[int, complex], ...] = ()

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown channel kind {self.kind!r}")
        if self.order < 0:
            raise ValueError("derivative order must be non-negative")

    @classmethod
    def identity(cls) -> "ChannelSpec":
        return cls("identity")

    @classmethod
    def derivative(cls, order: int = 1) -> "ChannelSpec":
        return cls("derivative", order)

    @classmethod
    def hilbert(cls) -> "ChannelSpec":
        return cls("hilbert")

    @classmethod
    def analytic(cls) -> "ChannelSpec":
        return cls("analytic")

    @classmethod
    def from_table(cls, values: Mapping[int, complex]) -> "ChannelSpec":
        return cls("table", table=tuple(sorted(
            (int(n), complex(v)) for n, v in values.items())))

    def __call__(self, n) -> np.ndarray:
        return multiplier(self, n)

    def to_json(self) -> dict:
        d: dict = {"kind": self.kind}
        if self.kind == "derivative":
            d["order"] = self.order
        elif self.kind == "table":
            d["values"] = {str(n): [v.real, v.imag] for n, v in self.table}
        return d

    @classmethod
    def from_json(cls, d) -> "ChannelSpec":
        """Inverse of :meth:`to_json`; also accepts ``"identity"`` or ``"d2"``."""
        if isinstance(d, str):
            name = d.strip().lower()
            if len(name) > 1 and name[0] == "d" and name[1:].isdigit():
                return cls.derivative(int(name[1:]))
            d = {"kind": name}
        if not isinstance(d, Mapping) or "kind" not in d:
            raise ValueError(f"bad channel entry {d!r}")
        kind = str(d["kind"]).lower()
        if kind == "derivative":
            return cls.derivative(int(d.get("order", 1)))
        if kind == "table":
            values = {}
            for n, v in d.get("values", {}).items():
                values[int(n)] = complex(*v) if isinstance(v, (list, tuple)) else complex(v)
            return cls.from_table(values)
        return cls(kind)


def multiplier(channel: ChannelSpec, n):
    """Fourier multiplier b(n) of ``channel``; vectorized over ``n``."""
    n_arr = np.asarray(n)
    kind = channel.kind
    if kind == "identity":
        out = np.ones(n_arr.shape, complex)
    elif kind == "derivative":
        out = (1j * n_arr.astype(float)) ** channel.order
        out = np.asarray(out, dtype=complex)
    elif kind == "hilbert":
        out = -1j * np.sign(n_arr).astype(complex)
    elif kind == "analytic":
        out = (n_arr >= 0).astype(complex)
    else:
        lookup = dict(channel.table)
        out = np.array([lookup.get(int(k), 0j) for k in n_arr.reshape(-1)],
                       dtype=complex).reshape(n_arr.shape)
    return complex(out) if out.ndim == 0 else out


def bank_multipliers(channels: Sequence[ChannelSpec], n) -> np.ndarray:
    """Stack of ``b_m(n)`` with shape ``(M,) + shape(n)``."""
    return np.stack([np.asarray(multiplier(c, n), dtype=complex)
                     for c in channels])


def build_matrix(band: BandSpec, channels: Sequence[ChannelSpec],
                 n: int) -> np.ndarray:
    """The M x M matrix ``H_n[j, k] = b_k(n + jL)`` for ``n`` in I_1."""
    return _matrices(band, channels, np.array([n]))[0]


def _matrices(band, channels, ns) -> np.ndarray:
    rows = ns[:, None] + band.l * np.arange(band.m)[None, :]
    # (M_channels, len(ns), M_rows) -> (len(ns), rows, channels)
    return bank_multipliers(channels, rows).transpose(1, 2, 0)


def invert_batch(h: np.ndarray, rtol: float = PIVOT_RTOL):
    """Gauss-Jordan inversion with partial pivoting of a stack of matrices.

    Returns the inverses and a boolean mask of matrices whose pivot fell
    below ``rtol`` times their largest entry. Rows of singular matrices in
    the returned stack are meaningless.
    """
    a = np.array(h, dtype=complex)
    count, m, _ = a.shape
    x = np.broadcast_to(np.eye(m, dtype=complex), a.shape).copy()
    scale = np.abs(a).max(axis=(1, 2))
    thresh = rtol * np.where(scale > 0, scale, 1.0)
    singular = scale == 0
    idx = np.arange(count)
    for col in range(m):
        piv = col + np.argmax(np.abs(a[:, col:, col]), axis=1)
        for arr in (a, x):
            top = arr[idx, col].copy()
            arr[idx, col] = arr[idx, piv]
            arr[idx, piv] = top
        p = a[:, col, col]
        bad = np.abs(p) < thresh
        singular |= bad
        p = np.where(bad, 1.0, p)
        a[:, col] /= p[:, None]
        x[:, col] /= p[:, None]
        for r in range(m):
            if r == col:
                continue
            f = a[:, r, col][:, None].copy()
            a[:, r] -= f * a[:, col]
            x[:, r] -= f * x[:, col]
    return x, singular


@dataclass(frozen=True, eq=False)
class Kernel:
    """Inverse-matrix tables for one band and channel bank.

    ``q[m, k, j]`` is the (m, k) entry of ``inv(H_n)`` at ``n = n1 + j``.
    """

    band: BandSpec
    channels: tuple[ChannelSpec, ...]
    q: np.ndarray
    null_band: frozenset = field(default_factory=frozenset)
    cond_max: float = 1.0

    @property
    def m(self) -> int:
        return self.band.m

    def r_table(self) -> np.ndarray:
        """``r_m(n)`` for every n in the band, shape ``(M, L*M)``."""
        return self.q.reshape(self.m, self.band.size)

    def r_value(self, m: int, n: int) -> complex:
        if not self.band.contains(n):
            return 0j
        return complex(self.r_table()[m, n - self.band.n1])

    def q_block(self, n: int) -> np.ndarray:
        return self.q[:, :, n - self.band.n1]

    def eval_v(self, m: int, n: int, t) -> np.ndarray:
        """``v_{m,n}(t) = sum_k q_{mk}(n) exp(i (n + kL) t)`` for n in I_1."""
        t = np.asarray(t, dtype=float)
        j = n - self.band.n1
        if not 0 <= j < self.band.l:
            raise ValueError(f"n={n} is not in the first block")
        freqs = n + self.band.l * np.arange(self.m)
        return np.exp(1j * np.multiply.outer(t, freqs)) @ self.q[m, :, j]

    def eval_y(self, m: int, t) -> np.ndarray:
        """Interpolation kernel ``y_m(t)`` as the sum of ``v_{m,n}`` over I_1."""
        t = np.asarray(t, dtype=float)
        l = self.band.l
        base = np.exp(1j * np.multiply.outer(t, self.band.base_frequencies()))
        out = np.zeros(t.shape, complex)
        for k in range(self.m):
            shift = np.exp(1j * k * l * t)
            out += shift * (base @ self.q[m, k, :])
        return out

    def eval_y_direct(self, m: int, t) -> np.ndarray:
        """``y_m(t)`` summed straight over the band from ``r_m``."""
        t = np.asarray(t, dtype=float)
        freqs = self.band.frequencies()
        return np.exp(1j * np.multiply.outer(t, freqs)) @ self.r_table()[m]

    def multipliers(self, n) -> np.ndarray:
        return bank_multipliers(self.channels, n)

    def inverse_residual(self) -> float:
        """Largest entry of ``H_n Q_n - I`` over non-exempt n in I_1."""
        ns = self.band.base_frequencies()
        h = _matrices(self.band, self.channels, ns)
        qn = self.q.transpose(2, 0, 1)
        eye = np.eye(self.m)
        worst = 0.0
        for j, n in enumerate(ns):
            if int(n) in self.null_band:
                continue
            worst = max(worst, float(np.abs(h[j] @ qn[j] - eye).max()))
        return worst


def build_kernel(band: BandSpec, channels: Sequence[ChannelSpec],
                 null_band: Iterable[int] = ()) -> Kernel:
    """Invert every ``H_n``, n in I_1, into a :class:`Kernel`.

    Frequencies in ``null_band`` are reduced to their I_1 representative and
    get an all-zero block instead of an inverse; use this only when the
    signal is known to vanish on all M frequencies of that block.

    Raises
    ------
    SingularMatrix
        If some ``H_n`` is numerically singular and ``n`` is not exempt.
    """
    channels = tuple(channels)
    if len(channels) != band.m:
        raise ValueError(
            f"band expects M={band.m} channels, got {len(channels)}")
    exempt = frozenset(int(band.fold(n)) for n in null_band)
    ns = band.base_frequencies()
    h = _matrices(band, channels, ns)
    inv, singular = invert_batch(h)
    keep = np.array([int(n) not in exempt for n in ns])
    bad = singular & keep
    if bad.any():
        raise SingularMatrix(int(ns[np.argmax(bad)]))
    inv[~keep] = 0
    cond = 1.0
    if keep.any():
        norm_h = np.abs(h[keep]).sum(axis=1).max(axis=1)
        norm_q = np.abs(inv[keep]).sum(axis=1).max(axis=1)
        cond = float((norm_h * norm_q).max())
    q = np.ascontiguousarray(inv.transpose(1, 2, 0))
    q.setflags(write=False)
    return Kernel(band, channels, q, exempt, cond)


def load_bank(source) -> tuple[list[ChannelSpec], list[int]]:
    """Parse a channel-bank JSON document (path, string or mapping).

    The document looks like
    ``{"channels": [{"kind": "derivative", "order": 1}], "null_band": [0]}``.
    """
    if isinstance(source, Mapping):
        doc = source
    else:
        text = str(source)
        if text.lstrip().startswith(("{", "[")):
            doc = json.loads(text)
        else:
            with open(text) as fh:
                doc = json.load(fh)
    if isinstance(doc, list):
        doc = {"channels": doc}
    channels = [ChannelSpec.from_json(c) for c in doc["channels"]]
    return channels, [int(n) for n in doc.get("null_band", [])]


def dump_bank(channels: Sequence[ChannelSpec], null_band: Iterable[int] = ()) -> dict:
    return {"channels": [c.to_json() for c in channels],
            "null_band": sorted(int(n) for n in null_band)}


# Common banks used throughout the experiments.
IDENTITY = (ChannelSpec.identity(),)
IDENTITY_HILBERT = (ChannelSpec.identity(), ChannelSpec.hilbert())
IDENTITY_D1 = (ChannelSpec.identity(), ChannelSpec.derivative(1))
DERIVATIVE_BANK = (ChannelSpec.identity(), ChannelSpec.derivative(1),
                   ChannelSpec.derivative(2))
IDENTITY_ANALYTIC = (ChannelSpec.identity(), ChannelSpec.analytic())
