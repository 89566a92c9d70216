"""Command-line entry point: ``mcinterp <command> [options]``.

Commands
--------
table        relative errors for the rational test signal, one CSV row per setup
reconstruct  rebuild a signal on a dense grid from channel samples in a CSV
sisr         upscale a PGM/PPM image, optionally scoring it against a reference
degrade      blur, add noise and downsample an image
kernels      dump the interpolation kernels y_m(t) on a dense grid

Every option may also be given in a JSON file passed with ``--config``;
explicit flags win over file values.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from pathlib import Path

import numpy as np

from . import pnm
from .channels import ChannelSpec, build_kernel, load_bank
from .engine import evaluate, hilbert_evaluate, ingest
from .errors import MCIError
from .sisr import MIRROR, PERIODIC, DegradeConfig, cc, degrade, psnr, upscale
from .spectrum import BandSpec, grid_times
from .table import DEFAULT_ROWS, OUTPUT_GRID, TableRow, run_table


def _warn(msg: str, *args) -> None:
    print("warning: " + msg % args, file=sys.stderr)

COND_WARN = 1e8
IMAG_WARN = 1e-6


class _Options:
    """Flag values layered over a JSON config, then over defaults."""

    def __init__(self, args: argparse.Namespace, defaults: dict):
        self._args = vars(args)
        self._file: dict = {}
        if args.config:
            with open(args.config) as fh:
                self._file = json.load(fh)
        self._defaults = defaults

    def __getattr__(self, name):
        value = self._args.get(name)
        if value is not None:
            return value
        key = name.replace("_", "-")
        for k in (name, key):
            if k in self._file:
                return self._file[k]
        return self._defaults.get(name)

    def raw(self, name):
        return self._file.get(name)


def _fmt(x: float, digits: int | None) -> str:
    return repr(float(x)) if digits is None else f"{float(x):.{digits}g}"


def _open_out(path):
    if path in (None, "-"):
        return _StdoutHandle()
    return open(path, "w", newline="")


class _StdoutHandle(io.StringIO):
    def close(self):
        sys.stdout.write(self.getvalue())
        super().close()


def _load_channels(opts, m_hint: int | None = None):
    src = opts.channels
    if src is None and opts.raw("channels") is not None:
        src = {"channels": opts.raw("channels"),
               "null_band": opts.raw("null_band") or []}
    if src is None:
        if m_hint in (None, 1):
            return [ChannelSpec.identity()], []
        raise ValueError("--channels is required for multi-channel input")
    if isinstance(src, list):
        src = {"channels": src}
    return load_bank(src)


def _warn_cond(kernel):
    if kernel.cond_max > COND_WARN:
        _warn("channel matrices are ill-conditioned (cond_max=%.3e)",
                    kernel.cond_max)


def cmd_table(opts) -> int:
    rows = DEFAULT_ROWS
    if opts.rows:
        rows = tuple(TableRow(**{k: int(v) for k, v in r.items() if k != "mu"})
                     for r in opts.rows)
    digits = 4 if opts.digits is None else opts.digits
    with _open_out(opts.out) as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["mu", "f", "hf", "d1", "d2", "delta1", "delta2"])
        for row, d1, d2 in run_table(rows, int(opts.grid or OUTPUT_GRID)):
            w.writerow([row.mu, row.f, row.hf, row.d1, row.d2,
                        f"{d1:.{digits - 1}e}", f"{d2:.{digits - 1}e}"])
    return 0


def _read_samples_csv(path):
    with open(path, newline="") as fh:
        rows = [r for r in csv.reader(fh) if r and not r[0].startswith("#")]
    if not rows:
        raise ValueError(f"{path}: no samples")
    try:
        [complex(c.replace(" ", "")) for c in rows[0]]
    except ValueError:
        rows = rows[1:]
    try:
        data = [[complex(c.strip().replace(" ", "")) for c in r] for r in rows]
    except ValueError as exc:
        raise ValueError(f"{path}: {exc}") from None
    widths = {len(r) for r in data}
    if len(widths) != 1:
        raise ValueError(f"{path}: rows have differing column counts")
    return np.array(data).T        # (M, L)


def cmd_reconstruct(opts) -> int:
    if not opts.input:
        raise ValueError("--input is required")
    g = _read_samples_csv(opts.input)
    m, l = g.shape
    channels, null_band = _load_channels(opts, m)
    if len(channels) != m:
        raise ValueError(f"{opts.input}: {m} columns but {len(channels)} channels")
    band = BandSpec.parse(opts.band) if opts.band else BandSpec.centered(l * m, m)
    if band.m != m:
        band = BandSpec(band.n1, band.n2, m)
    kernel = build_kernel(band, channels, null_band)
    _warn_cond(kernel)
    samples = ingest(g, band)
    grid = int(opts.grid or max(1024, band.size))
    outs = {"f": evaluate(samples, kernel, grid).values}
    if opts.hilbert:
        outs["hf"] = hilbert_evaluate(samples, kernel, grid).values
    digits = opts.digits
    header = ["t"]
    for name in outs:
        header += [name] if opts.real else [f"{name}_re", f"{name}_im"]
    if opts.real:
        for name, v in outs.items():
            residual = float(np.abs(v.imag).max())
            if residual > IMAG_WARN:
                _warn("%s: discarding imaginary residual %.3e", name, residual)
    with _open_out(opts.out) as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for j, t in enumerate(grid_times(grid)):
            row = [_fmt(t, digits)]
            for v in outs.values():
                row += ([_fmt(v[j].real, digits)] if opts.real else
                        [_fmt(v[j].real, digits), _fmt(v[j].imag, digits)])
            w.writerow(row)
    return 0


def cmd_degrade(opts) -> int:
    if not opts.input or not opts.out:
        raise ValueError("--input and --out are required")
    img = pnm.read_image(opts.input)
    cfg = DegradeConfig(kernel_size=int(opts.kernel_size), sigma=float(opts.sigma),
                        factor=int(opts.factor), noise_sigma=float(opts.noise_sigma),
                        seed=opts.seed)
    pnm.write_pgm(opts.out, degrade(img, cfg))
    return 0


def cmd_sisr(opts) -> int:
    if not opts.input or not opts.out:
        raise ValueError("--input and --out are required")
    img = pnm.read_image(opts.input)
    factor = int(opts.factor)
    up = upscale(img, factor, extend=opts.extend)
    pnm.write_pgm(opts.out, up)
    if opts.reference:
        ref = pnm.read_image(opts.reference)
        if (ref.width, ref.height) != (up.width, up.height):
            raise ValueError(
                f"{opts.reference}: reference is {ref.width}x{ref.height}, "
                f"output is {up.width}x{up.height}")
        # score the image as written to disk
        written = pnm.decode(pnm.encode(up))
        report = {"psnr": psnr(ref, written, crop=factor),
                  "cc": cc(ref, written, crop=factor),
                  "factor": factor, "extend": opts.extend, "crop": factor}
        metrics = opts.metrics or str(Path(opts.out).with_suffix(".json"))
        with open(metrics, "w") as fh:
            json.dump(report, fh, indent=2, sort_keys=True)
            fh.write("\n")
    return 0


def cmd_kernels(opts) -> int:
    channels, null_band = _load_channels(opts)
    m = len(channels)
    band = BandSpec.parse(opts.band) if opts.band else None
    if band is None:
        raise ValueError("--band is required")
    if band.m != m:
        band = BandSpec(band.n1, band.n2, m)
    kernel = build_kernel(band, channels, null_band)
    _warn_cond(kernel)
    grid = int(opts.grid or 1024)
    t = grid_times(grid)
    ys = [kernel.eval_y(i, t) for i in range(m)]
    digits = opts.digits
    with _open_out(opts.out) as fh:
        w = csv.writer(fh, lineterminator="\n")
        header = ["t"]
        for i in range(m):
            header += [f"y{i + 1}_re", f"y{i + 1}_im"]
        w.writerow(header)
        for j in range(grid):
            row = [_fmt(t[j], digits)]
            for y in ys:
                row += [_fmt(y[j].real, digits), _fmt(y[j].imag, digits)]
            w.writerow(row)
    return 0


COMMANDS = {
    "table": (cmd_table, {}),
    "reconstruct": (cmd_reconstruct, {}),
    "sisr": (cmd_sisr, {"factor": 3, "extend": PERIODIC}),
    "degrade": (cmd_degrade, {"kernel_size": 5, "sigma": 1.0, "factor": 3,
                              "noise_sigma": 0.0}),
    "kernels": (cmd_kernels, {}),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mcinterp", description=__doc__,
        formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", help="JSON file with option values")
        p.add_argument("--seed", type=int)
        p.add_argument("--out", help="output path ('-' for stdout where CSV)")
        p.add_argument("--digits", type=int,
                       help="significant digits in CSV output")
        return p

    p = common(sub.add_parser("table", help="error table for the test signal"))
    p.add_argument("--grid", type=int, help=f"output grid size (default {OUTPUT_GRID})")

    p = common(sub.add_parser("reconstruct", help="reconstruct from channel samples"))
    p.add_argument("--input", help="CSV, one column per channel")
    p.add_argument("--band", help="n1:n2[:m]")
    p.add_argument("--channels", help="channel bank JSON (file or inline)")
    p.add_argument("--grid", type=int)
    p.add_argument("--hilbert", action="store_true", default=None,
                   help="also write the Hilbert transform")
    p.add_argument("--real", action="store_true", default=None,
                   help="write real parts only")

    p = common(sub.add_parser("sisr", help="super-resolve an image"))
    p.add_argument("--input")
    p.add_argument("--reference", help="ground-truth image for metrics")
    p.add_argument("--metrics", help="metrics JSON path")
    p.add_argument("--factor", type=int)
    p.add_argument("--extend", choices=[PERIODIC, MIRROR])

    p = common(sub.add_parser("degrade", help="blur and downsample an image"))
    p.add_argument("--input")
    p.add_argument("--kernel-size", type=int)
    p.add_argument("--sigma", type=float)
    p.add_argument("--factor", type=int)
    p.add_argument("--noise-sigma", type=float)

    p = common(sub.add_parser("kernels", help="dump y_m(t) on a dense grid"))
    p.add_argument("--band", help="n1:n2[:m]")
    p.add_argument("--channels", help="channel bank JSON (file or inline)")
    p.add_argument("--grid", type=int)
    return parser


def _glue_band(argv):
    # band specs such as -34:34:3 look like options to argparse
    out = []
    it = iter(argv)
    for a in it:
        if a == "--band":
            out.append("--band=" + next(it, ""))
        else:
            out.append(a)
    return out


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="warning: %(message)s")
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(_glue_band(argv))
    func, defaults = COMMANDS[args.command]
    try:
        return func(_Options(args, defaults))
    except (OSError, ValueError, MCIError) as exc:
        print(f"mcinterp {args.command}: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
