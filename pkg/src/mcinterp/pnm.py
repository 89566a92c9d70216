"""Minimal binary PGM/PPM reader and PGM writer."""

from __future__ import annotations

import os

import numpy as np

from .sisr import ImagePlane

LUMA = (0.299, 0.587, 0.114)


def _header(data: bytes):
    """Parse magic, width, height, maxval; return them with the data offset."""
    tokens: list[bytes] = []
    pos = 0
    while len(tokens) < 4:
        if pos >= len(data):
            raise ValueError("truncated PNM header")
        ch = data[pos:pos + 1]
        if ch == b"#":
            end = data.find(b"\n", pos)
            pos = len(data) if end < 0 else end + 1
        elif ch.isspace():
            pos += 1
        else:
            start = pos
            while pos < len(data) and not data[pos:pos + 1].isspace() \
                    and data[pos:pos + 1] != b"#":
                pos += 1
            tokens.append(data[start:pos])
    # exactly one whitespace byte separates the header from the raster
    return tokens[0], int(tokens[1]), int(tokens[2]), int(tokens[3]), pos + 1


def decode(data: bytes) -> ImagePlane:
    magic, width, height, maxval, offset = _header(data)
    if magic not in (b"P5", b"P6"):
        raise ValueError(f"unsupported PNM magic {magic!r}; need P5 or P6")
    if not 0 < maxval < 256:
        raise ValueError(f"only 8-bit images are supported (maxval={maxval})")
    channels = 1 if magic == b"P5" else 3
    need = width * height * channels
    raster = np.frombuffer(data, dtype=np.uint8, count=need, offset=offset) \
        if len(data) - offset >= need else None
    if raster is None:
        raise ValueError(f"raster too short: need {need} bytes")
    pixels = raster.astype(float).reshape(height, width, channels)
    if maxval != 255:
        pixels = pixels * (255.0 / maxval)
    if channels == 3:
        pixels = np.rint(pixels @ np.array(LUMA))
    else:
        pixels = pixels[..., 0]
    return ImagePlane(pixels)


def encode(img: ImagePlane) -> bytes:
    raster = np.clip(np.rint(img.pixels), 0, 255).astype(np.uint8)
    head = f"P5\n{img.width} {img.height}\n255\n".encode("ascii")
    return head + raster.tobytes()


def read_image(path: str | os.PathLike) -> ImagePlane:
    """Read a binary PGM, or a binary PPM converted to luminance."""
    with open(path, "rb") as fh:
        return decode(fh.read())


def write_pgm(path: str | os.PathLike, img: ImagePlane) -> None:
    with open(path, "wb") as fh:
        fh.write(encode(img))
