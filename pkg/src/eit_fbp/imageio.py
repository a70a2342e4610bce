"""Lossless 16-bit PGM output plus an 8-bit PNG preview.

Pixel values are mapped affinely from [lo, hi] (the data range over the
masked region) onto the full integer range; the mapping is returned so
callers can record it next to the file.  Both writers are byte-deterministic
for identical inputs.
"""

from __future__ import annotations

import struct
import zlib
from pathlib import Path

import numpy as np

from .raster import RasterImage, inscribed_mask

PGM_MAXVAL = 65535
PNG_MAXVAL = 255


def _to_levels(img: RasterImage, maxval: int) -> tuple[np.ndarray, float, float]:
    """Quantize to [0, maxval]; a constant image maps to mid-gray."""
    mask = inscribed_mask(img.size, img.extent) if img.masked else np.ones(
        (img.size, img.size), dtype=bool
    )
    vals = img.pixels[mask]
    lo = float(vals.min()) if vals.size else 0.0
    hi = float(vals.max()) if vals.size else 0.0
    out = np.zeros((img.size, img.size))
    if hi > lo:
        out[mask] = (vals - lo) / (hi - lo) * maxval
    else:
        out[mask] = maxval // 2
    levels = np.rint(np.clip(out, 0, maxval)).astype(np.uint32)
    return levels, lo, hi


def write_pgm(path: str | Path, img: RasterImage) -> tuple[float, float]:
    """Write a binary 16-bit P5 PGM; returns the (lo, hi) display mapping."""
    levels, lo, hi = _to_levels(img, PGM_MAXVAL)
    header = f"P5\n{img.size} {img.size}\n{PGM_MAXVAL}\n".encode("ascii")
    body = levels.astype(">u2").tobytes()
    Path(path).write_bytes(header + body)
    return lo, hi


def write_png(path: str | Path, img: RasterImage) -> tuple[float, float]:
    """Write an 8-bit grayscale PNG preview; returns the (lo, hi) display mapping."""
    levels, lo, hi = _to_levels(img, PNG_MAXVAL)
    rows = levels.astype(np.uint8)
    raw = b"".join(b"\x00" + rows[r].tobytes() for r in range(img.size))

    def chunk(tag: bytes, data: bytes) -> bytes:
        return (
            struct.pack(">I", len(data))
            + tag
            + data
            + struct.pack(">I", zlib.crc32(tag + data) & 0xFFFFFFFF)
        )

    ihdr = struct.pack(">IIBBBBB", img.size, img.size, 8, 0, 0, 0, 0)
    payload = (
        b"\x89PNG\r\n\x1a\n"
        + chunk(b"IHDR", ihdr)
        + chunk(b"IDAT", zlib.compress(raw, 9))
        + chunk(b"IEND", b"")
    )
    Path(path).write_bytes(payload)
    return lo, hi
