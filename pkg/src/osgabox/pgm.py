"""Portable graymap (PGM) image I/O, 8-bit, ASCII (P2) and binary (P5).

Reading maps sample values to [0, 1] by v/255; writing clips to [0, 1] and
quantizes by round(255*v), so read-write-read is the identity on quantized
data.  Parse failures report the byte offset.
"""

from __future__ import annotations

import numpy as np


class GraymapError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


def _next_token(data: bytes, pos: int) -> tuple[bytes, int]:
    n = len(data)
    while pos < n:
        c = data[pos:pos + 1]
        if c == b"#":
            while pos < n and data[pos:pos + 1] not in (b"\n", b"\r"):
                pos += 1
        elif c.isspace():
            pos += 1
        else:
            break
    if pos >= n:
        raise GraymapError("unexpected end of header", pos)
    start = pos
    while pos < n and not data[pos:pos + 1].isspace():
        pos += 1
    return data[start:pos], pos


def _int_token(data: bytes, pos: int, what: str) -> tuple[int, int]:
    tok, pos = _next_token(data, pos)
    try:
        return int(tok), pos
    except ValueError:
        raise GraymapError(f"invalid {what} {tok!r}", pos - len(tok)) from None


def read_image(path) -> np.ndarray:
    with open(path, "rb") as fh:
        data = fh.read()
    magic, pos = _next_token(data, 0)
    if magic not in (b"P2", b"P5"):
        raise GraymapError(f"unsupported magic {magic!r}", 0)
    cols, pos = _int_token(data, pos, "width")
    rows, pos = _int_token(data, pos, "height")
    maxval, pos = _int_token(data, pos, "maxval")
    if rows < 1 or cols < 1:
        raise GraymapError("nonpositive image dimensions", pos)
    if not 1 <= maxval <= 255:
        raise GraymapError(f"maxval {maxval} outside the 8-bit range", pos)

    count = rows * cols
    if magic == b"P5":
        pos += 1  # exactly one whitespace byte after maxval
        if len(data) - pos < count:
            raise GraymapError(
                f"payload truncated: expected {count} bytes", len(data))
        pix = np.frombuffer(data, dtype=np.uint8, count=count, offset=pos)
    else:
        vals = np.empty(count, dtype=np.int64)
        for i in range(count):
            vals[i], pos = _int_token(data, pos, "sample")
        pix = vals
    if np.any(pix > maxval):
        raise GraymapError("sample exceeds maxval", pos)
    return pix.reshape(rows, cols).astype(np.float64) / 255.0


def write_image(path, img: np.ndarray) -> None:
    img = np.asarray(img, dtype=np.float64)
    if img.ndim != 2:
        raise ValueError("graymap image must be 2-D")
    quant = np.rint(255.0 * np.clip(img, 0.0, 1.0)).astype(np.uint8)
    rows, cols = img.shape
    with open(path, "wb") as fh:
        fh.write(f"P5\n{cols} {rows}\n255\n".encode("ascii"))
        fh.write(quant.tobytes())
