"""File formats: dense tensors (TTB1), TT cores (TTX1), signal CSV and raw
f64, and binary PPM/PGM images.

All binary numeric fields are little-endian; tensor data is stored
column-major (first index fastest).
"""

from __future__ import annotations

import numpy as np

from .core import reshape
from .tt import TTTensor

_U64 = np.dtype("<u8")
_F64 = np.dtype("<f8")


def _read_exact(f, count, dtype):
    a = np.fromfile(f, dtype=dtype, count=count)
    if a.size != count:
        raise ValueError("truncated file: wanted %d items, got %d" % (count, a.size))
    return a


def write_ttb1(path, tensor):
    """Dense tensor: magic TTB1, u64 order, u64 extents, f64 column-major."""
    tensor = np.asarray(tensor, dtype=float)
    with open(path, "wb") as f:
        f.write(b"TTB1")
        np.asarray([tensor.ndim], dtype=_U64).tofile(f)
        np.asarray(tensor.shape, dtype=_U64).tofile(f)
        tensor.ravel(order="F").astype(_F64).tofile(f)


def read_ttb1(path):
    with open(path, "rb") as f:
        magic = f.read(4)
        if magic != b"TTB1":
            raise ValueError("bad magic %r, expected TTB1" % (magic,))
        order = int(_read_exact(f, 1, _U64)[0])
        if order < 1:
            raise ValueError("order must be >= 1")
        shape = tuple(int(s) for s in _read_exact(f, order, _U64))
        count = int(np.prod(shape, dtype=np.int64))
        data = _read_exact(f, count, _F64).astype(float)
        tail = f.read(1)
        if tail:
            raise ValueError("trailing bytes after tensor data")
    return reshape(data, shape)


def write_ttx1(path, x):
    """TT cores: magic TTX1, u64 core count, then per core three u64 extents
    followed by f64 data column-major."""
    cores = x.cores if isinstance(x, TTTensor) else x
    with open(path, "wb") as f:
        f.write(b"TTX1")
        np.asarray([len(cores)], dtype=_U64).tofile(f)
        for core in cores:
            core = np.asarray(core, dtype=float)
            if core.ndim != 3:
                raise ValueError("TT cores must be order-3")
            np.asarray(core.shape, dtype=_U64).tofile(f)
            core.ravel(order="F").astype(_F64).tofile(f)


def read_ttx1(path):
    with open(path, "rb") as f:
        magic = f.read(4)
        if magic != b"TTX1":
            raise ValueError("bad magic %r, expected TTX1" % (magic,))
        n = int(_read_exact(f, 1, _U64)[0])
        if n < 1:
            raise ValueError("need at least one core")
        cores = []
        for _ in range(n):
            shape = tuple(int(s) for s in _read_exact(f, 3, _U64))
            count = int(np.prod(shape, dtype=np.int64))
            cores.append(reshape(_read_exact(f, count, _F64).astype(float), shape))
        tail = f.read(1)
        if tail:
            raise ValueError("trailing bytes after core data")
    return TTTensor(cores)


def write_csv_signal(path, x):
    """One value per line, repr-precision decimal text."""
    x = np.asarray(x, dtype=float).ravel()
    with open(path, "w") as f:
        for v in x:
            f.write("%.17g\n" % v)


def read_csv_signal(path):
    with open(path) as f:
        vals = [float(line) for line in f if line.strip()]
    if not vals:
        raise ValueError("empty signal file")
    return np.asarray(vals, dtype=float)


def write_raw_signal(path, x):
    """Raw little-endian f64 samples, no header."""
    np.asarray(x, dtype=float).ravel().astype(_F64).tofile(path)


def read_raw_signal(path):
    x = np.fromfile(path, dtype=_F64).astype(float)
    if x.size == 0:
        raise ValueError("empty signal file")
    return x


def _read_pnm_header(f, magic):
    got = f.read(2)
    if got != magic:
        raise ValueError("bad magic %r, expected %r" % (got, magic))
    fields = []
    while len(fields) < 3:
        tok = b""
        ch = f.read(1)
        while ch.isspace():
            ch = f.read(1)
        if ch == b"#":
            while ch not in (b"\n", b""):
                ch = f.read(1)
            continue
        while ch and not ch.isspace():
            tok += ch
            ch = f.read(1)
        if not tok:
            raise ValueError("truncated header")
        fields.append(int(tok))
    return fields  # width, height, maxval


def write_ppm(path, image):
    """8-bit binary PPM (P6); values are rounded and clipped to [0, 255]."""
    image = np.asarray(image, dtype=float)
    if image.ndim != 3 or image.shape[2] != 3:
        raise ValueError("expected an H x W x 3 image")
    data = np.clip(np.rint(image), 0, 255).astype(np.uint8)
    with open(path, "wb") as f:
        f.write(b"P6\n%d %d\n255\n" % (image.shape[1], image.shape[0]))
        data.tofile(f)


def read_ppm(path):
    with open(path, "rb") as f:
        w, h, maxval = _read_pnm_header(f, b"P6")
        if maxval != 255:
            raise ValueError("only 8-bit PPM supported")
        data = _read_exact(f, h * w * 3, np.uint8)
    return data.reshape(h, w, 3).astype(float)


def write_pgm(path, image):
    """8-bit binary PGM (P5); values are rounded and clipped to [0, 255]."""
    image = np.asarray(image, dtype=float)
    if image.ndim != 2:
        raise ValueError("expected an H x W image")
    data = np.clip(np.rint(image), 0, 255).astype(np.uint8)
    with open(path, "wb") as f:
        f.write(b"P5\n%d %d\n255\n" % (image.shape[1], image.shape[0]))
        data.tofile(f)


def read_pgm(path):
    with open(path, "rb") as f:
        w, h, maxval = _read_pnm_header(f, b"P5")
        if maxval != 255:
            raise ValueError("only 8-bit PGM supported")
        data = _read_exact(f, h * w, np.uint8)
    return data.reshape(h, w).astype(float)


def scale_to_bytes(values):
    """Affine map of an array onto [0, 255] (constant arrays map to 0)."""
    values = np.asarray(values, dtype=float)
    lo = float(values.min())
    hi = float(values.max())
    if hi <= lo:
        return np.zeros(values.shape)
    return (values - lo) * (255.0 / (hi - lo))
