"""Benchmark signals, tensorization, and scalar error metrics.

Five test signals: a damped sinusoid sampled at integer times, and four
oscillatory signals x1..x4 evaluated on the unit interval t = (k+1)/K.  Noise
is rescaled after drawing so the realized SNR matches the request exactly,
which makes the denoising budget sigma_sq * K equal ||e||^2 by construction.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..core import reshape

SIGNAL_KINDS = ("damped_sin", "x1", "x2", "x3", "x4")


@dataclass
class SignalSpec:
    """Recipe for one noisy benchmark signal.

    snr_db None (or +inf) means no noise.  f, f_s, phase only apply to the
    damped sinusoid.
    """

    kind: str = "damped_sin"
    length: int = 2**14
    snr_db: float | None = 0.0
    seed: int = 0
    f: float = 10.0
    f_s: float = 100.0
    phase: float = np.pi / 3


def clean_signal(kind, length, f=10.0, f_s=100.0, phase=np.pi / 3):
    """One of the five benchmark signals as a length-K vector."""
    if length < 1:
        raise ValueError("length must be positive")
    k = np.arange(length, dtype=float)
    if kind in ("damped_sin", "damped", "x5"):
        return np.exp(-5.0 * k / length) * np.sin(2.0 * np.pi * f / f_s * k + phase)
    t = (k + 1.0) / length
    if kind == "x1":
        return np.sin(2000.0 * t ** (2.0 / 3.0)) / (4.0 * t**0.25)
    if kind == "x2":
        return np.sin(1.0 / t)
    if kind == "x3":
        return np.sin(5.0 * (t + 1.0) / 2.0) * np.cos(100.0 * (t + 1.0) ** 2)
    if kind == "x4":
        return np.sign(np.sin(8.0 * np.pi * t)) * (1.0 + np.sin(80.0 * np.pi * t))
    raise ValueError("unknown signal kind %r" % (kind,))


def add_noise(x, snr_db, rng):
    """Additive Gaussian noise rescaled to hit snr_db exactly.

    Returns (noisy, sigma_sq) where sigma_sq = ||e||^2 / K is the realized
    per-sample noise power.  snr_db None or +inf returns the signal untouched.
    """
    x = np.asarray(x, dtype=float)
    if snr_db is None or np.isinf(snr_db):
        return x.copy(), 0.0
    e = rng.standard_normal(x.size).reshape(x.shape)
    target = float(np.sum(x**2)) * 10.0 ** (-snr_db / 10.0)
    e_norm_sq = float(np.sum(e**2))
    if e_norm_sq == 0.0:
        raise ValueError("degenerate zero noise draw")
    e *= np.sqrt(target / e_norm_sq)
    return x + e, target / x.size


def gen_signal(spec):
    """Clean vector, noisy vector, and realized noise variance for a spec."""
    x = clean_signal(spec.kind, spec.length, spec.f, spec.f_s, spec.phase)
    rng = np.random.Generator(np.random.Philox(spec.seed))
    y, sigma_sq = add_noise(x, spec.snr_db, rng)
    return x, y, sigma_sq


def tensorize_signal(y, shape):
    """Column-major reshape of a vector into the given tensor shape."""
    y = np.asarray(y, dtype=float)
    shape = tuple(int(s) for s in shape)
    if int(np.prod(shape, dtype=np.int64)) != y.size:
        raise ValueError("shape %r does not match length %d" % (shape, y.size))
    return reshape(y, shape)


def detensorize(t):
    """Inverse of tensorize_signal: column-major flattening."""
    return np.asarray(t, dtype=float).ravel(order="F")


def tensorization_shape(length, style="auto"):
    """Benchmark tensorization shapes.

    "ends4": 4 x 2 x ... x 2 x 4 for K = 2^d (d >= 4); "all2": 2 x ... x 2 for
    K = 2^d; "tail6": 2 x ... x 2 x 6 for K = 3 * 2^m; "auto" picks tail6 for
    lengths divisible by 3, else ends4 when possible, else all2.
    """
    length = int(length)
    if length < 2:
        raise ValueError("length too short to tensorize")

    def log2_exact(n):
        d = n.bit_length() - 1
        return d if (1 << d) == n else None

    if style == "auto":
        if length % 3 == 0 and log2_exact(length // 3) is not None:
            style = "tail6"
        elif log2_exact(length) is not None:
            style = "ends4" if log2_exact(length) >= 6 else "all2"
        else:
            raise ValueError("no automatic tensorization for length %d" % length)
    if style == "ends4":
        d = log2_exact(length)
        if d is None or d < 4:
            raise ValueError("ends4 needs a power-of-two length >= 16")
        return (4,) + (2,) * (d - 4) + (4,)
    if style == "all2":
        d = log2_exact(length)
        if d is None:
            raise ValueError("all2 needs a power-of-two length")
        return (2,) * d
    if style == "tail6":
        if length % 3 != 0:
            raise ValueError("tail6 needs a length divisible by 3")
        m = log2_exact(length // 3)
        if m is None or m < 1:
            raise ValueError("tail6 needs length 3 * 2^m")
        return (2,) * (m - 1) + (6,)
    raise ValueError("unknown tensorization style %r" % (style,))


def relative_error(y, x_hat):
    """delta = ||y - x_hat||^2 / ||y||^2 over flattened inputs."""
    y = np.asarray(y, dtype=float).ravel()
    x_hat = np.asarray(x_hat, dtype=float).ravel()
    if y.size != x_hat.size:
        raise ValueError("length mismatch")
    denom = float(np.sum(y**2))
    if denom == 0.0:
        raise ValueError("zero reference")
    return float(np.sum((y - x_hat) ** 2)) / denom


SAE_CAP_DB = 300.0


def sae(x, x_hat):
    """Squared angular error -20*log10(arccos(cos angle)) in dB.

    The cosine is clamped to [-1, 1]; perfect alignment is capped at +300 dB.
    Invariant to positive rescaling of either argument.
    """
    x = np.asarray(x, dtype=float).ravel()
    x_hat = np.asarray(x_hat, dtype=float).ravel()
    if x.size != x_hat.size:
        raise ValueError("length mismatch")
    nx = float(np.linalg.norm(x))
    nh = float(np.linalg.norm(x_hat))
    if nx == 0.0 or nh == 0.0:
        raise ValueError("zero vector")
    c = np.clip(float(np.dot(x, x_hat)) / (nx * nh), -1.0, 1.0)
    ang = float(np.arccos(c))
    if ang <= 0.0:
        return SAE_CAP_DB
    return float(min(-20.0 * np.log10(ang), SAE_CAP_DB))
