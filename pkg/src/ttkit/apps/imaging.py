"""Patch-based image denoising with TT models, plus image quality metrics.

Each anchor (r, c) on the interior grid yields an order-5 block tensor of the
h x w x 3 patch and its (2d+1)^2 neighbour shifts.  Block tensors are
approximated under a per-block error budget, every pixel is averaged over all
approximations that contain it, and a rank map records the mean summed
TT-rank of the models covering each pixel.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import fft as sfft
from scipy.signal import convolve2d

from ..amcu import SweepSchedule, adcu, amcu, ascu_one_side, ascu_two_side, atcu
from ..core import AccuracyBudget
from ..decomp import tt_svd
from ..tt import tt_full, tt_rank_sum, TTTensor

PSNR_CAP_DB = 300.0
LUMA_WEIGHTS = (0.299, 0.587, 0.114)


def _luminance(img):
    img = np.asarray(img, dtype=float)
    if img.ndim == 2:
        return img
    if img.ndim == 3 and img.shape[2] == 3:
        w = np.asarray(LUMA_WEIGHTS)
        return img @ w
    raise ValueError("expected an H x W or H x W x 3 image")


def _gaussian_window(size=11, sigma=1.5):
    half = (size - 1) / 2.0
    x = np.arange(size) - half
    g = np.exp(-(x**2) / (2.0 * sigma**2))
    win = np.outer(g, g)
    return win / win.sum()


def ssim(ref, est, window_size=11, sigma=1.5, k1=0.01, k2=0.03, dynamic=255.0):
    """Mean structural similarity on the luminance channel.

    Gaussian-windowed local statistics, valid region only (no padding).
    """
    x = _luminance(ref)
    y = _luminance(est)
    if x.shape != y.shape:
        raise ValueError("image shapes differ")
    if min(x.shape) < window_size:
        raise ValueError("image smaller than the SSIM window")
    win = _gaussian_window(window_size, sigma)
    c1 = (k1 * dynamic) ** 2
    c2 = (k2 * dynamic) ** 2
    mu_x = convolve2d(x, win, mode="valid")
    mu_y = convolve2d(y, win, mode="valid")
    xx = convolve2d(x * x, win, mode="valid") - mu_x**2
    yy = convolve2d(y * y, win, mode="valid") - mu_y**2
    xy = convolve2d(x * y, win, mode="valid") - mu_x * mu_y
    num = (2.0 * mu_x * mu_y + c1) * (2.0 * xy + c2)
    den = (mu_x**2 + mu_y**2 + c1) * (xx + yy + c2)
    return float(np.mean(num / den))


def image_metrics(ref, est):
    """(MSE, PSNR in dB, SSIM) for 8-bit-range images of equal shape."""
    ref = np.asarray(ref, dtype=float)
    est = np.asarray(est, dtype=float)
    if ref.shape != est.shape:
        raise ValueError("image shapes differ")
    mse = float(np.mean((ref - est) ** 2))
    if mse == 0.0:
        psnr = PSNR_CAP_DB
    else:
        psnr = float(min(10.0 * np.log10(255.0**2 / mse), PSNR_CAP_DB))
    return mse, psnr, ssim(ref, est)


@dataclass
class PatchConfig:
    """Block geometry and a per-block squared-error budget.

    The block tensor at anchor (r, c) has shape h x w x 3 x (2d+1) x (2d+1).
    eps_sq may be left None and filled from a noise variance later.
    """

    h: int = 8
    w: int = 8
    d: int = 3
    eps_sq: float | None = None

    def __post_init__(self):
        if self.h < 1 or self.w < 1 or self.d < 0:
            raise ValueError("bad patch geometry")


def per_block_budget(sigma_sq, cfg):
    """eps_sq = sigma_sq * h * w * 3 * (2d+1)^2, the noise energy per block."""
    return float(sigma_sq) * cfg.h * cfg.w * 3 * (2 * cfg.d + 1) ** 2


@dataclass
class RankMap:
    """Per-pixel mean of the summed TT-ranks of covering block models.

    coverage counts the anchors whose footprint contains the pixel; values
    are 0 where coverage is 0.
    """

    values: np.ndarray
    coverage: np.ndarray


def block_tensorize(image, r, c, cfg):
    """Order-5 block tensor: slice [:, :, :, d+i, d+j] is the h x w patch at
    anchor (r+i, c+j) for shifts i, j in [-d, d]."""
    image = np.asarray(image, dtype=float)
    if image.ndim != 3 or image.shape[2] != 3:
        raise ValueError("expected an H x W x 3 image")
    h, w, d = cfg.h, cfg.w, cfg.d
    hh, ww = image.shape[:2]
    if r - d < 0 or c - d < 0 or r + h + d > hh or c + w + d > ww:
        raise ValueError("block with neighbours out of bounds at (%d, %d)" % (r, c))
    t = np.empty((h, w, 3, 2 * d + 1, 2 * d + 1))
    for i in range(-d, d + 1):
        for j in range(-d, d + 1):
            t[:, :, :, d + i, d + j] = image[r + i : r + i + h, c + j : c + j + w, :]
    return t


def _fit_block(t, algo, eps_sq, max_sweeps):
    if callable(algo):
        x = algo(t, eps_sq)
    elif algo == "identity":
        return t, 0
    elif algo == "ttsvd":
        norm_sq = float(np.sum(t**2))
        rel = min(eps_sq / norm_sq, 1.0) if norm_sq > 0 else 1.0
        x = tt_svd(t, AccuracyBudget(rel))
    elif algo == "ascu1":
        x = ascu_one_side(t, AccuracyBudget(eps_sq), max_sweeps=max_sweeps)
    elif algo == "ascu2":
        x = ascu_two_side(t, AccuracyBudget(eps_sq), max_sweeps=max_sweeps)
    elif algo == "adcu":
        x = adcu(t, AccuracyBudget(eps_sq), max_sweeps=max_sweeps)
    elif algo == "atcu":
        x = atcu(t, AccuracyBudget(eps_sq), max_sweeps=max_sweeps)
    elif algo == "amcu":
        x = amcu(t, SweepSchedule(max_sweeps=max_sweeps), AccuracyBudget(eps_sq))
    else:
        raise ValueError("unsupported algorithm %r" % (algo,))
    if isinstance(x, TTTensor):
        return tt_full(x), tt_rank_sum(x)
    return np.asarray(x, dtype=float), 0


def denoise_image(image, cfg, algo="ascu1", max_sweeps=20):
    """Denoised image and rank map from per-block TT approximation.

    Anchors run over the stride-1 interior grid (all neighbour shifts in
    bounds); accumulation order is fixed row-major so results are
    reproducible bit for bit.
    """
    image = np.asarray(image, dtype=float)
    if image.ndim != 3 or image.shape[2] != 3:
        raise ValueError("expected an H x W x 3 image")
    if cfg.eps_sq is None:
        raise ValueError("PatchConfig.eps_sq is not set")
    h, w, d = cfg.h, cfg.w, cfg.d
    hh, ww = image.shape[:2]
    rows = range(d, hh - h - d + 1)
    cols = range(d, ww - w - d + 1)
    if len(rows) == 0 or len(cols) == 0:
        raise ValueError("image too small for the patch geometry")
    sums = np.zeros_like(image)
    counts = np.zeros(image.shape[:2])
    rank_sums = np.zeros(image.shape[:2])
    rank_counts = np.zeros(image.shape[:2])
    for r in rows:
        for c in cols:
            t = block_tensorize(image, r, c, cfg)
            approx, rank_sum = _fit_block(t, algo, cfg.eps_sq, max_sweeps)
            for i in range(-d, d + 1):
                for j in range(-d, d + 1):
                    sums[r + i : r + i + h, c + j : c + j + w, :] += approx[
                        :, :, :, d + i, d + j
                    ]
                    counts[r + i : r + i + h, c + j : c + j + w] += 1.0
            rank_sums[r - d : r + h + d, c - d : c + w + d] += rank_sum
            rank_counts[r - d : r + h + d, c - d : c + w + d] += 1.0
    covered = counts > 0
    out = image.copy()
    out[covered] = sums[covered] / counts[covered][:, None]
    values = np.zeros(image.shape[:2])
    has = rank_counts > 0
    values[has] = rank_sums[has] / rank_counts[has]
    return out, RankMap(values=values, coverage=rank_counts)


def estimate_noise(data):
    """Robust per-channel noise variance from high-frequency DCT coefficients.

    Images pool the diagonal-detail quadrant (both indices >= 4) of 8 x 8
    tiles over every channel; 1-D signals use the upper half of length-8
    frames.  sigma_hat = median(|c|) / 0.6745; returns sigma_hat^2, which for
    RGB input estimates the variance of each channel, not of the luminance
    mix (the denoising budget counts error energy channel by channel).
    """
    data = np.asarray(data, dtype=float)
    if data.size == 0:
        raise ValueError("empty input")
    if data.ndim == 1:
        n_frames = data.size // 8
        if n_frames == 0:
            return 0.0
        frames = data[: n_frames * 8].reshape(n_frames, 8)
        coeffs = sfft.dct(frames, axis=1, norm="ortho")[:, 4:].ravel()
    else:
        if data.ndim == 2:
            channels = [data]
        elif data.ndim == 3 and data.shape[2] == 3:
            channels = [data[:, :, k] for k in range(3)]
        else:
            raise ValueError("expected an H x W or H x W x 3 image")
        pooled = []
        for ch in channels:
            th, tw = ch.shape[0] // 8, ch.shape[1] // 8
            if th == 0 or tw == 0:
                continue
            tiles = ch[: th * 8, : tw * 8].reshape(th, 8, tw, 8)
            c = sfft.dctn(tiles.transpose(0, 2, 1, 3), axes=(2, 3), norm="ortho")
            pooled.append(c[:, :, 4:, 4:].ravel())
        if not pooled:
            return 0.0
        coeffs = np.concatenate(pooled)
    sigma = float(np.median(np.abs(coeffs))) / 0.6745
    return sigma**2


def dct_prefilter(image, sigma_sq, enabled=True):
    """Per-channel hard thresholding of 16 x 16 tile DCT coefficients at
    3*sigma (DC kept); trailing partial tiles are processed at their own
    size.  Disabled returns the input values unchanged."""
    image = np.asarray(image, dtype=float)
    if not enabled:
        return image.copy()
    thr = 3.0 * float(np.sqrt(sigma_sq))
    single = image.ndim == 2
    work = image[:, :, None] if single else image
    out = np.empty_like(work)
    hh, ww = work.shape[:2]
    for ch in range(work.shape[2]):
        for r0 in range(0, hh, 16):
            for c0 in range(0, ww, 16):
                tile = work[r0 : r0 + 16, c0 : c0 + 16, ch]
                c = sfft.dctn(tile, norm="ortho")
                keep = np.abs(c) >= thr
                keep[0, 0] = True
                out[r0 : r0 + 16, c0 : c0 + 16, ch] = sfft.idctn(
                    np.where(keep, c, 0.0), norm="ortho"
                )
    return out[:, :, 0] if single else out
