"""Experiment layer: benchmark signals, image denoising, source separation."""

from .signals import (
    SignalSpec,
    add_noise,
    clean_signal,
    detensorize,
    gen_signal,
    relative_error,
    sae,
    tensorization_shape,
    tensorize_signal,
)
from .imaging import (
    PatchConfig,
    RankMap,
    block_tensorize,
    dct_prefilter,
    denoise_image,
    estimate_noise,
    image_metrics,
    per_block_budget,
)
from .bss import BssResult, bss_single_mixture, gen_mixture

__all__ = [
    "SignalSpec",
    "add_noise",
    "clean_signal",
    "detensorize",
    "gen_signal",
    "relative_error",
    "sae",
    "tensorization_shape",
    "tensorize_signal",
    "PatchConfig",
    "RankMap",
    "block_tensorize",
    "dct_prefilter",
    "denoise_image",
    "estimate_noise",
    "image_metrics",
    "per_block_budget",
    "BssResult",
    "bss_single_mixture",
    "gen_mixture",
]
