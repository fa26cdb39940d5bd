"""Command-line front end: decomposition, rounding, denoising, BSS, bench.

Exit codes: 0 success, 1 usage error, 2 I/O failure, 3 numerical failure
(non-finite data encountered).  Reports are schema-validated JSON written
with sorted keys; matplotlib figures are rendered next to the report unless
--no-plots is given.  Seeds drive the counter-based 64-bit Philox generator,
so runs replicate across platforms.
"""

from __future__ import annotations

import argparse
import sys
import time

import numpy as np

from . import io as tio
from .amcu import SweepSchedule, adcu, amcu, ascu_one_side, ascu_two_side, atcu
from .amcu_tt import amcu_tt
from .core import AccuracyBudget, FixedRanks
from .decomp import tt_round, tt_svd
from .tt import TTTensor, tt_full, tt_norm, tt_rank_sum
from .apps.bss import bss_single_mixture
from .apps.imaging import (
    PatchConfig,
    denoise_image,
    dct_prefilter,
    estimate_noise,
    image_metrics,
    per_block_budget,
)
from .apps.signals import (
    SignalSpec,
    detensorize,
    gen_signal,
    relative_error,
    sae,
    tensorization_shape,
    tensorize_signal,
)
from .reports import build_report, write_report

EXIT_USAGE = 1
EXIT_IO = 2
EXIT_NUMERIC = 3

ALGOS = ("ttsvd", "ascu1", "ascu2", "adcu", "atcu", "amcu")


class _Fail(Exception):
    def __init__(self, code, message):
        super().__init__(message)
        self.code = code


def _load(fn, path):
    try:
        return fn(path)
    except (OSError, ValueError) as e:
        raise _Fail(EXIT_IO, "cannot read %s: %s" % (path, e))


def _save(fn, path, *data):
    try:
        fn(path, *data)
    except OSError as e:
        raise _Fail(EXIT_IO, "cannot write %s: %s" % (path, e))


def _require_finite(arr, what):
    if not np.all(np.isfinite(arr)):
        raise _Fail(EXIT_NUMERIC, "non-finite values in %s" % what)


def _parse_shape(text, length):
    if text in ("auto", "ends4", "all2", "tail6"):
        try:
            return tensorization_shape(length, text)
        except ValueError as e:
            raise _Fail(EXIT_USAGE, str(e))
    try:
        shape = tuple(int(s) for s in text.split(","))
    except ValueError:
        raise _Fail(EXIT_USAGE, "bad shape %r" % text)
    if int(np.prod(shape, dtype=np.int64)) != length:
        raise _Fail(EXIT_USAGE, "shape %r does not match length %d" % (shape, length))
    return shape


def _parse_ranks(text):
    try:
        ranks = tuple(int(r) for r in text.split(","))
    except ValueError:
        raise _Fail(EXIT_USAGE, "bad ranks %r" % text)
    if not ranks or any(r < 1 for r in ranks):
        raise _Fail(EXIT_USAGE, "ranks must be positive")
    return ranks


def _crit_spec(args, sigma_sq=None, length=None):
    """Resolve --ranks/--eps-rel/--eps-abs into ("ranks", tuple) or
    ("rel"/"abs", float)."""
    given = [
        args.ranks is not None,
        args.eps_rel is not None,
        args.eps_abs is not None,
    ]
    if sum(given) != 1:
        raise _Fail(EXIT_USAGE, "give exactly one of --ranks, --eps-rel, --eps-abs")
    if args.ranks is not None:
        return "ranks", _parse_ranks(args.ranks)
    if args.eps_rel is not None:
        if args.eps_rel < 0:
            raise _Fail(EXIT_USAGE, "--eps-rel must be >= 0")
        return "rel", float(args.eps_rel)
    if args.eps_abs == "auto":
        if sigma_sq is None or length is None:
            raise _Fail(EXIT_USAGE, "--eps-abs auto needs a known noise level")
        return "abs", float(sigma_sq) * float(length)
    try:
        val = float(args.eps_abs)
    except ValueError:
        raise _Fail(EXIT_USAGE, "bad --eps-abs %r" % args.eps_abs)
    if val < 0:
        raise _Fail(EXIT_USAGE, "--eps-abs must be >= 0")
    return "abs", val


def _crit_for(kind, value, norm_sq, relative_input):
    """Truncation criterion in the convention the target algorithm expects:
    relative budget for TT-SVD/rounding, absolute for sweep algorithms."""
    if kind == "ranks":
        return FixedRanks(value)
    if relative_input:
        if kind == "rel":
            return AccuracyBudget(value)
        return AccuracyBudget(value / norm_sq if norm_sq > 0 else 1.0)
    if kind == "abs":
        return AccuracyBudget(value)
    return AccuracyBudget(value * norm_sq)


def _fit_dense(y, algo, kind, value, args, log):
    norm_sq = float(np.sum(np.asarray(y) ** 2))
    try:
        if algo == "ttsvd":
            return tt_svd(y, _crit_for(kind, value, norm_sq, True), log=log)
        crit = _crit_for(kind, value, norm_sq, False)
        if algo == "ascu1":
            return ascu_one_side(
                y, crit, max_sweeps=args.max_sweeps, tol=args.tol, log=log
            )
        if algo == "ascu2":
            return ascu_two_side(
                y, crit, max_sweeps=args.max_sweeps, tol=args.tol, log=log
            )
        if algo == "adcu":
            return adcu(
                y, crit, overlap=min(args.overlap, 1),
                max_sweeps=args.max_sweeps, tol=args.tol, log=log,
            )
        if algo == "atcu":
            return atcu(
                y, crit, overlap=min(args.overlap, 2),
                max_sweeps=args.max_sweeps, tol=args.tol, log=log,
            )
        if algo == "amcu":
            sched = SweepSchedule(
                k=args.block, stride=args.stride,
                max_sweeps=args.max_sweeps, tol=args.tol,
            )
            return amcu(y, sched, crit, log=log)
    except (np.linalg.LinAlgError, FloatingPointError, ValueError) as e:
        raise _Fail(EXIT_NUMERIC, "decomposition failed: %s" % e)
    raise _Fail(EXIT_USAGE, "unknown algorithm %r" % algo)


def _timings(args, spans):
    return None if args.no_timings else spans


def _figure_base(report_path):
    base = str(report_path)
    if base.endswith(".json"):
        base = base[:-5]
    return base


def _emit_figures(args, render):
    if args.report and args.plots:
        try:
            render(_figure_base(args.report))
        except Exception as e:  # plotting must never fail the run
            print("warning: figure rendering failed: %s" % e, file=sys.stderr)


def _internal_ranks(x):
    return list(x.ranks[1:-1])


# ---------------------------------------------------------------------------
# subcommands


def _cmd_decompose(args):
    t = _load(tio.read_ttb1, args.input)
    _require_finite(t, "input tensor")
    kind, value = _crit_spec(args)
    log = []
    started = time.perf_counter()
    x = _fit_dense(t, args.algo, kind, value, args, log)
    compute_s = time.perf_counter() - started
    _save(tio.write_ttx1, args.output, x)
    delta = None
    norm_sq = float(np.sum(t**2))
    if norm_sq > 0:
        delta = float(np.sum((t - tt_full(x)) ** 2)) / norm_sq
    report = build_report(
        command=["decompose"] + list(args.argv_echo),
        inputs={"tensor": str(args.input), "shape": list(t.shape)},
        algorithm=args.algo,
        schedule={"max_sweeps": args.max_sweeps, "tol": args.tol},
        sweep_log=log,
        final_ranks=_internal_ranks(x),
        metrics={
            "relative_error": delta,
            "rank_sum": tt_rank_sum(x),
            "model_entries": int(sum(c.size for c in x.cores)),
        },
        timings=_timings(args, {"compute_s": compute_s}),
    )
    if args.report:
        _save(write_report, args.report, report)

        def render(base):
            from .figures import plot_error_curve

            plot_error_curve(log, base + ".error.png", norm_sq=norm_sq or None)

        _emit_figures(args, render)
    return 0


def _cmd_round(args):
    x = _load(tio.read_ttx1, args.input)
    for core in x.cores:
        _require_finite(core, "input cores")
    kind, value = _crit_spec(args)
    norm_sq = float(tt_norm(x))
    log = []
    started = time.perf_counter()
    try:
        y = tt_round(x, _crit_for(kind, value, norm_sq, True), log=log)
    except (np.linalg.LinAlgError, FloatingPointError, ValueError) as e:
        raise _Fail(EXIT_NUMERIC, "rounding failed: %s" % e)
    compute_s = time.perf_counter() - started
    _save(tio.write_ttx1, args.output, y)
    discarded = float(sum(e.get("discarded", 0.0) for e in log))
    report = build_report(
        command=["round"] + list(args.argv_echo),
        inputs={"tt": str(args.input), "shape": list(x.shape)},
        algorithm="tt_round",
        schedule=None,
        sweep_log=log,
        final_ranks=_internal_ranks(y),
        metrics={
            "rank_sum": tt_rank_sum(y),
            "relative_error_bound": discarded / norm_sq if norm_sq > 0 else 0.0,
        },
        timings=_timings(args, {"compute_s": compute_s}),
    )
    if args.report:
        _save(write_report, args.report, report)

        def render(base):
            from .figures import plot_error_curve

            plot_error_curve(log, base + ".error.png", norm_sq=norm_sq or None)

        _emit_figures(args, render)
    return 0


def _signal_from_args(args):
    """(clean or None, noisy, sigma_sq) from --input or the generator flags."""
    if args.input is not None:
        y = _load(tio.read_csv_signal, args.input)
        _require_finite(y, "input signal")
        sigma_sq = estimate_noise(y)
        return None, y, sigma_sq
    if args.kind is None:
        raise _Fail(EXIT_USAGE, "need --input FILE or --kind/--K generator flags")
    spec = SignalSpec(
        kind=args.kind, length=args.K, snr_db=args.snr, seed=args.seed
    )
    try:
        x, y, sigma_sq = gen_signal(spec)
    except ValueError as e:
        raise _Fail(EXIT_USAGE, str(e))
    return x, y, sigma_sq


def _cmd_denoise_signal(args):
    clean, noisy, sigma_sq = _signal_from_args(args)
    kind, value = _crit_spec(args, sigma_sq=sigma_sq, length=noisy.size)
    shape = _parse_shape(args.shape, noisy.size)
    t = tensorize_signal(noisy, shape)
    log = []
    started = time.perf_counter()
    x = _fit_dense(t, args.algo, kind, value, args, log)
    compute_s = time.perf_counter() - started
    estimate = detensorize(tt_full(x))
    if args.output:
        _save(tio.write_csv_signal, args.output, estimate)
    metrics = {
        "relative_error": relative_error(noisy, estimate),
        "sigma_sq": sigma_sq,
        "rank_sum": tt_rank_sum(x),
    }
    if clean is not None:
        metrics["sae_db"] = sae(clean, estimate)
    report = build_report(
        command=["denoise-signal"] + list(args.argv_echo),
        inputs={
            "source": str(args.input) if args.input else "generated:%s" % args.kind,
            "length": int(noisy.size),
            "shape": list(shape),
            "snr_db": args.snr if args.input is None else None,
            "seed": args.seed if args.input is None else None,
        },
        algorithm=args.algo,
        schedule={"max_sweeps": args.max_sweeps, "tol": args.tol},
        sweep_log=log,
        final_ranks=_internal_ranks(x),
        metrics=metrics,
        timings=_timings(args, {"compute_s": compute_s}),
    )
    if args.report:
        _save(write_report, args.report, report)

        def render(base):
            from .figures import plot_error_curve, plot_signal_overlay

            norm_sq = float(np.sum(noisy**2))
            plot_error_curve(log, base + ".error.png", norm_sq=norm_sq or None)
            plot_signal_overlay(clean, noisy, estimate, base + ".signal.png")

        _emit_figures(args, render)
    return 0


def _cmd_denoise_image(args):
    img = _load(tio.read_ppm, args.input)
    _require_finite(img, "input image")
    if args.sigma is not None:
        sigma_sq = float(args.sigma) ** 2
    elif args.estimate_noise:
        sigma_sq = estimate_noise(img)
    else:
        raise _Fail(EXIT_USAGE, "need --sigma or --estimate-noise")
    try:
        h, w = (int(v) for v in args.patch.split(","))
        cfg = PatchConfig(h=h, w=w, d=args.neighbour)
    except ValueError as e:
        raise _Fail(EXIT_USAGE, "bad patch config: %s" % e)
    cfg.eps_sq = per_block_budget(sigma_sq, cfg)
    work = dct_prefilter(img, sigma_sq, enabled=args.prefilter)
    started = time.perf_counter()
    try:
        out, rank_map = denoise_image(work, cfg, algo=args.algo,
                                      max_sweeps=args.max_sweeps)
    except (np.linalg.LinAlgError, FloatingPointError) as e:
        raise _Fail(EXIT_NUMERIC, "denoising failed: %s" % e)
    except ValueError as e:
        raise _Fail(EXIT_USAGE, str(e))
    compute_s = time.perf_counter() - started
    _save(tio.write_ppm, args.output, out)
    rank_map_path = args.rank_map or (args.output + ".rankmap.pgm")
    _save(tio.write_pgm, rank_map_path, tio.scale_to_bytes(rank_map.values))
    metrics = {
        "sigma_sq": sigma_sq,
        "block_eps_sq": cfg.eps_sq,
        "mean_rank_sum": float(np.mean(rank_map.values)),
    }
    if args.reference:
        ref = _load(tio.read_ppm, args.reference)
        mse, psnr, ssim_val = image_metrics(ref, out)
        metrics.update({"mse": mse, "psnr_db": psnr, "ssim": ssim_val})
        mse_in, psnr_in, ssim_in = image_metrics(ref, img)
        metrics.update(
            {"input_mse": mse_in, "input_psnr_db": psnr_in, "input_ssim": ssim_in}
        )
    report = build_report(
        command=["denoise-image"] + list(args.argv_echo),
        inputs={
            "image": str(args.input),
            "height": int(img.shape[0]),
            "width": int(img.shape[1]),
            "patch": [cfg.h, cfg.w],
            "neighbour": cfg.d,
            "prefilter": bool(args.prefilter),
        },
        algorithm=args.algo,
        schedule={"max_sweeps": args.max_sweeps},
        sweep_log=[],
        final_ranks=None,
        metrics=metrics,
        timings=_timings(args, {"compute_s": compute_s}),
    )
    if args.report:
        _save(write_report, args.report, report)

        def render(base):
            from .figures import plot_rank_map

            plot_rank_map(rank_map.values, base + ".rankmap.png")

        _emit_figures(args, render)
    return 0


def _cmd_bss(args):
    y = _load(tio.read_csv_signal, args.input)
    _require_finite(y, "input mixture")
    shape = _parse_shape(args.shape, y.size)
    started = time.perf_counter()
    try:
        result = bss_single_mixture(
            y,
            args.sources,
            shape,
            ranks=args.rank,
            method=args.method,
            max_outer=args.max_outer,
            tol=args.tol,
            inner_sweeps=args.inner_sweeps,
        )
    except (np.linalg.LinAlgError, FloatingPointError) as e:
        raise _Fail(EXIT_NUMERIC, "separation failed: %s" % e)
    except ValueError as e:
        raise _Fail(EXIT_USAGE, str(e))
    compute_s = time.perf_counter() - started
    for i, src in enumerate(result.sources, start=1):
        _save(tio.write_csv_signal, "%s%d.csv" % (args.out_prefix, i), src)
    norm_sq = float(np.sum(y**2))
    log = [
        {"outer": i + 1, "residual": r, "relative": r / norm_sq if norm_sq else None}
        for i, r in enumerate(result.residuals)
    ]
    report = build_report(
        command=["bss"] + list(args.argv_echo),
        inputs={"mixture": str(args.input), "length": int(y.size),
                "shape": list(shape), "sources": args.sources},
        algorithm=args.method,
        schedule={"max_sweeps": args.inner_sweeps},
        sweep_log=log,
        final_ranks=None,
        metrics={
            "final_residual": result.residuals[-1] if result.residuals else None,
            "outer_iterations": result.n_outer,
        },
        timings=_timings(args, {"compute_s": compute_s}),
    )
    if args.report:
        _save(write_report, args.report, report)

        def render(base):
            from .figures import plot_error_curve

            plot_error_curve(
                [{"error": r} for r in result.residuals],
                base + ".residual.png",
                norm_sq=norm_sq or None,
            )

        _emit_figures(args, render)
    return 0


def _cmd_bench(args):
    algos = [a.strip() for a in args.algos.split(",") if a.strip()]
    for a in algos:
        if a not in ALGOS:
            raise _Fail(EXIT_USAGE, "unknown algorithm %r" % a)
    if not algos:
        raise _Fail(EXIT_USAGE, "no algorithms given")
    rows = {a: {"sae": [], "delta": [], "rank_sum": [], "seconds": []} for a in algos}
    for seed in range(args.seeds):
        spec = SignalSpec(kind=args.kind, length=args.K, snr_db=args.snr, seed=seed)
        try:
            clean, noisy, sigma_sq = gen_signal(spec)
        except ValueError as e:
            raise _Fail(EXIT_USAGE, str(e))
        shape = _parse_shape(args.shape, noisy.size)
        t = tensorize_signal(noisy, shape)
        if args.ranks is not None:
            kind, value = "ranks", _parse_ranks(args.ranks)
        else:
            kind, value = "abs", sigma_sq * noisy.size
        for algo in algos:
            started = time.perf_counter()
            x = _fit_dense(t, algo, kind, value, args, log=None)
            seconds = time.perf_counter() - started
            estimate = detensorize(tt_full(x))
            rows[algo]["sae"].append(sae(clean, estimate))
            rows[algo]["delta"].append(relative_error(noisy, estimate))
            rows[algo]["rank_sum"].append(tt_rank_sum(x))
            rows[algo]["seconds"].append(seconds)
    header = ["algo", "mean_sae_db", "std_sae_db", "mean_delta", "mean_rank_sum"]
    if not args.no_timings:
        header.append("mean_seconds")
    lines = [",".join(header)]
    for algo in algos:
        r = rows[algo]
        cells = [
            algo,
            "%.6f" % float(np.mean(r["sae"])),
            "%.6f" % float(np.std(r["sae"])),
            "%.9f" % float(np.mean(r["delta"])),
            "%.3f" % float(np.mean(r["rank_sum"])),
        ]
        if not args.no_timings:
            cells.append("%.4f" % float(np.mean(r["seconds"])))
        lines.append(",".join(cells))
    text = "\n".join(lines) + "\n"
    try:
        with open(args.out, "w") as f:
            f.write(text)
    except OSError as e:
        raise _Fail(EXIT_IO, "cannot write %s: %s" % (args.out, e))
    if args.plots:
        try:
            from .figures import plot_bench_bars

            plot_bench_bars(
                algos,
                [float(np.mean(rows[a]["sae"])) for a in algos],
                args.out + ".png",
            )
        except Exception as e:
            print("warning: figure rendering failed: %s" % e, file=sys.stderr)
    if args.report:
        report = build_report(
            command=["bench"] + list(args.argv_echo),
            inputs={"kind": args.kind, "K": args.K, "snr_db": args.snr,
                    "seeds": args.seeds},
            algorithm=",".join(algos),
            schedule={"max_sweeps": args.max_sweeps, "tol": args.tol},
            sweep_log=[],
            final_ranks=None,
            metrics={
                "mean_sae_%s" % a: float(np.mean(rows[a]["sae"])) for a in algos
            },
            timings=None,
        )
        _save(write_report, args.report, report)
    return 0


# ---------------------------------------------------------------------------
# parser


def _add_common(p, crit=True):
    p.add_argument("--report", default=None, help="write a JSON run report")
    p.add_argument("--no-timings", action="store_true",
                   help="omit wall-clock timings (byte-reproducible reports)")
    p.add_argument("--plots", action=argparse.BooleanOptionalAction, default=True,
                   help="render figures next to the report")
    p.add_argument("--max-sweeps", type=int, default=100)
    p.add_argument("--tol", type=float, default=1e-6)
    if crit:
        p.add_argument("--ranks", default=None,
                       help="fixed TT-ranks, comma separated (one value broadcasts)")
        p.add_argument("--eps-rel", type=float, default=None,
                       help="relative squared-error budget")
        p.add_argument("--eps-abs", default=None,
                       help="absolute squared-error budget, or 'auto' for sigma^2*K")


def _build_parser():
    ap = argparse.ArgumentParser(
        prog="ttkit",
        description="Tensor-train decomposition toolkit",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decompose", help="dense TTB1 tensor to TTX1 TT cores")
    p.add_argument("input")
    p.add_argument("output")
    p.add_argument("--algo", choices=ALGOS, default="ttsvd")
    p.add_argument("--overlap", type=int, default=1)
    p.add_argument("--block", type=int, default=2, help="amcu block size k")
    p.add_argument("--stride", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    _add_common(p)
    p.set_defaults(func=_cmd_decompose)

    p = sub.add_parser("round", help="re-truncate a TTX1 file")
    p.add_argument("input")
    p.add_argument("output")
    _add_common(p)
    p.set_defaults(func=_cmd_round)

    p = sub.add_parser("denoise-signal", help="TT denoising of a 1-D signal")
    p.add_argument("--input", default=None, help="CSV signal (one value per line)")
    p.add_argument("--kind", default=None,
                   choices=("damped_sin", "damped", "x1", "x2", "x3", "x4"))
    p.add_argument("--K", type=int, default=2**14)
    p.add_argument("--snr", type=float, default=0.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--shape", default="auto")
    p.add_argument("--algo", choices=ALGOS, default="ascu1")
    p.add_argument("--overlap", type=int, default=1)
    p.add_argument("--block", type=int, default=2)
    p.add_argument("--stride", type=int, default=1)
    p.add_argument("--output", default=None, help="CSV for the estimate")
    _add_common(p)
    p.set_defaults(func=_cmd_denoise_signal)

    p = sub.add_parser("denoise-image", help="patch-based TT denoising of a PPM")
    p.add_argument("input")
    p.add_argument("output")
    p.add_argument("--patch", default="8,8", help="block h,w")
    p.add_argument("--neighbour", type=int, default=3)
    p.add_argument("--sigma", type=float, default=None, help="noise std")
    p.add_argument("--estimate-noise", action="store_true")
    p.add_argument("--prefilter", action=argparse.BooleanOptionalAction,
                   default=False, help="DCT hard-threshold prefilter")
    p.add_argument("--algo", default="ascu1")
    p.add_argument("--rank-map", default=None, help="PGM path for the rank map")
    p.add_argument("--reference", default=None,
                   help="clean PPM for MSE/PSNR/SSIM metrics")
    p.add_argument("--seed", type=int, default=0)
    _add_common(p, crit=False)
    p.set_defaults(func=_cmd_denoise_image, max_sweeps=20)

    p = sub.add_parser("bss", help="single-mixture source separation")
    p.add_argument("input", help="CSV mixture")
    p.add_argument("--sources", type=int, default=3)
    p.add_argument("--shape", default="tail6")
    p.add_argument("--rank", type=int, default=2)
    p.add_argument("--method", choices=("ascu", "ttsvd"), default="ascu")
    p.add_argument("--max-outer", type=int, default=30)
    p.add_argument("--inner-sweeps", type=int, default=2)
    p.add_argument("--out-prefix", default="source")
    p.add_argument("--seed", type=int, default=0)
    _add_common(p, crit=False)
    p.set_defaults(func=_cmd_bss, tol=1e-8)

    p = sub.add_parser("bench", help="Monte-Carlo sweep over seeds")
    p.add_argument("--kind", default="x1",
                   choices=("damped_sin", "damped", "x1", "x2", "x3", "x4"))
    p.add_argument("--K", type=int, default=2**14)
    p.add_argument("--snr", type=float, default=0.0)
    p.add_argument("--algos", default="ttsvd,ascu1")
    p.add_argument("--seeds", type=int, default=10)
    p.add_argument("--shape", default="all2")
    p.add_argument("--overlap", type=int, default=1)
    p.add_argument("--block", type=int, default=2)
    p.add_argument("--stride", type=int, default=1)
    p.add_argument("--out", default="bench.csv")
    _add_common(p)
    p.set_defaults(func=_cmd_bench)

    return ap


def run(argv):
    """Entry point returning an exit code (no sys.exit)."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if (e.code or 0) == 0 else EXIT_USAGE
    args.argv_echo = list(argv)
    try:
        return args.func(args)
    except _Fail as e:
        print("error: %s" % e, file=sys.stderr)
        return e.code
    except OSError as e:
        print("error: %s" % e, file=sys.stderr)
        return EXIT_IO


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
