"""Alternating core updates when the data itself is a TT-tensor.

The contracted block T_{n:m} collapses to boundary matrices: phi_n carries the
data cores 0..n-1 against the model cores, psi_m carries cores m+1..N-1, and
T = phi_n * Y_n * ... * Y_m * psi_m.  Block sizes are rank-bounded, so no
full-size tensor is ever formed.  The sweep driver, kernels, and stopping rule
are shared with the dense path; only the data adapter differs.
"""

from __future__ import annotations

import numpy as np

from .amcu import (
    SweepSchedule,
    _apply_svd1,
    _apply_svd2,
    _kernel_tucker3,
    _local_crit,
    _run_sweeps,
)
from .core import AccuracyBudget, FixedRanks, SvdResult, _fix_signs, truncated_svd
from .decomp import tt_round
from .tt import TTTensor, tt_norm


def boundary_update(bound, y_core, x_core, side):
    """Absorb one (data core, model core) pair into a boundary matrix.

    side "left" maps phi_n (R^Y_{n-1} x R^X_{n-1}) to phi_{n+1} using the
    cores at position n; side "right" maps psi_m to psi_{m-1} using the cores
    at position m.
    """
    if side == "left":
        w = np.tensordot(bound, x_core, axes=([1], [0]))  # (RY, I, RX')
        return np.tensordot(y_core, w, axes=([0, 1], [0, 1]))
    if side == "right":
        w = np.tensordot(y_core, bound, axes=([2], [0]))  # (RY, I, RX')
        return np.tensordot(w, x_core, axes=([1, 2], [1, 2]))
    raise ValueError("side must be 'left' or 'right'")


class BoundaryCache:
    """Progressive phi/psi boundary matrices against a fixed TT data tensor.

    left[n] = phi_n depends on model cores 0..n-1; right[m] = psi_m on model
    cores m+1..N-1.  Entries are dropped when a core they depend on changes.
    """

    def __init__(self, y_cores):
        self.y_cores = [np.asarray(c, dtype=float) for c in y_cores]
        self.n_modes = len(self.y_cores)
        self.left = {0: np.ones((1, 1))}
        self.right = {self.n_modes - 1: np.ones((1, 1))}

    def invalidate(self, lo_core, hi_core):
        for n in [n for n in self.left if n > lo_core]:
            del self.left[n]
        for m in [m for m in self.right if m < hi_core]:
            del self.right[m]

    def get_left(self, n, cores):
        j = max(i for i in self.left if i <= n)
        phi = self.left[j]
        while j < n:
            phi = boundary_update(phi, self.y_cores[j], cores[j], "left")
            j += 1
            self.left[j] = phi
        return phi

    def get_right(self, m, cores):
        j = min(i for i in self.right if i >= m)
        psi = self.right[j]
        while j > m:
            psi = boundary_update(psi, self.y_cores[j], cores[j], "right")
            j -= 1
            self.right[j] = psi
        return psi


def contract_block_tt(y, x, n, m, cache=None):
    """T_{n:m} for TT-format data, shape (R^X_{n-1}, I_n, ..., I_m, R^X_m)."""
    y_cores = y.cores if isinstance(y, TTTensor) else y
    cores = x.cores if isinstance(x, TTTensor) else x
    if cache is None:
        cache = BoundaryCache(y_cores)
    t = np.tensordot(cache.get_left(n, cores), y_cores[n], axes=([0], [0]))
    for j in range(n + 1, m + 1):
        t = np.tensordot(t, y_cores[j], axes=([-1], [0]))
    return np.tensordot(t, cache.get_right(m, cores), axes=([-1], [0]))


def reduced_svd_block(a, b, crit):
    """Truncated SVD of a @ b.T through the shared inner dimension.

    When the inner dimension is smaller than both outer ones, QR-reduce the
    factors and decompose the small core r_a @ r_b.T; otherwise decompose the
    product directly.  Signs follow the same convention either way (largest
    entry of each left vector positive), so both routes agree exactly away
    from degenerate spectra.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.ndim != 2 or b.ndim != 2 or a.shape[1] != b.shape[1]:
        raise ValueError("factor shapes %s, %s do not share an inner dimension"
                         % (a.shape, b.shape))
    inner = a.shape[1]
    if inner >= a.shape[0] or inner >= b.shape[0]:
        return truncated_svd(a @ b.T, crit)
    qa, ra = np.linalg.qr(a)
    qb, rb = np.linalg.qr(b)
    res = truncated_svd(ra @ rb.T, crit)
    u = qa @ res.u
    v = qb @ res.v
    vt = v.T.copy()
    u, vt = _fix_signs(np.ascontiguousarray(u), vt)
    return SvdResult(u=u, sigma=res.sigma, v=vt.T, rank=res.rank,
                     discarded=res.discarded)


class _TTData:
    """Data adapter over a fixed TT tensor for the shared sweep driver."""

    def __init__(self, y):
        self.cache = BoundaryCache(y.cores if isinstance(y, TTTensor) else y)
        self.norm_sq = float(tt_norm(y if isinstance(y, TTTensor)
                                     else TTTensor(y)))

    def block(self, cores, n, m):
        return contract_block_tt(self.cache.y_cores, cores, n, m, self.cache)

    def invalidate(self, lo_core, hi_core):
        self.cache.invalidate(lo_core, hi_core)


def _tt_kernel_svd1(st, n, t, direction, crit, eps_local):
    cache = st.data.cache
    y_cores = cache.y_cores
    r0, i1, r1 = t.shape
    if direction == "l2r":
        a = np.tensordot(cache.get_left(n, st.cores), y_cores[n], axes=([0], [0]))
        a = np.reshape(a, (r0 * i1, -1), order="F")
        b = cache.get_right(n, st.cores).T
        res = reduced_svd_block(a, b, _local_crit(crit, n, eps_local))
    else:
        a = cache.get_left(n, st.cores).T
        b = np.tensordot(y_cores[n], cache.get_right(n, st.cores), axes=([2], [0]))
        b = np.reshape(np.moveaxis(b, 0, -1), (i1 * r1, -1), order="F")
        res = reduced_svd_block(a, b, _local_crit(crit, n - 1, eps_local))
    return _apply_svd1(st, n, res, direction, t.shape)


def _tt_kernel_svd2(st, n, t, direction, crit, eps_local):
    cache = st.data.cache
    y_cores = cache.y_cores
    r0, i1, i2, r1 = t.shape
    a = np.tensordot(cache.get_left(n, st.cores), y_cores[n], axes=([0], [0]))
    a = np.reshape(a, (r0 * i1, -1), order="F")
    b = np.tensordot(y_cores[n + 1], cache.get_right(n + 1, st.cores),
                     axes=([2], [0]))
    b = np.reshape(np.moveaxis(b, 0, -1), (i2 * r1, -1), order="F")
    res = reduced_svd_block(a, b, _local_crit(crit, n, eps_local))
    return _apply_svd2(st, n, res, ((r0, i1), (i2, r1)), direction)


_TT_KERNELS = {1: _tt_kernel_svd1, 2: _tt_kernel_svd2, 3: _kernel_tucker3}


def amcu_tt(y, schedule, crit, init=None, log=None):
    """Alternating multi-core sweeps fitting a lower-rank TT to TT data.

    Mirrors the dense amcu driver: same schedules, budgets, logging, and
    stopping rule, with per-block cost bounded by the TT ranks instead of the
    full tensor size.  Default initialization rounds the data at the
    criterion (budget mode: relative to the data norm).
    """
    if not isinstance(y, TTTensor):
        y = TTTensor(y)
    data = _TTData(y)
    if init is None:
        if isinstance(crit, FixedRanks):
            init = tt_round(y, crit)
        else:
            rel = crit.eps_sq / data.norm_sq if data.norm_sq > 0 else 1.0
            init = tt_round(y, AccuracyBudget(rel))
    return _run_sweeps(
        data, None, schedule, crit, _TT_KERNELS[schedule.k], schedule.k, init, log
    )
