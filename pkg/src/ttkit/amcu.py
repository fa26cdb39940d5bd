"""Alternating core-update sweeps on dense data.

A sweep visits blocks of k consecutive cores (k = 1, 2, 3) left-to-right and
then right-to-left at stride s, solving each block subproblem against the
contracted tensor T = (X_{<n} lcontract Y) rcontract X_{>m} while the cores
outside the block stay orthonormal.  The per-block global squared error is
D = ||Y||^2 - ||T||^2 + ||T - X_block||^2, which is nonincreasing at fixed
ranks.  In budget mode each block keeps the smallest ranks whose discarded
energy fits the local allowance eps_sq - ||Y||^2 + ||T||^2 (clamped at zero
when rounding or an undersized neighbour rank makes it negative).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import AccuracyBudget, FixedRanks, reshape, truncated_svd
from .decomp import tt_svd, tucker2
from .tt import TTTensor, _left_mat, _qr_nonneg, _right_mat


@dataclass
class SweepSchedule:
    """Block size k, stride s (k - s overlapping cores), the 0-based index of
    the first core updated right-to-left (default N-1), and stopping rule."""

    k: int = 2
    stride: int = 1
    start_right: int | None = None
    max_sweeps: int = 100
    tol: float = 1e-6

    def check(self, n_modes):
        if not 1 <= self.stride <= self.k <= 3:
            raise ValueError("need 1 <= stride <= k <= 3")
        if self.k > n_modes:
            raise ValueError("block size %d exceeds order %d" % (self.k, n_modes))
        if self.start_right is not None and not 0 <= self.start_right < n_modes:
            raise ValueError("start_right out of range")
        if self.max_sweeps < 0 or self.tol < 0:
            raise ValueError("bad stopping rule")


def _l2r_starts(n_modes, k, s):
    last = n_modes - 2 if k == 1 else n_modes - k
    starts = list(range(0, last + 1, s))
    if starts[-1] != last:
        starts.append(last)
    return starts


def _r2l_starts(n_modes, k, s, start_right):
    floor = 1 if k == 1 else 0
    first = min(max(start_right - k + 1, floor), n_modes - k)
    starts = list(range(first, floor - 1, -s))
    if starts[-1] != floor:
        starts.append(floor)
    return starts


class ContractionCache:
    """Progressive left/right contractions of dense data with model cores.

    left[n] holds the data with cores 0..n-1 absorbed, shape
    (R_{n-1}, I_n, ..., I_{N-1}); right[m] has cores m+1..N-1 absorbed, shape
    (I_0, ..., I_m, R_m).  Entries are dropped when a core they depend on
    changes.
    """

    def __init__(self, y):
        y = np.asarray(y, dtype=float)
        self.n_modes = y.ndim
        self.left = {0: y[None]}
        self.right = {self.n_modes - 1: y[..., None]}

    def invalidate(self, lo_core, hi_core):
        for n in [n for n in self.left if n > lo_core]:
            del self.left[n]
        for m in [m for m in self.right if m < hi_core]:
            del self.right[m]

    def get_left(self, n, cores):
        j = max(i for i in self.left if i <= n)
        l = self.left[j]
        while j < n:
            l = np.tensordot(cores[j], l, axes=([0, 1], [0, 1]))
            j += 1
            self.left[j] = l
        return l

    def get_right(self, m, cores):
        j = min(i for i in self.right if i >= m)
        p = self.right[j]
        while j > m:
            p = np.tensordot(p, cores[j], axes=([j, j + 1], [1, 2]))
            j -= 1
            self.right[j] = p
        return p


def contract_block(y, x, n, m, cache=None):
    """Contracted tensor T_{n:m} of shape (R_{n-1}, I_n, ..., I_m, R_m).

    x may be a TTTensor or a list of cores; the complement cores are assumed
    orthonormal by the caller (the cost identity relies on it, the contraction
    itself does not).
    """
    cores = x.cores if isinstance(x, TTTensor) else x
    if cache is None:
        cache = ContractionCache(y)
    n_modes = cache.n_modes
    size_left = cores[n].shape[0] * int(
        np.prod([c.shape[1] for c in cores[n:]], dtype=np.int64)
    )
    size_right = cores[m].shape[2] * int(
        np.prod([c.shape[1] for c in cores[: m + 1]], dtype=np.int64)
    )
    if size_left <= size_right:
        t = cache.get_left(n, cores)[..., None]
        for j in range(n_modes - 1, m, -1):
            t = np.tensordot(t, cores[j], axes=([-2, -1], [1, 2]))
    else:
        t = cache.get_right(m, cores)[None]
        for j in range(n):
            t = np.tensordot(cores[j], t, axes=([0, 1], [0, 1]))
    return t


def block_error(y_norm_sq, t, x_block):
    """Global squared error D = ||Y||^2 - ||T||^2 + ||T - X_block||^2."""
    t = np.asarray(t, dtype=float)
    x_block = np.asarray(x_block, dtype=float)
    return float(y_norm_sq - np.sum(t**2) + np.sum((t - x_block) ** 2))


def unit_vector_cores(shape, ranks):
    """TT-tensor whose horizontal core slices are unit vectors, so every
    mode-1 core matricization is [I | 0]; such cores are right-orthogonal."""
    shape = tuple(int(s) for s in shape)
    full = (1,) + tuple(int(r) for r in ranks) + (1,)
    if len(full) != len(shape) + 1:
        raise ValueError("need %d internal ranks" % (len(shape) - 1))
    cores = []
    for n, i in enumerate(shape):
        r0, r1 = full[n], full[n + 1]
        if r0 > i * r1:
            raise ValueError(
                "infeasible rank R_%d = %d > I*R = %d" % (n, r0, i * r1)
            )
        cores.append(reshape(np.eye(r0, i * r1), (r0, i, r1)))
    return TTTensor(cores, lo=0, ro=len(shape))


def trailing_ranks(shape):
    """Internal ranks R_n = I_{n+1} * ... * I_N, the unit-vector initialization
    that makes the first contracted tensor equal the data itself."""
    shape = tuple(int(s) for s in shape)
    out = []
    prod = 1
    for i in reversed(shape[1:]):
        prod *= i
        out.append(prod)
    return tuple(reversed(out))


def init_cores(y, mode, crit=None, ranks=None):
    """Initial TT model: mode "tt_svd" rounds the data at the criterion, mode
    "unit_vectors" builds the right-orthogonal unit-slice cores at ranks."""
    y = np.asarray(y, dtype=float)
    if mode == "tt_svd":
        if crit is None:
            raise ValueError("tt_svd mode needs a truncation criterion")
        return tt_svd(y, crit)
    if mode == "unit_vectors":
        if ranks is None:
            raise ValueError("unit_vectors mode needs ranks")
        return unit_vector_cores(y.shape, ranks)
    raise ValueError("unknown init mode %r" % (mode,))


def _default_init(y, crit, y_norm_sq):
    if isinstance(crit, FixedRanks):
        return tt_svd(y, crit)
    rel = crit.eps_sq / y_norm_sq if y_norm_sq > 0 else 1.0
    return tt_svd(y, AccuracyBudget(rel))


class _DenseData:
    """Data adapter for the sweep driver: dense tensor + contraction cache."""

    def __init__(self, y):
        self.y = np.asarray(y, dtype=float)
        self.norm_sq = float(np.sum(self.y**2))
        self.cache = ContractionCache(self.y)

    def block(self, cores, n, m):
        return contract_block(self.y, cores, n, m, self.cache)

    def invalidate(self, lo_core, hi_core):
        self.cache.invalidate(lo_core, hi_core)


class _State:
    """Working cores plus orthogonality run lengths and the data adapter."""

    def __init__(self, data, cores, lo, ro):
        self.data = data
        self.cores = cores
        self.lo = lo
        self.ro = ro

    @property
    def n_modes(self):
        return len(self.cores)


def _left_orth_at(st, i):
    r0, ii, r1 = st.cores[i].shape
    q, r = _qr_nonneg(_left_mat(st.cores[i]))
    st.cores[i] = reshape(q, (r0, ii, q.shape[1]))
    st.cores[i + 1] = np.tensordot(r, st.cores[i + 1], axes=([1], [0]))
    st.data.invalidate(i, i + 1)
    st.lo = i + 1 if st.lo >= i else min(st.lo, i)
    st.ro = min(st.ro, st.n_modes - 2 - i)


def _right_orth_at(st, j):
    r0, ii, r1 = st.cores[j].shape
    q, r = _qr_nonneg(_right_mat(st.cores[j]).T)
    st.cores[j] = reshape(q.T, (q.shape[1], ii, r1))
    st.cores[j - 1] = np.tensordot(st.cores[j - 1], r.T, axes=([2], [0]))
    st.data.invalidate(j - 1, j)
    n = st.n_modes
    st.ro = n - j if st.ro >= n - 1 - j else min(st.ro, n - 1 - j)
    st.lo = min(st.lo, j - 1)


def _ensure_bracket(st, a, b):
    n = st.n_modes
    while st.ro < n - 1 - b:
        _right_orth_at(st, n - 1 - st.ro)
    while st.lo < a:
        _left_orth_at(st, st.lo)


def _local_crit(crit, bond, eps_local):
    if isinstance(crit, FixedRanks):
        return FixedRanks((crit.rank_at(bond),))
    return AccuracyBudget(eps_local)


def _apply_svd1(st, n, res, direction, shape):
    r0, i1, r1 = shape
    if direction == "l2r":
        st.cores[n] = reshape(res.u, (r0, i1, res.rank))
        carry = res.sigma[:, None] * res.v.T
        st.cores[n + 1] = np.tensordot(carry, st.cores[n + 1], axes=([1], [0]))
        st.data.invalidate(n, n + 1)
        st.lo = n + 1
        st.ro = min(st.ro, st.n_modes - 2 - n)
    else:
        st.cores[n] = reshape(res.v.T, (res.rank, i1, r1))
        carry = res.u * res.sigma[None, :]
        st.cores[n - 1] = np.tensordot(st.cores[n - 1], carry, axes=([2], [0]))
        st.data.invalidate(n - 1, n)
        st.ro = st.n_modes - n
        st.lo = min(st.lo, n - 1)
    return {"residual": res.discarded, "ranks": (res.rank,)}


def _apply_svd2(st, n, res, shapes, direction):
    (r0, i1), (i2, r1) = shapes
    if direction == "l2r":
        st.cores[n] = reshape(res.u, (r0, i1, res.rank))
        st.cores[n + 1] = reshape(res.sigma[:, None] * res.v.T, (res.rank, i2, r1))
        st.lo = n + 1
        st.ro = min(st.ro, st.n_modes - 2 - n)
    else:
        st.cores[n] = reshape(res.u * res.sigma[None, :], (r0, i1, res.rank))
        st.cores[n + 1] = reshape(res.v.T, (res.rank, i2, r1))
        st.ro = st.n_modes - 1 - n
        st.lo = min(st.lo, n)
    st.data.invalidate(n, n + 1)
    return {"residual": res.discarded, "ranks": (res.rank,)}


def _kernel_svd1(st, n, t, direction, crit, eps_local):
    r0, i1, r1 = t.shape
    if direction == "l2r":
        res = truncated_svd(reshape(t, (r0 * i1, r1)), _local_crit(crit, n, eps_local))
    else:
        res = truncated_svd(
            reshape(t, (r0, i1 * r1)), _local_crit(crit, n - 1, eps_local)
        )
    return _apply_svd1(st, n, res, direction, t.shape)


def _kernel_svd2(st, n, t, direction, crit, eps_local):
    r0, i1, i2, r1 = t.shape
    res = truncated_svd(
        reshape(t, (r0 * i1, i2 * r1)), _local_crit(crit, n, eps_local)
    )
    return _apply_svd2(st, n, res, ((r0, i1), (i2, r1)), direction)


def _kernel_tucker3(st, n, t, direction, crit, eps_local, max_inner=10):
    r0, i1, i2, i3, r1 = t.shape
    z = reshape(t, (r0 * i1, i2, i3 * r1))
    if isinstance(crit, FixedRanks):
        crit3 = FixedRanks((crit.rank_at(n), crit.rank_at(n + 1)))
    else:
        crit3 = AccuracyBudget(eps_local)
    # Warm start from the spans of the current cores so the first eigen
    # update already retains at least the mass of the configuration being
    # replaced; a cold identity start can drift to a worse stationary point.
    if direction == "l2r":
        order = ("x1", "x3")
        m3 = reshape(st.cores[n + 2], (st.cores[n + 2].shape[0], i3 * r1))
        q3, _ = np.linalg.qr(m3.T)
        warm = (None, q3.T)
    else:
        order = ("x3", "x1")
        m1 = reshape(st.cores[n], (r0 * i1, st.cores[n].shape[2]))
        q1, _ = np.linalg.qr(m1)
        warm = (q1, None)
    res = tucker2(z, crit3, max_iters=max_inner, update_order=order, init=warm)
    ra = res.x1.shape[1]
    rb = res.x3.shape[0]
    core_a = reshape(res.x1, (r0, i1, ra))
    core_b = res.core
    core_c = reshape(res.x3, (rb, i3, r1))
    lam = res.lam3 if direction == "l2r" else res.lam1
    if lam is not None and lam.size and lam.min() > 1e-12 * lam.max():
        rt = np.sqrt(lam)
        if direction == "l2r":
            core_b = core_b / rt[None, None, :]
            core_c = core_c * rt[:, None, None]
        else:
            core_b = core_b / rt[:, None, None]
            core_a = core_a * rt[None, None, :]
    else:
        # Degenerate spectrum: restore the sweep orthogonality with a QR
        # instead of the eigenvalue scaling.
        if direction == "l2r":
            q, r = _qr_nonneg(reshape(core_b, (ra * i2, rb)))
            core_b = reshape(q, (ra, i2, q.shape[1]))
            core_c = np.tensordot(r, core_c, axes=([1], [0]))
            rb = q.shape[1]
        else:
            q, r = _qr_nonneg(reshape(core_b, (ra, i2 * rb)).T)
            core_b = reshape(q.T, (q.shape[1], i2, rb))
            core_a = np.tensordot(core_a, r.T, axes=([2], [0]))
            ra = q.shape[1]
    st.cores[n] = core_a
    st.cores[n + 1] = core_b
    st.cores[n + 2] = core_c
    st.data.invalidate(n, n + 2)
    if direction == "l2r":
        st.lo = n + 2
        st.ro = min(st.ro, st.n_modes - 2 - n - 2 + 1)
    else:
        st.ro = st.n_modes - 1 - n
        st.lo = min(st.lo, n)
    return {"residual": res.error, "ranks": (ra, rb)}


def _kernel_two_side(st, n, t, direction, crit, eps_local, max_inner=10):
    n_modes = st.n_modes
    if isinstance(crit, FixedRanks):
        left_rank = 1 if n == 0 else crit.rank_at(n - 1)
        right_rank = 1 if n == n_modes - 1 else crit.rank_at(n)
        crit2 = FixedRanks((left_rank, right_rank))
    else:
        crit2 = AccuracyBudget(eps_local)
    res = tucker2(t, crit2, max_iters=max_inner)
    st.cores[n] = res.core
    lo_core = hi_core = n
    if n > 0:
        st.cores[n - 1] = np.tensordot(st.cores[n - 1], res.x1, axes=([2], [0]))
        lo_core = n - 1
    if n < n_modes - 1:
        st.cores[n + 1] = np.tensordot(res.x3, st.cores[n + 1], axes=([1], [0]))
        hi_core = n + 1
    st.data.invalidate(lo_core, hi_core)
    # The embedded factors keep the neighbours' orthogonality; only core n is
    # left unorthogonalized.
    st.lo = min(st.lo, n)
    st.ro = min(st.ro, n_modes - 1 - n)
    return {"residual": res.error, "ranks": (res.x1.shape[1], res.x3.shape[0])}


_KERNELS = {1: _kernel_svd1, 2: _kernel_svd2, 3: _kernel_tucker3}


def _run_sweeps(data, y_for_init, schedule, crit, kernel, footprint, init, log):
    n_modes = (
        len(init.cores) if init is not None else np.asarray(y_for_init).ndim
    )
    schedule.check(n_modes)
    if init is None:
        init = _default_init(np.asarray(y_for_init, dtype=float), crit, data.norm_sq)
    elif y_for_init is not None and init.shape != np.asarray(y_for_init).shape:
        raise ValueError("initialization shape %r does not match data %r"
                         % (init.shape, np.asarray(y_for_init).shape))
    if schedule.max_sweeps == 0:
        return init
    st = _State(data, init.copy_cores(), init.lo, init.ro)
    start_right = (
        schedule.start_right if schedule.start_right is not None else n_modes - 1
    )
    l2r = _l2r_starts(n_modes, footprint, schedule.stride)
    r2l = _r2l_starts(n_modes, footprint, schedule.stride, start_right)
    prev_d = None
    d = None
    for sweep in range(1, schedule.max_sweeps + 1):
        for direction, starts in (("l2r", l2r), ("r2l", r2l)):
            for n in starts:
                b = n + footprint - 1
                _ensure_bracket(st, n, b)
                t = data.block(st.cores, n, b)
                t_norm_sq = float(np.sum(t**2))
                if isinstance(crit, AccuracyBudget):
                    raw = crit.eps_sq - data.norm_sq + t_norm_sq
                    eps_local = max(raw, 0.0)
                    negative = raw < 0.0
                else:
                    eps_local = None
                    negative = False
                info = kernel(st, n, t, direction, crit, eps_local)
                d = data.norm_sq - t_norm_sq + info["residual"]
                if log is not None:
                    log.append(
                        {
                            "sweep": sweep,
                            "direction": direction,
                            "block": n,
                            "ranks": list(info["ranks"]),
                            "eps_local": eps_local,
                            "negative_budget": negative,
                            "error": d,
                        }
                    )
        if prev_d is not None and abs(prev_d - d) <= schedule.tol * max(
            data.norm_sq, 1e-300
        ):
            break
        prev_d = d
    _ensure_bracket(st, 0, 0)
    return TTTensor(st.cores, lo=st.lo, ro=st.ro)


def amcu(y, schedule, crit, init=None, log=None, kernel=None):
    """Generic alternating multi-core update sweep (k = 1, 2, or 3).

    AccuracyBudget.eps_sq is the absolute squared-error budget; FixedRanks
    may carry one rank per bond or a single broadcast rank.  When log is a
    list, one dict per block visit is appended with the running global error.
    A zero-sweep schedule returns the initialization unchanged.
    """
    y = np.asarray(y, dtype=float)
    if kernel is None:
        if schedule.k not in _KERNELS:
            raise ValueError("block size k must be 1, 2, or 3")
        kernel = _KERNELS[schedule.k]
    data = _DenseData(y)
    return _run_sweeps(data, y, schedule, crit, kernel, schedule.k, init, log)


def adcu(y, crit, overlap=1, max_sweeps=100, tol=1e-6, init=None, log=None):
    """Alternating double-core update: SVD of the block matricization of
    T_{n,n+1}; overlap 1 revisits one shared core per step, 0 tiles disjoint
    pairs."""
    if overlap not in (0, 1):
        raise ValueError("overlap must be 0 or 1")
    sched = SweepSchedule(
        k=2, stride=2 - overlap, max_sweeps=max_sweeps, tol=tol
    )
    return amcu(y, sched, crit, init=init, log=log)


def atcu(y, crit, overlap=2, max_sweeps=100, tol=1e-6, init=None, log=None):
    """Alternating triple-core update: Tucker-2 on the order-3 reshaping of
    T_{n:n+2}; the middle core is re-orthogonalized by eigenvalue scaling."""
    if overlap not in (0, 1, 2):
        raise ValueError("overlap must be 0, 1, or 2")
    sched = SweepSchedule(
        k=3, stride=3 - overlap, max_sweeps=max_sweeps, tol=tol
    )
    return amcu(y, sched, crit, init=init, log=log)


def ascu_two_side(y, crit, max_sweeps=100, tol=1e-6, init=None, log=None):
    """Single-core update adjusting both ranks of each core: Tucker-2 on T_n
    factors X_n = A * core * B and the outer factors are embedded into the
    neighbouring cores."""
    y = np.asarray(y, dtype=float)
    sched = SweepSchedule(k=1, stride=1, max_sweeps=max_sweeps, tol=tol)
    data = _DenseData(y)
    return _run_sweeps(data, y, sched, crit, _kernel_two_side, 1, init, log)


def ascu_one_side(
    y,
    crit,
    max_sweeps=100,
    tol=1e-6,
    init=None,
    update_neighbors=False,
    log=None,
):
    """Single-core update adjusting one rank per visit (the bond being swept
    across).

    Left-to-right visits factor the mode-(1,2) matricization of T_n and push
    sigma * V^T into the next core; right-to-left visits factor the mode-1
    matricization and push U * sigma into the previous one.  The freshly
    assigned core is orthogonal by construction.  By default the push is
    skipped except at the end of each sweep: the next visit recomputes its
    target from scratch and never reads the pushed value, so the final model
    is identical either way (update_neighbors=True keeps every push, which is
    only useful when inspecting the chain mid-sweep).

    This is a standalone implementation; amcu with k = 1 follows the same
    visit order through the generic driver.
    """
    y = np.asarray(y, dtype=float)
    n_modes = y.ndim
    if n_modes < 2:
        raise ValueError("need an order >= 2 tensor")
    y_norm_sq = float(np.sum(y**2))
    x0 = init if init is not None else _default_init(y, crit, y_norm_sq)
    if max_sweeps == 0:
        return x0
    cores = x0.copy_cores()
    # Right-canonicalize so the first left-to-right visit is bracketed.
    for j in range(n_modes - 1, 0, -1):
        r0, ii, r1 = cores[j].shape
        q, r = _qr_nonneg(_right_mat(cores[j]).T)
        cores[j] = reshape(q.T, (q.shape[1], ii, r1))
        cores[j - 1] = np.tensordot(cores[j - 1], r.T, axes=([2], [0]))
    left = [None] * (n_modes + 1)
    left[0] = y[None]
    prev_d = None
    d = None
    for sweep in range(1, max_sweeps + 1):
        for n in range(n_modes - 1):
            t = left[n][..., None]
            for j in range(n_modes - 1, n, -1):
                t = np.tensordot(t, cores[j], axes=([-2, -1], [1, 2]))
            t_norm_sq = float(np.sum(t**2))
            eps_local, negative = _one_side_budget(crit, y_norm_sq, t_norm_sq)
            r0, i1, r1 = t.shape
            res = truncated_svd(
                reshape(t, (r0 * i1, r1)), _local_crit(crit, n, eps_local)
            )
            cores[n] = reshape(res.u, (r0, i1, res.rank))
            if update_neighbors:
                carry = res.sigma[:, None] * res.v.T
                cores[n + 1] = np.tensordot(carry, cores[n + 1], axes=([1], [0]))
            left[n + 1] = np.tensordot(cores[n], left[n], axes=([0, 1], [0, 1]))
            d = y_norm_sq - t_norm_sq + res.discarded
            _log_entry(log, sweep, "l2r", n, res, eps_local, negative, d)
        for n in range(n_modes - 1, 0, -1):
            t = left[n][..., None]
            for j in range(n_modes - 1, n, -1):
                t = np.tensordot(t, cores[j], axes=([-2, -1], [1, 2]))
            t_norm_sq = float(np.sum(t**2))
            eps_local, negative = _one_side_budget(crit, y_norm_sq, t_norm_sq)
            r0, i1, r1 = t.shape
            res = truncated_svd(
                reshape(t, (r0, i1 * r1)), _local_crit(crit, n - 1, eps_local)
            )
            cores[n] = reshape(res.v.T, (res.rank, i1, r1))
            if update_neighbors or n == 1:
                carry = res.u * res.sigma[None, :]
                cores[n - 1] = np.tensordot(cores[n - 1], carry, axes=([2], [0]))
            d = y_norm_sq - t_norm_sq + res.discarded
            _log_entry(log, sweep, "r2l", n, res, eps_local, negative, d)
        if prev_d is not None and abs(prev_d - d) <= tol * max(y_norm_sq, 1e-300):
            break
        prev_d = d
    return TTTensor(cores, lo=0, ro=n_modes - 1)


def _one_side_budget(crit, y_norm_sq, t_norm_sq):
    if isinstance(crit, AccuracyBudget):
        raw = crit.eps_sq - y_norm_sq + t_norm_sq
        return max(raw, 0.0), raw < 0.0
    return None, False


def _log_entry(log, sweep, direction, block, res, eps_local, negative, d):
    if log is not None:
        log.append(
            {
                "sweep": sweep,
                "direction": direction,
                "block": block,
                "ranks": [res.rank],
                "eps_local": eps_local,
                "negative_budget": negative,
                "error": d,
            }
        )
