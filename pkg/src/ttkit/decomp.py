"""Baseline decompositions: sequential truncation (TT-SVD), TT rounding, and
the alternating Tucker-2 solver used as the triple-core kernel."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import (
    AccuracyBudget,
    FixedRanks,
    leading_eig,
    reshape,
    train_contract,
    truncated_svd,
)
from .tt import TTTensor, orthogonalize_up_to, tt_norm


def tt_svd(y, crit, log=None):
    """Sequential projection-and-truncation TT decomposition.

    AccuracyBudget.eps_sq is the relative squared accuracy: the total squared
    error is at most eps_sq * ||Y||_F**2, enforced by an even per-step split of
    the absolute budget across the N-1 truncations.  FixedRanks truncates each
    step to the requested bond rank (clamped to the matrix dimension with a
    warning).  The result is left-orthogonal up to the last core.

    When log is a list, one dict per step {"step", "rank", "discarded"} is
    appended.
    """
    y = np.asarray(y, dtype=float)
    shape = y.shape
    n_modes = len(shape)
    if n_modes < 2:
        raise ValueError("tt_svd needs an order >= 2 tensor")
    if isinstance(crit, AccuracyBudget):
        step_budget = crit.eps_sq * float(np.sum(y**2)) / (n_modes - 1)
        step_crit = AccuracyBudget(step_budget)
    else:
        step_crit = None
    cores = []
    mat = reshape(y, (shape[0], -1))
    prev_rank = 1
    for n in range(n_modes - 1):
        mat = reshape(mat, (prev_rank * shape[n], -1))
        crit_n = step_crit if step_crit is not None else FixedRanks((crit.rank_at(n),))
        res = truncated_svd(mat, crit_n)
        cores.append(reshape(res.u, (prev_rank, shape[n], res.rank)))
        mat = res.sigma[:, None] * res.v.T
        if log is not None:
            log.append({"step": n, "rank": res.rank, "discarded": res.discarded})
        prev_rank = res.rank
    cores.append(reshape(mat, (prev_rank, shape[-1], 1)))
    return TTTensor(cores, lo=n_modes - 1, ro=0)


def tt_round(x, crit, log=None):
    """Compress an existing TT-tensor: right-orthogonalize fully, then one
    left-to-right truncation sweep.

    AccuracyBudget.eps_sq is relative to the tensor's own squared norm and is
    split evenly across the N-1 truncations; FixedRanks is honored where
    feasible.  Ranks never increase.
    """
    n_modes = x.order
    if n_modes == 1:
        return TTTensor([c.copy() for c in x.cores], lo=0, ro=0)
    if isinstance(crit, AccuracyBudget):
        step_budget = crit.eps_sq * tt_norm(x) / (n_modes - 1)
        step_crit = AccuracyBudget(step_budget)
    else:
        step_crit = None
    x = orthogonalize_up_to(x, 0, "right")
    cores = x.copy_cores()
    for n in range(n_modes - 1):
        r0, i, r1 = cores[n].shape
        crit_n = step_crit if step_crit is not None else FixedRanks((crit.rank_at(n),))
        res = truncated_svd(reshape(cores[n], (r0 * i, r1)), crit_n)
        cores[n] = reshape(res.u, (r0, i, res.rank))
        carry = res.sigma[:, None] * res.v.T
        cores[n + 1] = np.tensordot(carry, cores[n + 1], axes=([1], [0]))
        if log is not None:
            log.append({"step": n, "rank": res.rank, "discarded": res.discarded})
    return TTTensor(cores, lo=n_modes - 1, ro=0)


@dataclass
class Tucker2Result:
    """X1 * core * X3 with X1 column-orthonormal and X3 row-orthonormal."""

    x1: np.ndarray
    core: np.ndarray
    x3: np.ndarray
    iterations: int
    error: float
    error_log: list = field(default_factory=list)
    lam1: np.ndarray | None = None
    lam3: np.ndarray | None = None


def tucker2(y, crit, max_iters=50, tol=1e-8, update_order=("x1", "x3"), init=None):
    """Alternating eigendecomposition solver for the order-3 factorization
    Y ~ X1 * core * X3.

    FixedRanks takes the pair (R_1, R_2).  AccuracyBudget.eps_sq is the
    absolute squared-error budget; each eigen step keeps the smallest rank
    whose retained mass reaches ||Y||_F**2 - eps_sq.  The error after each
    update is D = ||Y||**2 - retained mass; error_log starts once both
    factors have been refreshed (the very first update is measured against
    the other factor's untruncated init, so its D describes an oversized
    configuration), and at fixed ranks the logged sequence is nonincreasing.
    update_order fixes which factor is refreshed last, which matters to
    callers that exploit the diagonal core Gram of the final step.
    init is an optional (x1, x3) warm start (either entry None for identity);
    sweep drivers pass the spans of the current cores so a revisit can never
    end worse than the configuration it started from.
    """
    y = np.asarray(y, dtype=float)
    if y.ndim != 3:
        raise ValueError("tucker2 expects an order-3 tensor")
    norm_sq = float(np.sum(y**2))
    if isinstance(crit, FixedRanks):
        if len(crit.ranks) == 1:
            crit_1 = crit_3 = FixedRanks((crit.ranks[0],))
        else:
            crit_1, crit_3 = FixedRanks((crit.ranks[0],)), FixedRanks((crit.ranks[1],))
        floor = None
    else:
        crit_1 = crit_3 = crit
        floor = norm_sq - crit.eps_sq
    i1, i2, i3 = y.shape
    x1 = np.eye(i1)
    x3 = np.eye(i3)
    if init is not None:
        if init[0] is not None:
            x1 = np.asarray(init[0], dtype=float)
            if x1.shape[0] != i1:
                raise ValueError("init x1 has %d rows, expected %d" % (x1.shape[0], i1))
        if init[1] is not None:
            x3 = np.asarray(init[1], dtype=float)
            if x3.shape[1] != i3:
                raise ValueError("init x3 has %d columns, expected %d"
                                 % (x3.shape[1], i3))
    lam1 = lam3 = None
    error_log = []
    refreshed = set()
    prev = None
    iters = 0
    for iters in range(1, max_iters + 1):
        for which in update_order:
            if which == "x1":
                w = train_contract(y, x3.T)  # (I1, I2, R2)
                q1 = np.tensordot(w, w, axes=([1, 2], [1, 2]))
                x1, lam1 = leading_eig(q1, crit_1, energy_floor=floor)
                d = norm_sq - float(np.sum(lam1))
            elif which == "x3":
                w = np.tensordot(x1, y, axes=([0], [0]))  # (R1, I2, I3)
                q3 = np.tensordot(w, w, axes=([0, 1], [0, 1]))
                u3, lam3 = leading_eig(q3, crit_3, energy_floor=floor)
                x3 = u3.T
                d = norm_sq - float(np.sum(lam3))
            else:
                raise ValueError("unknown update %r" % (which,))
            refreshed.add(which)
            if len(refreshed) == len(update_order):
                error_log.append(d)
        if prev is not None and abs(prev - d) <= tol * max(norm_sq, 1e-300):
            break
        prev = d
    w = np.tensordot(x1, y, axes=([0], [0]))
    core = train_contract(w, x3.T)
    return Tucker2Result(
        x1=x1,
        core=core,
        x3=x3,
        iterations=iters,
        error=error_log[-1],
        error_log=error_log,
        lam1=lam1,
        lam3=lam3,
    )
