"""Tensor-train tensors: reconstruction, norm, and core orthogonalization.

A TT-tensor is a chain of order-3 cores X_n of shape (R_{n-1}, I_n, R_n) with
boundary ranks R_0 = R_N = 1.  A core is left-orthogonal when its mode-(1,2)
matricization has orthonormal columns, and right-orthogonal when its mode-1
matricization has orthonormal rows.  Orthogonality knowledge is tracked as two
run lengths (leading left-orthogonal cores, trailing right-orthogonal cores)
from which the single pivot marker is derived when the runs bracket one core.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import reshape, train_contract

ORTH_TOL = 1e-10


class TTTensor:
    """Immutable-by-convention chain of order-3 cores.

    lo counts leading cores known left-orthogonal, ro counts trailing cores
    known right-orthogonal.  ortho is the 0-based pivot core index when the
    two runs cover everything else, and None otherwise.
    """

    __slots__ = ("cores", "lo", "ro")

    def __init__(self, cores, lo=0, ro=0):
        cores = tuple(np.asarray(c, dtype=float) for c in cores)
        if not cores:
            raise ValueError("a TT-tensor needs at least one core")
        for i, c in enumerate(cores):
            if c.ndim != 3:
                raise ValueError("core %d has %d modes, expected 3" % (i, c.ndim))
        if cores[0].shape[0] != 1 or cores[-1].shape[2] != 1:
            raise ValueError("boundary ranks must be 1")
        for i in range(len(cores) - 1):
            if cores[i].shape[2] != cores[i + 1].shape[0]:
                raise ValueError(
                    "rank mismatch between cores %d and %d: %d vs %d"
                    % (i, i + 1, cores[i].shape[2], cores[i + 1].shape[0])
                )
        self.cores = cores
        self.lo = int(max(0, min(lo, len(cores))))
        self.ro = int(max(0, min(ro, len(cores))))

    @property
    def order(self):
        return len(self.cores)

    @property
    def shape(self):
        return tuple(c.shape[1] for c in self.cores)

    @property
    def ranks(self):
        """(R_0, R_1, ..., R_N) including the unit boundary ranks."""
        return (1,) + tuple(c.shape[2] for c in self.cores)

    @property
    def ortho(self):
        """0-based pivot core index, or None when no bracketing is known."""
        pivot = max(self.order - 1 - self.ro, 0)
        return pivot if self.lo >= pivot else None

    def __len__(self):
        return len(self.cores)

    def __getitem__(self, i):
        return self.cores[i]

    def copy_cores(self):
        return [c.copy() for c in self.cores]


def tt_rank_sum(x):
    """Sum of the internal TT-ranks R_1 + ... + R_{N-1}."""
    return int(sum(x.ranks[1:-1]))


def tt_full(x):
    """Dense order-N tensor X_1 * X_2 * ... * X_N with boundary modes dropped."""
    a = x.cores[0][0]  # (I_1, R_1)
    for c in x.cores[1:]:
        a = train_contract(a, c)
    return a[..., 0]


def _left_mat(core):
    r0, i, r1 = core.shape
    return reshape(core, (r0 * i, r1))


def _right_mat(core):
    r0, i, r1 = core.shape
    return reshape(core, (r0, i * r1))


def _qr_nonneg(m):
    # QR with a nonnegative diagonal of R for deterministic output.
    q, r = np.linalg.qr(m)
    sign = np.sign(np.diag(r))
    sign[sign == 0] = 1.0
    q = q * sign
    r = r * sign[:, None]
    return q, r


def orthogonalize_core(x, n, side):
    """Orthogonalize core n, absorbing the triangular factor into a neighbour.

    side="left" requires n < N-1 (factor goes into core n+1); side="right"
    requires n > 0.  The reconstructed dense tensor is unchanged.
    """
    n = int(n)
    nc = x.order
    cores = x.copy_cores()
    if side == "left":
        if not 0 <= n < nc - 1:
            raise IndexError("left-orthogonalization needs 0 <= n < N-1")
        r0, i, r1 = cores[n].shape
        q, r = _qr_nonneg(_left_mat(cores[n]))
        cores[n] = reshape(q, (r0, i, q.shape[1]))
        cores[n + 1] = np.tensordot(r, cores[n + 1], axes=([1], [0]))
        lo = n + 1 if x.lo >= n else min(x.lo, n)
        ro = min(x.ro, nc - 2 - n)
        return TTTensor(cores, lo=lo, ro=max(ro, 0))
    if side == "right":
        if not 0 < n <= nc - 1:
            raise IndexError("right-orthogonalization needs 0 < n <= N-1")
        r0, i, r1 = cores[n].shape
        q, r = _qr_nonneg(_right_mat(cores[n]).T)
        cores[n] = reshape(q.T, (q.shape[1], i, r1))
        cores[n - 1] = np.tensordot(cores[n - 1], r.T, axes=([2], [0]))
        ro = nc - n if x.ro >= nc - 1 - n else min(x.ro, nc - 1 - n)
        lo = min(x.lo, n - 1)
        return TTTensor(cores, lo=max(lo, 0), ro=ro)
    raise ValueError("side must be 'left' or 'right', got %r" % (side,))


def orthogonalize_up_to(x, n, side):
    """Left-orthogonalize cores 0..n-1 (side="left") or right-orthogonalize
    cores N-1..n+1 (side="right"); the dense reconstruction is unchanged."""
    n = int(n)
    if not 0 <= n <= x.order - 1:
        raise IndexError("pivot %d out of range" % n)
    if side == "left":
        for i in range(x.lo, n):
            x = orthogonalize_core(x, i, "left")
        return x
    if side == "right":
        for i in range(x.order - 1 - x.ro, n, -1):
            x = orthogonalize_core(x, i, "right")
        return x
    raise ValueError("side must be 'left' or 'right', got %r" % (side,))


def tt_norm(x):
    """Squared Frobenius norm of the reconstructed tensor.

    With a bracketing orthogonality marker this is the squared norm of the
    pivot core; otherwise a copy is orthogonalized first.
    """
    pivot = x.order - 1 - x.ro
    if x.lo >= pivot:
        pivot = max(pivot, 0)
        return float(np.sum(x.cores[pivot] ** 2))
    x = orthogonalize_up_to(x, x.order - 1, "left")
    return float(np.sum(x.cores[-1] ** 2))


@dataclass
class SubTT:
    """TT fragments X_{<n}, X_{n:m}, X_{>m} with open boundary ranks."""

    left: tuple
    block: tuple
    right: tuple

    def dense_left(self):
        """Dense (I_1...I_{n-1}, R_{n-1}) prefix; scalar 1 when empty."""
        if not self.left:
            return np.ones((1,))
        a = self.left[0][0]
        for c in self.left[1:]:
            a = train_contract(a, c)
        return a

    def dense_right(self):
        """Dense (R_m, I_{m+1}...I_N) suffix; scalar 1 when empty."""
        if not self.right:
            return np.ones((1,))
        a = self.right[0]
        for c in self.right[1:]:
            a = train_contract(a, c)
        return a[..., 0]

    def dense_block(self):
        """Dense (R_{n-1}, I_n..I_m, R_m) middle factor."""
        a = self.block[0]
        for c in self.block[1:]:
            a = train_contract(a, c)
        return a


def sub_tt(x, n, m):
    """Split into X_{<n}, X_{n:m}, X_{>m} (0-based, inclusive block)."""
    n = int(n)
    m = int(m)
    if not 0 <= n <= m <= x.order - 1:
        raise ValueError("bad block range (%d, %d)" % (n, m))
    return SubTT(left=x.cores[:n], block=x.cores[n : m + 1], right=x.cores[m + 1 :])


def validate(x, tol=ORTH_TOL):
    """Diagnostic report: rank agreement, rank bounds, orthogonality residuals.

    Accepts a TTTensor or a raw sequence of order-3 cores (the constructor
    rejects malformed chains, so the raw form is how broken data reaches the
    diagnostics).  Returns a list of human-readable violation strings; empty
    when clean.
    """
    if not isinstance(x, TTTensor):
        cores = tuple(np.asarray(c, dtype=float) for c in x)
        report = []
        for i, c in enumerate(cores):
            if c.ndim != 3:
                report.append("core %d has %d modes, expected 3" % (i, c.ndim))
        if report:
            return report
        if cores[0].shape[0] != 1 or cores[-1].shape[2] != 1:
            report.append("boundary ranks must be 1")
        for i in range(len(cores) - 1):
            if cores[i].shape[2] != cores[i + 1].shape[0]:
                report.append(
                    "rank mismatch between cores %d and %d: %d vs %d"
                    % (i, i + 1, cores[i].shape[2], cores[i + 1].shape[0])
                )
        if report:
            return report
        x = TTTensor(cores)
    report = []
    n = x.order
    ranks = x.ranks
    shape = x.shape
    for i in range(1, n):
        bound = min(ranks[i - 1] * shape[i - 1], shape[i] * ranks[i + 1])
        if ranks[i] > bound:
            report.append(
                "rank-bound: R_%d = %d exceeds min(R_%d*I_%d, I_%d*R_%d) = %d"
                % (i, ranks[i], i - 1, i, i + 1, i + 1, bound)
            )
    for i in range(x.lo):
        m = _left_mat(x.cores[i])
        res = float(np.max(np.abs(m.T @ m - np.eye(m.shape[1]))))
        if res > tol:
            report.append("left-orthogonality: core %d residual %.3g" % (i, res))
    for i in range(n - x.ro, n):
        m = _right_mat(x.cores[i])
        res = float(np.max(np.abs(m @ m.T - np.eye(m.shape[0]))))
        if res > tol:
            report.append("right-orthogonality: core %d residual %.3g" % (i, res))
    return report
