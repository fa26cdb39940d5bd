"""Dense tensor kernels: column-major reshaping, unfoldings, the three train
contraction operators, and rank-revealing factorizations with deterministic
sign conventions.

Dense tensors are plain float64 numpy arrays.  All linearizations (reshape,
unfold, serialization) use column-major order: the first index runs fastest.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

# Singular/eigen values below this fraction of the largest one are treated as
# numerical zeros during rank selection.
RANK_TOL = 1e-14


@dataclass(frozen=True)
class FixedRanks:
    """Truncate to given ranks: one entry per internal bond (or a single entry
    for matrix-level factorizations)."""

    ranks: tuple

    def __post_init__(self):
        ranks = tuple(int(r) for r in np.atleast_1d(np.asarray(self.ranks, dtype=int)))
        if any(r < 1 for r in ranks):
            raise ValueError("ranks must be >= 1, got %s" % (ranks,))
        object.__setattr__(self, "ranks", ranks)

    def rank_at(self, i):
        if len(self.ranks) == 1:
            return self.ranks[0]
        return self.ranks[i]


@dataclass(frozen=True)
class AccuracyBudget:
    """Truncate by a squared-error budget eps_sq >= 0.

    The interpretation of eps_sq (relative vs absolute squared error) is fixed
    by the operation that receives the criterion; see each docstring.
    """

    eps_sq: float

    def __post_init__(self):
        eps_sq = float(self.eps_sq)
        if not eps_sq >= 0.0:
            raise ValueError("eps_sq must be nonnegative, got %r" % eps_sq)
        object.__setattr__(self, "eps_sq", eps_sq)


@dataclass
class SvdResult:
    """Truncated SVD M ~ U @ diag(sigma) @ V.T.

    u, v have orthonormal columns, sigma is nonincreasing, rank = len(sigma),
    and discarded is the full dropped energy sum(sigma_tail**2) including any
    components below the numerical-rank tolerance.
    """

    u: np.ndarray
    sigma: np.ndarray
    v: np.ndarray
    rank: int
    discarded: float


def reshape(t, shape):
    """Reshape preserving column-major linear order (first index fastest)."""
    return np.reshape(np.asarray(t), tuple(int(s) for s in shape), order="F")


def _check_partition(groups, ndim):
    flat = [m for g in groups for m in g]
    if sorted(flat) != list(range(ndim)):
        raise ValueError(
            "groups %s are not an ordered partition of modes 0..%d" % (groups, ndim - 1)
        )


def unfold(t, groups):
    """Group modes of t into a lower-order tensor.

    groups is an ordered partition of the 0-based mode indices; each group is
    merged into a single mode whose linear index is column-major within the
    group.  unfold(t, ((0,...,n-1), (n,...,N-1))) is the left matricization.
    """
    t = np.asarray(t)
    groups = [tuple(int(m) for m in g) for g in groups]
    _check_partition(groups, t.ndim)
    perm = [m for g in groups for m in g]
    new_shape = [int(np.prod([t.shape[m] for m in g], dtype=np.int64)) for g in groups]
    return reshape(np.transpose(t, perm), new_shape)


def fold(t, groups, shape):
    """Inverse of unfold: rebuild the original tensor with the given shape."""
    t = np.asarray(t)
    groups = [tuple(int(m) for m in g) for g in groups]
    shape = tuple(int(s) for s in shape)
    _check_partition(groups, len(shape))
    perm = [m for g in groups for m in g]
    permuted = reshape(t, [shape[m] for m in perm])
    inv = np.argsort(perm)
    return np.transpose(permuted, inv)


def train_contract(a, b):
    """Contract the last mode of a with the first mode of b.

    For matrices this is the ordinary matrix product; contracting two vectors
    gives a scalar (0-d array).
    """
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape[-1] != b.shape[0]:
        raise ValueError(
            "train contraction needs last extent of a (%d) = first extent of b (%d)"
            % (a.shape[-1], b.shape[0])
        )
    return np.tensordot(a, b, axes=([a.ndim - 1], [0]))


def left_contract(a, b, n):
    """Contract a and b over their first n modes (shared leading extents)."""
    a = np.asarray(a)
    b = np.asarray(b)
    n = int(n)
    if not 0 <= n <= min(a.ndim, b.ndim):
        raise ValueError("mode count %d out of range" % n)
    if a.shape[:n] != b.shape[:n]:
        raise ValueError(
            "leading extents differ: %s vs %s" % (a.shape[:n], b.shape[:n])
        )
    return np.tensordot(a, b, axes=(list(range(n)), list(range(n))))


def right_contract(a, b, n):
    """Contract a and b over their last n modes (shared trailing extents)."""
    a = np.asarray(a)
    b = np.asarray(b)
    n = int(n)
    if not 0 <= n <= min(a.ndim, b.ndim):
        raise ValueError("mode count %d out of range" % n)
    if a.shape[a.ndim - n :] != b.shape[b.ndim - n :]:
        raise ValueError(
            "trailing extents differ: %s vs %s"
            % (a.shape[a.ndim - n :], b.shape[b.ndim - n :])
        )
    axes_a = list(range(a.ndim - n, a.ndim))
    axes_b = list(range(b.ndim - n, b.ndim))
    return np.tensordot(a, b, axes=(axes_a, axes_b))


def _fix_signs(u, vt):
    # Deterministic sign convention: the largest-magnitude entry of each
    # retained left vector is positive (first index on ties).
    for j in range(u.shape[1]):
        i = int(np.argmax(np.abs(u[:, j])))
        if u[i, j] < 0:
            u[:, j] = -u[:, j]
            if vt is not None:
                vt[j, :] = -vt[j, :]
    return u, vt


def _select_rank(energies, crit, energy_floor, max_rank):
    """Pick the retained rank from nonincreasing component energies.

    energies are sigma**2 (or eigenvalues); entries below RANK_TOL relative to
    the largest are treated as zero.  AccuracyBudget keeps the smallest rank
    whose discarded energy is within budget; with an explicit energy_floor the
    budget is total - floor (the retained >= floor rule).  At least one
    component is always kept.
    """
    energies = np.asarray(energies, dtype=float)
    if energies.size == 0:
        return 0
    eff = energies.copy()
    if eff[0] > 0.0:
        eff[eff <= (RANK_TOL**2) * eff[0]] = 0.0
    num_rank = int(np.count_nonzero(eff))
    if isinstance(crit, FixedRanks):
        want = crit.rank_at(0)
        if want > max_rank:
            warnings.warn(
                "requested rank %d exceeds matrix dimension %d; clamped"
                % (want, max_rank)
            )
        return max(1, min(want, max_rank, max(num_rank, 1)))
    if isinstance(crit, AccuracyBudget):
        total = float(eff.sum())
        if energy_floor is None:
            budget = crit.eps_sq
        else:
            budget = max(total - float(energy_floor), 0.0)
        # discarded energy after keeping r components
        tail = np.concatenate([np.cumsum(eff[::-1])[::-1][1:], [0.0]])
        for r in range(1, num_rank + 1):
            if tail[r - 1] <= budget:
                return r
        return max(num_rank, 1)
    raise TypeError("unsupported truncation criterion: %r" % (crit,))


def truncated_svd(m, crit, energy_floor=None):
    """Truncated SVD with deterministic signs and spectrum-based rank choice.

    FixedRanks keeps exactly min(requested, numerical rank) components.
    AccuracyBudget keeps the smallest rank whose discarded energy
    sum(sigma_tail**2) fits the budget: eps_sq itself when energy_floor is
    None, else total - energy_floor (i.e. retained energy >= energy_floor,
    the form used when a caller has an explicit retained-energy threshold).
    """
    m = np.asarray(m, dtype=float)
    if m.ndim != 2:
        raise ValueError("expected a matrix, got %d modes" % m.ndim)
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix has non-finite entries")
    u, s, vt = np.linalg.svd(m, full_matrices=False)
    if s.size == 0 or s[0] == 0.0:
        # Degenerate zero matrix: keep a rank-1 placeholder basis.
        r = 1
        u = np.zeros((m.shape[0], 1))
        u[0, 0] = 1.0
        v = np.zeros((m.shape[1], 1))
        v[0, 0] = 1.0
        return SvdResult(u=u, sigma=np.zeros(1), v=v, rank=1, discarded=0.0)
    r = _select_rank(s**2, crit, energy_floor, max_rank=int(s.size))
    discarded = float(np.sum(s[r:] ** 2))
    u = u[:, :r].copy()
    vt = vt[:r, :].copy()
    u, vt = _fix_signs(u, vt)
    return SvdResult(u=u, sigma=s[:r].copy(), v=vt.T, rank=r, discarded=discarded)


def leading_eig(q, crit, energy_floor=None, sym_tol=1e-8):
    """Leading eigenpairs of a symmetric PSD matrix, eigenvalues nonincreasing.

    AccuracyBudget keeps the smallest rank whose discarded eigenvalue mass fits
    the budget (total - energy_floor when a retained-mass floor is given).
    Returns (eigenvectors, eigenvalues) with deterministic vector signs.
    """
    q = np.asarray(q, dtype=float)
    if q.ndim != 2 or q.shape[0] != q.shape[1]:
        raise ValueError("expected a square matrix, got shape %s" % (q.shape,))
    asym = float(np.max(np.abs(q - q.T))) if q.size else 0.0
    scale = max(1.0, float(np.max(np.abs(q))) if q.size else 0.0)
    if asym > sym_tol * scale:
        raise ValueError("matrix is asymmetric beyond tolerance (%.3g)" % asym)
    qs = 0.5 * (q + q.T)
    w, v = np.linalg.eigh(qs)
    w = w[::-1].copy()
    v = v[:, ::-1].copy()
    w[w < 0.0] = 0.0  # PSD to tolerance
    r = _select_rank(w, crit, energy_floor, max_rank=int(w.size))
    v = v[:, :r].copy()
    v, _ = _fix_signs(v, None)
    return v, w[:r].copy()
