"""Tests for the TT-tensor container, reconstruction, norm, and
orthogonalization."""

import numpy as np
import pytest

import ttkit as tk
from ttkit.tt import (
    TTTensor,
    orthogonalize_core,
    orthogonalize_up_to,
    sub_tt,
    tt_full,
    tt_norm,
    validate,
)

N_PROPERTY_CASES = 100


def rng_for(seed):
    return np.random.default_rng(np.random.Philox(seed))


def random_tt(rng, shape, rank):
    """Random TT with internal ranks clipped to the compression bounds."""
    n = len(shape)
    ranks = [1]
    for i in range(1, n):
        left = ranks[-1] * shape[i - 1]
        right = int(np.prod(shape[i:]))
        ranks.append(min(rank, left, right))
    ranks.append(1)
    cores = [rng.standard_normal((ranks[i], shape[i], ranks[i + 1]))
             for i in range(n)]
    return TTTensor(cores)


def dense_oracle(x):
    """Reconstruction by explicit summation of fiber outer products over the
    internal rank indices (Def.-style oracle, no chained contraction)."""
    import itertools

    shape = x.shape
    out = np.zeros(shape)
    for rs in itertools.product(*[range(r) for r in x.ranks[1:-1]]):
        piece = None
        for i in range(len(shape)):
            left = 0 if i == 0 else rs[i - 1]
            right = 0 if i == len(shape) - 1 else rs[i]
            f = x.cores[i][left, :, right]
            piece = f if piece is None else np.multiply.outer(piece, f)
        out += piece
    return out


# --------------------------------------------------------------------- #
# tt_full
# --------------------------------------------------------------------- #


class TestTtFull:
    def test_single_core_is_vector(self):
        v = rng_for(0).standard_normal(5)
        x = TTTensor([v.reshape(1, 5, 1)])
        assert np.allclose(tt_full(x), v)

    def test_rank_one_outer_product(self):
        rng = rng_for(1)
        a, b, c = rng.standard_normal(3), rng.standard_normal(4), rng.standard_normal(2)
        x = TTTensor([a.reshape(1, 3, 1), b.reshape(1, 4, 1), c.reshape(1, 2, 1)])
        assert np.allclose(tt_full(x), np.multiply.outer(np.multiply.outer(a, b), c))

    def test_fiber_summation_oracle(self):
        rng = rng_for(2)
        x = TTTensor([rng.standard_normal((1, 4, 2)),
                      rng.standard_normal((2, 5, 3)),
                      rng.standard_normal((3, 6, 1))])
        assert np.allclose(tt_full(x), dense_oracle(x))

    def test_oracle_property(self):
        rng = rng_for(3)
        for case in range(N_PROPERTY_CASES):
            order = int(rng.integers(2, 5))
            shape = tuple(int(rng.integers(2, 4)) for _ in range(order))
            x = random_tt(rng, shape, int(rng.integers(1, 4)))
            assert np.allclose(tt_full(x), dense_oracle(x))


# --------------------------------------------------------------------- #
# tt_norm
# --------------------------------------------------------------------- #


class TestTtNorm:
    def test_rank_one_unit_vectors(self):
        e = lambda n: np.eye(n)[0].reshape(1, n, 1)
        x = TTTensor([e(3), e(4), e(2)])
        assert abs(tt_norm(x) - 1.0) <= 1e-12

    def test_matches_dense(self):
        rng = rng_for(4)
        for case in range(N_PROPERTY_CASES):
            order = int(rng.integers(2, 5))
            shape = tuple(int(rng.integers(2, 5)) for _ in range(order))
            x = random_tt(rng, shape, int(rng.integers(1, 4)))
            n2 = float(np.sum(tt_full(x) ** 2))
            assert abs(tt_norm(x) - n2) <= 1e-10 * max(n2, 1.0)

    def test_core_scaling(self):
        rng = rng_for(5)
        x = random_tt(rng, (3, 4, 2), 2)
        base = tt_norm(x)
        cores = x.copy_cores()
        cores[1] = 2.5 * cores[1]
        assert abs(tt_norm(TTTensor(cores)) - 2.5**2 * base) <= 1e-9 * base


# --------------------------------------------------------------------- #
# orthogonalization
# --------------------------------------------------------------------- #


class TestOrthogonalizeCore:
    def test_already_orthogonal_left(self):
        rng = rng_for(6)
        x = tk.tt_svd(rng.standard_normal((3, 4, 2)), tk.AccuracyBudget(0.0))
        x = orthogonalize_up_to(x, len(x) - 1, "left")
        ref = tt_full(x)
        y = orthogonalize_core(x, 0, "left")
        assert np.allclose(tt_full(y), ref, atol=1e-10)

    def test_two_core_left(self):
        rng = rng_for(7)
        x = TTTensor([rng.standard_normal((1, 4, 3)), rng.standard_normal((3, 5, 1))])
        ref = tt_full(x)
        y = orthogonalize_core(x, 0, "left")
        m = y.cores[0].reshape(4, 3)
        assert np.allclose(m.T @ m, np.eye(3), atol=1e-10)
        assert np.allclose(tt_full(y), ref, atol=1e-10 * np.abs(ref).max())

    def test_chained_left_norm_in_last_core(self):
        rng = rng_for(8)
        x = random_tt(rng, (3, 4, 2, 3), 2)
        ref = float(np.sum(tt_full(x) ** 2))
        for n in range(len(x) - 1):
            x = orthogonalize_core(x, n, "left")
        last = float(np.sum(x.cores[-1] ** 2))
        assert abs(last - ref) <= 1e-10 * ref

    def test_bad_index(self):
        x = random_tt(rng_for(9), (3, 4), 2)
        with pytest.raises(IndexError):
            orthogonalize_core(x, len(x) - 1, "left")
        with pytest.raises(IndexError):
            orthogonalize_core(x, 0, "right")


class TestOrthogonalizeUpTo:
    def test_left_to_first_is_noop(self):
        x = random_tt(rng_for(10), (3, 4, 2), 2)
        y = orthogonalize_up_to(x, 0, "left")
        assert all(np.array_equal(a, b) for a, b in zip(x.cores, y.cores))

    def test_reconstruction_invariant(self):
        rng = rng_for(11)
        for case in range(N_PROPERTY_CASES):
            order = int(rng.integers(2, 6))
            shape = tuple(int(rng.integers(2, 4)) for _ in range(order))
            x = random_tt(rng, shape, int(rng.integers(1, 4)))
            ref = tt_full(x)
            scale = max(np.abs(ref).max(), 1.0)
            n = int(rng.integers(0, order))
            side = "left" if rng.integers(2) else "right"
            y = orthogonalize_up_to(x, n, side)
            assert np.allclose(tt_full(y), ref, atol=1e-10 * scale)

    def test_norm_concentrates_in_marked_core(self):
        rng = rng_for(12)
        for case in range(25):
            order = int(rng.integers(2, 6))
            shape = tuple(int(rng.integers(2, 4)) for _ in range(order))
            x = random_tt(rng, shape, int(rng.integers(1, 4)))
            ref = float(np.sum(tt_full(x) ** 2))
            n = int(rng.integers(0, order))
            y = orthogonalize_up_to(orthogonalize_up_to(x, n, "left"), n, "right")
            core_norm = float(np.sum(y.cores[n] ** 2))
            assert abs(core_norm - ref) <= 1e-10 * max(ref, 1.0)

    def test_marker_residuals(self):
        rng = rng_for(13)
        x = random_tt(rng, (3, 2, 4, 2), 3)
        y = orthogonalize_up_to(x, 2, "left")
        for k in range(2):
            m = y.cores[k].reshape(-1, y.cores[k].shape[2])
            assert np.abs(m.T @ m - np.eye(m.shape[1])).max() <= 1e-10
        z = orthogonalize_up_to(y, 2, "right")
        m = z.cores[3].reshape(z.cores[3].shape[0], -1)
        assert np.abs(m @ m.T - np.eye(m.shape[0])).max() <= 1e-10


# --------------------------------------------------------------------- #
# sub_tt / validate
# --------------------------------------------------------------------- #


class TestSubTt:
    def test_full_range(self):
        x = random_tt(rng_for(14), (3, 4, 2), 2)
        s = sub_tt(x, 0, len(x) - 1)
        assert s.left == ()
        assert s.right == ()
        assert len(s.block) == len(x)

    def test_single_core(self):
        x = random_tt(rng_for(15), (3, 4, 2), 2)
        s = sub_tt(x, 1, 1)
        assert len(s.block) == 1
        assert np.array_equal(s.block[0], x.cores[1])

    def test_middle_split_reproduces_dense(self):
        rng = rng_for(16)
        x = random_tt(rng, (3, 2, 4, 2), 3)
        s = sub_tt(x, 1, 2)
        prod = s.dense_left()
        for c in s.block:
            prod = np.tensordot(prod, c, axes=([-1], [0]))
        prod = np.tensordot(prod, s.dense_right(), axes=([-1], [0]))
        assert np.allclose(prod.reshape(x.shape), tt_full(x), atol=1e-12)


class TestValidate:
    def test_valid_is_empty(self):
        x = random_tt(rng_for(17), (3, 4, 2), 2)
        assert validate(x) == []

    def test_rank_mismatch_reported(self):
        rng = rng_for(18)
        cores = [rng.standard_normal((1, 3, 2)), rng.standard_normal((3, 4, 1))]
        issues = validate(cores)
        assert any("rank mismatch" in msg for msg in issues)

    def test_rank_bound_warning(self):
        rng = rng_for(19)
        cores = [rng.standard_normal((1, 2, 5)), rng.standard_normal((5, 2, 1))]
        issues = validate(TTTensor(cores))
        assert any("bound" in msg for msg in issues)

    def test_false_ortho_claim_reported(self):
        rng = rng_for(20)
        cores = [rng.standard_normal((1, 3, 2)), rng.standard_normal((2, 4, 1))]
        x = TTTensor(cores, lo=1, ro=0)
        issues = validate(x)
        assert any("orthogonal" in msg for msg in issues)
