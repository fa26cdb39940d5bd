"""Tests for TT-SVD, TT rounding, and the alternating Tucker-2 solver."""

import numpy as np
import pytest

import ttkit as tk
from ttkit.decomp import tt_round, tt_svd, tucker2
from ttkit.tt import TTTensor, tt_full

N_PROPERTY_CASES = 100


def rng_for(seed):
    return np.random.default_rng(np.random.Philox(seed))


def random_tt(rng, shape, rank):
    n = len(shape)
    ranks = [1]
    for i in range(1, n):
        ranks.append(min(rank, ranks[-1] * shape[i - 1], int(np.prod(shape[i:]))))
    ranks.append(1)
    return TTTensor([rng.standard_normal((ranks[i], shape[i], ranks[i + 1]))
                     for i in range(n)])


def rel_err_sq(y, x):
    return float(np.sum((y - tt_full(x)) ** 2) / np.sum(y**2))


def damped_sinusoid(length, f=10.0, f_s=100.0, phase=np.pi / 3):
    t = np.arange(length, dtype=float)
    return np.exp(-5.0 * t / length) * np.sin(2 * np.pi * f / f_s * t + phase)


# --------------------------------------------------------------------- #
# tt_svd
# --------------------------------------------------------------------- #


class TestTtSvd:
    def test_construct_then_decompose(self):
        rng = rng_for(0)
        truth = random_tt(rng, (4, 3, 5, 3), 2)
        y = tt_full(truth)
        x = tt_svd(y, tk.AccuracyBudget(1e-12))
        assert all(r <= t for r, t in zip(x.ranks, truth.ranks))
        assert rel_err_sq(y, x) <= 1e-10

    def test_rank_one(self):
        rng = rng_for(1)
        a, b, c = rng.standard_normal(3), rng.standard_normal(4), rng.standard_normal(5)
        y = np.multiply.outer(np.multiply.outer(a, b), c)
        x = tt_svd(y, tk.AccuracyBudget(1e-12))
        assert x.ranks == (1, 1, 1, 1)
        assert rel_err_sq(y, x) <= 1e-12

    def test_damped_sinusoid_rank_two(self):
        y = damped_sinusoid(2**10).reshape((4,) + (2,) * 6 + (4,), order="F")
        x = tt_svd(y, tk.AccuracyBudget(1e-16))
        assert x.ranks == (1,) + (2,) * 7 + (1,)

    def test_error_bounded_by_logged_discards(self):
        rng = rng_for(2)
        for case in range(N_PROPERTY_CASES):
            order = int(rng.integers(2, 6))
            shape = tuple(int(rng.integers(2, 4)) for _ in range(order))
            y = rng.standard_normal(shape)
            log = []
            x = tt_svd(y, tk.AccuracyBudget(float(rng.uniform(0.01, 0.5))), log=log)
            err = float(np.sum((y - tt_full(x)) ** 2))
            budget = sum(step["discarded"] for step in log)
            assert err <= budget + 1e-10 * np.sum(y**2)

    def test_lossless_at_zero_budget(self):
        rng = rng_for(3)
        y = rng.standard_normal((3, 4, 2, 3))
        x = tt_svd(y, tk.AccuracyBudget(0.0))
        assert rel_err_sq(y, x) <= 1e-10
        assert tk.validate(x) == []

    def test_ortho_marker_right_of_chain(self):
        y = rng_for(4).standard_normal((3, 4, 2))
        x = tt_svd(y, tk.FixedRanks((2,)))
        assert x.lo >= len(x) - 1

    def test_rank_clamp_warns(self):
        y = rng_for(5).standard_normal((2, 3, 2))
        with pytest.warns(UserWarning):
            x = tt_svd(y, tk.FixedRanks((9, 9)))
        assert x.ranks == (1, 2, 2, 1)


# --------------------------------------------------------------------- #
# tt_round
# --------------------------------------------------------------------- #


class TestTtRound:
    def test_lossless_round(self):
        x = random_tt(rng_for(6), (3, 4, 2, 3), 3)
        y = tt_full(x)
        r = tt_round(x, tk.AccuracyBudget(0.0))
        shape = x.shape
        for i in range(1, len(shape)):
            bound = min(int(np.prod(shape[:i])), int(np.prod(shape[i:])))
            assert r.ranks[i] <= bound
        assert rel_err_sq(y, r) <= 1e-10

    def test_zero_padding_removed(self):
        rng = rng_for(7)
        x = random_tt(rng, (3, 4, 3), 2)
        y = tt_full(x)
        padded = []
        for i, c in enumerate(x.cores):
            r0, n, r1 = c.shape
            p0 = r0 + (2 if i > 0 else 0)
            p1 = r1 + (2 if i < len(x) - 1 else 0)
            big = np.zeros((p0, n, p1))
            big[:r0, :, :r1] = c
            padded.append(big)
        inflated = TTTensor(padded)
        r = tt_round(inflated, tk.AccuracyBudget(1e-14))
        assert all(a <= b for a, b in zip(r.ranks, x.ranks))
        assert rel_err_sq(y, r) <= 1e-10

    def test_fixed_ranks_identity(self):
        x = random_tt(rng_for(8), (3, 4, 2), 2)
        y = tt_full(x)
        r = tt_round(x, tk.FixedRanks(x.ranks[1:-1]))
        assert r.ranks == x.ranks
        assert rel_err_sq(y, r) <= 1e-12


# --------------------------------------------------------------------- #
# tucker2
# --------------------------------------------------------------------- #


class TestTucker2:
    def test_construct_then_decompose(self):
        rng = rng_for(9)
        a = np.linalg.qr(rng.standard_normal((6, 2)))[0]
        b = np.linalg.qr(rng.standard_normal((7, 2)))[0].T
        g = rng.standard_normal((2, 5, 2))
        y = np.einsum("ia,ajb,bk->ijk", a, g, b)
        res = tucker2(y, tk.FixedRanks((2, 2)))
        assert res.error <= 1e-10 * np.sum(y**2)
        assert np.allclose(res.x1.T @ res.x1, np.eye(2), atol=1e-10)
        assert np.allclose(res.x3 @ res.x3.T, np.eye(2), atol=1e-10)

    def test_full_rank_is_exact(self):
        y = rng_for(10).standard_normal((4, 5, 3))
        res = tucker2(y, tk.FixedRanks((4, 3)))
        assert res.error <= 1e-10 * np.sum(y**2)

    def test_full_budget_collapses_ranks(self):
        y = rng_for(11).standard_normal((4, 5, 3))
        res = tucker2(y, tk.AccuracyBudget(float(np.sum(y**2))))
        assert res.x1.shape[1] == 1
        assert res.x3.shape[0] == 1
        assert res.error <= np.sum(y**2) * (1 + 1e-12)

    def test_monotone_error_log(self):
        rng = rng_for(12)
        for case in range(N_PROPERTY_CASES):
            y = rng.standard_normal((int(rng.integers(3, 7)),
                                     int(rng.integers(2, 6)),
                                     int(rng.integers(3, 7))))
            r1 = int(rng.integers(1, y.shape[0]))
            r3 = int(rng.integers(1, y.shape[2]))
            res = tucker2(y, tk.FixedRanks((r1, r3)))
            log = res.error_log
            scale = max(log) if log else 1.0
            assert all(log[i + 1] <= log[i] + 1e-12 * scale
                       for i in range(len(log) - 1))

    def test_orthogonal_invariance(self):
        rng = rng_for(13)
        y = rng.standard_normal((5, 4, 6))
        q = np.linalg.qr(rng.standard_normal((5, 5)))[0]
        p = np.linalg.qr(rng.standard_normal((6, 6)))[0]
        y2 = np.einsum("qi,ijk,kp->qjp", q, y, p)
        r1 = tucker2(y, tk.FixedRanks((2, 2)), max_iters=40)
        r2 = tucker2(y2, tk.FixedRanks((2, 2)), max_iters=40)
        n = min(len(r1.error_log), len(r2.error_log))
        assert np.allclose(r1.error_log[:n], r2.error_log[:n],
                           atol=1e-10 * np.sum(y**2))

    def test_core_is_projection_of_data(self):
        y = rng_for(14).standard_normal((5, 4, 6))
        res = tucker2(y, tk.FixedRanks((3, 2)))
        core = np.einsum("ia,ijk,bk->ajb", res.x1, y, res.x3)
        assert np.allclose(core, res.core, atol=1e-10)

    def test_warm_start_not_worse_than_given_subspaces(self):
        rng = rng_for(15)
        y = rng.standard_normal((6, 4, 6))
        cold = tucker2(y, tk.FixedRanks((2, 2)), max_iters=1)
        warm = tucker2(y, tk.FixedRanks((2, 2)), max_iters=1,
                       init=(cold.x1, cold.x3))
        assert warm.error <= cold.error + 1e-10 * np.sum(y**2)

    def test_rejects_non_order3(self):
        with pytest.raises(ValueError):
            tucker2(np.zeros((2, 2)), tk.FixedRanks((1, 1)))
