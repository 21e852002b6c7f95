"""Shared builders for randomized test instances and dense reference solves."""
import numpy as np

from gadisolve import ComplexSymSystem


def random_orthogonal(rng, n):
    Q, _ = np.linalg.qr(rng.standard_normal((n, n)))
    return Q


def symmetrize(M):
    """Exact symmetry: averaging commutes entrywise in floating point."""
    return (M + M.T) / 2.0


def random_spd(rng, n, lo=0.5, hi=5.0):
    Q = random_orthogonal(rng, n)
    lam = np.exp(rng.uniform(np.log(lo), np.log(hi), n))
    return symmetrize((Q * lam) @ Q.T)


def random_psd(rng, n, lo=0.0, hi=3.0, zero_one=False):
    Q = random_orthogonal(rng, n)
    lam = rng.uniform(lo, hi, n)
    if zero_one and n > 1:
        lam[0] = 0.0
    return symmetrize((Q * lam) @ Q.T)


def random_system(rng, n, w_range=(0.5, 5.0), t_range=(0.3, 3.0), t_zero=False):
    """Random instance with W SPD and T symmetric positive (semi-)definite."""
    W = random_spd(rng, n, *w_range)
    T = random_psd(rng, n, *t_range, zero_one=t_zero)
    b = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return ComplexSymSystem(W, T, b)


def dense_solution(system):
    return np.linalg.solve(system.dense_matrix(), system.b)


def match_multisets(a, b):
    """Greatest pairwise distance under the optimal matching of two complex
    multisets (linear assignment on the modulus of differences)."""
    from scipy.optimize import linear_sum_assignment
    a = np.asarray(a)
    b = np.asarray(b)
    assert a.shape == b.shape
    cost = np.abs(a[:, None] - b[None, :])
    rows, cols = linear_sum_assignment(cost)
    return float(cost[rows, cols].max())
