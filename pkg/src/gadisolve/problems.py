"""Deterministic constructors for the four benchmark problem families.

ex241   time-stepped parabolic system (K + (3-sqrt(3))/tau I) + i(K + (3+sqrt(3))/tau I)
ex242   complex Helmholtz system ((K + sigma1 I) + i sigma2 I), two-sided h^2 scaling
ex31    Lyapunov equation with tridiagonal A = W + iT and rank-one Q
ex421   Riccati equation with tridiagonal A, G = I/10 and rank-one Q

ex241/ex242 use the grid Laplacian K = I (x) V + V (x) I. The displayed
definition has V = tridiag(-1,2,-1)/h^2 (``stencil="h2"``); the reference
iteration counts for these families are only reproduced by the unscaled
stencil V = tridiag(-1,2,-1) (``stencil="unit"``), which the table presets
select. See the README reproduction notes.
"""
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .linalg import kron, load_matrix_coo, load_vector, save_matrix_coo, save_vector
from .matrixeq import LyapunovProblem, RiccatiProblem
from .splitting import ComplexSymSystem

__all__ = ["ProblemSpec", "gen_ex241", "gen_ex242", "gen_ex31", "gen_ex421",
           "save_system", "load_system"]

FAMILIES = ("ex241", "ex242", "ex31", "ex421")


def _tridiag(n, lo, diag, up):
    return sp.diags_array([np.full(n - 1, lo), np.full(n, diag), np.full(n - 1, up)],
                          offsets=[-1, 0, 1], format="csr")


def _grid_laplacian(m, stencil):
    """K = I (x) V + V (x) I on an m-by-m grid with h = 1/(m+1)."""
    h = 1.0 / (m + 1)
    V = _tridiag(m, -1.0, 2.0, -1.0)
    if stencil == "h2":
        V = V / h ** 2
    elif stencil != "unit":
        raise ValueError(f"stencil must be 'h2' or 'unit', got {stencil!r}")
    I = sp.eye_array(m, format="csr")
    return sp.csr_array(kron(I, V) + kron(V, I)), h


def gen_ex241(m, tau_mode="h", stencil="h2"):
    """Time-stepped parabolic family on an m-by-m grid (n = m^2).

    W = K + (3-sqrt(3))/tau I, T = K + (3+sqrt(3))/tau I, with tau = h or
    500h, and b_j = (1-i) j / (tau (j+1)^2) for j = 1..n.
    """
    if m < 1:
        raise ValueError("m must be at least 1")
    K, h = _grid_laplacian(m, stencil)
    if tau_mode == "h":
        tau = h
    elif tau_mode == "500h":
        tau = 500.0 * h
    else:
        raise ValueError(f"tau_mode must be 'h' or '500h', got {tau_mode!r}")
    n = m * m
    I = sp.eye_array(n, format="csr")
    W = sp.csr_array(K + ((3.0 - np.sqrt(3.0)) / tau) * I)
    T = sp.csr_array(K + ((3.0 + np.sqrt(3.0)) / tau) * I)
    j = np.arange(1, n + 1, dtype=float)
    b = (1.0 - 1.0j) * j / (tau * (j + 1.0) ** 2)
    return ComplexSymSystem(W, T, b)


def gen_ex242(m, sigma1=100.0, sigma2=100.0, stencil="h2"):
    """Complex Helmholtz family on an m-by-m grid (n = m^2).

    The unscaled system is ((K + sigma1 I) + i sigma2 I) x = (1+i) A 1; both
    sides are then scaled by h^2, which leaves the solution unchanged.
    """
    if m < 1:
        raise ValueError("m must be at least 1")
    K, h = _grid_laplacian(m, stencil)
    n = m * m
    I = sp.eye_array(n, format="csr")
    W_u = sp.csr_array(K + sigma1 * I)
    ones = np.ones(n)
    # b from the unscaled operator: (1+i) * (W_u + i sigma2 I) @ 1
    b_u = (1.0 + 1.0j) * (W_u @ ones + 1j * sigma2 * ones)
    W = sp.csr_array(h ** 2 * W_u)
    T = sp.csr_array((h ** 2 * sigma2) * I)
    return ComplexSymSystem(W, T, h ** 2 * b_u)


def gen_ex31(n, t):
    """Lyapunov family: A = (M + 2tN + cI) + i(M + 2tN - cI), c = 100/(n+1)^2.

    M = tridiag(-1,2,-1), N = tridiag(0.5,0,0.5), Q = C^T C with C the
    all-ones row, so Q is the rank-one all-ones matrix.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if not t > 0:
        raise ValueError("t must be positive")
    M = _tridiag(n, -1.0, 2.0, -1.0)
    N = _tridiag(n, 0.5, 0.0, 0.5)
    c = 100.0 / (n + 1) ** 2
    I = sp.eye_array(n, format="csr")
    W = sp.csr_array(M + (2.0 * t) * N + c * I)
    T = sp.csr_array(M + (2.0 * t) * N - c * I)
    Q = np.ones((n, n), dtype=complex)
    return LyapunovProblem(W, T, Q)


def gen_ex421(n):
    """Riccati family: W = tridiag(-1,2,-1), T = tridiag(0.1,0.5,0.1),
    G = I/10 and Q the rank-one all-ones matrix."""
    if n < 1:
        raise ValueError("n must be at least 1")
    W = sp.csr_array(_tridiag(n, -1.0, 2.0, -1.0))
    T = sp.csr_array(_tridiag(n, 0.1, 0.5, 0.1))
    G = 0.1 * np.eye(n, dtype=complex)
    Q = np.ones((n, n), dtype=complex)
    return RiccatiProblem(W, T, G, Q)


def save_system(stem, system):
    """Export a linear-system instance in the coordinate text formats."""
    save_matrix_coo(f"{stem}.W.coo", system.W)
    save_matrix_coo(f"{stem}.T.coo", system.T)
    save_vector(f"{stem}.b.vec", system.b)


def load_system(stem):
    W = sp.csr_array(load_matrix_coo(f"{stem}.W.coo").real)
    T = sp.csr_array(load_matrix_coo(f"{stem}.T.coo").real)
    return ComplexSymSystem(W, T, load_vector(f"{stem}.b.vec"))


@dataclass
class ProblemSpec:
    """Addressable benchmark instance: family name plus its parameters."""
    family: str
    m: int = None
    n: int = None
    tau_mode: str = "h"
    sigma1: float = 100.0
    sigma2: float = 100.0
    t: float = 0.01
    stencil: str = "h2"

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; expected one of {FAMILIES}")
        if self.family in ("ex241", "ex242") and (self.m is None or self.m < 1):
            raise ValueError(f"family {self.family} needs a grid size m >= 1")
        if self.family in ("ex31", "ex421") and (self.n is None or self.n < 1):
            raise ValueError(f"family {self.family} needs a matrix size n >= 1")

    @property
    def dimension(self):
        if self.family in ("ex241", "ex242"):
            return self.m * self.m
        return self.n

    def build(self):
        if self.family == "ex241":
            return gen_ex241(self.m, self.tau_mode, self.stencil)
        if self.family == "ex242":
            return gen_ex242(self.m, self.sigma1, self.sigma2, self.stencil)
        if self.family == "ex31":
            return gen_ex31(self.n, self.t)
        return gen_ex421(self.n)

    def label(self):
        if self.family == "ex241":
            return f"ex241(m={self.m},tau={self.tau_mode},stencil={self.stencil})"
        if self.family == "ex242":
            return (f"ex242(m={self.m},s1={self.sigma1:g},s2={self.sigma2:g},"
                    f"stencil={self.stencil})")
        if self.family == "ex31":
            return f"ex31(n={self.n},t={self.t:g})"
        return f"ex421(n={self.n})"
