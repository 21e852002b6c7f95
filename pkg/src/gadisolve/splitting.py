"""Stationary splitting iterations for complex symmetric systems (W + iT)x = b.

Six methods share one two-half-step driver: GADI, HSS, MHSS, PMHSS, CRI and
TSCSP. Each sweep solves two shifted subsystems; in "exact" inner mode the
coefficients are factorized once per solve, in "iterative" mode they are
solved by CG (Hermitian positive definite coefficients) or COCG (complex
symmetric coefficients) to a configurable tolerance.

A real-arithmetic GADI variant for A = W + T is provided separately
(:func:`step_gadi_real` / :func:`run_gadi_real`).
"""
import time
from dataclasses import dataclass

import numpy as np
import scipy.linalg as sla
import scipy.sparse as sp

from .linalg import DirectSolver, InnerSolverError, NotPositiveDefiniteError, cg_hpd, cocg_sym

__all__ = [
    "METHODS", "ComplexSymSystem", "SplitParams", "SolveConfig", "SolveReport",
    "step_gadi", "step_hss", "step_mhss", "step_pmhss", "step_cri", "step_tscsp",
    "step_gadi_real", "run_stationary", "run_gadi_real", "default_alpha",
]

METHODS = ("gadi", "gadi_real", "hss", "mhss", "pmhss", "cri", "tscsp")

# exact-mode factorization is the default up to this dimension
EXACT_INNER_LIMIT = 4096


def _is_exactly_symmetric(M):
    if sp.issparse(M):
        D = (M - M.T).tocoo()
        return D.nnz == 0 or np.abs(D.data).max() == 0.0
    M = np.asarray(M)
    return np.array_equal(M, M.T)


def _eye_like(M, n):
    return sp.eye_array(n, format="csr") if sp.issparse(M) else np.eye(n)


@dataclass
class ComplexSymSystem:
    """The triple (W, T, b) defining (W + iT) x = b.

    W and T are real symmetric (stored sparse or dense); W is assumed positive
    definite and T positive semi-definite, which is not enforced at
    construction (see :meth:`check_definiteness`) because the Kronecker-lifted
    systems used for matrix equations have indefinite T.
    """
    W: object
    T: object
    b: np.ndarray

    def __post_init__(self):
        nW = self.W.shape
        nT = self.T.shape
        if nW[0] != nW[1] or nT[0] != nT[1] or nW[0] != nT[0]:
            raise ValueError(f"W and T must be square with equal size, got {nW} and {nT}")
        self.b = np.asarray(self.b, dtype=complex)
        if self.b.shape != (nW[0],):
            raise ValueError(f"b has shape {self.b.shape}, expected ({nW[0]},)")
        if not _is_exactly_symmetric(self.W):
            raise ValueError("W is not symmetric")
        if not _is_exactly_symmetric(self.T):
            raise ValueError("T is not symmetric")

    @property
    def n(self):
        return self.W.shape[0]

    def matvec(self, x):
        """A x = W x + i T x."""
        return self.W @ x + 1j * (self.T @ x)

    def dense_matrix(self):
        W = self.W.toarray() if sp.issparse(self.W) else np.asarray(self.W)
        T = self.T.toarray() if sp.issparse(self.T) else np.asarray(self.T)
        return W + 1j * T

    def check_definiteness(self, limit=1000):
        """Eigenvalue check that W is SPD and T is PSD (small systems only)."""
        if self.n > limit:
            raise ValueError(f"definiteness check limited to n <= {limit}")
        W = self.W.toarray() if sp.issparse(self.W) else self.W
        T = self.T.toarray() if sp.issparse(self.T) else self.T
        wmin = sla.eigvalsh(W)[0]
        tmin = sla.eigvalsh(T)[0]
        if wmin <= 0:
            raise NotPositiveDefiniteError(f"W has minimum eigenvalue {wmin:.3e} <= 0")
        if tmin < -1e-12 * max(1.0, abs(sla.eigvalsh(T)[-1])):
            raise NotPositiveDefiniteError(f"T has minimum eigenvalue {tmin:.3e} < 0")


@dataclass
class SplitParams:
    """Iteration parameters: method tag, shift alpha, relaxation omega, PMHSS V.

    `omega` is used by the GADI variants only; `V` only by PMHSS (None selects
    V = W).
    """
    method: str
    alpha: float
    omega: float = 0.01
    V: object = None

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}; expected one of {METHODS}")
        if not self.alpha > 0:
            raise ValueError(f"alpha must be positive, got {self.alpha}")
        if not 0 <= self.omega < 2:
            raise ValueError(f"omega must lie in [0, 2), got {self.omega}")


@dataclass
class SolveConfig:
    """Driver configuration: outer tolerance and inner-solve mode.

    inner: "exact" (direct factorization), "iterative" (CG/COCG), or "auto"
    (exact up to n = 4096). In iterative mode `inner_eta` / `inner_tau` are
    the relative tolerances of the two half-step solves; leaving them None
    selects the proportional rule 1e-2 * (current outer residual), floored
    at 1e-14.
    """
    tol: float = 1e-6
    max_outer: int = 1000
    inner: str = "auto"
    inner_eta: float = None
    inner_tau: float = None
    max_inner: int = None
    x0: np.ndarray = None

    def __post_init__(self):
        if not self.tol > 0:
            raise ValueError("tol must be positive")
        if self.max_outer < 1:
            raise ValueError("max_outer must be at least 1")
        if self.inner not in ("auto", "exact", "iterative"):
            raise ValueError(f"inner must be 'auto', 'exact' or 'iterative', got {self.inner!r}")

    def resolved_inner(self, n):
        if self.inner == "auto":
            return "exact" if n <= EXACT_INNER_LIMIT else "iterative"
        return self.inner


@dataclass
class SolveReport:
    """Outcome of one stationary solve.

    residual_history holds (iteration, RES) pairs including iteration 0, so
    its length is iterations + 1. inner_iteration_total counts Krylov steps
    and is 0 in exact inner mode.
    """
    converged: bool
    iterations: int
    final_res: float
    residual_history: list
    wall_time: float
    inner_iteration_total: int = 0


def _check_spd_param(V, n, what):
    if V.shape != (n, n):
        raise ValueError(f"{what} must be {n}x{n}, got {V.shape}")
    if not _is_exactly_symmetric(V):
        raise NotPositiveDefiniteError(f"{what} is not symmetric")
    if n <= 1024:
        Vd = V.toarray() if sp.issparse(V) else np.asarray(V)
        try:
            sla.cho_factor(Vd)
        except sla.LinAlgError:
            raise NotPositiveDefiniteError(f"{what} is not positive definite") from None


class _HalfStep:
    """One shifted subsystem: coefficient matrix plus the solver for it."""

    def __init__(self, M, kind, mode, max_inner):
        self.kind = kind  # "hpd" or "csym"
        self.mode = mode
        self.max_inner = max_inner
        if mode == "exact":
            self.solver = DirectSolver(M)
            self.op = None
        else:
            self.solver = None
            self.op = (lambda v: M @ v)

    def solve(self, rhs, rel_tol):
        if self.mode == "exact":
            return self.solver.solve(rhs), 0
        if self.kind == "hpd":
            return cg_hpd(self.op, rhs, rel_tol=rel_tol, max_it=self.max_inner)
        return cocg_sym(self.op, rhs, rel_tol=rel_tol, max_it=self.max_inner)


class _Stepper:
    """Prefactored two-half-step sweep for one (system, params) pair."""

    def __init__(self, system, params, config):
        W, T, b = system.W, system.T, system.b
        n = system.n
        a, om = params.alpha, params.omega
        I = _eye_like(W, n)
        method = params.method
        mode = config.resolved_inner(n)
        max_inner = config.max_inner if config.max_inner is not None else 4 * n + 100

        if method == "gadi":
            M1, k1 = a * I + W, "hpd"
            M2, k2 = (a * I).astype(complex) + 1j * T, "csym"
            rhs1 = lambda x: a * x - 1j * (T @ x) + b
            rhs2 = lambda x, xh: 1j * (T @ x) - (1 - om) * a * x + (2 - om) * a * xh
        elif method == "hss":
            M1, k1 = a * I + W, "hpd"
            M2, k2 = (a * I).astype(complex) + 1j * T, "csym"
            rhs1 = lambda x: a * x - 1j * (T @ x) + b
            rhs2 = lambda x, xh: a * xh - W @ xh + b
        elif method == "mhss":
            M1, k1 = a * I + W, "hpd"
            M2, k2 = a * I + T, "hpd"
            rhs1 = lambda x: a * x - 1j * (T @ x) + b
            rhs2 = lambda x, xh: a * xh + 1j * (W @ xh) - 1j * b
        elif method == "pmhss":
            V = params.V if params.V is not None else W
            _check_spd_param(V, n, "PMHSS preconditioner V")
            M1, k1 = a * V + W, "hpd"
            M2, k2 = a * V + T, "hpd"
            rhs1 = lambda x: a * (V @ x) - 1j * (T @ x) + b
            rhs2 = lambda x, xh: a * (V @ xh) + 1j * (W @ xh) - 1j * b
        elif method == "cri":
            M1, k1 = a * T + W, "hpd"
            M2, k2 = a * W + T, "hpd"
            rhs1 = lambda x: (a - 1j) * (T @ x) + b
            rhs2 = lambda x, xh: (a + 1j) * (W @ xh) - 1j * b
        elif method == "tscsp":
            M1, k1 = a * W + T, "hpd"
            M2, k2 = a * T + W, "hpd"
            rhs1 = lambda x: 1j * (W @ x - a * (T @ x)) + (a - 1j) * b
            rhs2 = lambda x, xh: 1j * (a * (W @ xh) - T @ xh) + (1 - 1j * a) * b
        else:
            raise ValueError(f"method {method!r} is not a complex-system method")

        self.half1 = _HalfStep(M1, k1, mode, max_inner)
        self.half2 = _HalfStep(M2, k2, mode, max_inner)
        self.rhs1, self.rhs2 = rhs1, rhs2
        self.mode = mode

    def step(self, x, eta=1e-12, tau=1e-12):
        """One full sweep; returns (x_next, inner_iterations)."""
        try:
            xh, n1 = self.half1.solve(self.rhs1(x), eta)
        except InnerSolverError as err:
            err.half_step = "first half-step"
            raise
        try:
            xn, n2 = self.half2.solve(self.rhs2(x, xh), tau)
        except InnerSolverError as err:
            err.half_step = "second half-step"
            raise
        return xn, n1 + n2


def _inner_tols(config, current_res):
    floor = 1e-14
    eta = config.inner_eta if config.inner_eta is not None else max(1e-2 * current_res, floor)
    tau = config.inner_tau if config.inner_tau is not None else max(1e-2 * current_res, floor)
    return eta, tau


def _one_step(method, system, params, x, config):
    if params.method != method:
        params = SplitParams(method, params.alpha, params.omega, params.V)
    config = config or SolveConfig()
    x = np.asarray(x, dtype=complex)
    stepper = _Stepper(system, params, config)
    if config.resolved_inner(system.n) == "exact":
        eta = tau = 0.0
    else:
        nb = np.linalg.norm(system.b)
        res = np.linalg.norm(system.b - system.matvec(x)) / nb if nb > 0 else 1.0
        eta, tau = _inner_tols(config, res)
    xn, _ = stepper.step(x, eta, tau)
    return xn


def step_gadi(system, params, x, config=None):
    """One GADI sweep: (aI+W) x_half = (aI-iT) x + b, then
    (aI+iT) x_next = (iT-(1-w)aI) x + (2-w)a x_half."""
    return _one_step("gadi", system, params, x, config)


def step_hss(system, params, x, config=None):
    """One HSS sweep: (aI+W) x_half = (aI-iT) x + b, then
    (aI+iT) x_next = (aI-W) x_half + b."""
    return _one_step("hss", system, params, x, config)


def step_mhss(system, params, x, config=None):
    """One MHSS sweep: (aI+W) x_half = (aI-iT) x + b, then
    (aI+T) x_next = (aI+iW) x_half - i b."""
    return _one_step("mhss", system, params, x, config)


def step_pmhss(system, params, x, config=None):
    """One PMHSS sweep with SPD preconditioner V (default V = W):
    (aV+W) x_half = (aV-iT) x + b, then (aV+T) x_next = (aV+iW) x_half - i b."""
    return _one_step("pmhss", system, params, x, config)


def step_cri(system, params, x, config=None):
    """One CRI sweep: (aT+W) x_half = (a-i) T x + b, then
    (aW+T) x_next = (a+i) W x_half - i b."""
    return _one_step("cri", system, params, x, config)


def step_tscsp(system, params, x, config=None):
    """One TSCSP sweep: (aW+T) x_half = i(W-aT) x + (a-i) b, then
    (aT+W) x_next = i(aW-T) x_half + (1-ia) b."""
    return _one_step("tscsp", system, params, x, config)


def run_stationary(system, params, config=None):
    """Iterate one splitting method until RES = ||b - A x||/||b|| <= tol.

    Returns ``(x, SolveReport)``. Reaching max_outer is reported via
    ``converged=False``, not an exception; an inner-solver failure raises
    InnerSolverError with the partial report attached as ``err.report``.
    """
    if params.method == "gadi_real":
        raise ValueError("gadi_real operates on real systems; use run_gadi_real")
    config = config or SolveConfig()
    t0 = time.perf_counter()
    nb = np.linalg.norm(system.b)
    if nb == 0.0:
        raise ValueError("b = 0: relative residual is undefined")
    x = np.zeros(system.n, dtype=complex) if config.x0 is None else np.asarray(config.x0, dtype=complex).copy()
    res = float(np.linalg.norm(system.b - system.matvec(x)) / nb)
    history = [(0, res)]
    inner_total = 0
    it = 0
    stepper = _Stepper(system, params, config) if res > config.tol else None
    while res > config.tol and it < config.max_outer:
        eta, tau = _inner_tols(config, res)
        try:
            x, ninner = stepper.step(x, eta, tau)
        except InnerSolverError as err:
            err.report = SolveReport(False, it, res, history, time.perf_counter() - t0, inner_total)
            raise
        inner_total += ninner
        it += 1
        res = float(np.linalg.norm(system.b - system.matvec(x)) / nb)
        history.append((it, res))
    report = SolveReport(
        converged=res <= config.tol,
        iterations=it,
        final_res=res,
        residual_history=history,
        wall_time=time.perf_counter() - t0,
        inner_iteration_total=inner_total,
    )
    return x, report


# -- real-arithmetic GADI for A = W + T --------------------------------------

def _real_stepper_parts(W, T, b, params, config, n):
    a, om = params.alpha, params.omega
    I = _eye_like(W, n)
    mode = config.resolved_inner(n)
    max_inner = config.max_inner if config.max_inner is not None else 4 * n + 100
    h1 = _HalfStep(a * I + W, "hpd", mode, max_inner)
    h2 = _HalfStep(a * I + T, "hpd", mode, max_inner)
    rhs1 = lambda x: a * x - T @ x + b
    rhs2 = lambda x, xh: T @ x - (1 - om) * a * x + (2 - om) * a * xh
    return h1, h2, rhs1, rhs2


def step_gadi_real(W, T, b, params, x, config=None):
    """One real GADI sweep for A = W + T: (aI+W) x_half = (aI-T) x + b, then
    (aI+T) x_next = (T-(1-w)aI) x + (2-w)a x_half."""
    config = config or SolveConfig()
    b = np.asarray(b, dtype=float)
    x = np.asarray(x, dtype=float)
    h1, h2, rhs1, rhs2 = _real_stepper_parts(W, T, b, params, config, b.shape[0])
    if config.resolved_inner(b.shape[0]) == "exact":
        eta = tau = 0.0
    else:
        nb = np.linalg.norm(b)
        res = np.linalg.norm(b - (W @ x + T @ x)) / nb if nb > 0 else 1.0
        eta, tau = _inner_tols(config, res)
    xh, _ = h1.solve(rhs1(x), eta)
    xn, _ = h2.solve(rhs2(x, xh), tau)
    return np.real(xn)


def run_gadi_real(W, T, b, params, config=None):
    """Drive :func:`step_gadi_real` to RES <= tol; returns (x, SolveReport)."""
    config = config or SolveConfig()
    t0 = time.perf_counter()
    b = np.asarray(b, dtype=float)
    n = b.shape[0]
    nb = np.linalg.norm(b)
    if nb == 0.0:
        raise ValueError("b = 0: relative residual is undefined")
    x = np.zeros(n) if config.x0 is None else np.asarray(config.x0, dtype=float).copy()
    amat = lambda v: W @ v + T @ v
    res = float(np.linalg.norm(b - amat(x)) / nb)
    history = [(0, res)]
    h1, h2, rhs1, rhs2 = _real_stepper_parts(W, T, b, params, config, n)
    it = 0
    inner_total = 0
    while res > config.tol and it < config.max_outer:
        eta, tau = _inner_tols(config, res)
        xh, n1 = h1.solve(rhs1(x), eta)
        x, n2 = h2.solve(rhs2(x, xh), tau)
        x = np.real(x)
        inner_total += n1 + n2
        it += 1
        res = float(np.linalg.norm(b - amat(x)) / nb)
        history.append((it, res))
    report = SolveReport(res <= config.tol, it, res, history,
                         time.perf_counter() - t0, inner_total)
    return x, report


def default_alpha(system, method):
    """Method-specific default shift.

    GADI, HSS and MHSS use the bound-minimizing sqrt(gamma_min*gamma_max) of
    W; PMHSS, CRI and TSCSP use the scale-free choice alpha = 1.
    """
    from .spectral import eig_extremes_spd, optimal_alpha
    if method in ("gadi", "gadi_real", "hss", "mhss"):
        return optimal_alpha(eig_extremes_spd(system.W))
    if method in ("pmhss", "cri", "tscsp"):
        return 1.0
    raise ValueError(f"unknown method {method!r}")
