"""Core linear-algebra primitives shared by every solver in the package.

Dense matrices are numpy arrays, sparse matrices are scipy.sparse arrays
(CSR for storage, CSC for factorization). Vectors are 1-d complex numpy
arrays. All routines are pure functions of their inputs.
"""
import numpy as np
import scipy.linalg as sla
import scipy.sparse as sp
import scipy.sparse.linalg as spla

__all__ = [
    "InnerSolverError", "BreakdownError", "NotPositiveDefiniteError",
    "vec", "unvec", "kron", "matvec", "rel_residual",
    "cg_hpd", "cocg_sym", "DirectSolver",
    "save_matrix_coo", "load_matrix_coo", "save_vector", "load_vector",
    "save_dense_block", "load_dense_block",
]


class InnerSolverError(RuntimeError):
    """An inner Krylov solve did not reach its tolerance.

    Carries the best iterate seen (`x`), the iteration count and the
    relative residual at that iterate, plus optional context set by the
    outer driver (`half_step`, `report`).
    """

    def __init__(self, message, x=None, iterations=0, residual=np.inf):
        super().__init__(message)
        self.x = x
        self.iterations = iterations
        self.residual = residual
        self.half_step = None
        self.report = None


class BreakdownError(InnerSolverError):
    """The conjugate-orthogonal inner product vanished (COCG breakdown)."""


class NotPositiveDefiniteError(ValueError):
    """An operator required to be positive definite is not."""


def _as_matvec(M):
    """Return a matvec callable for a matrix or an already-callable operator."""
    if callable(M) and not hasattr(M, "__matmul__"):
        return M
    if callable(M) and not (sp.issparse(M) or isinstance(M, np.ndarray)):
        return M
    return lambda v: M @ v


def vec(X):
    """Stack the columns of a matrix into a single vector."""
    X = np.asarray(X)
    if X.ndim != 2:
        raise ValueError(f"vec expects a 2-d array, got shape {X.shape}")
    return X.flatten(order="F")


def unvec(x, m, n):
    """Inverse of :func:`vec`: reshape a length m*n vector to an m-by-n matrix."""
    x = np.asarray(x)
    if x.ndim != 1 or x.size != m * n:
        raise ValueError(f"unvec needs a vector of length {m}*{n}={m*n}, got shape {x.shape}")
    return x.reshape((m, n), order="F").copy()


def kron(A, B):
    """Kronecker product; sparse inputs yield a sparse (CSR) result."""
    if sp.issparse(A) or sp.issparse(B):
        return sp.kron(sp.csr_array(A), sp.csr_array(B), format="csr")
    return np.kron(np.asarray(A), np.asarray(B))


def matvec(A, x):
    """Matrix-vector product with an explicit dimension check."""
    x = np.asarray(x)
    if A.shape[1] != x.shape[0]:
        raise ValueError(f"dimension mismatch: operator is {A.shape}, vector has length {x.shape[0]}")
    return A @ x


def rel_residual(A, x, b):
    """Relative residual ||b - A x||_2 / ||b||_2.

    `A` may be a matrix or a matvec callable. Raises ValueError when b = 0,
    for which the quotient is undefined.
    """
    b = np.asarray(b)
    nb = np.linalg.norm(b)
    if nb == 0.0:
        raise ValueError("relative residual is undefined for b = 0")
    return float(np.linalg.norm(b - _as_matvec(A)(np.asarray(x))) / nb)


def cg_hpd(M, b, rel_tol=1e-12, max_it=None, x0=None):
    """Conjugate gradients for a Hermitian positive definite operator.

    Works in complex arithmetic, so a real SPD matrix applied to complex
    right-hand sides is handled in a single solve. Returns ``(x, iterations)``
    with ``||b - M x|| <= rel_tol * ||b||``.

    Raises
    ------
    NotPositiveDefiniteError
        if a search direction has nonpositive curvature p^H M p <= 0.
    InnerSolverError
        if the tolerance is not met within ``max_it``; the error carries the
        best iterate seen.
    """
    op = _as_matvec(M)
    b = np.asarray(b, dtype=complex)
    n = b.shape[0]
    if max_it is None:
        max_it = 10 * n + 10
    nb = np.linalg.norm(b)
    if nb == 0.0:
        return np.zeros(n, dtype=complex), 0
    tol = rel_tol * nb
    x = np.zeros(n, dtype=complex) if x0 is None else np.asarray(x0, dtype=complex).copy()
    r = b - op(x) if x0 is not None else b.copy()
    best_x, best_r = x.copy(), np.linalg.norm(r)
    it = 0
    while it < max_it:
        rn = np.linalg.norm(r)
        if rn < best_r:
            best_x, best_r = x.copy(), rn
        if rn <= tol:
            true_r = np.linalg.norm(b - op(x))
            if true_r <= tol:
                return x, it
            r = b - op(x)  # recurrence drifted: restart from the true residual
        p = r.copy()
        rho = np.vdot(r, r).real
        while it < max_it:
            q = op(p)
            curv = np.vdot(p, q).real
            if curv <= 0.0:
                raise NotPositiveDefiniteError(
                    f"nonpositive curvature p^H M p = {curv:.3e} in CG at iteration {it}")
            a = rho / curv
            x += a * p
            r -= a * q
            it += 1
            rho_new = np.vdot(r, r).real
            rn = np.sqrt(rho_new)
            if rn < best_r:
                best_x, best_r = x.copy(), rn
            if rn <= tol:
                break
            p = r + (rho_new / rho) * p
            rho = rho_new
        if np.linalg.norm(b - op(x)) <= tol:
            return x, it
        r = b - op(x)
    err = InnerSolverError(
        f"CG did not reach rel_tol={rel_tol:.1e} in {max_it} iterations "
        f"(best residual {best_r / nb:.3e})",
        x=best_x, iterations=it, residual=best_r / nb)
    raise err


def cocg_sym(M, b, rel_tol=1e-12, max_it=None, x0=None):
    """Conjugate-orthogonal CG for complex symmetric (M^T = M) systems.

    Identical to CG except that the unconjugated bilinear form x^T y replaces
    the Hermitian inner product, which is the standard adaptation for complex
    symmetric coefficients.

    Raises BreakdownError when the bilinear form degenerates, and
    InnerSolverError on non-convergence; both carry the best iterate.
    """
    op = _as_matvec(M)
    b = np.asarray(b, dtype=complex)
    n = b.shape[0]
    if max_it is None:
        max_it = 10 * n + 10
    nb = np.linalg.norm(b)
    if nb == 0.0:
        return np.zeros(n, dtype=complex), 0
    tol = rel_tol * nb
    x = np.zeros(n, dtype=complex) if x0 is None else np.asarray(x0, dtype=complex).copy()
    r = b - op(x) if x0 is not None else b.copy()
    best_x, best_r = x.copy(), np.linalg.norm(r)
    it = 0
    while it < max_it:
        if np.linalg.norm(r) <= tol and np.linalg.norm(b - op(x)) <= tol:
            return x, it
        p = r.copy()
        rho = np.dot(r, r)
        while it < max_it:
            rn = np.linalg.norm(r)
            if abs(rho) <= 1e-300 or abs(rho) < 1e-30 * rn ** 2:
                err = BreakdownError(
                    f"COCG breakdown: quasi-null residual form r^T r = {rho:.3e} at iteration {it}",
                    x=best_x, iterations=it, residual=best_r / nb)
                raise err
            q = op(p)
            form = np.dot(p, q)
            if abs(form) < 1e-30 * (np.linalg.norm(p) * np.linalg.norm(q) + 1e-300):
                err = BreakdownError(
                    f"COCG breakdown: p^T M p = {form:.3e} at iteration {it}",
                    x=best_x, iterations=it, residual=best_r / nb)
                raise err
            a = rho / form
            x += a * p
            r -= a * q
            it += 1
            rho_new = np.dot(r, r)
            rn = np.linalg.norm(r)
            if rn < best_r:
                best_x, best_r = x.copy(), rn
            if rn <= tol:
                break
            p = r + (rho_new / rho) * p
            rho = rho_new
        if np.linalg.norm(b - op(x)) <= tol:
            return x, it
        r = b - op(x)
    err = InnerSolverError(
        f"COCG did not reach rel_tol={rel_tol:.1e} in {max_it} iterations "
        f"(best residual {best_r / nb:.3e})",
        x=best_x, iterations=it, residual=best_r / nb)
    raise err


class DirectSolver:
    """One-time LU factorization of a sparse or dense matrix.

    A real factorization is kept real; complex right-hand sides are then
    solved as two real solves, so the factorization cost is paid once per
    coefficient matrix regardless of the rhs dtype.
    """

    def __init__(self, M):
        self.shape = M.shape
        self._complex = np.iscomplexobj(M.data if sp.issparse(M) else M)
        if sp.issparse(M):
            self._sparse = True
            self._lu = spla.splu(sp.csc_matrix(M))
        else:
            self._sparse = False
            self._lu = sla.lu_factor(np.asarray(M))

    def _solve_native(self, rhs):
        if self._sparse:
            return self._lu.solve(rhs)
        return sla.lu_solve(self._lu, rhs)

    def solve(self, b):
        b = np.asarray(b)
        if self._complex or not np.iscomplexobj(b):
            return self._solve_native(b.astype(complex) if self._complex else b)
        return self._solve_native(b.real) + 1j * self._solve_native(b.imag)


# -- text exchange formats ----------------------------------------------------
#
# Sparse matrices: header "m n nnz", one entry per line "i j re im", 0-based.
# Vectors:         header "n", one component per line "re im".
# Dense blocks:    header "m n", one row per line as n "re im" pairs.

def save_matrix_coo(path, A):
    """Write a matrix in the plain-text coordinate format."""
    C = sp.coo_array(A) if not sp.issparse(A) else sp.coo_array(A)
    with open(path, "w") as fh:
        fh.write(f"{C.shape[0]} {C.shape[1]} {C.nnz}\n")
        for i, j, v in zip(C.row, C.col, C.data):
            c = complex(v)
            fh.write(f"{i} {j} {c.real:.17g} {c.imag:.17g}\n")


def load_matrix_coo(path):
    """Read a coordinate-format matrix back as a complex CSR array."""
    with open(path) as fh:
        m, n, nnz = (int(t) for t in fh.readline().split())
        rows, cols, vals = [], [], []
        for _ in range(nnz):
            i, j, re, im = fh.readline().split()
            rows.append(int(i))
            cols.append(int(j))
            vals.append(float(re) + 1j * float(im))
    if rows and (max(rows) >= m or max(cols) >= n):
        raise ValueError("coordinate index out of range")
    return sp.csr_array((vals, (rows, cols)), shape=(m, n), dtype=complex)


def save_vector(path, x):
    x = np.asarray(x, dtype=complex)
    with open(path, "w") as fh:
        fh.write(f"{x.shape[0]}\n")
        for c in x:
            fh.write(f"{c.real:.17g} {c.imag:.17g}\n")


def load_vector(path):
    with open(path) as fh:
        n = int(fh.readline())
        out = np.empty(n, dtype=complex)
        for k in range(n):
            re, im = fh.readline().split()
            out[k] = float(re) + 1j * float(im)
    return out


def save_dense_block(path, M):
    M = np.asarray(M, dtype=complex)
    with open(path, "w") as fh:
        fh.write(f"{M.shape[0]} {M.shape[1]}\n")
        for row in M:
            fh.write(" ".join(f"{c.real:.17g} {c.imag:.17g}" for c in row) + "\n")


def load_dense_block(path):
    with open(path) as fh:
        m, n = (int(t) for t in fh.readline().split())
        out = np.empty((m, n), dtype=complex)
        for i in range(m):
            toks = fh.readline().split()
            if len(toks) != 2 * n:
                raise ValueError(f"dense block row {i} has {len(toks)} tokens, expected {2 * n}")
            for j in range(n):
                out[i, j] = float(toks[2 * j]) + 1j * float(toks[2 * j + 1])
    return out
