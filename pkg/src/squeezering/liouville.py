"""Lindblad generators as sparse superoperators, steady states and propagation.

Conventions
-----------
Density matrices are vectorized column-wise (``order="F"``), so that
``vec(A rho B) = kron(B.T, A) vec(rho)``.

The dissipators follow the rate convention

    L[o] rho = 2 o rho o+ - o+ o rho - rho o+ o
    L'[o] rho = 2 o rho o - o o rho - rho o o

so a collapse operator ``sqrt(kappa) a`` produces an intensity decay rate of
``2 kappa`` for the mode it acts on.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
import scipy.sparse as sp
from scipy.integrate import solve_ivp
from scipy.sparse.linalg import (
    ArpackError,
    ArpackNoConvergence,
    LinearOperator,
    eigs,
    lgmres,
    spilu,
    splu,
)

from .errors import ParameterError, SolverError
from .fock import DensityMatrix, FockOperator, FockSpace

__all__ = [
    "Dissipator",
    "Liouvillian",
    "build_liouvillian",
    "steady_state",
    "time_evolve",
    "spre",
    "spost",
    "hamiltonian_superop",
    "dissipator_superop",
]

DISSIPATOR_KINDS = ("standard", "conjugate-standard", "anomalous", "anomalous-conjugate")


@dataclass(frozen=True)
class Dissipator:
    """One Lindblad term, ``weight * K[collapse]`` with K selected by `kind`.

    kind
        ``standard``             L[o]
        ``conjugate-standard``   L[o+]
        ``anomalous``            L'[o]
        ``anomalous-conjugate``  L'[o+]

    The collapse operator carries the sqrt(rate) scaling.  Weights of the
    standard kinds must be real and non-negative; anomalous weights may be
    complex.
    """

    collapse: FockOperator
    kind: str = "standard"
    weight: complex = 1.0

    def __post_init__(self):
        if self.kind not in DISSIPATOR_KINDS:
            raise ParameterError(f"unknown dissipator kind {self.kind!r}")
        w = complex(self.weight)
        if self.kind in ("standard", "conjugate-standard"):
            if abs(w.imag) > 1e-14 * max(1.0, abs(w.real)) or w.real < 0:
                raise ParameterError(f"{self.kind} dissipator weight must be real and >= 0, got {w}")
            w = complex(w.real)
        object.__setattr__(self, "weight", w)


@dataclass(frozen=True)
class Liouvillian:
    """Generator of a master equation as a sparse matrix on vectorized states.

    ``time_dependent_parts`` holds ``(profile, superoperator)`` pairs; the
    full generator at time t is ``static + sum_k profile_k(t) * part_k``.
    """

    space: FockSpace
    static: sp.csr_matrix = field(repr=False)
    time_dependent_parts: tuple[tuple[Callable[[float], float], sp.csr_matrix], ...] = ()

    @property
    def is_time_dependent(self) -> bool:
        return len(self.time_dependent_parts) > 0

    def at(self, t: float) -> sp.csr_matrix:
        """Generator matrix at time `t`."""
        out = self.static
        for profile, part in self.time_dependent_parts:
            out = out + profile(t) * part
        return out

    def apply(self, rho: np.ndarray, t: float = 0.0) -> np.ndarray:
        """d(rho)/dt for a density matrix given as a dense array."""
        v = np.asarray(rho, dtype=complex).reshape(-1, order="F")
        out = self.static @ v
        for profile, part in self.time_dependent_parts:
            out = out + profile(t) * (part @ v)
        return out.reshape(rho.shape, order="F")


def spre(op: np.ndarray) -> sp.csr_matrix:
    """Superoperator of left multiplication, vec(A rho)."""
    a = sp.csr_matrix(op)
    return sp.kron(sp.identity(a.shape[0], dtype=complex, format="csr"), a, format="csr")


def spost(op: np.ndarray) -> sp.csr_matrix:
    """Superoperator of right multiplication, vec(rho B)."""
    b = sp.csr_matrix(op)
    return sp.kron(b.T, sp.identity(b.shape[0], dtype=complex, format="csr"), format="csr")


def hamiltonian_superop(h: np.ndarray) -> sp.csr_matrix:
    """Coherent part -i[H, rho] as a superoperator."""
    return -1j * (spre(h) - spost(h))


def _lindblad_standard(o: sp.csr_matrix) -> sp.csr_matrix:
    od = o.conj().T
    return 2 * sp.kron(o.conj(), o, format="csr") - spre((od @ o).toarray()) - spost((od @ o).toarray())


def _lindblad_anomalous(o: sp.csr_matrix) -> sp.csr_matrix:
    return 2 * sp.kron(o.T, o, format="csr") - spre((o @ o).toarray()) - spost((o @ o).toarray())


def dissipator_superop(d: Dissipator) -> sp.csr_matrix:
    """Sparse superoperator of one weighted Lindblad term."""
    o = sp.csr_matrix(d.collapse.matrix)
    if d.kind == "conjugate-standard":
        o = o.conj().T.tocsr()
        kind = "standard"
    elif d.kind == "anomalous-conjugate":
        o = o.conj().T.tocsr()
        kind = "anomalous"
    else:
        kind = d.kind
    base = _lindblad_standard(o) if kind == "standard" else _lindblad_anomalous(o)
    return d.weight * base


def build_liouvillian(h: FockOperator, dissipators: Sequence[Dissipator]) -> Liouvillian:
    """Assemble the generator of ``drho/dt = -i[H,rho] + sum_k weight_k K_k rho``.

    Parameters
    ----------
    h : FockOperator
        Hamiltonian, Hermitian to 1e-10.
    dissipators : sequence of Dissipator
        All collapse operators must share the Hamiltonian's Fock space.
    """
    if not h.is_hermitian(1e-10):
        raise ParameterError("Hamiltonian must be Hermitian to 1e-10")
    space = h.space
    L = hamiltonian_superop(h.matrix)
    for d in dissipators:
        if d.collapse.space != space:
            raise ParameterError("dissipator lives on a different Fock space than H")
        L = L + dissipator_superop(d)
    return Liouvillian(space, sp.csr_matrix(L))


def _trace_indices(dim: int) -> np.ndarray:
    return np.arange(dim) * (dim + 1)


def _as_density_matrix(space: FockSpace, rho: np.ndarray, tol: float, eig_tol: float) -> DensityMatrix:
    rho = 0.5 * (rho + rho.conj().T)
    rho = rho / np.trace(rho).real
    return DensityMatrix(space, rho, tol=tol, eig_tol=eig_tol)


def _check_unique_null(L: sp.csr_matrix, scale: float):
    """Probe the two smallest generator eigenvalues via shift-invert Arnoldi."""
    try:
        vals = eigs(
            L.tocsc(), k=2, sigma=1e-6 * scale, which="LM", return_eigenvectors=False,
            maxiter=5000,
        )
    except (ArpackError, ArpackNoConvergence, RuntimeError):
        warnings.warn("null-space uniqueness probe did not converge; skipping check")
        return
    mags = np.sort(np.abs(vals))
    if mags[1] < 1e-10 * scale:
        raise SolverError(
            f"steady state is not unique: two generator eigenvalues within "
            f"{mags[1]/scale:.2e} of zero (relative)"
        )


def steady_state(
    L: Liouvillian,
    *,
    check_unique: bool | None = None,
    residual_tol: float = 1e-9,
    fallback_t_end: float = 50.0,
) -> DensityMatrix:
    """Solve ``L rho = 0`` with unit trace.

    One row of the vectorized generator is replaced by the trace condition
    and the sparse system is LU-factorized.  If factorization fails, the
    master equation is integrated to ``fallback_t_end`` and convergence of
    ``|drho/dt|`` is required instead.

    Parameters
    ----------
    check_unique : bool, optional
        Probe for a degenerate null space with a sparse eigensolver.  By
        default the probe runs only on systems up to 40000 vectorized rows.
    residual_tol : float
        Relative residual bound ``|L rho| / (|L|_inf |rho|)``.
    """
    if L.is_time_dependent:
        raise ParameterError("steady_state requires a time-independent Liouvillian")
    dim = L.space.total_dim
    n = dim * dim
    scale = sp.linalg.norm(L.static, np.inf)
    if scale == 0:
        raise SolverError("zero generator has no unique steady state")
    if check_unique is None:
        check_unique = n <= 40_000
    if check_unique:
        _check_unique_null(L.static, scale)

    coo = L.static.tocoo()
    keep = coo.row != 0
    rows = np.concatenate([coo.row[keep], np.zeros(dim, dtype=coo.row.dtype)])
    cols = np.concatenate([coo.col[keep], _trace_indices(dim)])
    data = np.concatenate([coo.data[keep], np.full(dim, scale, dtype=complex)])
    lhs = sp.csc_matrix((data, (rows, cols)), shape=(n, n))
    rhs = np.zeros(n, dtype=complex)
    rhs[0] = scale

    def good(x):
        if x is None or not np.all(np.isfinite(x)):
            return None
        m = x.reshape((dim, dim), order="F")
        resid = np.linalg.norm(L.static @ x)
        if resid > residual_tol * scale * np.linalg.norm(x):
            return None
        return m

    rho = None
    # full LU fill-in grows steeply with system size; prefer an incomplete
    # factorization plus Krylov refinement on large systems
    attempts = ["direct"] if n <= 20_000 else ["iterative", "direct"]
    for method in attempts:
        try:
            if method == "direct":
                rho = good(splu(lhs).solve(rhs))
            else:
                ilu = spilu(lhs, drop_tol=1e-5, fill_factor=20)
                precond = LinearOperator((n, n), matvec=ilu.solve, dtype=complex)
                x, info = lgmres(lhs, rhs, M=precond, rtol=1e-12, atol=0.0, maxiter=300)
                rho = good(x) if info == 0 else None
        except (RuntimeError, MemoryError):
            rho = None
        if rho is not None:
            break

    if rho is None:
        # fall back to long-time integration from the maximally mixed state
        y0 = (np.eye(dim, dtype=complex) / dim).reshape(-1, order="F")
        sol = solve_ivp(
            lambda t, y: L.static @ y, (0.0, fallback_t_end), y0,
            method="DOP853", rtol=1e-10, atol=1e-12,
        )
        if not sol.success:
            raise SolverError(f"steady-state fallback integration failed: {sol.message}")
        y = sol.y[:, -1]
        rho_dot = np.linalg.norm(L.static @ y)
        if rho_dot > 1e-9 * scale * np.linalg.norm(y):
            raise SolverError(
                f"no steady state reached by t={fallback_t_end}: |drho/dt| = {rho_dot:.3e}"
            )
        rho = y.reshape((dim, dim), order="F")

    return _as_density_matrix(L.space, rho, tol=1e-10, eig_tol=1e-8)


def time_evolve(
    L: Liouvillian,
    rho0: DensityMatrix,
    t_grid: Sequence[float],
    *,
    rtol: float = 1e-8,
    atol: float = 1e-10,
    state_tol: float = 1e-7,
) -> list[DensityMatrix]:
    """Propagate `rho0` along `t_grid` with an adaptive Runge-Kutta pair.

    `rho0` is the state at ``t_grid[0]``.  Each returned state is validated
    against the density-matrix invariants at tolerance `state_tol`.
    """
    if rho0.space != L.space:
        raise ParameterError("initial state lives on a different Fock space")
    t = np.asarray(t_grid, dtype=float)
    if t.ndim != 1 or len(t) < 1 or np.any(np.diff(t) <= 0):
        raise ParameterError("t_grid must be one-dimensional and strictly increasing")

    if L.is_time_dependent:
        parts = L.time_dependent_parts

        def rhs(tt, y):
            out = L.static @ y
            for profile, part in parts:
                out = out + profile(tt) * (part @ y)
            return out
    else:
        def rhs(tt, y):
            return L.static @ y

    y0 = rho0.matrix.reshape(-1, order="F")
    states = [rho0]
    if len(t) == 1:
        return states
    sol = solve_ivp(rhs, (t[0], t[-1]), y0, method="DOP853", rtol=rtol, atol=atol, t_eval=t)
    if not sol.success:
        raise SolverError(f"time integration failed: {sol.message}")
    dim = L.space.total_dim
    for k in range(1, len(t)):
        m = sol.y[:, k].reshape((dim, dim), order="F")
        try:
            states.append(_as_density_matrix(L.space, m, tol=state_tol, eig_tol=max(1e-8, state_tol)))
        except ParameterError as exc:
            raise SolverError(f"state at t={t[k]} violates invariants: {exc}") from exc
    return states
