"""Truncated multimode Fock spaces, operators on them, and density matrices.

All operators are dense complex matrices living on the tensor product of
per-mode number bases ``|0>, ..., |dim-1>``.  The mode ordering of the
tensor product follows the order of ``FockSpace.mode_dims``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import ParameterError

__all__ = [
    "FockSpace",
    "FockOperator",
    "DensityMatrix",
    "destroy",
    "create",
    "number",
    "identity",
    "fock_dm",
    "vacuum_dm",
]


@dataclass(frozen=True)
class FockSpace:
    """Tensor product of truncated bosonic modes.

    Parameters
    ----------
    mode_dims : tuple of int
        Per-mode truncation dimensions, each at least 2.
    mode_labels : tuple of str
        Unique identifiers, one per mode.
    """

    mode_dims: tuple[int, ...]
    mode_labels: tuple[str, ...]

    def __post_init__(self):
        dims = tuple(int(d) for d in self.mode_dims)
        labels = tuple(str(s) for s in self.mode_labels)
        object.__setattr__(self, "mode_dims", dims)
        object.__setattr__(self, "mode_labels", labels)
        if len(dims) == 0:
            raise ParameterError("FockSpace needs at least one mode")
        if any(d < 2 for d in dims):
            raise ParameterError(f"every mode dimension must be >= 2, got {dims}")
        if len(labels) != len(dims):
            raise ParameterError("mode_labels and mode_dims must have equal length")
        if len(set(labels)) != len(labels):
            raise ParameterError(f"mode labels must be unique, got {labels}")

    @property
    def n_modes(self) -> int:
        return len(self.mode_dims)

    @property
    def total_dim(self) -> int:
        return int(np.prod(self.mode_dims))

    def mode_index(self, label: str) -> int:
        """Position of the mode called `label` in the tensor order."""
        try:
            return self.mode_labels.index(label)
        except ValueError:
            raise ParameterError(f"no mode labelled {label!r} in {self.mode_labels}") from None

    def basis_index(self, occupations: Sequence[int]) -> int:
        """Flat index of the product number state with the given occupations."""
        if len(occupations) != self.n_modes:
            raise ParameterError("need one occupation number per mode")
        for n, d in zip(occupations, self.mode_dims):
            if not 0 <= n < d:
                raise ParameterError(f"occupation {n} outside truncation {d}")
        return int(np.ravel_multi_index(tuple(occupations), self.mode_dims))


@dataclass(frozen=True)
class FockOperator:
    """A dense complex matrix tied to a :class:`FockSpace`."""

    space: FockSpace
    matrix: np.ndarray = field(repr=False)

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        d = self.space.total_dim
        if m.shape != (d, d):
            raise ParameterError(f"matrix shape {m.shape} does not match space dimension {d}")
        object.__setattr__(self, "matrix", m)

    def dag(self) -> "FockOperator":
        return FockOperator(self.space, self.matrix.conj().T)

    def is_hermitian(self, tol: float = 1e-10) -> bool:
        return bool(np.max(np.abs(self.matrix - self.matrix.conj().T)) <= tol)

    def _check_space(self, other: "FockOperator"):
        if other.space != self.space:
            raise ParameterError("operators live on different Fock spaces")

    def __matmul__(self, other: "FockOperator") -> "FockOperator":
        self._check_space(other)
        return FockOperator(self.space, self.matrix @ other.matrix)

    def __add__(self, other: "FockOperator") -> "FockOperator":
        self._check_space(other)
        return FockOperator(self.space, self.matrix + other.matrix)

    def __sub__(self, other: "FockOperator") -> "FockOperator":
        self._check_space(other)
        return FockOperator(self.space, self.matrix - other.matrix)

    def __mul__(self, scalar: complex) -> "FockOperator":
        return FockOperator(self.space, self.matrix * scalar)

    __rmul__ = __mul__

    def __neg__(self) -> "FockOperator":
        return FockOperator(self.space, -self.matrix)


@dataclass(frozen=True)
class DensityMatrix:
    """A density matrix on a :class:`FockSpace`.

    Construction validates hermiticity, unit trace and numerical positivity.
    Looser tolerances can be passed for states produced by time integration.
    """

    space: FockSpace
    matrix: np.ndarray = field(repr=False)
    tol: float = 1e-10
    eig_tol: float = 1e-8

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        d = self.space.total_dim
        if m.shape != (d, d):
            raise ParameterError(f"matrix shape {m.shape} does not match space dimension {d}")
        object.__setattr__(self, "matrix", m)
        herm = np.max(np.abs(m - m.conj().T))
        if herm > self.tol:
            raise ParameterError(f"density matrix not Hermitian: max asymmetry {herm:.3e}")
        tr = np.trace(m)
        if abs(tr - 1.0) > self.tol:
            raise ParameterError(f"density matrix trace {tr} is not 1")
        min_eig = float(np.linalg.eigvalsh(0.5 * (m + m.conj().T)).min())
        if min_eig < -self.eig_tol:
            raise ParameterError(f"density matrix has negative eigenvalue {min_eig:.3e}")

    def expect(self, op: FockOperator) -> complex:
        """Expectation value tr(rho O)."""
        if op.space != self.space:
            raise ParameterError("operator lives on a different Fock space")
        return complex(np.einsum("ij,ji->", op.matrix, self.matrix))

    def min_eigenvalue(self) -> float:
        return float(np.linalg.eigvalsh(self.matrix).min())


def _embedded(space: FockSpace, mode_index: int, local: np.ndarray) -> np.ndarray:
    out = np.array([[1.0 + 0j]])
    for k, d in enumerate(space.mode_dims):
        out = np.kron(out, local if k == mode_index else np.eye(d, dtype=complex))
    return out


def destroy(space: FockSpace, mode_index: int) -> FockOperator:
    """Annihilation operator of one mode, identity on the others.

    Satisfies ``<n-1| a |n> = sqrt(n)`` within the truncation.
    """
    if not 0 <= mode_index < space.n_modes:
        raise ParameterError(f"mode index {mode_index} out of range for {space.n_modes} modes")
    d = space.mode_dims[mode_index]
    local = np.diag(np.sqrt(np.arange(1, d, dtype=float)), 1).astype(complex)
    return FockOperator(space, _embedded(space, mode_index, local))


def create(space: FockSpace, mode_index: int) -> FockOperator:
    return destroy(space, mode_index).dag()


def number(space: FockSpace, mode_index: int) -> FockOperator:
    a = destroy(space, mode_index)
    return a.dag() @ a


def identity(space: FockSpace) -> FockOperator:
    return FockOperator(space, np.eye(space.total_dim, dtype=complex))


def fock_dm(space: FockSpace, occupations: Iterable[int]) -> DensityMatrix:
    """Projector onto the product number state with the given occupations."""
    idx = space.basis_index(tuple(occupations))
    m = np.zeros((space.total_dim, space.total_dim), dtype=complex)
    m[idx, idx] = 1.0
    return DensityMatrix(space, m)


def vacuum_dm(space: FockSpace) -> DensityMatrix:
    return fock_dm(space, (0,) * space.n_modes)
