"""Subspaces of matrix space under the trace inner product.

A :class:`Subspace` stores a complex orthonormal basis.  It represents
inner ideals, orthogonal annihilators, Peirce subspaces and kernels/images
of materialized operators.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from . import backend
from .backend import RANK_TOL, RealifiedMap

if TYPE_CHECKING:  # pragma: no cover
    from .models import TripleModel


@dataclass(frozen=True)
class Subspace:
    """Complex subspace given by an orthonormal basis under trace(b^* a)."""

    basis: np.ndarray                      # (k, m, n) complex, orthonormal
    tol: float = 1e-9
    model: "TripleModel | None" = None

    def __post_init__(self):
        basis = np.asarray(self.basis, dtype=complex)
        if basis.ndim != 3:
            raise ValueError("basis must be a (k, m, n) stack")
        object.__setattr__(self, "basis", basis)
        k = basis.shape[0]
        if k:
            flat = basis.reshape(k, -1)
            gram = flat @ flat.conj().T
            if backend.op_norm(gram - np.eye(k)) > max(self.tol, 1e-8):
                raise ValueError("basis is not orthonormal under the trace inner product")

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    @property
    def shape(self) -> tuple[int, int]:
        return self.basis.shape[1], self.basis.shape[2]

    def project(self, x: np.ndarray) -> np.ndarray:
        if self.dim == 0:
            return np.zeros(self.shape, dtype=complex)
        flat = self.basis.reshape(self.dim, -1)
        coeffs = flat.conj() @ np.asarray(x, dtype=complex).ravel()
        return (coeffs @ flat).reshape(self.shape)

    def residual(self, x: np.ndarray) -> float:
        """Frobenius distance from x to the subspace."""
        return backend.fro_norm(np.asarray(x, dtype=complex) - self.project(x))

    def residuals(self, mats: np.ndarray) -> np.ndarray:
        """Vectorized :meth:`residual` over a stack of matrices."""
        mats = np.asarray(mats, dtype=complex)
        flat = mats.reshape(mats.shape[0], -1)
        if self.dim == 0:
            return np.linalg.norm(flat, axis=1)
        b = self.basis.reshape(self.dim, -1)
        proj = (flat @ b.conj().T) @ b
        return np.linalg.norm(flat - proj, axis=1)

    def contains(self, x: np.ndarray, tol: float | None = None) -> bool:
        tol = self.tol if tol is None else tol
        return self.residual(x) <= tol * max(1.0, backend.fro_norm(x))

    def inclusion_residual(self, other: "Subspace") -> float:
        """Worst membership residual of this basis against ``other``.

        Zero (up to rounding) iff self is contained in other; the basis
        vectors are unit norm, so the residual is already relative.
        """
        if self.dim == 0:
            return 0.0
        return float(other.residuals(self.basis).max())

    def is_subspace_of(self, other: "Subspace", tol: float | None = None) -> bool:
        tol = self.tol if tol is None else tol
        if self.dim == 0:
            return True
        return float(other.residuals(self.basis).max()) <= tol

    @staticmethod
    def from_vectors(mats, tol: float = 1e-9, model: "TripleModel | None" = None,
                     rank_tol: float = RANK_TOL) -> "Subspace":
        mats = np.asarray(mats, dtype=complex)
        basis = backend.complex_orthonormalize(mats, rank_tol)
        return Subspace(basis, tol, model)

    @staticmethod
    def whole(model: "TripleModel", tol: float = 1e-9) -> "Subspace":
        return Subspace(model.matrix_units(), tol, model)

    @staticmethod
    def zero(model: "TripleModel", tol: float = 1e-9) -> "Subspace":
        m, n = model.shape
        return Subspace(np.zeros((0, m, n), dtype=complex), tol, model)


def kernel(f: RealifiedMap, tol: float = RANK_TOL, model: "TripleModel | None" = None) -> Subspace:
    """Kernel of a materialized map as a :class:`Subspace`."""
    return Subspace(backend.kernel_basis(f, tol), max(tol, 1e-12), model)


def image(f: RealifiedMap, tol: float = RANK_TOL, model: "TripleModel | None" = None,
          floor: float = 0.0) -> Subspace:
    """Image of a materialized map as a :class:`Subspace`."""
    return Subspace(backend.image_basis(f, tol, floor), max(tol, 1e-12), model)
