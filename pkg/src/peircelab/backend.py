"""Dense complex linear algebra substrate.

Elements are complex matrices under the trace inner product
``<a, b> = trace(b^* a)``.  Operators on matrix space (including
conjugate-linear ones such as ``x -> a x^* a``) are materialized as real
matrices acting on "realified" coordinates.  The realification convention
is fixed once for the whole package: the complex entry ``z`` at row-major
position ``k`` of a matrix occupies the two adjacent real coordinates
``(Re z, Im z)`` at positions ``2k`` and ``2k+1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import ConvergenceFailure, NotHermitian, PeircelabError

#: Relative rank cutoff: a singular value s is treated as zero iff
#: s <= RANK_TOL * s_max.  Scale invariant, matched to double-precision
#: SVD accuracy at the dimensions this package targets.
RANK_TOL = 1e-10

Shape = tuple[int, int]


def as_matrix(x) -> np.ndarray:
    """Coerce to a finite complex matrix."""
    m = np.asarray(x, dtype=complex)
    if m.ndim != 2:
        raise ValueError(f"expected a matrix, got array of ndim={m.ndim}")
    if not np.isfinite(m).all():
        raise ValueError("matrix entries must be finite")
    return m


def adjoint(x: np.ndarray) -> np.ndarray:
    return np.conj(np.swapaxes(x, -1, -2))


def op_norm(x) -> float:
    """Largest singular value; the norm used for elements."""
    x = np.asarray(x)
    if x.size == 0:
        return 0.0
    return float(np.linalg.norm(x, 2))


def fro_norm(x) -> float:
    return float(np.linalg.norm(np.asarray(x)))


def trace_inner(a: np.ndarray, b: np.ndarray) -> complex:
    """Trace inner product <a, b> = trace(b^* a)."""
    return complex(np.vdot(b, a))


def realify(x: np.ndarray) -> np.ndarray:
    """Row-major interleaved (Re, Im) real coordinates of a complex matrix."""
    flat = np.asarray(x, dtype=complex).ravel()
    out = np.empty(2 * flat.size)
    out[0::2] = flat.real
    out[1::2] = flat.imag
    return out


def unrealify(v: np.ndarray, shape: Shape) -> np.ndarray:
    """Inverse of :func:`realify`."""
    v = np.asarray(v, dtype=float)
    return (v[0::2] + 1j * v[1::2]).reshape(shape)


@dataclass(frozen=True)
class RealifiedMap:
    """Real matrix of a real-linear operator between complex matrix spaces.

    ``matrix`` has shape ``(2*m'*n', 2*m*n)`` where ``(m, n)`` is the
    domain shape and ``(m', n')`` the codomain shape, so ``apply`` is a
    plain matrix-vector product in realified coordinates.
    """

    matrix: np.ndarray
    domain_shape: Shape
    codomain_shape: Shape

    def apply(self, x: np.ndarray) -> np.ndarray:
        return unrealify(self.matrix @ realify(x), self.codomain_shape)

    def compose(self, other: "RealifiedMap") -> "RealifiedMap":
        if other.codomain_shape != self.domain_shape:
            raise ValueError("composition shapes disagree")
        return RealifiedMap(self.matrix @ other.matrix, other.domain_shape, self.codomain_shape)

    def __matmul__(self, other: "RealifiedMap") -> "RealifiedMap":
        return self.compose(other)

    def __add__(self, other: "RealifiedMap") -> "RealifiedMap":
        return RealifiedMap(self.matrix + other.matrix, self.domain_shape, self.codomain_shape)

    def __sub__(self, other: "RealifiedMap") -> "RealifiedMap":
        return RealifiedMap(self.matrix - other.matrix, self.domain_shape, self.codomain_shape)

    def scaled(self, t: float) -> "RealifiedMap":
        return RealifiedMap(t * self.matrix, self.domain_shape, self.codomain_shape)

    @property
    def op_norm(self) -> float:
        return op_norm(self.matrix)

    @staticmethod
    def identity(shape: Shape) -> "RealifiedMap":
        n = 2 * shape[0] * shape[1]
        return RealifiedMap(np.eye(n), shape, shape)

    @staticmethod
    def zero(domain_shape: Shape, codomain_shape: Shape | None = None) -> "RealifiedMap":
        codomain_shape = codomain_shape or domain_shape
        rows = 2 * codomain_shape[0] * codomain_shape[1]
        cols = 2 * domain_shape[0] * domain_shape[1]
        return RealifiedMap(np.zeros((rows, cols)), domain_shape, codomain_shape)

    @staticmethod
    def from_function(fn: Callable[[np.ndarray], np.ndarray], domain_shape: Shape,
                      codomain_shape: Shape | None = None) -> "RealifiedMap":
        """Materialize an arbitrary real-linear map by evaluating it on the
        2*m*n real basis elements of the domain."""
        codomain_shape = codomain_shape or domain_shape
        dn = 2 * domain_shape[0] * domain_shape[1]
        cn = 2 * codomain_shape[0] * codomain_shape[1]
        cols = np.empty((cn, dn))
        unit = np.zeros(dn)
        for j in range(dn):
            unit[j] = 1.0
            cols[:, j] = realify(fn(unrealify(unit, domain_shape)))
            unit[j] = 0.0
        return RealifiedMap(cols, domain_shape, codomain_shape)

    @staticmethod
    def from_complex(coeff: np.ndarray, domain_shape: Shape, codomain_shape: Shape | None = None,
                     conjugating: bool = False) -> "RealifiedMap":
        """Realify the complex coefficient matrix of a map.

        ``conjugating=False`` encodes the linear map ``v -> coeff @ v``,
        ``conjugating=True`` the conjugate-linear map ``v -> coeff @ conj(v)``
        (both in row-major flattened complex coordinates).
        """
        codomain_shape = codomain_shape or domain_shape
        p, q = coeff.shape
        out = np.empty((2 * p, 2 * q))
        out[0::2, 0::2] = coeff.real
        out[1::2, 0::2] = coeff.imag
        if conjugating:
            out[0::2, 1::2] = coeff.imag
            out[1::2, 1::2] = -coeff.real
        else:
            out[0::2, 1::2] = -coeff.imag
            out[1::2, 1::2] = coeff.real
        return RealifiedMap(out, domain_shape, codomain_shape)


def transpose_permutation(m: int, n: int) -> np.ndarray:
    """Permutation matrix T with vec_r(X^T) = T vec_r(X) for X of shape (m, n)."""
    mn = m * n
    t = np.zeros((mn, mn))
    k = np.arange(mn)
    i, j = np.divmod(k, n)
    t[j * m + i, k] = 1.0
    return t


def hermitian_eigen(a: np.ndarray, tol: float = 1e-9) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a Hermitian matrix.

    Returns eigenvalues sorted non-increasing and the matching unitary of
    column eigenvectors.  Raises :class:`NotHermitian` when the input is
    not Hermitian relative to ``tol`` and :class:`ConvergenceFailure` when
    the factorization misses its residual contract.
    """
    a = as_matrix(a)
    if a.shape[0] != a.shape[1]:
        raise NotHermitian(f"matrix of shape {a.shape} cannot be Hermitian")
    scale = op_norm(a)
    if op_norm(a - adjoint(a)) > tol * (1.0 + scale):
        raise NotHermitian("matrix is not Hermitian at the requested tolerance")
    try:
        w, v = np.linalg.eigh(0.5 * (a + adjoint(a)))
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK stall
        raise ConvergenceFailure(str(exc)) from exc
    w, v = w[::-1].copy(), v[:, ::-1].copy()
    resid = op_norm((v * w) @ adjoint(v) - a)
    if resid > max(tol * scale, 100 * np.finfo(float).eps * (1.0 + scale)):
        raise ConvergenceFailure(f"eigendecomposition residual {resid:.3e} above contract")
    return w, v


@dataclass(frozen=True)
class SVDResult:
    """Full singular value decomposition a = left @ diag(singular) @ right^*."""

    left: np.ndarray       # (m, m) unitary
    singular: np.ndarray   # min(m, n) non-increasing, non-negative
    right: np.ndarray      # (n, n) unitary

    @property
    def shape(self) -> Shape:
        return (self.left.shape[0], self.right.shape[0])

    def reconstruct(self, values: np.ndarray | None = None) -> np.ndarray:
        """left @ diag(values) @ right^* with the given diagonal (default: singular)."""
        values = self.singular if values is None else np.asarray(values, dtype=complex)
        m, n = self.shape
        k = len(self.singular)
        return (self.left[:, :k] * values) @ adjoint(self.right[:, :k])

    def retained(self, rank_tol: float = RANK_TOL) -> np.ndarray:
        """Boolean mask of singular values above the relative rank cutoff."""
        if self.singular.size == 0 or self.singular[0] <= 0.0:
            return np.zeros(self.singular.shape, dtype=bool)
        return self.singular > rank_tol * self.singular[0]

    def rank(self, rank_tol: float = RANK_TOL) -> int:
        return int(self.retained(rank_tol).sum())


def svd(a: np.ndarray, tol: float = 1e-9) -> SVDResult:
    """Full SVD with a verified reconstruction residual."""
    a = as_matrix(a)
    try:
        u, s, vh = np.linalg.svd(a, full_matrices=True)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK stall
        raise ConvergenceFailure(str(exc)) from exc
    result = SVDResult(left=u, singular=s, right=adjoint(vh))
    resid = op_norm(result.reconstruct() - a)
    if resid > tol * max(1.0, op_norm(a)):
        raise ConvergenceFailure(f"svd residual {resid:.3e} above contract")
    return result


def complex_orthonormalize(mats: np.ndarray, rank_tol: float = RANK_TOL) -> np.ndarray:
    """Orthonormal basis (under the trace inner product) of the complex span
    of a stack of matrices, returned as a stack of the same shape."""
    mats = np.asarray(mats, dtype=complex)
    if mats.ndim != 3:
        raise ValueError("expected a stack of matrices")
    k, m, n = mats.shape
    if k == 0:
        return mats.reshape(0, m, n)
    flat = mats.reshape(k, m * n)
    u, s, vh = np.linalg.svd(flat, full_matrices=False)
    if s.size == 0 or s[0] <= 0.0:
        return np.zeros((0, m, n), dtype=complex)
    rank = int((s > rank_tol * s[0]).sum())
    return vh[:rank].reshape(rank, m, n)


def _complex_basis_from_real(rows: np.ndarray, shape: Shape) -> np.ndarray:
    """Convert a real-coordinate basis of an i-invariant real subspace into a
    complex orthonormal basis of the same space."""
    k = rows.shape[0]
    m, n = shape
    if k == 0:
        return np.zeros((0, m, n), dtype=complex)
    mats = np.stack([unrealify(r, shape) for r in rows])
    basis = complex_orthonormalize(mats)
    if 2 * basis.shape[0] != k:
        raise PeircelabError(
            "real subspace is not closed under multiplication by i; "
            "cannot represent it by a complex basis"
        )
    return basis


def kernel_basis_from_matrix(mat: np.ndarray, domain_shape: Shape,
                             tol: float = RANK_TOL) -> np.ndarray:
    """Complex orthonormal kernel basis of a real matrix acting on realified
    coordinates of ``domain_shape`` matrices."""
    if mat.shape[0] == 0:
        return _complex_basis_from_real(np.eye(mat.shape[1]), domain_shape)
    u, s, vh = np.linalg.svd(mat, full_matrices=True)
    smax = s[0] if s.size else 0.0
    if smax <= 0.0:
        null_rows = vh
    else:
        rank = int((s > tol * smax).sum())
        null_rows = vh[rank:]
    return _complex_basis_from_real(null_rows, domain_shape)


def kernel_basis(f: RealifiedMap, tol: float = RANK_TOL) -> np.ndarray:
    """Complex orthonormal basis of the kernel of a realified map.

    The kernels computed in this package come from complex-linear or
    conjugate-linear maps, so they are complex subspaces; the returned
    basis is complex and closed under multiplication by i by construction.
    """
    return kernel_basis_from_matrix(f.matrix, f.domain_shape, tol)


def image_basis(f: RealifiedMap, tol: float = RANK_TOL, floor: float = 0.0) -> np.ndarray:
    """Complex orthonormal basis of the image of a realified map.

    ``floor`` is an absolute singular-value cutoff on top of the relative
    one; pass 0.5 for idempotent maps, whose singular values sit at 0 or 1,
    so that a numerically-zero projection yields the zero subspace.
    """
    u, s, vh = np.linalg.svd(f.matrix, full_matrices=False)
    smax = s[0] if s.size else 0.0
    cut = max(tol * smax, floor)
    if smax <= cut:
        return np.zeros((0,) + f.codomain_shape, dtype=complex)
    rank = int((s > cut).sum())
    cols = u[:, :rank].T
    return _complex_basis_from_real(cols, f.codomain_shape)


def spectral_projection(a: np.ndarray, tol: float = 1e-9, rank_tol: float = RANK_TOL,
                        floor: float = 0.0) -> np.ndarray:
    """Orthogonal projection onto the span of eigenvectors of a Hermitian
    PSD matrix whose eigenvalues exceed the relative rank cutoff.

    ``floor`` adds an absolute eigenvalue cutoff for callers whose input may
    be zero up to roundoff.
    """
    w, v = hermitian_eigen(a, tol)
    cut = max(rank_tol * (w[0] if w.size else 0.0), floor)
    if w.size == 0 or w[0] <= cut:
        return np.zeros_like(np.asarray(a, dtype=complex))
    keep = w > cut
    vk = v[:, keep]
    return vk @ adjoint(vk)
