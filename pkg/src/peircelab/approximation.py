"""Constructive approximation: positive elements by combinations of
projections, and arbitrary elements by von Neumann regular truncations."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import backend
from .backend import RANK_TOL, adjoint
from .errors import ConvergenceFailure, NonPositiveEps, NotPositive, ShapeMismatch
from .models import SQUARE_KINDS, TripleModel, triple_product
from .peirce import TRIPOTENT_TOL, Tripotent, tripotent_leq


@dataclass(frozen=True)
class ProjectionCombo:
    """Sum of real coefficients times mutually orthogonal projections."""

    terms: tuple[tuple[float, np.ndarray], ...]
    error: float

    def reconstruct(self, shape: tuple[int, int]) -> np.ndarray:
        out = np.zeros(shape, dtype=complex)
        for coeff, proj in self.terms:
            out = out + coeff * proj
        return out


def _bucketize(lam: np.ndarray, vecs: np.ndarray, eps: float,
               sign: float) -> list[tuple[float, np.ndarray]]:
    """Group eigenvalues on the dyadic grid of step eps (anchored at zero,
    boundary values snapping onto their own grid point) and attach to each
    bucket the projection onto its eigenvectors.

    The coefficient of a bucket is its smallest eigenvalue, which keeps the
    one-sided bound 0 <= lam - coeff <= eps, makes exact projections exact,
    and degenerates to the full spectral decomposition once eps drops below
    every spectral gap.
    """
    terms: list[tuple[float, np.ndarray]] = []
    if lam.size == 0:
        return terms
    buckets = np.floor(lam / eps + 1e-12).astype(int)
    for k in sorted(set(int(b) for b in buckets)):
        mask = buckets == k
        vk = vecs[:, mask]
        coeff = float(lam[mask].min())
        terms.append((sign * coeff, vk @ adjoint(vk)))
    return terms


def projection_approximation(model: TripleModel, a, eps: float) -> ProjectionCombo:
    """Approximate a positive element by a combination of spectral
    projections with coefficients on a grid of step ``eps``.

    The error never exceeds ``eps`` and the number of projections is at
    most ceil(norm(a)/eps) + 1.  Self-adjoint elements are handled by
    splitting into positive and negative parts and merging with signed
    coefficients; anything non-self-adjoint is rejected.
    """
    if model.kind not in SQUARE_KINDS:
        raise ShapeMismatch("projection approximation requires a square model")
    if not (eps > 0.0):
        raise NonPositiveEps("eps must be strictly positive")
    a = model.check(a)
    scale = max(1.0, backend.op_norm(a))
    if backend.op_norm(a - adjoint(a)) > 1e-9 * scale:
        raise NotPositive("element is not self-adjoint")
    w, v = backend.hermitian_eigen(0.5 * (a + adjoint(a)))
    cut = RANK_TOL * max(1.0, float(np.abs(w).max(initial=0.0)))
    pos = w > cut
    neg = w < -cut
    terms = _bucketize(w[pos], v[:, pos], eps, 1.0)
    terms += _bucketize(-w[neg], v[:, neg], eps, -1.0)
    approx = np.zeros(model.shape, dtype=complex)
    for coeff, proj in terms:
        approx = approx + coeff * proj
    error = backend.op_norm(a - approx)
    return ProjectionCombo(terms=tuple(terms), error=float(error))


@dataclass(frozen=True)
class RegularApproximation:
    """Truncation data: y = {b, e_eps, b} is regular and close to the input."""

    e_eps: Tripotent
    b: np.ndarray
    y: np.ndarray
    error: float


def regular_approximation(model: TripleModel, a, eps: float,
                          tol: float = TRIPOTENT_TOL) -> RegularApproximation:
    """Approximate an element by a von Neumann regular truncation.

    With b the square root of a inside the Peirce-2 algebra of its range
    tripotent R, the tripotent e_eps retains the singular values above
    ``eps`` and y = {b, e_eps, b} satisfies ||a - y|| < eps, e_eps <= R and
    {b, R, b} = a.
    """
    if not (eps > 0.0):
        raise NonPositiveEps("eps must be strictly positive")
    a = model.check(a)
    dec = backend.svd(a)
    retained = dec.retained()
    threshold = eps * (1.0 - 1e-12)
    keep = (dec.singular > threshold) & retained

    b = dec.reconstruct(np.sqrt(dec.singular))
    e_eps = Tripotent.certify(model, dec.reconstruct(np.where(keep, 1.0, 0.0)), tol)
    y = dec.reconstruct(np.where(keep, dec.singular, 0.0))
    error = float(backend.op_norm(a - y))

    big_r = Tripotent.certify(model, dec.reconstruct(np.where(retained, 1.0, 0.0)), tol)
    recon = triple_product(model, b, big_r.element, b)
    resid = backend.op_norm(recon - a)
    if resid > 1e-10 * max(1.0, backend.op_norm(a)):
        raise ConvergenceFailure(f"square-root reconstruction residual {resid:.3e}")
    if not tripotent_leq(model, e_eps, big_r, max(tol, 1e-9)):
        raise ConvergenceFailure("truncation tripotent is not below the range tripotent")
    return RegularApproximation(e_eps=e_eps, b=b, y=y, error=error)
