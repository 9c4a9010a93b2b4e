"""Orthogonality, orthogonal and quadratic annihilators, inner ideals."""

from __future__ import annotations

import numpy as np

from . import backend, models
from .backend import RANK_TOL, adjoint
from .errors import ShapeMismatch, VerificationFailed
from .models import SQUARE_KINDS, TripleModel, u_map
from .subspaces import Subspace

__all__ = [
    "Subspace",
    "is_orthogonal",
    "cstar_orthogonality_residual",
    "orthogonal_annihilator",
    "quadratic_annihilator_membership",
    "inner_ideal_generated",
    "is_inner_ideal",
]


def is_orthogonal(model: TripleModel, a, b, tol: float = 1e-9) -> bool:
    """a and b are orthogonal iff the operator L(a, b) vanishes."""
    a, b = model.check(a), model.check(b)
    lnorm = models.materialize_L(model, a, b).op_norm
    return lnorm <= tol * max(1.0, backend.op_norm(a) * backend.op_norm(b))


def cstar_orthogonality_residual(a, b) -> float:
    """Residual of the associative criterion a b^* = b^* a = 0.

    Equivalent to L(a, b) = 0 in matrix models; kept separate so the
    equivalence can be cross-checked on random inputs.
    """
    return max(backend.op_norm(a @ adjoint(b)), backend.op_norm(adjoint(b) @ a))


def _annihilator_rows(model: TripleModel, s: np.ndarray) -> np.ndarray:
    """Real matrix of the conjugate-linear map y -> ({s, y, w})_w over the
    ambient basis; its kernel is exactly {y : L(s, y) = 0}."""
    units = model.matrix_units()
    dn = 2 * model.dim
    # complex matrices of the 2*m*n real basis directions of the domain
    domain = np.empty((dn, model.m, model.n), dtype=complex)
    domain[0::2] = units
    domain[1::2] = 1j * units
    prods = models.triple_product_batch(
        model, s[None, None], domain[:, None], units[None, :])
    flat = prods.reshape(dn, -1)
    cols = np.empty((2 * flat.shape[1], dn))
    cols[0::2, :] = flat.real.T
    cols[1::2, :] = flat.imag.T
    return cols


def orthogonal_annihilator(model: TripleModel, elements, tol: float = 1e-9) -> Subspace:
    """The subspace of elements orthogonal to every member of ``elements``.

    Computed as the kernel of the stacked realified maps attached to the
    generators, then certified to be an inner ideal.
    """
    mats = [model.check(s) for s in elements]
    if mats:
        rows = np.vstack([_annihilator_rows(model, s) for s in mats])
    else:
        rows = np.zeros((0, 2 * model.dim))
    sub = Subspace(backend.kernel_basis_from_matrix(rows, model.shape, RANK_TOL), tol, model)
    if not is_inner_ideal(model, sub, max(tol, 1e-8)):
        raise VerificationFailed("annihilator failed inner-ideal certification")
    return sub


def quadratic_annihilator_membership(model: TripleModel, x, elements,
                                     tol: float = 1e-9, inner: bool = False) -> bool:
    """Membership in the (outer or inner) quadratic annihilator of a set.

    Outer: U_x(s) = 0 for every s; inner: U_s(x) = 0 for every s.  Exposed
    as a membership test only, because the solution set is a quadratic
    variety rather than a subspace.
    """
    if model.kind not in SQUARE_KINDS:
        raise ShapeMismatch("quadratic annihilators require a square model")
    x = model.check(x)
    worst = 0.0
    for s in elements:
        s = model.check(s)
        val = u_map(s, x) if inner else u_map(x, s)
        worst = max(worst, backend.op_norm(val))
    return worst <= tol


def inner_ideal_generated(model: TripleModel, x, tol: float = 1e-9) -> Subspace:
    """The inner ideal generated by an element: the image of Q(x).

    In finite dimension no closure is needed.  With x = U S V^* the image
    of Q(x) is spanned by the already-orthonormal family u_i v_j^* over the
    retained singular directions, which keeps the rank cut anchored to the
    generator itself.
    """
    x = model.check(x)
    dec = backend.svd(x)
    mask = dec.retained()
    ur = dec.left[:, :len(mask)][:, mask]
    vr = dec.right[:, :len(mask)][:, mask]
    r = ur.shape[1]
    basis = np.einsum("ai,bj->ijab", ur, vr.conj()).reshape(r * r, model.m, model.n)
    sub = Subspace(basis, tol, model)
    if not is_inner_ideal(model, sub, max(tol, 1e-8)):
        raise VerificationFailed("generated ideal failed inner-ideal certification")
    return sub


def is_inner_ideal(model: TripleModel, sub: Subspace, tol: float = 1e-9) -> bool:
    """Check {S, E, S} inside S over full bases of S and the ambient space."""
    if sub.dim == 0:
        return True
    ambient = model.matrix_units()
    prods = models.triple_product_batch(
        model,
        sub.basis[:, None, None],
        ambient[None, :, None],
        sub.basis[None, None, :],
    ).reshape(-1, model.m, model.n)
    return float(sub.residuals(prods).max(initial=0.0)) <= tol


def subspaces_orthogonal(model: TripleModel, first: Subspace, second: Subspace,
                         tol: float = 1e-9) -> bool:
    """Whether two subspaces are orthogonal element-by-element.

    Certified by containment of one subspace in the annihilator of the
    other's basis (equivalent to basis-pairwise orthogonality).
    """
    if first.dim == 0 or second.dim == 0:
        return True
    ann = orthogonal_annihilator(model, list(first.basis), tol)
    return second.is_subspace_of(ann, tol)


def star_closure_residual(sub: Subspace) -> float:
    """Worst membership residual of the adjoints of a basis; zero iff the
    subspace is closed under the involution."""
    if sub.dim == 0:
        return 0.0
    stars = adjoint(sub.basis)
    return float(sub.residuals(stars).max())
