"""Tripotents, Peirce decompositions, Peirce-2 algebras and related maps."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import backend, models
from .backend import RANK_TOL, RealifiedMap, adjoint
from .errors import NotInPeirce2, NotTripotent, NotUnitModulus
from .models import TripleModel, triple_product
from .subspaces import Subspace, image

#: Default certification tolerance for tripotents.  Certified once at
#: construction; downstream operations trust the certificate.
TRIPOTENT_TOL = 1e-9


def tripotent_residual(model: TripleModel, e) -> float:
    """Relative residual of the cubic identity {e, e, e} = e."""
    e = model.check(e)
    return backend.op_norm(triple_product(model, e, e, e) - e) / max(1.0, backend.op_norm(e))


def is_tripotent(model: TripleModel, e, tol: float = TRIPOTENT_TOL) -> bool:
    return tripotent_residual(model, e) <= tol


@dataclass(frozen=True)
class Tripotent:
    """A certified tripotent: {e,e,e} = e within ``certified_tol``.

    In matrix models this is exactly a partial isometry; certification also
    checks that all singular values sit within tolerance of 0 or 1.
    """

    model: TripleModel
    element: np.ndarray
    certified_tol: float
    residual: float

    @staticmethod
    def certify(model: TripleModel, e, tol: float = TRIPOTENT_TOL) -> "Tripotent":
        e = model.check(e)
        resid = tripotent_residual(model, e)
        if resid > tol:
            raise NotTripotent(f"cubic residual {resid:.3e} exceeds tolerance {tol:.1e}")
        s = np.linalg.svd(e, compute_uv=False)
        if s.size and float(np.abs(s - np.round(s)).max()) > tol:
            raise NotTripotent("singular values are not within tolerance of 0 or 1")
        return Tripotent(model, e, tol, resid)

    @property
    def rank(self) -> int:
        s = np.linalg.svd(self.element, compute_uv=False)
        return int((s > 0.5).sum())

    def __sub__(self, other: "Tripotent") -> np.ndarray:
        return self.element - other.element


def _as_tripotent(model: TripleModel, e, tol: float = TRIPOTENT_TOL) -> Tripotent:
    if isinstance(e, Tripotent):
        return e
    return Tripotent.certify(model, e, tol)


@dataclass(frozen=True)
class PeirceDecomposition:
    """Peirce projections and subspaces of a tripotent.

    Built from the materialized operators via P2 = Q(e)^2,
    P1 = 2(L(e,e) - Q(e)^2) and P0 = Id - 2 L(e,e) + Q(e)^2.
    """

    tripotent: Tripotent
    p2: RealifiedMap
    p1: RealifiedMap
    p0: RealifiedMap
    s2: Subspace
    s1: Subspace
    s0: Subspace

    @property
    def model(self) -> TripleModel:
        return self.tripotent.model

    def projections(self) -> tuple[RealifiedMap, RealifiedMap, RealifiedMap]:
        return (self.p0, self.p1, self.p2)

    def subspaces(self) -> tuple[Subspace, Subspace, Subspace]:
        return (self.s0, self.s1, self.s2)

    def partition_residual(self) -> float:
        """Worst residual of P0+P1+P2 = Id and Pi Pj = delta_ij Pi."""
        ident = RealifiedMap.identity(self.model.shape)
        worst = (self.p0 + self.p1 + self.p2 - ident).op_norm
        projs = self.projections()
        for i, pi in enumerate(projs):
            for j, pj in enumerate(projs):
                target = pi.matrix if i == j else 0.0
                worst = max(worst, backend.op_norm(pi.matrix @ pj.matrix - target))
        return worst

    def rules_residual(self) -> float:
        """Worst residual of the Peirce multiplication rules.

        Checks {S2, S0, E} = {S0, S2, E} = 0 and {Si, Sj, Sk} inside
        S_{i-j+k} (zero when the index leaves {0, 1, 2}) over full bases.
        """
        model = self.model
        ambient = model.matrix_units()
        spaces = {0: self.s0, 1: self.s1, 2: self.s2}
        worst = 0.0
        for (i, j) in ((2, 0), (0, 2)):
            u, v = spaces[i], spaces[j]
            if u.dim and v.dim:
                prods = models.triple_product_batch(
                    model,
                    u.basis[:, None, None],
                    v.basis[None, :, None],
                    ambient[None, None, :],
                )
                norms = np.linalg.norm(prods.reshape(-1, model.dim), axis=1)
                worst = max(worst, float(norms.max(initial=0.0)))
        for i in (0, 1, 2):
            for j in (0, 1, 2):
                for k in (0, 1, 2):
                    u, w, v = spaces[i], spaces[j], spaces[k]
                    if not (u.dim and w.dim and v.dim):
                        continue
                    prods = models.triple_product_batch(
                        model,
                        u.basis[:, None, None],
                        w.basis[None, :, None],
                        v.basis[None, None, :],
                    ).reshape(-1, model.m, model.n)
                    target = i - j + k
                    if target in spaces:
                        worst = max(worst, float(spaces[target].residuals(prods).max(initial=0.0)))
                    else:
                        worst = max(worst, float(np.linalg.norm(
                            prods.reshape(prods.shape[0], -1), axis=1).max(initial=0.0)))
        return worst


def peirce_decompose(model: TripleModel, e, tol: float = TRIPOTENT_TOL) -> PeirceDecomposition:
    """Peirce decomposition of a (certified) tripotent."""
    trip = _as_tripotent(model, e, tol)
    lmap = models.materialize_L(model, trip.element, trip.element)
    qmap = models.materialize_Q(model, trip.element)
    q2 = qmap @ qmap
    ident = RealifiedMap.identity(model.shape)
    p2 = q2
    p1 = (lmap - q2).scaled(2.0)
    p0 = ident - lmap.scaled(2.0) + q2
    # Peirce projections are idempotent, so an absolute 0.5 singular-value
    # floor separates their images cleanly even when a projection vanishes.
    s2 = image(p2, RANK_TOL, model, floor=0.5)
    s1 = image(p1, RANK_TOL, model, floor=0.5)
    s0 = image(p0, RANK_TOL, model, floor=0.5)
    return PeirceDecomposition(trip, p2, p1, p0, s2, s1, s0)


class Peirce2Algebra:
    """The Peirce-2 subspace of a tripotent as a unital algebra.

    Product ``x o_e y = {x, e, y}``, involution ``x^{*_e} = {e, x, e}``,
    unit ``e``.  For matrix models the compressed associative operations
    ``a ._e b = a e^* b`` and ``a^{*_e} = e a^* e`` are exposed as well.
    """

    def __init__(self, model: TripleModel, e, tol: float = TRIPOTENT_TOL,
                 decomposition: PeirceDecomposition | None = None):
        self.model = model
        self.tripotent = _as_tripotent(model, e, tol)
        self.tol = tol
        self._dec = decomposition

    @property
    def decomposition(self) -> PeirceDecomposition:
        if self._dec is None:
            self._dec = peirce_decompose(self.model, self.tripotent)
        return self._dec

    @property
    def unit(self) -> np.ndarray:
        return self.tripotent.element

    def membership_residual(self, x) -> float:
        x = self.model.check(x)
        return self.decomposition.s2.residual(x) / max(1.0, backend.fro_norm(x))

    def require(self, x, tol: float | None = None) -> np.ndarray:
        tol = self.tol if tol is None else tol
        x = self.model.check(x)
        resid = self.membership_residual(x)
        if resid > tol:
            raise NotInPeirce2(f"Peirce-2 membership residual {resid:.3e} exceeds {tol:.1e}")
        return x

    def product(self, x, y) -> np.ndarray:
        x, y = self.require(x), self.require(y)
        return triple_product(self.model, x, self.unit, y)

    def involution(self, x) -> np.ndarray:
        x = self.require(x)
        return triple_product(self.model, self.unit, x, self.unit)

    def square(self, x) -> np.ndarray:
        return self.product(x, x)

    def u_map(self, a, x) -> np.ndarray:
        """U_a inside the Peirce-2 algebra: 2(a o x) o a - (a o a) o x."""
        prod = self.product
        return 2.0 * prod(prod(a, x), a) - prod(prod(a, a), x)

    def cstar_product(self, x, y) -> np.ndarray:
        """Compressed associative product a ._e b = a e^* b."""
        x, y = self.require(x), self.require(y)
        return x @ adjoint(self.unit) @ y

    def cstar_involution(self, x) -> np.ndarray:
        """Compressed involution a^{*_e} = e a^* e."""
        x = self.require(x)
        e = self.unit
        return e @ adjoint(x) @ e

    def positivity(self, x) -> tuple[float, float]:
        """(self-adjointness residual, spectral margin) of x in this algebra.

        x is positive here iff ``{e,x,e} = x`` and the Hermitian compression
        ``e^* x`` is positive semidefinite; the margin is its least
        eigenvalue (Hermiticity defect is folded into the first residual).
        """
        x = self.model.check(x)
        scale = max(1.0, backend.op_norm(x))
        # evaluated directly (no membership gate): a failing residual is
        # exactly how a foreign element shows up
        star = triple_product(self.model, self.unit, x, self.unit)
        sa = backend.op_norm(star - x) / scale
        h = adjoint(self.unit) @ x
        sa = max(sa, backend.op_norm(h - adjoint(h)) / scale)
        w = np.linalg.eigvalsh(0.5 * (h + adjoint(h)))
        margin = float(w.min()) if w.size else 0.0
        return sa, margin


def peirce2_algebra(model: TripleModel, e, tol: float = TRIPOTENT_TOL) -> Peirce2Algebra:
    return Peirce2Algebra(model, e, tol)


def tripotent_leq(model: TripleModel, e, v, tol: float = TRIPOTENT_TOL) -> bool:
    """Partial order on tripotents: e <= v iff v - e is a tripotent
    orthogonal to e (orthogonality tested through L(e, v - e) = 0)."""
    e = _as_tripotent(model, e, tol)
    v = _as_tripotent(model, v, tol)
    diff = v.element - e.element
    if tripotent_residual(model, diff) > tol:
        return False
    lnorm = models.materialize_L(model, e.element, diff).op_norm
    return lnorm <= tol * max(1.0, backend.op_norm(e.element) * backend.op_norm(diff))


def scalar_multiplication(lam: complex, shape: tuple[int, int]) -> RealifiedMap:
    """Multiplication by a complex scalar as a realified map."""
    c, s = float(np.real(lam)), float(np.imag(lam))
    block = np.array([[c, -s], [s, c]])
    return RealifiedMap(np.kron(np.eye(shape[0] * shape[1]), block), shape, shape)


def peirce_automorphism(model: TripleModel, e, lam: complex, variant: str = "S",
                        tol: float = TRIPOTENT_TOL) -> RealifiedMap:
    """The triple automorphisms attached to a tripotent and |lambda| = 1.

    Variant "S" is ``lam^2 P2 + lam P1 + P0``; variant "R" is
    ``P2 + lam P1 + lam^2 P0``.
    """
    if abs(abs(lam) - 1.0) > 1e-12:
        raise NotUnitModulus(f"|lambda| = {abs(lam)!r} is not 1")
    if variant not in ("S", "R"):
        raise ValueError("variant must be 'S' or 'R'")
    dec = e if isinstance(e, PeirceDecomposition) else peirce_decompose(model, e, tol)
    m1 = scalar_multiplication(lam, model.shape)
    m2 = scalar_multiplication(lam * lam, model.shape)
    if variant == "S":
        return (m2 @ dec.p2) + (m1 @ dec.p1) + dec.p0
    return dec.p2 + (m1 @ dec.p1) + (m2 @ dec.p0)
