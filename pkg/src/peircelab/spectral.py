"""Triple spectrum, odd functional calculus, range/support tripotents,
polar decomposition and generalized inverses.

All constructions go through one SVD of the element and recombine the
factors; roots are never computed by iterating on the element itself.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import backend
from .backend import RANK_TOL, adjoint
from .errors import ConvergenceFailure, NotNormOne, NotRegular, ShapeMismatch
from .models import SQUARE_KINDS, TripleModel
from .peirce import TRIPOTENT_TOL, Tripotent


@dataclass(frozen=True)
class TripleSpectrum:
    """Distinct nonzero singular values plus a rank-deficiency flag.

    In finite dimension an exact zero would always be isolated, so zero is
    excluded from the value set and recorded separately: ``includes_zero``
    is true iff the element is rank deficient (and false for the zero
    element, whose generated subtriple is trivial).
    """

    values: tuple[float, ...]
    includes_zero: bool

    @property
    def is_regular(self) -> bool:
        """Von Neumann regularity: the value set never reaches down to zero
        in finite dimension, so every element is regular."""
        return 0.0 not in self.values


def _merged_distinct(s: np.ndarray, merge_tol: float) -> tuple[float, ...]:
    out: list[float] = []
    for val in sorted(float(x) for x in s):
        if not out or val - out[-1] > merge_tol:
            out.append(val)
    return tuple(out)


def triple_spectrum(model: TripleModel, a, tol: float = RANK_TOL) -> TripleSpectrum:
    """The triple spectrum of an element (distinct singular values)."""
    a = model.check(a)
    s = np.linalg.svd(a, compute_uv=False)
    smax = float(s[0]) if s.size else 0.0
    if smax <= 0.0:
        return TripleSpectrum(values=(), includes_zero=False)
    keep = s > RANK_TOL * smax
    values = _merged_distinct(s[keep], tol * smax)
    return TripleSpectrum(values=values, includes_zero=bool((~keep).any()))


def odd_calculus(model: TripleModel, a, f: Callable[[float], float]) -> np.ndarray:
    """Apply a continuous function with f(0) = 0 to the singular values.

    With a = U S V^*, returns U f(S) V^*; f(t) = t reproduces a, and odd
    power functions act as triple powers.
    """
    a = model.check(a)
    if abs(f(0.0)) > 1e-12:
        raise ValueError("odd functional calculus requires f(0) = 0")
    dec = backend.svd(a)
    fs = np.array([f(float(t)) for t in dec.singular])
    return dec.reconstruct(fs)


def _sign_tripotent(model: TripleModel, dec: backend.SVDResult, mask: np.ndarray,
                    tol: float) -> Tripotent:
    signs = np.where(mask, 1.0, 0.0)
    return Tripotent.certify(model, dec.reconstruct(signs), tol)


def range_tripotent(model: TripleModel, a, tol: float = TRIPOTENT_TOL) -> Tripotent:
    """The smallest tripotent making the element positive in its Peirce-2
    algebra: U sign(S) V^* with the sign cut at the rank tolerance."""
    a = model.check(a)
    dec = backend.svd(a)
    return _sign_tripotent(model, dec, dec.retained(), tol)


def support_tripotent(model: TripleModel, a, tol: float = TRIPOTENT_TOL) -> Tripotent:
    """Partial isometry keeping only singular values within ``tol`` of 1.

    Requires a norm-one element; the cut uses the certification tolerance,
    not the rank tolerance.
    """
    a = model.check(a)
    norm = backend.op_norm(a)
    if abs(norm - 1.0) > tol:
        raise NotNormOne(f"element norm {norm!r} is not 1 within {tol:.1e}")
    dec = backend.svd(a)
    mask = np.abs(dec.singular - 1.0) <= tol
    return _sign_tripotent(model, dec, mask, tol)


@dataclass(frozen=True)
class PolarData:
    """x = isometry @ modulus with the two associated range projections."""

    isometry: Tripotent
    modulus: np.ndarray   # (x^* x)^{1/2}, positive semidefinite
    lp: np.ndarray        # isometry @ isometry^*
    rp: np.ndarray        # isometry^* @ isometry


def polar_decomposition(model: TripleModel, x, tol: float = TRIPOTENT_TOL) -> PolarData:
    """Polar decomposition in a square matrix model."""
    if model.kind not in SQUARE_KINDS:
        raise ShapeMismatch("polar decomposition requires a square model")
    x = model.check(x)
    dec = backend.svd(x)
    mask = dec.retained()
    ur = dec.left[:, :len(mask)][:, mask]
    vr = dec.right[:, :len(mask)][:, mask]
    iso = Tripotent.certify(model, ur @ adjoint(vr), tol)
    modulus = (dec.right[:, :len(dec.singular)] * dec.singular) @ adjoint(
        dec.right[:, :len(dec.singular)])
    lp = ur @ adjoint(ur)
    rp = vr @ adjoint(vr)
    resid = backend.op_norm(iso.element @ modulus - x)
    if resid > max(tol, 1e-10) * max(1.0, backend.op_norm(x)):
        raise ConvergenceFailure(f"polar reconstruction residual {resid:.3e}")
    return PolarData(isometry=iso, modulus=modulus, lp=lp, rp=rp)


def is_regular(model: TripleModel, a, tol: float = RANK_TOL) -> bool:
    """Von Neumann regularity via the triple spectrum.

    Regular iff zero does not belong to the triple spectrum; under the
    finite-dimensional convention (isolated zero excluded) this holds for
    every element, zero included.
    """
    return triple_spectrum(model, a, tol).is_regular


def generalized_inverse(model: TripleModel, a, tol: float = RANK_TOL) -> np.ndarray:
    """The generalized inverse: U S^+ V^* on retained singular values.

    Satisfies Q(a) a^+ = a, Q(a^+) a = a^+, commuting Q operators, and
    L(a, a^+) = L(r(a), r(a)).
    """
    a = model.check(a)
    if not is_regular(model, a, tol):  # unreachable in finite dimension
        raise NotRegular("element is not von Neumann regular")
    dec = backend.svd(a)
    mask = dec.retained()
    inv = np.zeros_like(dec.singular)
    inv[mask] = 1.0 / dec.singular[mask]
    return dec.reconstruct(inv)
