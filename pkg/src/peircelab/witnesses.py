"""Constructive witnesses for the Rickart-type characterizations.

Each construction returns a :class:`WitnessReport` bundling the produced
tripotent (or projection) with the residuals of every claim it is supposed
to satisfy, so callers and the verification harness can audit the result.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import backend, ideals, spectral
from .backend import RANK_TOL, adjoint
from .errors import (NotInnerIdeal, NotMutuallyOrthogonal, NotOrthogonal, NotPositive,
                     ShapeMismatch, VerificationFailed)
from .models import SQUARE_KINDS, TripleModel, jordan_product, u_map
from .peirce import (TRIPOTENT_TOL, Tripotent, peirce2_algebra, peirce_decompose)
from .subspaces import Subspace


@dataclass(frozen=True)
class WitnessReport:
    """Audit record of a witness construction.

    ``verified`` holds iff every containment residual is at or below the
    declared tolerance and the positivity margin is above ``-tol``.
    """

    witness: Tripotent
    containment_residuals: dict[str, float]
    positivity_margin: float
    verified: bool
    tol: float
    seed: int | None = None

    @staticmethod
    def build(witness: Tripotent, residuals: dict[str, float], margin: float,
              tol: float, seed: int | None = None) -> "WitnessReport":
        ok = all(r <= tol for r in residuals.values()) and margin >= -tol
        return WitnessReport(witness, {k: float(v) for k, v in residuals.items()},
                             float(margin), ok, tol, seed)

    @property
    def worst_residual(self) -> float:
        return max(self.containment_residuals.values(), default=0.0)


def _require_square(model: TripleModel, what: str) -> None:
    if model.kind not in SQUARE_KINDS:
        raise ShapeMismatch(f"{what} requires a square model")


def _require_ideal_orthogonal(model: TripleModel, j: Subspace, ann: Subspace,
                              tol: float) -> None:
    """Validate that J is an inner ideal contained in the given annihilator.

    Containment of J in the annihilator of the generators is equivalent to
    basis-pairwise orthogonality of J against the generated ideal, because
    orthogonality passes from a generator to the ideal it generates.
    """
    if not ideals.is_inner_ideal(model, j, max(tol, 1e-8)):
        raise NotInnerIdeal("J is not an inner ideal at the working tolerance")
    resid = j.inclusion_residual(ann)
    if resid > max(tol, 1e-8):
        raise NotOrthogonal(f"J is not orthogonal to the generated ideal (residual {resid:.3e})")


def _range_projection_of(model: TripleModel, h: np.ndarray, tol: float) -> np.ndarray:
    """Spectral projection of a PSD matrix onto its nonzero eigenvalues."""
    return backend.spectral_projection(h, max(tol, 1e-9), RANK_TOL)


def weakly_rickart_witness(model: TripleModel, x, j: Subspace,
                           tol: float = 1e-9) -> WitnessReport:
    """Partial isometry placing the ideal of x inside its Peirce-2 space and
    J inside the Peirce-0 space, with the polar projections realized.

    The witness is the polar-decomposition isometry of x; the report
    verifies A(x) in A2(e), J in A0(e), e^* e = RP(x), e e^* = LP(x) and
    positivity of x in the Peirce-2 algebra of e.
    """
    _require_square(model, "the weakly-Rickart witness")
    x = model.check(x)
    ann = ideals.orthogonal_annihilator(model, [x], tol)
    _require_ideal_orthogonal(model, j, ann, tol)
    generated = ideals.inner_ideal_generated(model, x, tol)

    polar = spectral.polar_decomposition(model, x)
    e = polar.isometry
    dec = peirce_decompose(model, e)
    scale = max(1.0, backend.op_norm(x))

    rp = _range_projection_of(model, adjoint(x) @ x, tol)
    lp = _range_projection_of(model, x @ adjoint(x), tol)
    alg = peirce2_algebra(model, e)
    sa, margin = alg.positivity(x)
    residuals = {
        "ideal_in_peirce2": generated.inclusion_residual(dec.s2),
        "j_in_peirce0": j.inclusion_residual(dec.s0),
        "rp": backend.op_norm(adjoint(e.element) @ e.element - rp),
        "lp": backend.op_norm(e.element @ adjoint(e.element) - lp),
        "self_adjoint_in_peirce2": sa,
        "tripotent": e.residual,
    }
    return WitnessReport.build(e, residuals, margin / scale, tol)


def wor_witness(model: TripleModel, x, j: Subspace, tol: float = 1e-9) -> WitnessReport:
    """Range tripotent witness: x positive in E2(e), J inside E0(e), and
    {x}-annihilator equal to E0(e) (verified as two inclusions)."""
    x = model.check(x)
    ann = ideals.orthogonal_annihilator(model, [x], tol)
    _require_ideal_orthogonal(model, j, ann, tol)

    e = spectral.range_tripotent(model, x)
    dec = peirce_decompose(model, e)
    scale = max(1.0, backend.op_norm(x))
    alg = peirce2_algebra(model, e)
    sa, margin = alg.positivity(x)
    residuals = {
        "j_in_peirce0": j.inclusion_residual(dec.s0),
        "self_adjoint_in_peirce2": sa,
        "annihilator_in_peirce0": ann.inclusion_residual(dec.s0),
        "peirce0_in_annihilator": dec.s0.inclusion_residual(ann),
        "tripotent": e.residual,
    }
    return WitnessReport.build(e, residuals, margin / scale, tol)


def polar_isometry_characterization(model: TripleModel, x, e, tol: float = 1e-9) -> bool:
    """Evaluate the order-theoretic description of the polar isometry:
    x is positive in the Peirce-2 algebra of e and the Peirce-0 space of e
    equals the annihilator of x.  True exactly for the polar isometry."""
    _require_square(model, "the polar-isometry characterization")
    x = model.check(x)
    trip = e if isinstance(e, Tripotent) else Tripotent.certify(model, e, max(tol, TRIPOTENT_TOL))
    alg = peirce2_algebra(model, trip)
    sa, margin = alg.positivity(x)
    scale = max(1.0, backend.op_norm(x))
    if sa > max(tol, 1e-8) or margin < -max(tol, 1e-8) * scale:
        return False
    dec = peirce_decompose(model, trip)
    ann = ideals.orthogonal_annihilator(model, [x], tol)
    return (ann.inclusion_residual(dec.s0) <= max(tol, 1e-8)
            and dec.s0.inclusion_residual(ann) <= max(tol, 1e-8))


def finite_reversed_witness(model: TripleModel, xs, j: Subspace,
                            tol: float = 1e-9) -> WitnessReport:
    """Witness with the reversed containments of the finite-algebra setting:
    J lands in the Peirce-2 space while every generated ideal A(x_i) lands
    in the Peirce-0 space.

    The per-element polar isometries are summed (finite addability of
    orthogonal partial isometries); a unitary built from the SVD factors of
    the sum carries its left support onto its right support, and the
    witness is ``(1 - w w^*) u^*`` for ``u = V W^*``.
    """
    _require_square(model, "the finite reversed witness")
    mats = [model.check(x) for x in xs]
    for i in range(len(mats)):
        for k in range(i + 1, len(mats)):
            if not ideals.is_orthogonal(model, mats[i], mats[k], max(tol, 1e-8)):
                raise NotMutuallyOrthogonal(f"family members {i} and {k} are not orthogonal")
    ann = ideals.orthogonal_annihilator(model, mats, tol)
    _require_ideal_orthogonal(model, j, ann, tol)
    generated = [ideals.inner_ideal_generated(model, x, tol) for x in mats]

    n = model.n
    w = np.zeros((n, n), dtype=complex)
    for x in mats:
        w = w + spectral.polar_decomposition(model, x).isometry.element
    wtrip = Tripotent.certify(model, w, max(tol, TRIPOTENT_TOL))
    dec_w = backend.svd(w)
    u = dec_w.right @ adjoint(dec_w.left)
    ww = w @ adjoint(w)
    e_mat = (np.eye(n) - ww) @ adjoint(u)
    e = Tripotent.certify(model, e_mat, max(tol, TRIPOTENT_TOL))

    dec = peirce_decompose(model, e)
    residuals = {
        "j_in_peirce2": j.inclusion_residual(dec.s2),
        "lp": backend.op_norm(e_mat @ adjoint(e_mat) - (np.eye(n) - ww)),
        "rp": backend.op_norm(adjoint(e_mat) @ e_mat - (np.eye(n) - adjoint(w) @ w)),
        "tripotent": e.residual,
        "family_sum_tripotent": wtrip.residual,
    }
    for idx, sub in enumerate(generated):
        residuals[f"ideal_{idx}_in_peirce0"] = sub.inclusion_residual(dec.s0)
    return WitnessReport.build(e, residuals, 0.0, tol)


def _positive_part_check(model: TripleModel, a: np.ndarray, tol: float) -> np.ndarray:
    a = model.check(a)
    scale = max(1.0, backend.op_norm(a))
    if backend.op_norm(a - adjoint(a)) > tol * scale:
        raise NotPositive("element is not self-adjoint")
    w = np.linalg.eigvalsh(0.5 * (a + adjoint(a)))
    if w.size and float(w.min()) < -tol * scale:
        raise NotPositive(f"least eigenvalue {w.min():.3e} is negative")
    return a


def jordan_range_projection(model: TripleModel, a, tol: float = 1e-9, *,
                            seed: int = 0, samples: int = 64) -> np.ndarray:
    """Range projection of a positive element in the Jordan-algebra sense.

    Returns the spectral projection p onto the nonzero eigenvalues and
    verifies on the way out: p o a = a; p o z = 0 for sampled self-adjoint
    z annihilating a quadratically; and p <= q for sampled projections q
    with q o a = a (minimality).  Sampling is seed-controlled.
    """
    p, report = range_projection_report(model, a, tol, seed=seed, samples=samples)
    if not report.verified:
        raise VerificationFailed(
            f"range projection verification failed: {report.containment_residuals}")
    return p


def range_projection_report(model: TripleModel, a, tol: float = 1e-9, *,
                            seed: int = 0, samples: int = 64
                            ) -> tuple[np.ndarray, WitnessReport]:
    _require_square(model, "the Jordan range projection")
    a = _positive_part_check(model, a, tol)
    scale = max(1.0, backend.op_norm(a))
    p = _range_projection_of(model, 0.5 * (a + adjoint(a)), tol)
    n = model.n
    comp = np.eye(n) - p
    rng = np.random.default_rng(np.random.SeedSequence([seed, n, samples]))

    unit_resid = backend.op_norm(jordan_product(p, a) - a) / scale
    annih_worst = 0.0
    minim_worst = 0.0
    for _ in range(samples):
        g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        z = comp @ g @ comp
        z = 0.5 * (z + adjoint(z))
        znorm = max(1.0, backend.op_norm(z))
        annih_worst = max(annih_worst,
                          backend.op_norm(u_map(z, a)) / (znorm ** 2 * scale),
                          backend.op_norm(jordan_product(p, z)) / znorm)
        h = comp @ (g + adjoint(g)) @ comp
        extra = backend.spectral_projection(h @ adjoint(h), tol, 0.5, floor=1e-12)
        q = p + extra
        minim_worst = max(minim_worst,
                          backend.op_norm(jordan_product(q, a) - a) / scale,
                          backend.op_norm(jordan_product(p, q) - p))
    residuals = {
        "unit_on_element": unit_resid,
        "annihilates_quadratic_kernel": annih_worst,
        "minimality": minim_worst,
        "projection": backend.op_norm(p @ p - p) + backend.op_norm(p - adjoint(p)),
    }
    trip = Tripotent.certify(model, p, max(tol, TRIPOTENT_TOL))
    report = WitnessReport.build(trip, residuals, 0.0, max(tol, 1e-8), seed)
    return p, report


_PEDERSEN_CASES = {
    "sajbw": ("generator", "generator"),
    "weaklyrickart": ("generator", "subspace"),
    "rickart": ("subspace", "generator"),
    "baer": ("subspace", "subspace"),
}


def _hereditary_subspace(model: TripleModel, sub: Subspace, tol: float) -> Subspace:
    if not ideals.is_inner_ideal(model, sub, max(tol, 1e-8)):
        raise NotInnerIdeal("subspace is not an inner ideal")
    if ideals.star_closure_residual(sub) > max(tol, 1e-8):
        raise NotInnerIdeal("subspace is not closed under the involution")
    return sub


def _strictly_positive_element(model: TripleModel, sub: Subspace) -> np.ndarray:
    """Sum of b b^* + b^* b over the basis: a positive element of a
    hereditary subalgebra whose range projection is the subalgebra's unit."""
    g = np.zeros(model.shape, dtype=complex)
    for b in sub.basis:
        g = g + b @ adjoint(b) + adjoint(b) @ b
    return g


def pedersen_witness(model: TripleModel, case: str, b, c, tol: float = 1e-9, *,
                     seed: int = 0, samples: int = 64
                     ) -> tuple[np.ndarray, WitnessReport]:
    """Positive element acting as a unit for B and annihilating C.

    ``case`` selects which of B and C is presented as the inner ideal
    generated by a single positive element and which as a whole hereditary
    subalgebra: "SAJBW" (both generated), "weaklyRickart" (B generated),
    "Rickart" (C generated), "Baer" (both subspaces).  The witness is the
    range projection of the generator of B, or of a strictly positive
    element of the subspace B.
    """
    _require_square(model, "the Pedersen-style witness")
    key = case.replace("-", "").replace("_", "").lower()
    if key not in _PEDERSEN_CASES:
        raise ValueError(f"unknown case {case!r}")
    b_form, c_form = _PEDERSEN_CASES[key]

    if b_form == "generator":
        b_gen = _positive_part_check(model, b, tol)
        b_sub = ideals.inner_ideal_generated(model, b_gen, tol)
        source = b_gen
    else:
        b_sub = _hereditary_subspace(model, b, tol)
        source = _strictly_positive_element(model, b_sub)
    if c_form == "generator":
        c_gen = _positive_part_check(model, c, tol)
        c_sub = ideals.inner_ideal_generated(model, c_gen, tol)
    else:
        c_sub = _hereditary_subspace(model, c, tol)

    if not ideals.subspaces_orthogonal(model, b_sub, c_sub, tol):
        raise NotOrthogonal("B and C are not orthogonal")

    e = _range_projection_of(model, source, tol)

    unit_worst = 0.0
    for vec in b_sub.basis:
        unit_worst = max(unit_worst, backend.op_norm(jordan_product(e, vec) - vec))
    annihilate_worst = 0.0
    for vec in c_sub.basis:
        annihilate_worst = max(annihilate_worst, backend.op_norm(jordan_product(e, vec)))
    rng = np.random.default_rng(np.random.SeedSequence([seed, model.n]))
    for _ in range(samples):
        if b_sub.dim:
            coeff = rng.standard_normal(b_sub.dim) + 1j * rng.standard_normal(b_sub.dim)
            coeff /= max(1.0, np.linalg.norm(coeff))
            vec = np.tensordot(coeff, b_sub.basis, axes=(0, 0))
            unit_worst = max(unit_worst, backend.op_norm(jordan_product(e, vec) - vec))
        if c_sub.dim:
            coeff = rng.standard_normal(c_sub.dim) + 1j * rng.standard_normal(c_sub.dim)
            coeff /= max(1.0, np.linalg.norm(coeff))
            vec = np.tensordot(coeff, c_sub.basis, axes=(0, 0))
            annihilate_worst = max(annihilate_worst, backend.op_norm(jordan_product(e, vec)))

    residuals = {
        "unit_on_b": unit_worst,
        "annihilates_c": annihilate_worst,
        "projection": backend.op_norm(e @ e - e) + backend.op_norm(e - adjoint(e)),
    }
    w = np.linalg.eigvalsh(0.5 * (e + adjoint(e)))
    margin = float(w.min()) if w.size else 0.0
    trip = Tripotent.certify(model, e, max(tol, TRIPOTENT_TOL))
    return e, WitnessReport.build(trip, residuals, margin, max(tol, 1e-8), seed)
