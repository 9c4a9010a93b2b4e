"""Config-driven randomized verification suites.

Every structural law exercised by this package is registered here as a
named property: a seeded trial function returning a worst-case residual.
``run_suite`` executes a list of :class:`PropertySpec` entries and folds
the outcomes into a deterministic, JSON-serializable report.

Sampling conventions: complex Ginibre matrices for generic elements,
``g g^*`` (optionally rank-deficient, optionally shifted) for positive
elements, spectral projections of random Hermitians for projections, and
SVD sign truncations of Ginibre matrices (with random rank) for
tripotents.  Regular elements get a singular-value shift that bounds their
condition number, mirroring the strictly-positive ``+ delta`` variant.
"""

from __future__ import annotations

import hashlib
import platform
import sys
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from . import approximation, backend, ideals, models, spectral, witnesses
from .backend import RANK_TOL, adjoint
from .errors import UnknownProperty
from .models import (TripleModel, jordan_power, jordan_product, t_operator, triple_product,
                     u_map, u_operator, u_pair_operator)
from .peirce import (Peirce2Algebra, Tripotent, peirce2_algebra, peirce_automorphism,
                     peirce_decompose, tripotent_leq, tripotent_residual)
from .subspaces import Subspace, image

DEFAULT_DIMS = (2, 3, 4)
ALL_MODELS = ("rect", "cstar", "jbstar")
SQUARE_MODELS = ("cstar", "jbstar")

_opn = backend.op_norm


def _unit(x: np.ndarray) -> np.ndarray:
    n = _opn(x)
    return x if n == 0.0 else x / n


def _model_for(kind: str, dim: int) -> TripleModel:
    if kind == "rect":
        return TripleModel.rectangular(dim, dim + 1)
    return TripleModel(kind, dim, dim)


class TrialContext:
    """Seeded sampler whose draws are hashed for replayable failure records."""

    def __init__(self, rng: np.random.Generator):
        self.rng = rng
        self._digest = hashlib.sha256()

    def _note(self, arr: np.ndarray) -> np.ndarray:
        self._digest.update(np.ascontiguousarray(arr).tobytes())
        return arr

    @property
    def input_digest(self) -> str:
        return self._digest.hexdigest()[:16]

    def ginibre(self, shape: tuple[int, ...]) -> np.ndarray:
        re = self.rng.standard_normal(shape)
        im = self.rng.standard_normal(shape)
        self._note(re)
        self._note(im)
        return (re + 1j * im) / np.sqrt(2.0)

    def element(self, model: TripleModel, normalize: bool = False) -> np.ndarray:
        g = self.ginibre(model.shape)
        return _unit(g) if normalize else g

    def hermitian(self, model: TripleModel) -> np.ndarray:
        g = self.ginibre(model.shape)
        return 0.5 * (g + adjoint(g))

    def positive(self, model: TripleModel, delta: float = 0.0,
                 rank: int | None = None) -> np.ndarray:
        n = model.n
        if rank is None:
            rank = int(self.rng.integers(1, n + 1))
            self._note(np.array([rank]))
        g = self.ginibre((n, max(rank, 1))) if rank else np.zeros((n, 1), dtype=complex)
        out = g @ adjoint(g)
        if delta:
            out = out + delta * np.eye(n)
        return out

    def projection(self, model: TripleModel) -> np.ndarray:
        h = self.hermitian(model)
        w, v = np.linalg.eigh(h)
        keep = w > 0.0
        vk = v[:, keep]
        return vk @ adjoint(vk)

    def unitary(self, n: int) -> np.ndarray:
        g = self.ginibre((n, n))
        u, _, vh = np.linalg.svd(g)
        return u @ vh

    def tripotent(self, model: TripleModel, rank: int | None = None,
                  min_rank: int = 0) -> Tripotent:
        g = self.ginibre(model.shape)
        dec = backend.svd(g)
        rmax = len(dec.singular)
        if rank is None:
            rank = int(self.rng.integers(min_rank, rmax + 1))
            self._note(np.array([rank]))
        signs = np.zeros(rmax)
        signs[:rank] = 1.0
        return Tripotent.certify(model, dec.reconstruct(signs))

    def regular(self, model: TripleModel, rank: int | None = None) -> np.ndarray:
        """Random element with singular values bounded away from zero on a
        random-rank support (condition number at most 11)."""
        g = self.ginibre(model.shape)
        dec = backend.svd(g)
        rmax = len(dec.singular)
        if rank is None:
            rank = int(self.rng.integers(1, rmax + 1))
            self._note(np.array([rank]))
        smax = dec.singular[0] if dec.singular.size else 1.0
        vals = np.zeros(rmax)
        vals[:rank] = dec.singular[:rank] + 0.1 * max(smax, 1e-3)
        return dec.reconstruct(vals)

    def unit_scalar(self) -> complex:
        t = self.rng.random()
        self._note(np.array([t]))
        return complex(np.exp(2j * np.pi * t))


@dataclass(frozen=True)
class PropertyDef:
    name: str
    anchor: str
    fn: Callable[[TrialContext, TripleModel, float], float]
    models: tuple[str, ...]
    tol: float
    trials: int
    covers: str | None = None   # module-invariant slug this property discharges


_REGISTRY: dict[str, PropertyDef] = {}


def _register(name: str, anchor: str, *, models: tuple[str, ...] = ALL_MODELS,
              tol: float = 1e-9, trials: int = 6, covers: str | None = None):
    def wrap(fn):
        _REGISTRY[name] = PropertyDef(name, anchor, fn, models, tol, trials, covers)
        return fn
    return wrap


def registered_properties() -> list[dict]:
    """The complete registry: names, checked statements and defaults."""
    return [
        {"name": p.name, "anchor": p.anchor, "models": list(p.models),
         "tol": p.tol, "trials": p.trials}
        for p in sorted(_REGISTRY.values(), key=lambda p: p.name)
    ]


# ---------------------------------------------------------------------------
# identity suite (triple product and Jordan laws)


@_register("jordan-identity", "(a o b) o a^2 = a o (b o a^2)",
           models=("jbstar",), tol=1e-10, trials=10, covers="jordan-identity")
def _prop_jordan_identity(ctx, model, tol):
    a, b = ctx.element(model), ctx.element(model)
    sq = jordan_product(a, a)
    resid = _opn(jordan_product(jordan_product(a, b), sq)
                 - jordan_product(a, jordan_product(b, sq)))
    return resid / max(1e-12, _opn(a) ** 3 * _opn(b))


@_register("fundamental-identity", "U_a U_b U_a = U_{U_a(b)}",
           models=("jbstar",), tol=1e-9, trials=8, covers="fundamental-identity")
def _prop_fundamental(ctx, model, tol):
    a = ctx.element(model, normalize=True)
    b = ctx.element(model, normalize=True)
    ua, ub = u_operator(model, a), u_operator(model, b)
    inner = u_operator(model, u_map(a, b))
    return (ua @ ub @ ua - inner).op_norm


@_register("ternary-identity",
           "L(x,y){a,b,c} = {L(x,y)a,b,c} - {a,L(y,x)b,c} + {a,b,L(x,y)c}",
           tol=1e-9, trials=10, covers="ternary-identity")
def _prop_ternary(ctx, model, tol):
    x, y, a, b, c = (ctx.element(model, normalize=True) for _ in range(5))
    lhs = triple_product(model, x, y, triple_product(model, a, b, c))
    rhs = (triple_product(model, triple_product(model, x, y, a), b, c)
           - triple_product(model, a, triple_product(model, y, x, b), c)
           + triple_product(model, a, b, triple_product(model, x, y, c)))
    return _opn(lhs - rhs)


@_register("power-identities",
           "U_a^n = U_{a^n};  2 T_{a^l} U_{a^m,a^n} = U_{a^{m+l},a^n} + U_{a^m,a^{n+l}}",
           models=("jbstar",), tol=1e-9, trials=6, covers="power-identities")
def _prop_powers(ctx, model, tol):
    a = ctx.element(model, normalize=True)
    ua = u_operator(model, a)
    worst = 0.0
    acc = ua
    for n in (2, 3, 4):
        acc = acc @ ua
        worst = max(worst, (acc - u_operator(model, jordan_power(a, n))).op_norm)
    ta = t_operator(model, a)
    powers = {k: jordan_power(a, k) for k in range(1, 5)}
    for (l, m, n) in ((1, 1, 1), (1, 2, 1), (2, 1, 1)):
        tl = t_operator(model, powers[l]) if l > 1 else ta
        lhs = (tl @ u_pair_operator(model, powers[m], powers[n])).scaled(2.0)
        rhs = (u_pair_operator(model, powers[m + l], powers[n])
               + u_pair_operator(model, powers[m], powers[n + l]))
        worst = max(worst, (lhs - rhs).op_norm)
    return worst


@_register("triple-nonexpansive", "norm{a,b,c} <= norm(a) norm(b) norm(c)",
           tol=1e-12, trials=10, covers="triple-nonexpansive")
def _prop_nonexpansive(ctx, model, tol):
    a, b, c = ctx.element(model), ctx.element(model), ctx.element(model)
    denom = max(1e-12, _opn(a) * _opn(b) * _opn(c))
    return max(0.0, _opn(triple_product(model, a, b, c)) / denom - 1.0)


@_register("gelfand-naimark", "norm{a,a,a} = norm(a)^3 (and norm U_a(a^*) = norm(a)^3)",
           tol=1e-6, trials=10)
def _prop_gelfand_naimark(ctx, model, tol):
    a = ctx.element(model, normalize=True)
    worst = abs(_opn(triple_product(model, a, a, a)) - 1.0)
    if model.kind == "jbstar":
        worst = max(worst, abs(_opn(u_map(a, adjoint(a))) - 1.0))
    return worst


@_register("triple-product-structure",
           "{a,b,c} = {c,b,a}, linear in the outer slots, conjugate linear "
           "in the middle slot",
           tol=1e-12, trials=8)
def _prop_triple_structure(ctx, model, tol):
    a, b, c, d = (ctx.element(model, normalize=True) for _ in range(4))
    lam = ctx.unit_scalar() * 1.7
    worst = _opn(triple_product(model, a, b, c) - triple_product(model, c, b, a))
    lhs = triple_product(model, lam * a + d, b, c)
    rhs = lam * triple_product(model, a, b, c) + triple_product(model, d, b, c)
    worst = max(worst, _opn(lhs - rhs))
    mid = triple_product(model, a, lam * b, c)
    worst = max(worst, _opn(mid - np.conj(lam) * triple_product(model, a, b, c)))
    return worst


# ---------------------------------------------------------------------------
# Peirce calculus


@_register("peirce-partition", "P0 + P1 + P2 = id;  Pi Pj = delta_ij Pi",
           tol=1e-9, trials=6)
def _prop_peirce_partition(ctx, model, tol):
    dec = peirce_decompose(model, ctx.tripotent(model))
    return dec.partition_residual()


@_register("peirce-rules",
           "{S2,S0,E} = {S0,S2,E} = 0;  {Si,Sj,Sk} inside S_{i-j+k}",
           tol=1e-9, trials=6, covers="peirce-rules")
def _prop_peirce_rules(ctx, model, tol):
    dec = peirce_decompose(model, ctx.tripotent(model))
    return dec.rules_residual()


@_register("peirce-projection-nonexpansive", "norm(Pi) <= 1",
           tol=1e-10, trials=6, covers="peirce-projections-nonexpansive")
def _prop_peirce_nonexpansive(ctx, model, tol):
    dec = peirce_decompose(model, ctx.tripotent(model))
    return max(0.0, max(p.op_norm for p in dec.projections()) - 1.0)


@_register("peirce2-algebra-axioms",
           "Peirce-2 is a unital algebra with isometric involution and "
           "norm U_x(x^{*e}) = norm(x)^3",
           tol=1e-6, trials=6)
def _prop_peirce2_axioms(ctx, model, tol):
    e = ctx.tripotent(model, min_rank=1)
    dec = peirce_decompose(model, e)
    alg = Peirce2Algebra(model, e, decomposition=dec)
    x = _unit(dec.p2.apply(ctx.element(model)))
    y = _unit(dec.p2.apply(ctx.element(model)))
    prod, inv, unit = alg.product, alg.involution, alg.unit
    worst = _opn(prod(x, y) - prod(y, x))
    worst = max(worst, _opn(prod(unit, x) - x))
    sq = prod(x, x)
    worst = max(worst, _opn(prod(prod(x, y), sq) - prod(x, prod(y, sq))))
    worst = max(worst, _opn(inv(inv(x)) - x))
    worst = max(worst, _opn(inv(prod(x, y)) - prod(inv(x), inv(y))))
    worst = max(worst, max(0.0, _opn(prod(x, y)) - _opn(x) * _opn(y) - 1e-12))
    gn = abs(_opn(alg.u_map(x, inv(x))) - _opn(x) ** 3) / max(1e-12, _opn(x) ** 3)
    return max(worst, gn)


@_register("peirce2-compression",
           "for a projection p: {x,p,y} = (xy + yx)/2 and {p,x,p} = p x^* p on p M p",
           models=("jbstar",), tol=1e-10, trials=8, covers="peirce2-compression")
def _prop_peirce2_compression(ctx, model, tol):
    p = ctx.projection(model)
    x = _unit(p @ ctx.element(model) @ p)
    y = _unit(p @ ctx.element(model) @ p)
    r1 = _opn(triple_product(model, x, p, y) - 0.5 * (x @ y + y @ x))
    r2 = _opn(triple_product(model, p, x, p) - p @ adjoint(x) @ p)
    return max(r1, r2)


def _order_booleans(model, e, f, cut: float) -> tuple[bool, bool, bool]:
    b1 = _opn(jordan_product(e, f) - e) <= cut
    img_f = image(u_operator(model, f), RANK_TOL, model, floor=0.5)
    b2 = img_f.residual(e) <= cut * max(1.0, backend.fro_norm(e))
    img_e = image(u_operator(model, e), RANK_TOL, model, floor=0.5)
    b3 = img_e.inclusion_residual(img_f) <= cut
    return b1, b2, b3


@_register("idempotent-order",
           "e o f = e  <=>  e in U_f(M)  <=>  U_e(M) inside U_f(M)",
           models=("jbstar",), tol=1e-9, trials=5, covers="idempotent-order")
def _prop_idempotent_order(ctx, model, tol):
    cut = 1e-6
    p = ctx.projection(model)
    comp = np.eye(model.n) - p
    h = comp @ ctx.hermitian(model) @ comp
    extra = backend.spectral_projection(h @ adjoint(h), 1e-9, 0.5, floor=1e-12)
    nested = _order_booleans(model, p, p + extra, cut)
    generic = _order_booleans(model, p, ctx.projection(model), cut)
    ok = len(set(nested)) == 1 and nested[0] and len(set(generic)) == 1
    return 0.0 if ok else 1.0


@_register("peirce-automorphism-law",
           "S_lam = lam^2 P2 + lam P1 + P0 and R_lam = P2 + lam P1 + lam^2 P0 "
           "are triple automorphisms for |lam| = 1",
           tol=1e-9, trials=3)
def _prop_automorphism(ctx, model, tol):
    dec = peirce_decompose(model, ctx.tripotent(model))
    a, b, c = (ctx.element(model, normalize=True) for _ in range(3))
    abc = triple_product(model, a, b, c)
    worst = 0.0
    for variant in ("S", "R"):
        ident = peirce_automorphism(model, dec, 1.0, variant)
        worst = max(worst, (ident - backend.RealifiedMap.identity(model.shape)).op_norm)
        for k in range(8):
            lam = complex(np.exp(2j * np.pi * k / 8))
            auto = peirce_automorphism(model, dec, lam, variant)
            lhs = auto.apply(abc)
            rhs = triple_product(model, auto.apply(a), auto.apply(b), auto.apply(c))
            worst = max(worst, _opn(lhs - rhs))
    return worst


# ---------------------------------------------------------------------------
# spectral calculus


@_register("generalized-inverse-identities",
           "Q(a)a' = a;  Q(a')a = a';  [Q(a),Q(a')] = 0;  L(a,a') = L(r,r)",
           tol=1e-9, trials=4, covers="generalized-inverse-identities")
def _prop_ginv_identities(ctx, model, tol):
    a = _unit(ctx.regular(model))
    d = spectral.generalized_inverse(model, a)
    worst = _opn(triple_product(model, a, d, a) - a)
    worst = max(worst, _opn(triple_product(model, d, a, d) - d) / max(1.0, _opn(d)))
    qa = models.materialize_Q(model, a)
    qd = models.materialize_Q(model, d)
    comm = (qa @ qd - qd @ qa).op_norm / max(1.0, qa.op_norm * qd.op_norm)
    worst = max(worst, comm)
    r = spectral.range_tripotent(model, a)
    diff = (models.materialize_L(model, a, d)
            - models.materialize_L(model, r.element, r.element)).op_norm
    return max(worst, diff)


@_register("range-tripotent-minimality",
           "r(a) <= v for every tripotent v with a positive in E2(v)",
           tol=1e-9, trials=5, covers="range-tripotent-minimality")
def _prop_range_minimality(ctx, model, tol):
    v = ctx.tripotent(model, min_rank=1)
    dec = backend.svd(v.element)
    k = dec.rank()
    wr = dec.right[:, :len(dec.singular)][:, dec.retained()]
    j = int(ctx.rng.integers(1, k + 1))
    ctx._note(np.array([j]))
    g = ctx.ginibre((k, j))
    a = v.element @ (wr @ (g @ adjoint(g)) @ adjoint(wr))
    r = spectral.range_tripotent(model, a)
    return 0.0 if tripotent_leq(model, r, v, max(tol, 1e-9)) else 1.0


@_register("invertible-peirce2-regular",
           "invertible elements of E2(e) are regular with unitary range tripotent in E2(e)",
           tol=1e-9, trials=2, covers="invertible-peirce2-regular")
def _prop_invertible_regular(ctx, model, tol):
    e = ctx.tripotent(model, min_rank=1)
    dec = peirce_decompose(model, e)
    z = dec.p2.apply(ctx.element(model))
    if _opn(z) < 1e-9:
        return 0.0
    x = e.element + 0.4 * _unit(z)
    r = spectral.range_tripotent(model, x)
    worst = dec.s2.residual(r.element)
    rdec = peirce_decompose(model, r)
    worst = max(worst, rdec.s2.inclusion_residual(dec.s2), dec.s2.inclusion_residual(rdec.s2))
    d = spectral.generalized_inverse(model, x)
    alg = Peirce2Algebra(model, r, decomposition=rdec)
    worst = max(worst, _opn(alg.product(x, d) - r.element))
    worst = max(worst, _opn(alg.product(alg.product(x, x), d) - x))
    return worst


@_register("regular-range-tripotent-prop",
           "for regular a: R(a) = r(a), a' is the Peirce-2 inverse, R(a') = R(a)",
           tol=1e-8, trials=3, covers="regular-range-tripotent-prop")
def _prop_regular_prop(ctx, model, tol):
    a = _unit(ctx.regular(model))
    r1 = spectral.range_tripotent(model, a)
    gram = adjoint(a) @ a
    w, v = backend.hermitian_eigen(gram)
    keep = w > RANK_TOL * max(float(w.max(initial=0.0)), 1e-300)
    inv_sqrt = np.zeros_like(w)
    inv_sqrt[keep] = 1.0 / np.sqrt(w[keep])
    r2 = a @ ((v * inv_sqrt) @ adjoint(v))
    worst = _opn(r1.element - r2)
    d = spectral.generalized_inverse(model, a)
    rd = spectral.range_tripotent(model, d)
    worst = max(worst, _opn(rd.element - r1.element))
    alg = peirce2_algebra(model, r1)
    worst = max(worst, _opn(alg.product(a, d) - r1.element) / max(1.0, _opn(d)))
    worst = max(worst, _opn(alg.product(alg.product(a, a), d) - a) / max(1.0, _opn(d)))
    return worst


@_register("support-below-range", "u(a) <= a <= r(a): the support tripotent sits below the range tripotent",
           tol=1e-9, trials=6, covers="support-below-range")
def _prop_support_range(ctx, model, tol):
    a = _unit(ctx.element(model))
    u = spectral.support_tripotent(model, a)
    r = spectral.range_tripotent(model, a)
    return 0.0 if tripotent_leq(model, u, r, max(tol, 1e-9)) else 1.0


# ---------------------------------------------------------------------------
# orthogonality, annihilators, inner ideals


def _orthogonal_pair(ctx, model):
    """(a, b) with b built inside the Peirce-0 corner of a's range tripotent.

    b snaps to exact zero when the corner is trivial, so callers never see
    roundoff residue masquerading as an element.
    """
    a = ctx.element(model)
    dec = backend.svd(a)
    mask = dec.retained()
    ul = dec.left[:, :len(mask)][:, mask]
    vr = dec.right[:, :len(mask)][:, mask]
    lp = ul @ adjoint(ul)
    rp = vr @ adjoint(vr)
    g = ctx.ginibre(model.shape)
    b = (np.eye(model.m) - lp) @ g @ (np.eye(model.n) - rp)
    if _opn(b) <= 1e-12 * _opn(g):
        b = np.zeros(model.shape, dtype=complex)
    return a, b


@_register("orthogonality-symmetry",
           "a orthogonal to b iff b orthogonal to a (and iff a b^* = b^* a = 0)",
           tol=1e-9, trials=5, covers="orthogonality-symmetry")
def _prop_orthogonality_symmetry(ctx, model, tol):
    cut = 1e-8
    pairs = [_orthogonal_pair(ctx, model),
             (ctx.element(model), ctx.element(model))]
    for a, b in pairs:
        fwd = ideals.is_orthogonal(model, a, b, cut)
        bwd = ideals.is_orthogonal(model, b, a, cut)
        alg = ideals.cstar_orthogonality_residual(a, b) <= cut * max(1.0, _opn(a) * _opn(b))
        if not (fwd == bwd == alg):
            return 1.0
    if not ideals.is_orthogonal(model, *pairs[0], cut):
        return 1.0
    return 0.0


@_register("generated-ideals-orthogonality",
           "a orthogonal to b implies E(a) orthogonal to E(b)",
           tol=1e-9, trials=2, covers="generated-ideals-orthogonality")
def _prop_generated_orthogonality(ctx, model, tol):
    a, b = _orthogonal_pair(ctx, model)
    ea = ideals.inner_ideal_generated(model, a, tol)
    eb = ideals.inner_ideal_generated(model, b, tol)
    if ea.dim == 0 or eb.dim == 0:
        return 0.0
    ann = ideals.orthogonal_annihilator(model, list(ea.basis), tol)
    return eb.inclusion_residual(ann)


@_register("annihilator-antitonicity",
           "S1 inside S2 implies ann(S2) inside ann(S1);  S inside ann(ann(S));  "
           "span(S) meets ann(S) only at 0",
           tol=1e-9, trials=2, covers="annihilator-antitonicity")
def _prop_annihilator_antitonicity(ctx, model, tol):
    x1 = ctx.element(model, normalize=True)
    x2 = ctx.element(model, normalize=True)
    ann1 = ideals.orthogonal_annihilator(model, [x1], tol)
    ann2 = ideals.orthogonal_annihilator(model, [x1, x2], tol)
    worst = ann2.inclusion_residual(ann1)
    bidual = ideals.orthogonal_annihilator(model, list(ann2.basis), tol)
    worst = max(worst, bidual.residual(x1), bidual.residual(x2))
    for x in (x1, x2):
        inside = ann2.residual(x) / max(backend.fro_norm(x), 1e-12)
        worst = max(worst, abs(1.0 - inside))
    return worst


@_register("positive-annihilator-equivalence",
           "for positive S: quadratic annihilation and triple orthogonality agree "
           "on self-adjoint elements (both sampling directions)",
           models=("jbstar",), tol=1e-9, trials=2, covers="positive-annihilator-equivalence")
def _prop_positive_annihilator(ctx, model, tol, samples: int = 64):
    n = model.n
    count = int(ctx.rng.integers(1, 3))
    ctx._note(np.array([count]))
    gens = [ctx.positive(model) for _ in range(count)]
    gens = [g / max(1.0, _opn(g)) for g in gens]
    ann = ideals.orthogonal_annihilator(model, gens, tol)
    p = backend.spectral_projection(sum(gens), 1e-9)
    comp = np.eye(n) - p
    worst = 0.0
    for _ in range(samples):
        h = ctx.hermitian(model)
        z = ann.project(h)
        z = 0.5 * (z + adjoint(z))
        zn = max(1.0, _opn(z))
        for s in gens:
            worst = max(worst, _opn(u_map(z, s)) / zn ** 2)
        w = comp @ ctx.hermitian(model) @ comp
        wn = max(backend.fro_norm(w), 1e-12)
        worst = max(worst, ann.residual(w) / wn)
        for s in gens:
            worst = max(worst, _opn(u_map(w, s)) / max(1.0, _opn(w)) ** 2)
    return worst


@_register("positive-product-orthogonality",
           "for positive h: h o x = 0 iff x orthogonal to h",
           models=("jbstar",), tol=1e-9, trials=4, covers="positive-product-orthogonality")
def _prop_positive_product(ctx, model, tol):
    cut = 1e-8
    h = ctx.positive(model)
    h = h / max(1.0, _opn(h))
    p = backend.spectral_projection(h, 1e-9)
    comp = np.eye(model.n) - p
    worst = 0.0
    x1 = comp @ ctx.element(model) @ comp
    if _opn(x1) > 1e-9:
        worst = max(worst, _opn(jordan_product(h, x1)) / _opn(x1))
        if not ideals.is_orthogonal(model, x1, h, cut):
            worst = max(worst, 1.0)
    x2 = ctx.element(model)
    prod_zero = _opn(jordan_product(h, x2)) <= cut * max(1.0, _opn(x2))
    orth = ideals.is_orthogonal(model, x2, h, cut)
    if prod_zero != orth:
        worst = max(worst, 1.0)
    return worst


# ---------------------------------------------------------------------------
# witness constructions


@_register("unit-product-equivalences",
           "for positive a, x: a x = x iff a o x = x iff U_a(x) = x",
           models=("jbstar",), tol=1e-9, trials=6, covers="unit-product-equivalences")
def _prop_unit_equivalences(ctx, model, tol):
    n = model.n
    v = ctx.unitary(n)
    k = int(ctx.rng.integers(1, n + 1))
    ctx._note(np.array([k]))
    lam = np.ones(n)
    if n > k:
        lam[k:] = 0.1 + 0.7 * ctx.rng.random(n - k)
        ctx._note(lam[k:])
    a = (v * lam) @ adjoint(v)
    g = ctx.ginibre((k, k))
    x = v[:, :k] @ (g @ adjoint(g)) @ adjoint(v[:, :k])
    scale = max(1.0, _opn(x))
    worst = _opn(a @ x - x) / scale
    worst = max(worst, _opn(jordan_product(a, x) - x) / scale)
    worst = max(worst, _opn(u_map(a, x) - x) / scale)
    cut = 1e-6
    a2 = ctx.positive(model, rank=n)
    a2 = 0.8 * a2 / max(_opn(a2), 1e-12)
    x2 = ctx.positive(model)
    b1 = _opn(a2 @ x2 - x2) <= cut * max(1.0, _opn(x2))
    b2 = _opn(jordan_product(a2, x2) - x2) <= cut * max(1.0, _opn(x2))
    b3 = _opn(u_map(a2, x2) - x2) <= cut * max(1.0, _opn(x2))
    if not (b1 == b2 == b3):
        worst = max(worst, 1.0)
    return worst


@_register("rp-operator-commutation",
           "if positive a operator commutes with b then RP(a) operator commutes with b",
           models=("jbstar",), tol=1e-9, trials=5, covers="rp-operator-commutation")
def _prop_rp_commutation(ctx, model, tol):
    n = model.n
    a = ctx.positive(model)
    w, v = backend.hermitian_eigen(a)
    coeffs = ctx.rng.standard_normal(3)
    ctx._note(coeffs)
    diag = ctx.ginibre((n,))
    b = coeffs[0] * np.eye(n) + coeffs[1] * a + coeffs[2] * (a @ a)
    b = b + (v * diag) @ adjoint(v)
    b = _unit(b)
    p = backend.spectral_projection(a, 1e-9)
    units = model.matrix_units()
    lhs = jordan_product(p[None], jordan_product(b[None], units))
    rhs = jordan_product(jordan_product(p[None], units), b[None])
    return float(np.linalg.norm((lhs - rhs).reshape(len(units), -1), axis=1).max())


@_register("rp-peirce2-inheritance",
           "range projections computed in a corner p M p agree with the global ones",
           models=("jbstar",), tol=1e-9, trials=3, covers="rp-peirce2-inheritance")
def _prop_rp_inheritance(ctx, model, tol):
    p = ctx.projection(model)
    rank = int(round(float(np.real(np.trace(p)))))
    if rank == 0:
        return 0.0
    a = p @ ctx.positive(model, rank=model.n) @ p
    global_rp = backend.spectral_projection(a, 1e-9)
    w, v = backend.hermitian_eigen(p)
    basis = v[:, :rank]
    corner = adjoint(basis) @ a @ basis
    corner_rp = backend.spectral_projection(corner, 1e-9)
    embedded = basis @ corner_rp @ adjoint(basis)
    comp = np.eye(model.n) - p
    return max(_opn(global_rp - embedded), _opn(comp @ global_rp), _opn(global_rp @ comp))


@_register("wor-positive-range-projection",
           "the range tripotent of a positive element is a projection",
           models=SQUARE_MODELS, tol=1e-10, trials=6, covers="wor-positive-range-projection")
def _prop_positive_range_projection(ctx, model, tol):
    a = ctx.positive(model)
    r = spectral.range_tripotent(model, a).element
    return max(_opn(r - adjoint(r)), _opn(r @ r - r))


@_register("peirce2-rickart-compatibility",
           "for positive a in E2(e): r(a) lies in E2(e) and equals P2(e) r(a)",
           tol=1e-9, trials=3, covers="peirce2-rickart-compatibility")
def _prop_peirce2_compatibility(ctx, model, tol):
    e = ctx.tripotent(model)
    dec_e = backend.svd(e.element)
    k = dec_e.rank()
    if k == 0:
        return 0.0
    wr = dec_e.right[:, :len(dec_e.singular)][:, dec_e.retained()]
    g = ctx.ginibre((k, k))
    a = e.element @ (wr @ (g @ adjoint(g)) @ adjoint(wr))
    r = spectral.range_tripotent(model, a)
    dec = peirce_decompose(model, e)
    return max(dec.s2.residual(r.element),
               _opn(dec.p2.apply(r.element) - r.element))


@_register("wor-range-tripotent-uniqueness",
           "the tripotent with x positive in E2(e) and ann(x) = E0(e) is unique",
           tol=1e-8, trials=2, covers="wor-range-tripotent-uniqueness")
def _prop_wor_uniqueness(ctx, model, tol):
    x = _unit(ctx.regular(model))
    rep = witnesses.wor_witness(model, x, Subspace.zero(model), 1e-9)
    worst = rep.worst_residual + (0.0 if rep.verified else 1.0)
    gram = adjoint(x) @ x
    w, v = backend.hermitian_eigen(gram)
    keep = w > RANK_TOL * max(float(w.max(initial=0.0)), 1e-300)
    inv_sqrt = np.zeros_like(w)
    inv_sqrt[keep] = 1.0 / np.sqrt(w[keep])
    e2 = x @ ((v * inv_sqrt) @ adjoint(v))
    worst = max(worst, tripotent_residual(model, e2))
    alg = peirce2_algebra(model, Tripotent.certify(model, e2, 1e-6))
    sa, margin = alg.positivity(x)
    worst = max(worst, sa, max(0.0, -margin))
    dec2 = peirce_decompose(model, Tripotent.certify(model, e2, 1e-6))
    ann = ideals.orthogonal_annihilator(model, [x], 1e-9)
    worst = max(worst, ann.inclusion_residual(dec2.s0), dec2.s0.inclusion_residual(ann))
    worst = max(worst, _opn(rep.witness.element - e2))
    return worst


@_register("polar-characterization-equivalence",
           "e is the polar isometry of x iff x is positive in A2(e) and A0(e) = ann(x)",
           models=("cstar",), tol=1e-9, trials=2, covers=None)
def _prop_polar_characterization(ctx, model, tol):
    x = ctx.element(model, normalize=True)
    e_true = spectral.polar_decomposition(model, x).isometry
    if not witnesses.polar_isometry_characterization(model, x, e_true, tol):
        return 1.0
    if witnesses.polar_isometry_characterization(
            model, x, Tripotent.certify(model, -e_true.element), tol):
        return 1.0
    dec = peirce_decompose(model, e_true)
    extra = dec.p0.apply(ctx.element(model))
    if _opn(extra) > 1e-6:
        bigger = e_true.element + spectral.range_tripotent(model, extra).element
        if witnesses.polar_isometry_characterization(
                model, x, Tripotent.certify(model, bigger), tol):
            return 1.0
    v3 = ctx.tripotent(model)
    if witnesses.polar_isometry_characterization(model, x, v3, tol):
        if _opn(v3.element - e_true.element) > 1e-6:
            return 1.0
    return 0.0


@_register("lp-rp-murray-von-neumann",
           "the polar isometry links the left and right projections: "
           "e e^* = LP(x), e^* e = RP(x)",
           models=("cstar",), tol=1e-9, trials=5)
def _prop_lp_rp(ctx, model, tol):
    x = ctx.element(model, normalize=True)
    pol = spectral.polar_decomposition(model, x)
    e = pol.isometry.element
    lp = backend.spectral_projection(x @ adjoint(x), 1e-9)
    rp = backend.spectral_projection(adjoint(x) @ x, 1e-9)
    return max(_opn(e @ adjoint(e) - lp), _opn(adjoint(e) @ e - rp),
               _opn(e @ pol.modulus - x))


@_register("weakly-rickart-witness",
           "polar isometry witness: A(x) in A2(e), J in A0(e), e^*e = RP(x), "
           "e e^* = LP(x), x positive in A2(e)",
           models=("cstar",), tol=1e-9, trials=2)
def _prop_wr_witness(ctx, model, tol):
    x = ctx.element(model, normalize=True)
    j = ideals.orthogonal_annihilator(model, [x], tol)
    rep = witnesses.weakly_rickart_witness(model, x, j, tol)
    return rep.worst_residual + (0.0 if rep.verified else 1.0)


@_register("finite-reversed-witness",
           "reversed containments at finite-family scale: J in A2(e), A(x_i) in A0(e)",
           models=("cstar",), tol=1e-9, trials=2)
def _prop_reversed_witness(ctx, model, tol):
    x1 = ctx.element(model, normalize=True)
    family = [x1]
    dec = backend.svd(x1)
    mask = dec.retained()
    ul = dec.left[:, :len(mask)][:, mask]
    vr = dec.right[:, :len(mask)][:, mask]
    comp_l = np.eye(model.m) - ul @ adjoint(ul)
    comp_r = np.eye(model.n) - vr @ adjoint(vr)
    x2 = comp_l @ ctx.element(model) @ comp_r
    if _opn(x2) > 1e-6:
        family.append(_unit(x2))
    j = ideals.orthogonal_annihilator(model, family, tol)
    rep = witnesses.finite_reversed_witness(model, family, j, tol)
    return rep.worst_residual + (0.0 if rep.verified else 1.0)


@_register("jordan-range-projection-minimality",
           "RP(a) is the least projection with p o a = a and kills the "
           "quadratic annihilator of a",
           models=("jbstar",), tol=1e-8, trials=2)
def _prop_jrp_minimality(ctx, model, tol):
    a = ctx.positive(model)
    seed = int(ctx.rng.integers(2 ** 31))
    _, rep = witnesses.range_projection_report(model, a, 1e-9, seed=seed, samples=16)
    return rep.worst_residual + (0.0 if rep.verified else 1.0)


@_register("pedersen-witness-cases",
           "a positive unit for B annihilating C exists in the four "
           "generator/subspace presentations",
           models=("jbstar",), tol=1e-8, trials=2)
def _prop_pedersen(ctx, model, tol):
    n = model.n
    p1 = ctx.projection(model)
    comp = np.eye(n) - p1
    h = comp @ ctx.hermitian(model) @ comp
    p2 = backend.spectral_projection(h @ adjoint(h), 1e-9, 0.5, floor=1e-12)
    case = ("SAJBW", "weaklyRickart", "Rickart", "Baer")[int(ctx.rng.integers(4))]
    units = model.matrix_units()

    def corner_sub(p):
        mats = np.einsum("ij,kjl,lm->kim", p, units, p)
        return Subspace.from_vectors(mats, 1e-9, model)

    def corner_gen(p):
        g = ctx.ginibre((n, n))
        return p @ (g @ adjoint(g)) @ p

    b = corner_gen(p1) if case in ("SAJBW", "weaklyRickart") else corner_sub(p1)
    c = corner_gen(p2) if case in ("SAJBW", "Rickart") else corner_sub(p2)
    _, rep = witnesses.pedersen_witness(model, case, b, c, 1e-9,
                                        seed=int(ctx.rng.integers(2 ** 31)), samples=8)
    return rep.worst_residual + (0.0 if rep.verified else 1.0)


@_register("sajbw-to-saw",
           "a tripotent separating orthogonal x, y yields a positive u with "
           "u x = x and u y = 0",
           models=("cstar",), tol=1e-9, trials=3)
def _prop_sajbw_saw(ctx, model, tol):
    x, y = _orthogonal_pair(ctx, model)
    x = _unit(x)
    e = spectral.range_tripotent(model, x)
    dec = peirce_decompose(model, e)
    worst = dec.s2.residual(x) / max(1.0, backend.fro_norm(x))
    if _opn(y) > 1e-9:
        y = _unit(y)
        worst = max(worst, dec.s0.residual(y) / max(1.0, backend.fro_norm(y)))
    u = e.element @ adjoint(e.element)
    worst = max(worst, _opn(u @ x - x), _opn(u - adjoint(u)))
    if _opn(y) > 1e-9:
        worst = max(worst, _opn(u @ y))
    eigs = np.linalg.eigvalsh(0.5 * (u + adjoint(u)))
    worst = max(worst, max(0.0, -float(eigs.min(initial=0.0))))
    return worst


# ---------------------------------------------------------------------------
# approximation theorems


@_register("projection-approximation-bound",
           "positive elements are eps-approximated by grid combinations of at "
           "most ceil(norm/eps)+1 orthogonal spectral projections",
           models=("jbstar",), tol=1e-9, trials=4)
def _prop_projection_approx(ctx, model, tol):
    a = ctx.positive(model)
    worst = 0.0
    for eps in (0.5, 0.1, 0.01):
        combo = approximation.projection_approximation(model, a, eps)
        worst = max(worst, max(0.0, (combo.error - eps) / eps))
        bound = int(np.ceil(_opn(a) / eps)) + 1
        if len(combo.terms) > bound:
            worst = max(worst, 1.0)
        recon = combo.reconstruct(model.shape)
        worst = max(worst, abs(_opn(a - recon) - combo.error))
        for i, (_, pi) in enumerate(combo.terms):
            worst = max(worst, _opn(pi @ pi - pi), _opn(pi - adjoint(pi)))
            for j in range(i + 1, len(combo.terms)):
                worst = max(worst, _opn(jordan_product(pi, combo.terms[j][1])))
    return worst


@_register("projection-approximation-refinement",
           "the approximation error is monotone under dyadic grid refinement",
           models=("jbstar",), tol=1e-12, trials=4, covers="projection-approximation-refinement")
def _prop_projection_refinement(ctx, model, tol):
    a = ctx.positive(model)
    errors = [approximation.projection_approximation(model, a, eps).error
              for eps in (0.4, 0.2, 0.1)]
    return max(0.0, max(errors[i + 1] - errors[i] for i in range(len(errors) - 1)))


@_register("regular-approximation-bound",
           "truncations {b, e_eps, b} are regular, eps-close, and sit below r(a) "
           "with {b, r(a), b} = a",
           tol=1e-10, trials=3)
def _prop_regular_approx(ctx, model, tol):
    a = ctx.element(model)
    worst = 0.0
    for eps in (0.5, 0.1):
        ra = approximation.regular_approximation(model, a, eps)
        worst = max(worst, max(0.0, ra.error - eps * (1.0 - 1e-12)))
        r = spectral.range_tripotent(model, a)
        recon = triple_product(model, ra.b, r.element, ra.b)
        worst = max(worst, _opn(recon - a) / max(1.0, _opn(a)))
        if not spectral.is_regular(model, ra.y):
            worst = max(worst, 1.0)
    return worst


@_register("inner-ideal-density",
           "regular truncations of elements of an inner ideal E(x) stay in E(x)",
           tol=1e-8, trials=2, covers="inner-ideal-density")
def _prop_inner_ideal_density(ctx, model, tol):
    x = ctx.element(model)
    sub = ideals.inner_ideal_generated(model, x, 1e-9)
    y = triple_product(model, x, ctx.element(model), x)
    if _opn(y) < 1e-8:
        return 0.0
    y = _unit(y)
    worst = sub.residual(y)
    for eps in (1e-1, 1e-2, 1e-3):
        ra = approximation.regular_approximation(model, y, eps)
        worst = max(worst, sub.residual(ra.y))
    return worst


@_register("inner-ideal-closure",
           "an inner ideal E(x) contains the generalized inverse and the range "
           "tripotent of each of its elements",
           tol=1e-8, trials=2, covers="inner-ideal-closure")
def _prop_inner_ideal_closure(ctx, model, tol):
    x = ctx.element(model)
    sub = ideals.inner_ideal_generated(model, x, 1e-9)
    y = triple_product(model, x, ctx.element(model), x)
    if _opn(y) < 1e-8:
        return 0.0
    y = _unit(y)
    d = spectral.generalized_inverse(model, y)
    r = spectral.range_tripotent(model, y)
    return max(sub.residual(d) / max(1.0, backend.fro_norm(d)),
               sub.residual(r.element) / max(1.0, backend.fro_norm(r.element)))


@_register("generated-by-tripotents",
           "every element is eps-approximated by combinations of tripotents "
           "(projections of the Peirce-2 algebra of its range tripotent)",
           models=SQUARE_MODELS, tol=1e-9, trials=3)
def _prop_generated_by_tripotents(ctx, model, tol):
    a = ctx.element(model)
    if _opn(a) < 1e-9:
        return 0.0
    e = spectral.range_tripotent(model, a)
    dec = backend.svd(a)
    k = dec.rank()
    if k == 0:
        return 0.0
    wr = dec.right[:, :len(dec.singular)][:, dec.retained()]
    corner = adjoint(wr) @ (adjoint(e.element) @ a) @ wr
    eps = 0.25 * _opn(a)
    inner_model = TripleModel.jbstar(k)
    combo = approximation.projection_approximation(inner_model, corner, eps)
    total = np.zeros(model.shape, dtype=complex)
    worst = 0.0
    for coeff, q in combo.terms:
        u_i = e.element @ (wr @ q @ adjoint(wr))
        worst = max(worst, tripotent_residual(model, u_i))
        total = total + coeff * u_i
    worst = max(worst, max(0.0, (_opn(a - total) - eps) / max(eps, 1e-12)))
    return worst


# ---------------------------------------------------------------------------
# invariant coverage bookkeeping

#: Invariant bullets declared by the operational modules, mapped to the
#: property that discharges each one.  ``registered_properties`` must keep
#: this map total; the test suite asserts it.
COVERAGE: dict[str, dict[str, str]] = {
    "triple-models": {
        "jordan-identity": "jordan-identity",
        "fundamental-identity": "fundamental-identity",
        "ternary-identity": "ternary-identity",
        "power-identities": "power-identities",
        "triple-nonexpansive": "triple-nonexpansive",
    },
    "peirce-calculus": {
        "peirce-rules": "peirce-rules",
        "peirce-projections-nonexpansive": "peirce-projection-nonexpansive",
        "idempotent-order": "idempotent-order",
        "peirce2-compression": "peirce2-compression",
    },
    "spectral-calculus": {
        "generalized-inverse-identities": "generalized-inverse-identities",
        "range-tripotent-minimality": "range-tripotent-minimality",
        "invertible-peirce2-regular": "invertible-peirce2-regular",
        "regular-range-tripotent-prop": "regular-range-tripotent-prop",
        "support-below-range": "support-below-range",
    },
    "ideals-annihilators": {
        "orthogonality-symmetry": "orthogonality-symmetry",
        "generated-ideals-orthogonality": "generated-ideals-orthogonality",
        "annihilator-antitonicity": "annihilator-antitonicity",
        "positive-annihilator-equivalence": "positive-annihilator-equivalence",
        "positive-product-orthogonality": "positive-product-orthogonality",
    },
    "rickart-witnesses": {
        "unit-product-equivalences": "unit-product-equivalences",
        "rp-operator-commutation": "rp-operator-commutation",
        "rp-peirce2-inheritance": "rp-peirce2-inheritance",
        "wor-positive-range-projection": "wor-positive-range-projection",
        "peirce2-rickart-compatibility": "peirce2-rickart-compatibility",
        "wor-range-tripotent-uniqueness": "wor-range-tripotent-uniqueness",
    },
    "approximation": {
        "inner-ideal-density": "inner-ideal-density",
        "inner-ideal-closure": "inner-ideal-closure",
        "projection-approximation-refinement": "projection-approximation-refinement",
    },
}


# ---------------------------------------------------------------------------
# suite execution


@dataclass(frozen=True)
class PropertySpec:
    """One suite entry: which property, at which sizes, how hard."""

    name: str
    dims: tuple[int, ...] = DEFAULT_DIMS
    trials: int | None = None
    tol: float | None = None
    seed: int = 0
    models: tuple[str, ...] | None = None

    @staticmethod
    def from_dict(d: dict, default_seed: int = 0) -> "PropertySpec":
        return PropertySpec(
            name=d["name"],
            dims=tuple(int(x) for x in d.get("dims", DEFAULT_DIMS)),
            trials=(int(d["trials"]) if "trials" in d else None),
            tol=(float(d["tol"]) if "tol" in d else None),
            seed=int(d.get("seed", default_seed)),
            models=(tuple(d["models"]) if "models" in d else None),
        )


def default_config(seed: int = 0, dims: tuple[int, ...] = DEFAULT_DIMS,
                   trials: int | None = None) -> list[PropertySpec]:
    return [PropertySpec(name=p.name, dims=dims, trials=trials, seed=seed)
            for p in sorted(_REGISTRY.values(), key=lambda p: p.name)]


def _name_entropy(name: str) -> list[int]:
    digest = hashlib.sha256(name.encode()).digest()
    return [int.from_bytes(digest[i:i + 4], "big") for i in range(0, 8, 4)]


@dataclass(frozen=True)
class VerificationReport:
    passed: bool
    properties: dict[str, dict]
    environment: dict[str, str]

    def to_dict(self) -> dict:
        return {"pass": self.passed, "environment": self.environment,
                "properties": self.properties}


def _environment_fingerprint() -> dict[str, str]:
    return {
        "python": sys.version.split()[0],
        "numpy": np.__version__,
        "platform": platform.platform(),
    }


def run_suite(config: Sequence[PropertySpec]) -> VerificationReport:
    """Execute a list of property specs on seeded random inputs.

    Deterministic given the specs (seeds included): per-trial generators are
    derived from the spec seed, the property name hash, the model kind, the
    dimension and the trial index.  Failures are recorded with the seed
    material and an input digest so they can be replayed.
    """
    outcomes: dict[str, dict] = {}
    all_pass = True
    for spec in config:
        if spec.name not in _REGISTRY:
            raise UnknownProperty(f"no registered property named {spec.name!r}")
        prop = _REGISTRY[spec.name]
        tol = prop.tol if spec.tol is None else spec.tol
        trials = prop.trials if spec.trials is None else spec.trials
        kinds = prop.models if spec.models is None else tuple(spec.models)
        name_key = _name_entropy(spec.name)
        worst = 0.0
        failures = 0
        total = 0
        failing: list[dict] = []
        for kind_index, kind in enumerate(kinds):
            for dim in spec.dims:
                model = _model_for(kind, dim)
                for trial in range(trials):
                    entropy = [spec.seed] + name_key + [kind_index, dim, trial]
                    ctx = TrialContext(np.random.default_rng(np.random.SeedSequence(entropy)))
                    residual = float(prop.fn(ctx, model, tol))
                    total += 1
                    worst = max(worst, residual)
                    if not (residual <= tol):
                        failures += 1
                        failing.append({
                            "model": kind, "dim": int(dim), "trial": int(trial),
                            "residual": residual, "entropy": [int(x) for x in entropy],
                            "input_digest": ctx.input_digest,
                        })
        outcomes[spec.name] = {
            "anchor": prop.anchor,
            "models": list(kinds),
            "dims": [int(d) for d in spec.dims],
            "trials": int(total),
            "failures": int(failures),
            "worst_residual": float(worst),
            "tol": float(tol),
            "seed": int(spec.seed),
            "failing": failing,
        }
        if failures:
            all_pass = False
    return VerificationReport(passed=all_pass, properties=outcomes,
                              environment=_environment_fingerprint())
