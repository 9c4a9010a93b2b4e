"""Command-line surface.

All commands write a single JSON document to stdout (or ``--out``);
diagnostics go to stderr.  Exit codes: 0 success, 1 verification failure,
2 malformed input or shape errors, 3 numerical non-convergence.
"""

from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from . import approximation, harness, ideals, jsonio, spectral, witnesses
from .errors import (ConvergenceFailure, FormatError, NonPositiveEps, NotHermitian,
                     NotInnerIdeal, NotInPeirce2, NotMutuallyOrthogonal, NotNormOne,
                     NotOrthogonal, NotPositive, NotRegular, NotTripotent, NotUnitModulus,
                     PeircelabError, ShapeMismatch, UnknownProperty, VerificationFailed)
from .models import TripleModel
from .peirce import Tripotent, peirce_decompose
from .subspaces import Subspace

_INPUT_ERROR_TYPES = (
    FormatError, ShapeMismatch, NotHermitian, NotTripotent, NotInPeirce2, NotUnitModulus,
    NotNormOne, NotRegular, NotOrthogonal, NotInnerIdeal, NotMutuallyOrthogonal,
    NotPositive, NonPositiveEps, UnknownProperty, ValueError, OSError,
)
_NUMERIC_ERROR_TYPES = (ConvergenceFailure, VerificationFailed)


def _default_seed(args) -> int:
    if getattr(args, "seed", None) is not None:
        return int(args.seed)
    env = os.environ.get("PEIRCELAB_SEED")
    return int(env) if env else 0


def _load_element(model: TripleModel, path: str) -> np.ndarray:
    return model.check(jsonio.matrix_from_json(jsonio.load_json(path)))


def _load_ideal(model: TripleModel, path: str | None, tol: float) -> Subspace:
    if path is None:
        return Subspace.zero(model, tol)
    return jsonio.subspace_from_json(jsonio.load_json(path), model, tol)


def _emit(args, doc) -> None:
    text = jsonio.dumps(doc)
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")


def _infer_model(mat: np.ndarray) -> TripleModel:
    m, n = mat.shape
    return TripleModel.cstar(n) if m == n else TripleModel.rectangular(m, n)


def _cmd_peirce(args) -> int:
    model = jsonio.parse_model_arg(args.model)
    e = _load_element(model, args.tripotent)
    trip = Tripotent.certify(model, e, args.tol)
    dec = peirce_decompose(model, trip)
    _emit(args, {
        "tripotent_residual": float(trip.residual),
        "partition_residual": float(dec.partition_residual()),
        "rules_residual": float(dec.rules_residual()),
        "subspaces": {
            "S2": jsonio.subspace_to_json(dec.s2),
            "S1": jsonio.subspace_to_json(dec.s1),
            "S0": jsonio.subspace_to_json(dec.s0),
        },
    })
    return 0


def _cmd_spectrum(args) -> int:
    model = jsonio.parse_model_arg(args.model)
    a = _load_element(model, args.element)
    spec = spectral.triple_spectrum(model, a)
    _emit(args, {"values": [float(v) for v in spec.values],
                 "includes_zero": bool(spec.includes_zero)})
    return 0


def _cmd_polar(args) -> int:
    model = jsonio.parse_model_arg(args.model)
    x = _load_element(model, args.element)
    pol = spectral.polar_decomposition(model, x, args.tol)
    _emit(args, {
        "isometry": jsonio.matrix_to_json(pol.isometry.element),
        "modulus": jsonio.matrix_to_json(pol.modulus),
        "lp": jsonio.matrix_to_json(pol.lp),
        "rp": jsonio.matrix_to_json(pol.rp),
    })
    return 0


def _cmd_range_tripotent(args) -> int:
    model = jsonio.parse_model_arg(args.model)
    a = _load_element(model, args.element)
    _emit(args, jsonio.matrix_to_json(spectral.range_tripotent(model, a, args.tol).element))
    return 0


def _cmd_ginv(args) -> int:
    model = jsonio.parse_model_arg(args.model)
    a = _load_element(model, args.element)
    _emit(args, jsonio.matrix_to_json(spectral.generalized_inverse(model, a)))
    return 0


def _cmd_annihilator(args) -> int:
    mats = [jsonio.matrix_from_json(jsonio.load_json(p)) for p in args.elements]
    if args.model:
        model = jsonio.parse_model_arg(args.model)
    elif mats:
        model = _infer_model(mats[0])
    else:
        raise FormatError("--model is required when no elements are given")
    sub = ideals.orthogonal_annihilator(model, [model.check(m) for m in mats], args.tol)
    _emit(args, jsonio.subspace_to_json(sub))
    return 0


def _cmd_witness(args) -> int:
    model = jsonio.parse_model_arg(args.model)
    seed = _default_seed(args)
    if args.kind == "reversed":
        paths = args.family or ([args.element] if args.element else [])
        if not paths:
            raise FormatError("--family (or --element) is required for the reversed witness")
        family = [_load_element(model, p) for p in paths]
        ideal = _load_ideal(model, args.ideal, args.tol)
        report = witnesses.finite_reversed_witness(model, family, ideal, args.tol)
    elif args.kind in ("wr", "wor"):
        if not args.element:
            raise FormatError("--element is required")
        x = _load_element(model, args.element)
        ideal = _load_ideal(model, args.ideal, args.tol)
        if args.kind == "wr":
            report = witnesses.weakly_rickart_witness(model, x, ideal, args.tol)
        else:
            report = witnesses.wor_witness(model, x, ideal, args.tol)
    else:  # pedersen
        if not args.element:
            raise FormatError("--element is required (the positive generator of B)")
        b = _load_element(model, args.element)
        c = _load_ideal(model, args.ideal, args.tol)
        _, report = witnesses.pedersen_witness(model, "weaklyRickart", b, c,
                                               args.tol, seed=seed)
    doc = jsonio.witness_report_to_json(report)
    doc["seed"] = seed if report.seed is None else doc["seed"]
    _emit(args, doc)
    return 0


def _cmd_approx(args) -> int:
    model = jsonio.parse_model_arg(args.model)
    a = _load_element(model, args.element)
    if args.kind == "projections":
        combo = approximation.projection_approximation(model, a, args.eps)
        _emit(args, {"combo": jsonio.combo_to_json(combo.terms),
                     "error": float(combo.error)})
    else:
        ra = approximation.regular_approximation(model, a, args.eps)
        _emit(args, {
            "e_eps": jsonio.matrix_to_json(ra.e_eps.element),
            "b": jsonio.matrix_to_json(ra.b),
            "y": jsonio.matrix_to_json(ra.y),
            "error": float(ra.error),
        })
    return 0


def _cmd_verify(args) -> int:
    seed = _default_seed(args)
    if args.config:
        doc = jsonio.load_json(args.config)
        if not isinstance(doc, list):
            raise FormatError("verify config must be a list of property specs")
        config = [harness.PropertySpec.from_dict(d, seed) for d in doc]
    else:
        config = harness.default_config(seed=seed)
    report = harness.run_suite(config)
    _emit(args, report.to_dict())
    if not report.passed:
        print("verification failed", file=sys.stderr)
        return 1
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="peircelab",
        description="Peirce calculus, spectral calculus and Rickart-type witnesses "
                    "on finite-dimensional matrix triples.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, model_required=True):
        p.add_argument("--model", required=model_required,
                       help="model descriptor JSON (inline or a file path)")
        p.add_argument("--tol", type=float, default=1e-9)
        p.add_argument("--out", help="write the JSON result here instead of stdout")

    p = sub.add_parser("peirce", help="Peirce subspace bases and residuals of a tripotent")
    common(p)
    p.add_argument("--tripotent", required=True, help="matrix JSON file")
    p.set_defaults(fn=_cmd_peirce)

    for name, fn, help_text in (
            ("spectrum", _cmd_spectrum, "triple spectrum of an element"),
            ("polar", _cmd_polar, "polar decomposition data"),
            ("range-tripotent", _cmd_range_tripotent, "range tripotent of an element"),
            ("ginv", _cmd_ginv, "generalized inverse of an element")):
        p = sub.add_parser(name, help=help_text)
        common(p)
        p.add_argument("--element", required=True, help="matrix JSON file")
        p.set_defaults(fn=fn)

    p = sub.add_parser("annihilator", help="orthogonal annihilator of a family of elements")
    common(p, model_required=False)
    p.add_argument("--elements", nargs="+", required=True, help="matrix JSON files")
    p.set_defaults(fn=_cmd_annihilator)

    p = sub.add_parser("witness", help="Rickart-type witness constructions")
    common(p)
    p.add_argument("--kind", required=True, choices=("wr", "wor", "reversed", "pedersen"))
    p.add_argument("--element", help="matrix JSON file")
    p.add_argument("--ideal", help="subspace JSON file (defaults to the zero ideal)")
    p.add_argument("--family", nargs="*", help="matrix JSON files for the reversed witness")
    p.add_argument("--seed", type=int, help="seed for sampled verifications")
    p.set_defaults(fn=_cmd_witness)

    p = sub.add_parser("approx", help="approximation by projections or regular truncations")
    common(p)
    p.add_argument("--kind", required=True, choices=("projections", "regular"))
    p.add_argument("--element", required=True, help="matrix JSON file")
    p.add_argument("--eps", type=float, required=True)
    p.set_defaults(fn=_cmd_approx)

    p = sub.add_parser("verify", help="run the randomized verification suite")
    p.add_argument("--config", help="JSON list of property specs")
    p.add_argument("--seed", type=int, help="seed (fallback: PEIRCELAB_SEED, then 0)")
    p.add_argument("--out", help="write the report here instead of stdout")
    p.set_defaults(fn=_cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except _NUMERIC_ERROR_TYPES as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3
    except _INPUT_ERROR_TYPES as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except PeircelabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
