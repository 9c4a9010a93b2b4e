"""Acceptance suite: one test per acceptance criterion.

Each test runs its criterion at the stated trial counts and tolerances on
seeded random inputs at dimensions 2-4 and prints a single pass/fail line.
Counts quoted per model or per dimension run at that rate per (model,
dimension) pair; unquantified clauses run at enough trials to exceed one
hundred in total.
"""

import io
import json
from contextlib import redirect_stdout

import pytest

from peircelab import cli
from peircelab.harness import PropertySpec, run_suite

SEED = 42
DIMS = (2, 3, 4)


def _run_criterion(label, specs):
    report = run_suite(specs)
    worst = max((rec["worst_residual"] for rec in report.properties.values()),
                default=0.0)
    trials = sum(rec["trials"] for rec in report.properties.values())
    status = "PASS" if report.passed else "FAIL"
    print(f"[{status}] {label}: {trials} trials, worst residual {worst:.3e}")
    if not report.passed:
        failing = {name: rec["failing"] for name, rec in report.properties.items()
                   if rec["failures"]}
        pytest.fail(f"{label} failed: {failing}")
    return report


def test_identity_suite():
    _run_criterion("identity suite (Jordan, fundamental, ternary, powers)", [
        PropertySpec("jordan-identity", DIMS, trials=100, tol=1e-9, seed=SEED),
        PropertySpec("fundamental-identity", DIMS, trials=100, tol=1e-9, seed=SEED),
        PropertySpec("ternary-identity", DIMS, trials=100, tol=1e-9, seed=SEED),
        PropertySpec("power-identities", DIMS, trials=100, tol=1e-9, seed=SEED),
    ])


def test_peirce_suite():
    _run_criterion("Peirce suite (partition, rules, Peirce-2 algebra axioms)", [
        PropertySpec("peirce-partition", DIMS, trials=100, tol=1e-9, seed=SEED),
        PropertySpec("peirce-rules", DIMS, trials=100, tol=1e-9, seed=SEED),
        PropertySpec("peirce2-algebra-axioms", DIMS, trials=50, tol=1e-6, seed=SEED),
    ])


def test_section2_suite():
    _run_criterion("polar characterization and witness constructions", [
        PropertySpec("polar-characterization-equivalence", DIMS, trials=100,
                     tol=1e-9, seed=SEED),
        PropertySpec("weakly-rickart-witness", DIMS, trials=100, tol=1e-9, seed=SEED),
        PropertySpec("finite-reversed-witness", DIMS, trials=100, tol=1e-9, seed=SEED),
        PropertySpec("lp-rp-murray-von-neumann", DIMS, trials=100, tol=1e-9, seed=SEED),
    ])


def test_section3_suite():
    _run_criterion("unit equivalences, annihilators, range projections, "
                   "projection approximation", [
        PropertySpec("unit-product-equivalences", DIMS, trials=100, tol=1e-9, seed=SEED),
        PropertySpec("positive-annihilator-equivalence", DIMS, trials=34,
                     tol=1e-9, seed=SEED),
        PropertySpec("jordan-range-projection-minimality", DIMS, trials=34,
                     tol=1e-8, seed=SEED),
        PropertySpec("rp-operator-commutation", DIMS, trials=34, tol=1e-9, seed=SEED),
        PropertySpec("projection-approximation-bound", DIMS, trials=34,
                     tol=1e-9, seed=SEED),
    ])


def test_section4_suite():
    _run_criterion("range-tripotent uniqueness, projections, automorphisms, "
                   "Peirce-2 inheritance", [
        PropertySpec("wor-range-tripotent-uniqueness", DIMS, trials=12,
                     tol=1e-8, seed=SEED),
        PropertySpec("wor-positive-range-projection", DIMS, trials=34,
                     tol=1e-9, seed=SEED),
        PropertySpec("peirce-automorphism-law", DIMS, trials=34, tol=1e-9, seed=SEED),
        PropertySpec("peirce2-rickart-compatibility", DIMS, trials=12,
                     tol=1e-9, seed=SEED),
    ])


def test_section5_suite():
    _run_criterion("generalized inverses, regular approximation, inner-ideal density", [
        PropertySpec("generalized-inverse-identities", DIMS, trials=12,
                     tol=1e-9, seed=SEED),
        PropertySpec("regular-range-tripotent-prop", DIMS, trials=12,
                     tol=1e-8, seed=SEED),
        PropertySpec("regular-approximation-bound", DIMS, trials=12,
                     tol=1e-10, seed=SEED),
        PropertySpec("inner-ideal-density", DIMS, trials=12, tol=1e-8, seed=SEED),
        PropertySpec("inner-ideal-closure", DIMS, trials=12, tol=1e-8, seed=SEED),
    ])


def test_determinism():
    def run_once():
        buf = io.StringIO()
        with redirect_stdout(buf):
            code = cli.main(["verify", "--seed", "42"])
        return code, buf.getvalue()

    code1, out1 = run_once()
    code2, out2 = run_once()
    identical = out1 == out2
    status = "PASS" if (code1 == code2 == 0 and identical) else "FAIL"
    print(f"[{status}] determinism: verify --seed 42 twice, "
          f"byte-identical={identical}, exit codes=({code1}, {code2})")
    assert code1 == 0 and code2 == 0
    assert identical
    doc = json.loads(out1)
    assert doc["pass"] is True
