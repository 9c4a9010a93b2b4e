"""Finite-dimensional matrix triple models and their products.

Three flavors share one element representation (a dense complex matrix):

* ``rect``   -- the m x n rectangular matrix triple,
* ``cstar``  -- the n x n matrix algebra as a triple,
* ``jbstar`` -- the n x n matrix algebra with the symmetrized Jordan
  product ``a o b = (ab + ba)/2``; self-adjoint/positivity questions are
  answered by restricting inputs rather than by a separate real model.

For ``rect`` and ``cstar`` the triple product is ``{a,b,c} =
(a b^* c + c b^* a)/2``; for ``jbstar`` it is the Jordan expansion
``(a o b^*) o c + (c o b^*) o a - (a o c) o b^*``, which agrees with the
former on full matrix algebras.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import backend
from .backend import RealifiedMap, adjoint
from .errors import ShapeMismatch

KINDS = ("rect", "cstar", "jbstar")
SQUARE_KINDS = ("cstar", "jbstar")


@dataclass(frozen=True)
class TripleModel:
    kind: str
    m: int
    n: int

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown model kind {self.kind!r}")
        if self.m < 1 or self.n < 1:
            raise ValueError("model dimensions must be positive")
        if self.kind in SQUARE_KINDS and self.m != self.n:
            raise ValueError(f"{self.kind} model must be square")

    @staticmethod
    def rectangular(m: int, n: int) -> "TripleModel":
        return TripleModel("rect", m, n)

    @staticmethod
    def cstar(n: int) -> "TripleModel":
        return TripleModel("cstar", n, n)

    @staticmethod
    def jbstar(n: int) -> "TripleModel":
        return TripleModel("jbstar", n, n)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.m, self.n)

    @property
    def is_square(self) -> bool:
        return self.m == self.n

    @property
    def dim(self) -> int:
        return self.m * self.n

    def matrix_units(self) -> np.ndarray:
        """The mn matrix units as a (mn, m, n) stack (an orthonormal basis)."""
        return np.eye(self.dim, dtype=complex).reshape(self.dim, self.m, self.n)

    def check(self, x) -> np.ndarray:
        x = backend.as_matrix(x)
        if x.shape != self.shape:
            raise ShapeMismatch(f"element of shape {x.shape} does not fit model {self.shape}")
        return x


def jordan_product(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """a o b = (ab + ba)/2 (square matrices; broadcasts over stacks)."""
    return 0.5 * (a @ b + b @ a)


def u_map(a: np.ndarray, x: np.ndarray) -> np.ndarray:
    """U_a(x) = 2 (a o x) o a - (a o a) o x, by the Jordan formula."""
    return 2.0 * jordan_product(jordan_product(a, x), a) - jordan_product(jordan_product(a, a), x)


def u_pair(a: np.ndarray, b: np.ndarray, x: np.ndarray) -> np.ndarray:
    """U_{a,b}(x) = (a o x) o b + (b o x) o a - (a o b) o x."""
    return (jordan_product(jordan_product(a, x), b)
            + jordan_product(jordan_product(b, x), a)
            - jordan_product(jordan_product(a, b), x))


@dataclass(frozen=True)
class JordanOps:
    """The three Jordan evaluations for a pair (a, b)."""

    product: np.ndarray   # a o b
    u_of_b: np.ndarray    # U_a(b)
    t_of_b: np.ndarray    # T_a(b) = a o b


def jordan_ops(model: TripleModel, a, b) -> JordanOps:
    if model.kind not in SQUARE_KINDS:
        raise ShapeMismatch("Jordan operations require a square model")
    a, b = model.check(a), model.check(b)
    prod = jordan_product(a, b)
    return JordanOps(product=prod, u_of_b=u_map(a, b), t_of_b=prod)


def triple_product(model: TripleModel, a, b, c) -> np.ndarray:
    """The triple product {a, b, c} of the model."""
    a, b, c = model.check(a), model.check(b), model.check(c)
    if model.kind == "jbstar":
        bs = adjoint(b)
        return (jordan_product(jordan_product(a, bs), c)
                + jordan_product(jordan_product(c, bs), a)
                - jordan_product(jordan_product(a, c), bs))
    bs = adjoint(b)
    return 0.5 * (a @ bs @ c + c @ bs @ a)


def triple_product_batch(model: TripleModel, a: np.ndarray, b: np.ndarray, c: np.ndarray) -> np.ndarray:
    """Broadcasting variant of :func:`triple_product` over stacked operands."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    c = np.asarray(c, dtype=complex)
    bs = adjoint(b)
    if model.kind == "jbstar":
        return (jordan_product(jordan_product(a, bs), c)
                + jordan_product(jordan_product(c, bs), a)
                - jordan_product(jordan_product(a, c), bs))
    return 0.5 * (a @ bs @ c + c @ bs @ a)


def materialize_L(model: TripleModel, a, b) -> RealifiedMap:
    """The operator L(a, b): x -> {a, b, x} as a realified matrix.

    On full matrix algebras the Jordan-model triple product expands to the
    same bilinear map as the associative one, so a single closed form
    (left/right multiplications realified through Kronecker products)
    serves every model kind; agreement with direct evaluation is part of
    the test suite.
    """
    a, b = model.check(a), model.check(b)
    left = a @ adjoint(b)                      # multiplies from the left
    right = adjoint(b) @ a                     # multiplies from the right
    coeff = 0.5 * (np.kron(left, np.eye(model.n)) + np.kron(np.eye(model.m), right.T))
    return RealifiedMap.from_complex(coeff, model.shape)


def materialize_Q(model: TripleModel, a) -> RealifiedMap:
    """The conjugate-linear operator Q(a): x -> {a, x, a} as a realified matrix."""
    a = model.check(a)
    coeff = np.kron(a, a.T) @ backend.transpose_permutation(model.m, model.n)
    return RealifiedMap.from_complex(coeff, model.shape, conjugating=True)


def u_operator(model: TripleModel, a) -> RealifiedMap:
    """U_a as a realified matrix, materialized through the Jordan formula."""
    if model.kind not in SQUARE_KINDS:
        raise ShapeMismatch("U operators require a square model")
    a = model.check(a)
    return RealifiedMap.from_function(lambda x: u_map(a, x), model.shape)


def u_pair_operator(model: TripleModel, a, b) -> RealifiedMap:
    if model.kind not in SQUARE_KINDS:
        raise ShapeMismatch("U operators require a square model")
    a, b = model.check(a), model.check(b)
    return RealifiedMap.from_function(lambda x: u_pair(a, b, x), model.shape)


def t_operator(model: TripleModel, a) -> RealifiedMap:
    """T_a: x -> a o x as a realified matrix."""
    if model.kind not in SQUARE_KINDS:
        raise ShapeMismatch("T operators require a square model")
    a = model.check(a)
    coeff = 0.5 * (np.kron(a, np.eye(model.n)) + np.kron(np.eye(model.m), a.T))
    return RealifiedMap.from_complex(coeff, model.shape)


def jordan_power(a: np.ndarray, k: int) -> np.ndarray:
    """k-th Jordan power (equals the associative power for a single element)."""
    if k < 1:
        raise ValueError("powers start at 1")
    out = a
    for _ in range(k - 1):
        out = jordan_product(out, a)
    return out
