"""
Brute-force first relative cohomology for small test bimodules.

For a commutative A-bimodule X on which the auxiliary algebra also acts, the
module derivations D: A -> X (restricted to linear maps) form a subspace Z of
the n * dim(X) coordinates of D, and the inner derivations D_x(a) = a.x - x.a
form B inside Z. h1 = dim Z - dim B. A nonzero h1 refutes module
super-amenability; h1 = 0 on finitely many modules only corroborates it.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from src.diagonal_engine import BaseAlgebra
from src.exact_linalg import AffineSystem, Subspace, solve_affine, zero_vector

logger = logging.getLogger(__name__)


class InvariantViolation(ValueError):
    def __init__(self, module: str, identity: str, witness: Tuple) -> None:
        super().__init__(f"Module {module} violates {identity} at {witness}")
        self.module = module
        self.identity = identity
        self.witness = witness


def _eye(n: int) -> np.ndarray:
    out = np.zeros((n, n), dtype=object)
    for i in range(n):
        out[i, i] = 1
    return out


def _zeros(n: int) -> np.ndarray:
    return np.zeros((n, n), dtype=object)


@dataclass(frozen=True, eq=False)
class TestBimodule:
    """Finite-dimensional bimodule given by action matrices on a basis of X.

    left[a] is the matrix of x -> b_a . x, right[a] of x -> x . b_a, and
    aux_left / aux_right do the same for the auxiliary algebra basis.
    """
    __test__ = False

    name: str
    dim: int
    left: Tuple[np.ndarray, ...]
    right: Tuple[np.ndarray, ...]
    aux_left: Tuple[np.ndarray, ...]
    aux_right: Tuple[np.ndarray, ...]

    def _product(self, base: BaseAlgebra, i: int, j: int, side: Sequence[np.ndarray]) -> np.ndarray:
        k = base.table[i, j]
        return side[k] if k >= 0 else _zeros(self.dim)

    def _scaled(self, side: Sequence[np.ndarray], index: int, scale) -> np.ndarray:
        return side[index] * scale if index >= 0 else _zeros(self.dim)

    def validate(self, base: BaseAlgebra) -> None:
        """Check every module identity on basis elements.

        Raises:
            InvariantViolation: naming the identity and the basis indices
        """
        n, m = base.dim, base.aux_dim
        if len(self.left) != n or len(self.right) != n:
            raise InvariantViolation(self.name, "action count", (len(self.left), n))
        if len(self.aux_left) != m or len(self.aux_right) != m:
            raise InvariantViolation(self.name, "auxiliary action count", (len(self.aux_left), m))
        L, R, P, Q = self.left, self.right, self.aux_left, self.aux_right

        def require(ok: bool, identity: str, witness: Tuple) -> None:
            if not ok:
                raise InvariantViolation(self.name, identity, witness)

        for a in range(n):
            for b in range(n):
                require(np.array_equal(L[a].dot(L[b]), self._product(base, a, b, L)),
                        "a.(b.x) = (ab).x", (a, b))
                require(np.array_equal(R[b].dot(R[a]), self._product(base, a, b, R)),
                        "(x.a).b = x.(ab)", (a, b))
                require(np.array_equal(L[a].dot(R[b]), R[b].dot(L[a])),
                        "(a.x).b = a.(x.b)", (a, b))
        for p in range(m):
            for q in range(m):
                require(np.array_equal(P[p].dot(P[q]), self._product_aux(base, p, q, P)),
                        "alpha.(beta.x) = (alpha beta).x", (p, q))
                require(np.array_equal(Q[q].dot(Q[p]), self._product_aux(base, p, q, Q)),
                        "(x.alpha).beta = x.(alpha beta)", (p, q))
            require(np.array_equal(P[p], Q[p]), "alpha.x = x.alpha", (p,))
            for a in range(n):
                alpha_a = self._scaled(L, base.left_index[p, a], base.left_scale[p, a])
                a_alpha = self._scaled(L, base.right_index[p, a], base.right_scale[p, a])
                r_alpha_a = self._scaled(R, base.left_index[p, a], base.left_scale[p, a])
                r_a_alpha = self._scaled(R, base.right_index[p, a], base.right_scale[p, a])
                require(np.array_equal(P[p].dot(L[a]), alpha_a),
                        "alpha.(a.x) = (alpha.a).x", (p, a))
                require(np.array_equal(L[a].dot(P[p]), a_alpha),
                        "a.(alpha.x) = (a.alpha).x", (p, a))
                require(np.array_equal(R[a].dot(P[p]), P[p].dot(R[a])),
                        "(alpha.x).a = alpha.(x.a)", (p, a))
                require(np.array_equal(Q[p].dot(R[a]), r_a_alpha),
                        "(x.a).alpha = x.(a.alpha)", (p, a))
                require(np.array_equal(R[a].dot(Q[p]), r_alpha_a),
                        "(x.alpha).a = x.(alpha.a)", (p, a))
                require(np.array_equal(L[a].dot(Q[p]), Q[p].dot(L[a])),
                        "a.(x.alpha) = (a.x).alpha", (p, a))

    def _product_aux(self, base: BaseAlgebra, p: int, q: int, side: Sequence[np.ndarray]) -> np.ndarray:
        k = base.aux_table[p, q]
        return side[k] if k >= 0 else _zeros(self.dim)


def quotient_module(base: BaseAlgebra, J: Subspace, name: str = "A/J") -> TestBimodule:
    """A/J with the actions induced from A acting on itself.

    Coordinates on A/J are the non-pivot coordinates of J's echelon basis;
    basis element k lifts to the unit vector at the k-th non-pivot column.
    """
    project = J.complement_projector()
    lifts = list(J.nonpivots)
    d = len(lifts)

    def induced(op) -> np.ndarray:
        out = np.zeros((d, d), dtype=object)
        for k, j in enumerate(lifts):
            out[:, k] = project.dot(op(base.basis(j)))
        return out

    n, m = base.dim, base.aux_dim
    left = tuple(induced(lambda x, a=a: base.multiply(base.basis(a), x)) for a in range(n))
    right = tuple(induced(lambda x, a=a: base.multiply(x, base.basis(a))) for a in range(n))
    aux = [zero_vector(m) for _ in range(m)]
    for p in range(m):
        aux[p][p] = 1
    aux_left = tuple(induced(lambda x, p=p: base.act_left(aux[p], x)) for p in range(m))
    aux_right = tuple(induced(lambda x, p=p: base.act_right(x, aux[p])) for p in range(m))
    return TestBimodule(name, d, left, right, aux_left, aux_right)


def character_module(base: BaseAlgebra, values: Sequence, aux_values: Sequence,
                     name: str = "character") -> TestBimodule:
    """One-dimensional module where both algebras act through functionals."""
    left = tuple(np.array([[v]], dtype=object) for v in values)
    aux = tuple(np.array([[v]], dtype=object) for v in aux_values)
    return TestBimodule(name, 1, left, left, aux, aux)


def augmentation_module(base: BaseAlgebra) -> TestBimodule:
    """Every point mass acts as 1 on both sides."""
    if base.augmentation is None:
        raise ValueError(f"{base.name} has no augmentation character")
    return character_module(base, base.augmentation, [1] * base.aux_dim, "augmentation")


def trace_module(base: BaseAlgebra, n: int) -> TestBimodule:
    """Normalised trace on matrix units, tried as a character of M_n."""
    values = []
    for label in base.labels:
        i, j = label[1], label[2]
        values.append(Fraction(1, n) if i == j else Fraction(0))
    return character_module(base, values, [1] * base.aux_dim, "trace")


def annihilated_line(base: BaseAlgebra) -> TestBimodule:
    """One-dimensional module killed by A, auxiliary basis acting as 1."""
    return character_module(base, [0] * base.dim, [1] * base.aux_dim, "annihilated line")


def zero_module(base: BaseAlgebra) -> TestBimodule:
    empty = np.zeros((0, 0), dtype=object)
    return TestBimodule("zero", 0, (empty,) * base.dim, (empty,) * base.dim,
                        (empty,) * base.aux_dim, (empty,) * base.aux_dim)


def direct_sum(x: TestBimodule, y: TestBimodule, name: Optional[str] = None) -> TestBimodule:
    def block(a: np.ndarray, b: np.ndarray) -> np.ndarray:
        out = np.zeros((x.dim + y.dim, x.dim + y.dim), dtype=object)
        out[:x.dim, :x.dim] = a
        out[x.dim:, x.dim:] = b
        return out

    def pair(u, v):
        return tuple(block(a, b) for a, b in zip(u, v))

    return TestBimodule(name or f"{x.name} + {y.name}", x.dim + y.dim,
                        pair(x.left, y.left), pair(x.right, y.right),
                        pair(x.aux_left, y.aux_left), pair(x.aux_right, y.aux_right))


def dual_module(x: TestBimodule, name: Optional[str] = None) -> TestBimodule:
    """X* with <a.f, x> = <f, x.a> and <f.a, x> = <f, a.x>."""
    def t(ms):
        return tuple(np.ascontiguousarray(m.T) for m in ms)

    return TestBimodule(name or f"({x.name})*", x.dim, t(x.right), t(x.left),
                        t(x.aux_right), t(x.aux_left))


def build_test_bimodules(base: BaseAlgebra, J: Subspace) -> List[TestBimodule]:
    """A/J, a one-dimensional module, (A/J)^2, (A/J)* and the zero module, all validated."""
    quotient = quotient_module(base, J)
    line = augmentation_module(base) if base.augmentation is not None else annihilated_line(base)
    modules = [quotient, line, direct_sum(quotient, quotient, "A/J + A/J"),
               dual_module(quotient, "(A/J)*"), zero_module(base)]
    for module in modules:
        module.validate(base)
    return modules


@dataclass(frozen=True)
class DerivationSpace:
    """Derivations as vectors: coordinate a * dim(X) + i is the i-th entry of D(b_a)."""
    module: str
    Z: Subspace
    B: Subspace

    @property
    def h1_dim(self) -> int:
        return self.Z.rank - self.B.rank

    def to_json(self) -> Dict:
        return {"name": self.module, "dim_Z": self.Z.rank, "dim_B": self.B.rank,
                "h1": self.h1_dim}


def _derivation_constraints(base: BaseAlgebra, X: TestBimodule) -> np.ndarray:
    n, d = base.dim, X.dim
    blocks = []

    def new_block() -> np.ndarray:
        return np.zeros((d, n * d), dtype=object)

    def place(block, column, matrix) -> None:
        block[:, column * d:(column + 1) * d] += matrix

    eye = _eye(d)
    for a in range(n):
        for b in range(n):
            # D(ab) - D(a).b - a.D(b) = 0
            block = new_block()
            if base.table[a, b] >= 0:
                place(block, base.table[a, b], eye)
            place(block, a, -X.right[b])
            place(block, b, -X.left[a])
            blocks.append(block)
    for p in range(base.aux_dim):
        for a in range(n):
            # D(alpha.a) = alpha.D(a) and D(a.alpha) = D(a).alpha
            for index, scale, act in ((base.left_index[p, a], base.left_scale[p, a], X.aux_left[p]),
                                      (base.right_index[p, a], base.right_scale[p, a], X.aux_right[p])):
                block = new_block()
                if index >= 0:
                    place(block, index, eye * scale)
                place(block, a, -act)
                blocks.append(block)
    return np.vstack(blocks) if blocks else np.zeros((0, n * d), dtype=object)


def derivation_space(base: BaseAlgebra, X: TestBimodule) -> DerivationSpace:
    """Z = linear module derivations A -> X, B = inner derivations."""
    n, d = base.dim, X.dim
    if d == 0:
        return DerivationSpace(X.name, Subspace.zero(0), Subspace.zero(0))
    matrix = _derivation_constraints(base, X)
    Z = solve_affine(AffineSystem(matrix, zero_vector(matrix.shape[0]))).nullspace
    inner = []
    for k in range(d):
        x = zero_vector(d)
        x[k] = 1
        inner.append(np.concatenate([(X.left[a] - X.right[a]).dot(x) for a in range(n)]))
    B = Subspace.span(inner, n * d)
    assert Z.contains(B), f"inner derivation outside Z for {X.name}"
    logger.debug(f"{base.name} / {X.name}: dim Z = {Z.rank}, dim B = {B.rank}")
    return DerivationSpace(X.name, Z, B)


def is_derivation(base: BaseAlgebra, X: TestBimodule, D: np.ndarray) -> bool:
    """Leibniz rule on all basis pairs, checked directly."""
    d = X.dim
    images = [np.asarray(D[a * d:(a + 1) * d], dtype=object) for a in range(base.dim)]
    for a in range(base.dim):
        for b in range(base.dim):
            k = base.table[a, b]
            lhs = images[k] if k >= 0 else zero_vector(d)
            rhs = X.right[b].dot(images[a]) + X.left[a].dot(images[b])
            if not np.array_equal(lhs, rhs):
                return False
    return True


@dataclass(frozen=True)
class CohomologyReport:
    algebra: str
    spaces: Tuple[DerivationSpace, ...]
    dims: Tuple[int, ...]
    diagonal_feasible: Optional[bool]
    asserted: bool

    @property
    def consistent(self) -> bool:
        """A diagonal forces h1 = 0 on every test module."""
        if not self.diagonal_feasible:
            return True
        return all(s.h1_dim == 0 for s in self.spaces)

    @property
    def counterexamples(self) -> List[str]:
        if not self.diagonal_feasible:
            return []
        return [s.module for s in self.spaces if s.h1_dim != 0]

    def to_json(self) -> Dict:
        bimodules = []
        for space, dim in zip(self.spaces, self.dims):
            entry = space.to_json()
            entry["dim"] = dim
            bimodules.append(entry)
        return {
            "semigroup": self.algebra,
            "bimodules": bimodules,
            "diagonal_feasible": self.diagonal_feasible,
            "consistent": self.consistent,
            "asserted": self.asserted,
            "counterexamples": self.counterexamples,
            "note": f"corroborated on {len(self.spaces)} modules",
        }


def cross_check(base: BaseAlgebra, J: Subspace, diagonal_feasible: Optional[bool],
                directed: bool = True, modules: Optional[List[TestBimodule]] = None) -> CohomologyReport:
    """Compute h1 for every test module and compare with the diagonal verdict.

    When the idempotents are not directed the relation is only reported.
    """
    modules = modules if modules is not None else build_test_bimodules(base, J)
    spaces = tuple(derivation_space(base, X) for X in modules)
    report = CohomologyReport(base.name, spaces, tuple(X.dim for X in modules),
                              diagonal_feasible, asserted=directed)
    if report.counterexamples:
        logger.warning(f"{base.name}: diagonal found but h1 != 0 on {report.counterexamples}")
    return report
