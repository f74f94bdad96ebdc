"""
Tensor-square algebra, the ideals I and J, and module diagonals.

Every base algebra handled here has a monomial basis: the product of two
basis elements is a basis element or zero, and the auxiliary algebra acts on
basis elements by a scalar times a basis element. Semigroup algebras (acting
idempotent algebra) and matrix algebras M_n over a commutative monoid algebra
both fit this shape, so one code path serves both.

A module diagonal is a tensor M, taken modulo I, such that omega(M) + J is a
two-sided identity of A/J and a.M - M.a lies in I for every basis a.
"""
import logging
import os
import sys
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from src.exact_linalg import (AffineSystem, Coset, DimensionMismatch, EchelonBuilder,
                              Subspace, fraction_str, solve_affine, unit_vector,
                              zero_vector)
from src.module_algebra import ActionSpec
from src.semigroup_core import (FiniteInverseSemigroup, FiniteSemigroup, check_size,
                                cyclic_group, idempotents)

# Add parent directory to path to import config
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))
from config import MAX_TENSOR_SIZE, MAX_MATRIX_DIM, SOLUTION_SAMPLES

logger = logging.getLogger(__name__)


class OmegaNotWellDefined(AssertionError):
    def __init__(self, vector: np.ndarray) -> None:
        super().__init__("omega maps a vector of I outside J")
        self.vector = vector


class DiagonalCheckFailed(AssertionError):
    """A candidate diagonal failed one of the defining checks."""

    kind = "check"

    def __init__(self, element: str, residual: np.ndarray,
                 transcript: Optional[List["Check"]] = None) -> None:
        super().__init__(f"{self.kind} check failed at {element}")
        self.element = element
        self.residual = residual
        self.transcript = transcript or []


class FailedIdentity(DiagonalCheckFailed):
    kind = "identity"


class FailedCommutation(DiagonalCheckFailed):
    kind = "commutation"


# ______________________________________________________________________________
# BASE ALGEBRAS

def _bilinear(table: np.ndarray, x: np.ndarray, y: np.ndarray, size: int,
              scale: Optional[np.ndarray] = None) -> np.ndarray:
    """sum x[i] y[j] scale[i,j] e_table[i,j], skipping entries where table is -1."""
    out = zero_vector(size)
    ix, iy = np.flatnonzero(x != 0), np.flatnonzero(y != 0)
    if ix.size == 0 or iy.size == 0:
        return out
    targets = table[np.ix_(ix, iy)]
    values = np.multiply.outer(x[ix], y[iy])
    if scale is not None:
        values = values * scale[np.ix_(ix, iy)]
    keep = targets >= 0
    for t, v in zip(targets[keep].tolist(), values[keep].tolist()):
        out[t] += v
    return out


@dataclass(frozen=True, eq=False)
class BaseAlgebra:
    """Monomial algebra A with an auxiliary algebra acting on both sides.

    table[i, j] is the basis index of b_i b_j, or -1 for zero.
    left_index[p, i] / left_scale[p, i] give alpha_p . b_i, and
    right_index / right_scale give b_i . alpha_p.
    """
    name: str
    labels: Tuple[str, ...]
    table: np.ndarray
    aux_labels: Tuple[str, ...]
    aux_table: np.ndarray
    left_index: np.ndarray
    left_scale: np.ndarray
    right_index: np.ndarray
    right_scale: np.ndarray
    augmentation: Optional[np.ndarray] = None
    semigroup: Optional[FiniteInverseSemigroup] = field(default=None, repr=False)

    @property
    def dim(self) -> int:
        return len(self.labels)

    @property
    def aux_dim(self) -> int:
        return len(self.aux_labels)

    def basis(self, i: int) -> np.ndarray:
        return unit_vector(self.dim, i)

    def _check(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=object)
        if x.size != self.dim:
            raise DimensionMismatch(self.dim, x.size)
        return x

    def multiply(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        return _bilinear(self.table, self._check(x), self._check(y), self.dim)

    def act_left(self, alpha: np.ndarray, x: np.ndarray) -> np.ndarray:
        return _bilinear(self.left_index, alpha, self._check(x), self.dim, self.left_scale)

    def act_right(self, x: np.ndarray, alpha: np.ndarray) -> np.ndarray:
        return _bilinear(self.right_index.T, self._check(x), alpha, self.dim,
                         self.right_scale.T)

    @classmethod
    def from_semigroup(cls, S: FiniteInverseSemigroup,
                       actions: Optional[ActionSpec] = None) -> "BaseAlgebra":
        """Semigroup algebra with the idempotent algebra acting trivially on
        the left (through its character) and by multiplication on the right."""
        E = idempotents(S)
        actions = actions or ActionSpec()
        actions.check(S, E)
        n, idx = S.size, np.array(E.indices)
        m = len(idx)
        aux_table = np.array([[E.position(S.multiply(e, f)) for f in idx] for e in idx],
                             dtype=np.int64).reshape(m, m)
        left_index = np.tile(np.arange(n), (m, 1))
        left_scale = np.empty((m, n), dtype=object)
        for p in range(m):
            left_scale[p] = actions.epsilon(p)
        right_index = S.table[:, idx].T.copy()
        right_scale = np.ones((m, n), dtype=object)
        return cls(S.name, S.elements, S.table.copy(), tuple(S.elements[e] for e in idx),
                   aux_table, left_index, left_scale, right_index, right_scale,
                   np.ones(n, dtype=object), S)

    @classmethod
    def from_matrix_instance(cls, instance: "MatrixAlgebraInstance") -> "BaseAlgebra":
        """M_n(G) with basis E_ij[g]; (E_ij g)(E_kl h) = delta_jk E_il (gh)."""
        n, G = instance.n, instance.coefficients
        d = G.size
        dim = n * n * d
        table = np.full((dim, dim), -1, dtype=np.int64)
        for i in range(n):
            for j in range(n):
                for l in range(n):
                    for g in range(d):
                        for h in range(d):
                            table[instance.basis_index(i, j, g),
                                  instance.basis_index(j, l, h)] = \
                                instance.basis_index(i, l, G.multiply(g, h))
        action = np.empty((d, dim), dtype=np.int64)
        for gamma in range(d):
            for i in range(n):
                for j in range(n):
                    for g in range(d):
                        action[gamma, instance.basis_index(i, j, g)] = \
                            instance.basis_index(i, j, G.multiply(gamma, g))
        ones = np.ones((d, dim), dtype=object)
        return cls(instance.name, instance.labels, table, G.elements, G.table.copy(),
                   action, ones, action.copy(), ones.copy())


@dataclass(frozen=True, eq=False)
class MatrixAlgebraInstance:
    """M_n(G) where G is the algebra of a commutative monoid.

    The monoid table serves as the structure constants of G and its
    identity is the unit of G.
    """
    n: int
    coefficients: FiniteSemigroup

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("Matrix size must be at least 1")
        if not self.coefficients.is_commutative():
            raise ValueError(f"{self.coefficients.name} is not commutative")
        if self.coefficients.identity() is None:
            raise ValueError(f"{self.coefficients.name} has no unit")
        check_size(self.name, self.n * self.n * self.coefficients.size, MAX_MATRIX_DIM)

    @classmethod
    def scalars(cls, n: int) -> "MatrixAlgebraInstance":
        return cls(n, cyclic_group(1))

    @property
    def name(self) -> str:
        return f"M{self.n}({self.coefficients.name})"

    @property
    def unit(self) -> int:
        return self.coefficients.identity()

    def basis_index(self, i: int, j: int, g: int) -> int:
        return (i * self.n + j) * self.coefficients.size + g

    @property
    def labels(self) -> Tuple[str, ...]:
        G = self.coefficients
        return tuple(f"E{i + 1}{j + 1}[{G.elements[g]}]"
                     for i in range(self.n) for j in range(self.n) for g in range(G.size))


def find_identity(base: BaseAlgebra, modulo: Optional[Subspace] = None) -> Optional[np.ndarray]:
    """A two-sided identity of A (or of A/modulo), found exactly, or None."""
    n = base.dim
    project = modulo.complement_projector() if modulo is not None else \
        np.eye(n, dtype=np.int64).astype(object)
    rows, rhs = [], []
    for b in range(n):
        for products in (base.table[:, b], base.table[b, :]):
            # u -> u b (resp. b u) as an n x n matrix
            op = np.zeros((n, n), dtype=object)
            defined = np.flatnonzero(products >= 0)
            op[products[defined], defined] = 1
            rows.append(project.dot(op))
            rhs.append(project[:, b])
    system = AffineSystem(np.vstack(rows), np.concatenate(rhs))
    solution = solve_affine(system)
    return solution.particular if solution.feasible else None


def ideal_closure(generators: Iterable[np.ndarray], dim: int,
                  product: Callable[[np.ndarray, np.ndarray], np.ndarray],
                  multipliers: Sequence[np.ndarray], name: str = "ideal") -> Subspace:
    """Smallest two-sided ideal containing the generators.

    Worklist saturation: every vector that enlarges the span is multiplied
    on both sides by every multiplier. The multipliers must generate the
    ambient algebra.
    """
    builder = EchelonBuilder(dim)
    queue = deque()
    for g in generators:
        if builder.insert(g):
            queue.append(g)
    seeded = builder.rank
    while queue:
        v = queue.popleft()
        for w in multipliers:
            for p in (product(w, v), product(v, w)):
                if builder.insert(p):
                    queue.append(p)
    logger.debug(f"Closure of {name}: {seeded} independent generators, final dimension {builder.rank}")
    return builder.freeze()


# ______________________________________________________________________________
# TENSOR ALGEBRA

class TensorAlgebra:
    """A (x) A with (a (x) b)(c (x) d) = ac (x) bd; basis (s, t) -> s*n + t."""

    def __init__(self, base: BaseAlgebra, max_size: int = MAX_TENSOR_SIZE) -> None:
        check_size(f"{base.name} (tensor level)", base.dim, max_size)
        self.base = base
        n = base.dim
        self.n = n
        self.dim = n * n
        t = base.table
        first = t[:, None, :, None]
        second = t[None, :, None, :]
        self.table = np.where((first >= 0) & (second >= 0), first * n + second, -1) \
            .reshape(self.dim, self.dim)
        self.omega_index = t.reshape(-1)
        cols = np.arange(n)
        # a . (s (x) t) = as (x) t
        left = t[:, :, None]
        self.left_index = np.where(left >= 0, left * n + cols[None, None, :], -1) \
            .reshape(n, self.dim)
        # (s (x) t) . a = s (x) ta
        right = t.T[:, None, :]
        self.right_index = np.where(right >= 0, cols[None, :, None] * n + right, -1) \
            .reshape(n, self.dim)

    def label(self, k: int) -> str:
        s, t = divmod(k, self.n)
        return f"({self.base.labels[s]},{self.base.labels[t]})"

    def _check(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=object)
        if x.size != self.dim:
            raise DimensionMismatch(self.dim, x.size)
        return x

    def tensor(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        return np.multiply.outer(self.base._check(x), self.base._check(y)).reshape(-1)

    def basis_tensor(self, s: int, t: int, value=1) -> np.ndarray:
        return unit_vector(self.dim, s * self.n + t, value)

    def multiply(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        return _bilinear(self.table, self._check(x), self._check(y), self.dim)

    def act_left(self, a: np.ndarray, x: np.ndarray) -> np.ndarray:
        """a . x for a in A and x in A (x) A."""
        return _bilinear(self.left_index, self.base._check(a), self._check(x), self.dim)

    def act_right(self, x: np.ndarray, a: np.ndarray) -> np.ndarray:
        return _bilinear(self.right_index, self.base._check(a), self._check(x), self.dim)

    def omega(self, x: np.ndarray) -> np.ndarray:
        """omega(s (x) t) = st."""
        x = self._check(x)
        out = zero_vector(self.n)
        for k in np.flatnonzero(x != 0):
            if self.omega_index[k] >= 0:
                out[self.omega_index[k]] += x[k]
        return out

    def omega_tilde(self, x: np.ndarray) -> Coset:
        """omega(x) + J, which depends only on x + I."""
        return Coset.of(self.omega(x), self.ideal_J)

    def ideal_generators(self) -> List[np.ndarray]:
        """Distinct nonzero alpha.a (x) b - a (x) b.alpha over basis a, b and alpha."""
        base, n = self.base, self.n
        seen, gens = set(), []
        for p in range(base.aux_dim):
            for a in range(n):
                for b in range(n):
                    terms: Dict[int, object] = {}
                    la, ls = int(base.left_index[p, a]), base.left_scale[p, a]
                    if la >= 0 and ls != 0:
                        terms[la * n + b] = terms.get(la * n + b, 0) + ls
                    rb, rs = int(base.right_index[p, b]), base.right_scale[p, b]
                    if rb >= 0 and rs != 0:
                        terms[a * n + rb] = terms.get(a * n + rb, 0) - rs
                    key = tuple(sorted((k, v) for k, v in terms.items() if v != 0))
                    if key and key not in seen:
                        seen.add(key)
                        g = zero_vector(self.dim)
                        for k, v in key:
                            g[k] = v
                        gens.append(g)
        return gens

    def _multipliers(self) -> List[np.ndarray]:
        one = find_identity(self.base)
        if one is None:
            return [unit_vector(self.dim, k) for k in range(self.dim)]
        # b (x) 1 and 1 (x) b generate A (x) A when A is unital
        basis = [self.base.basis(b) for b in range(self.n)]
        return [self.tensor(e, one) for e in basis] + [self.tensor(one, e) for e in basis]

    @cached_property
    def ideal_I(self) -> Subspace:
        gens = self.ideal_generators()
        I = ideal_closure(gens, self.dim, self.multiply, self._multipliers(),
                          f"I for {self.base.name}")
        logger.info(f"{self.base.name}: dim I = {I.rank} of {self.dim}")
        return I

    @cached_property
    def ideal_J(self) -> Subspace:
        I = self.ideal_I
        images = [self.omega(row) for row in I.integer_rows]
        basis = [self.base.basis(b) for b in range(self.n)]
        J = ideal_closure(images, self.n, self.base.multiply, basis,
                          f"J for {self.base.name}")
        for row in I.integer_rows:
            if not J.member(self.omega(row)):
                raise OmegaNotWellDefined(row)
        return J

    def is_two_sided_ideal(self, I: Subspace) -> bool:
        """Multiplying each basis vector of I by each basis tensor stays in I."""
        for row in I.integer_rows:
            for k in range(self.dim):
                e = unit_vector(self.dim, k)
                if not (I.member(self.multiply(e, row)) and I.member(self.multiply(row, e))):
                    return False
        return True


def build_ideal_I(base: BaseAlgebra) -> Subspace:
    return TensorAlgebra(base).ideal_I


def build_ideal_J(base: BaseAlgebra, I: Optional[Subspace] = None) -> Subspace:
    """Ideal of A generated by omega(I)."""
    tensor = TensorAlgebra(base)
    if I is None:
        return tensor.ideal_J
    basis = [base.basis(b) for b in range(base.dim)]
    return ideal_closure([tensor.omega(row) for row in I.integer_rows], base.dim,
                         base.multiply, basis, f"J for {base.name}")


# ______________________________________________________________________________
# DIAGONALS

@dataclass(frozen=True)
class Check:
    kind: str
    element: str
    ok: bool
    residual: Optional[np.ndarray] = field(default=None, compare=False, repr=False)

    def to_json(self) -> Dict:
        return {"kind": self.kind, "element": self.element, "ok": self.ok}


@dataclass(frozen=True, eq=False)
class DiagonalCertificate:
    """A diagonal M (a representative modulo I) with its verification transcript."""
    tensor: TensorAlgebra
    M: np.ndarray
    checks: Tuple[Check, ...]
    solution_space: Optional[Subspace] = None
    relative: bool = True

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    @property
    def solution_space_dim(self) -> Optional[int]:
        """Dimension of the solution set modulo I."""
        if self.solution_space is None:
            return None
        floor = self.tensor.ideal_I.rank if self.relative else 0
        return self.solution_space.rank - floor

    def to_json(self) -> Dict:
        return {
            "feasible": True,
            "M": {self.tensor.label(k): fraction_str(self.M[k])
                  for k in np.flatnonzero(self.M != 0)},
            "solution_space_dim": self.solution_space_dim,
            "checks": [c.to_json() for c in self.checks],
        }


@dataclass(frozen=True, eq=False)
class DiagonalSearchResult:
    feasible: bool
    certificate: Optional[DiagonalCertificate] = None
    failing_constraint: Optional[str] = None
    system_shape: Tuple[int, int] = (0, 0)

    def to_json(self) -> Dict:
        if self.feasible:
            data = self.certificate.to_json()
        else:
            data = {"feasible": False, "failing_constraint": self.failing_constraint}
        data["system_shape"] = list(self.system_shape)
        return data


def _gather(project: np.ndarray, targets: np.ndarray) -> np.ndarray:
    """Columns project[:, targets], with zero columns where targets is -1."""
    cols = project[:, np.maximum(targets, 0)]
    if np.any(targets < 0):
        cols = cols.copy()
        cols[:, targets < 0] = 0
    return cols


def _diagonal_system(tensor: TensorAlgebra, I: Subspace, J: Subspace,
                     two_sided: bool) -> AffineSystem:
    """Linear constraints on M expressing the diagonal conditions.

    Membership in I (resp. J) is encoded as a zero projection onto the
    non-pivot coordinates of the ideal's echelon basis.
    """
    base = tensor.base
    keep_j = J.complement_projector()
    keep_i = I.complement_projector()
    blocks, rhs, labels = [], [], []
    omega = tensor.omega_index
    for b in range(base.dim):
        sides = [("identity-left", np.where(omega >= 0, base.table[b, np.maximum(omega, 0)], -1))]
        if two_sided:
            sides.append(("identity-right", np.where(omega >= 0, base.table[np.maximum(omega, 0), b], -1)))
        for kind, targets in sides:
            blocks.append(_gather(keep_j, targets))
            rhs.append(keep_j[:, b])
            labels += [f"{kind}:{base.labels[b]}"] * keep_j.shape[0]
    for a in range(base.dim):
        blocks.append(_gather(keep_i, tensor.left_index[a]) - _gather(keep_i, tensor.right_index[a]))
        rhs.append(zero_vector(keep_i.shape[0]))
        labels += [f"commutation:{base.labels[a]}"] * keep_i.shape[0]
    matrix = np.vstack(blocks) if blocks else np.zeros((0, tensor.dim), dtype=object)
    return AffineSystem(matrix, np.concatenate(rhs), tuple(labels))


def _search(tensor: TensorAlgebra, I: Subspace, J: Subspace, relative: bool) -> DiagonalSearchResult:
    system = _diagonal_system(tensor, I, J, two_sided=relative)
    shape = system.matrix.shape
    logger.debug(f"Diagonal system for {tensor.base.name}: {shape[0]} rows, {shape[1]} unknowns")
    solution = solve_affine(system)
    if not solution.feasible:
        logger.info(f"{tensor.base.name}: no diagonal ({solution.failing_label})")
        return DiagonalSearchResult(False, failing_constraint=solution.failing_label,
                                    system_shape=shape)
    M = solution.particular
    checks = verify_module_diagonal(tensor, M, strict=True, relative=relative)
    space = solution.nullspace
    if relative:
        assert space.contains(I), "solution space must contain I"
    certificate = DiagonalCertificate(tensor, M, tuple(checks), space, relative)
    logger.info(f"{tensor.base.name}: diagonal found, solution space dimension "
                f"{certificate.solution_space_dim} modulo I")
    return DiagonalSearchResult(True, certificate, system_shape=shape)


def find_module_diagonal(tensor: TensorAlgebra) -> DiagonalSearchResult:
    """Exact search for a module diagonal over the whole solution set."""
    return _search(tensor, tensor.ideal_I, tensor.ideal_J, relative=True)


def find_classical_diagonal(tensor: TensorAlgebra) -> DiagonalSearchResult:
    """Ordinary diagonal: a.omega(M) = a and a.M = M.a, with I = J = 0."""
    zero_t, zero_a = Subspace.zero(tensor.dim), Subspace.zero(tensor.n)
    return _search(tensor, zero_t, zero_a, relative=False)


def verify_module_diagonal(tensor: TensorAlgebra, M: np.ndarray, strict: bool = True,
                           suppress_ideal: bool = False, relative: bool = True) -> List[Check]:
    """Re-derive every diagonal condition for M directly from the products.

    Args:
        tensor: tensor algebra of the base
        M: candidate tensor
        strict: raise on the first failing check instead of recording it
        suppress_ideal: take I = {0} (and so J = {0})
        relative: False checks the ordinary diagonal conditions (left identity only)

    Returns:
        List[Check]: the transcript, identity checks first

    Raises:
        FailedIdentity: omega(M) is not an identity modulo J at some basis b
        FailedCommutation: a.M - M.a is not in I for some basis a
    """
    M = tensor._check(M)
    base = tensor.base
    if suppress_ideal or not relative:
        I, J = Subspace.zero(tensor.dim), Subspace.zero(base.dim)
    else:
        I, J = tensor.ideal_I, tensor.ideal_J
    unit = tensor.omega(M)
    transcript: List[Check] = []

    def record(check: Check, error) -> None:
        transcript.append(check)
        if strict and not check.ok:
            raise error(check.element, check.residual, transcript)

    for b in range(base.dim):
        e = base.basis(b)
        sides = [base.multiply(e, unit) - e]
        if relative:
            sides.append(base.multiply(unit, e) - e)
        residual = next((r for r in sides if not J.member(r)), None)
        record(Check("identity", base.labels[b], residual is None, residual), FailedIdentity)
    for a in range(base.dim):
        e = base.basis(a)
        residual = tensor.act_left(e, M) - tensor.act_right(M, e)
        record(Check("commutation", base.labels[a], I.member(residual), residual),
               FailedCommutation)
    return transcript


def matrix_explicit_diagonal(instance: MatrixAlgebraInstance) -> DiagonalCertificate:
    """M = sum_ij (1/n) E_ij[1] (x) E_ji[1], checked constraint by constraint."""
    base = BaseAlgebra.from_matrix_instance(instance)
    tensor = TensorAlgebra(base, max_size=MAX_MATRIX_DIM)
    n, unit = instance.n, instance.unit
    M = zero_vector(tensor.dim)
    for i in range(n):
        for j in range(n):
            k = instance.basis_index(i, j, unit) * base.dim + instance.basis_index(j, i, unit)
            M[k] = Fraction(1, n)
    checks = verify_module_diagonal(tensor, M, strict=True)
    return DiagonalCertificate(tensor, M, tuple(checks))


def matrix_identity(instance: MatrixAlgebraInstance) -> np.ndarray:
    """sum_i E_ii[1]."""
    dim = instance.n * instance.n * instance.coefficients.size
    return sum((unit_vector(dim, instance.basis_index(i, i, instance.unit))
                for i in range(instance.n)), zero_vector(dim))


def standard_group_diagonal(tensor: TensorAlgebra) -> np.ndarray:
    """(1/|G|) sum_g delta_g (x) delta_g^-1 for a group algebra."""
    S = tensor.base.semigroup
    M = zero_vector(tensor.dim)
    for g in range(S.size):
        M[g * tensor.n + int(S.star[g])] = Fraction(1, S.size)
    return M


def sample_diagonals(certificate: DiagonalCertificate, rng: np.random.Generator,
                     count: int = SOLUTION_SAMPLES) -> List[np.ndarray]:
    """Random points M + v of the solution set, v drawn from the null space."""
    if certificate.solution_space is None:
        return []
    return [certificate.M + certificate.solution_space.random_element(rng)
            for _ in range(count)]


def j_consistency(tensor: TensorAlgebra, J_span: Subspace) -> Dict:
    """Compare the ideal generated by omega(I) with the span computation."""
    J_ideal = tensor.ideal_J
    I = tensor.ideal_I
    return {
        "J_ideal_dim": J_ideal.rank,
        "J_span_dim": J_span.rank,
        "equal": J_ideal == J_span,
        "omega_I_in_J_span": all(J_span.member(tensor.omega(r)) for r in I.integer_rows),
    }


def algebra_level_J(S: FiniteInverseSemigroup) -> Subspace:
    """Ideal generated by omega(I) for a semigroup algebra, without forming A (x) A.

    With the trivial left action, I is spanned by products x g y of the
    generators delta_s (x) delta_t - delta_s (x) delta_te with basis tensors
    (or nothing) on either side. Their images under omega are
    delta_utd - delta_uted for u, t in S, d in S or absent, and e in E.
    """
    n = S.size
    E = idempotents(S).indices
    products = sorted(set(int(x) for x in S.table.reshape(-1)))
    pairs = set()
    for x in products:
        for e in E:
            xe = S.multiply(x, e)
            right = [(x, xe)] + [(S.multiply(x, d), S.multiply(xe, d)) for d in range(n)]
            for a, b in right:
                if a != b:
                    pairs.add((min(a, b), max(a, b)))
    images = [unit_vector(n, a) - unit_vector(n, b) for a, b in sorted(pairs)]
    base = BaseAlgebra.from_semigroup(S)
    basis = [base.basis(b) for b in range(n)]
    return ideal_closure(images, n, base.multiply, basis, f"algebra-level J for {S.name}")
